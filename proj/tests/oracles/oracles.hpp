/*  Copyright 2026 The sparse-recovery Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

// Independent reference computations used by the unit and acceptance suites.
// None of these call into the interior-point solver, the Cholesky-based
// closed forms or the QR rank routine they are used to check.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace oracle
{
    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;
    using Index = Eigen::Index;

    /// Rank by Gaussian elimination with partial pivoting; a pivot counts when
    /// its magnitude exceeds tol.
    inline Index gauss_rank(Matrix a, double tol)
    {
        const Index m = a.rows(), n = a.cols();
        Index rank = 0;
        for (Index col = 0; col < n && rank < m; ++col) {
            Index piv = rank;
            for (Index i = rank + 1; i < m; ++i) {
                if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
            }
            if (std::abs(a(piv, col)) <= tol) continue;
            a.row(piv).swap(a.row(rank));
            for (Index i = rank + 1; i < m; ++i) {
                const double f = a(i, col) / a(rank, col);
                a.row(i) -= f * a.row(rank);
            }
            ++rank;
        }
        return rank;
    }

    /// Determinant by elimination with partial pivoting.
    inline double determinant(Matrix a)
    {
        const Index n = a.rows();
        double det = 1.0;
        for (Index c = 0; c < n; ++c) {
            Index piv = c;
            for (Index i = c + 1; i < n; ++i)
                if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
            if (a(piv, c) == 0.0) return 0.0;
            if (piv != c) {
                a.row(piv).swap(a.row(c));
                det = -det;
            }
            det *= a(c, c);
            for (Index i = c + 1; i < n; ++i) a.row(i) -= (a(i, c) / a(c, c)) * a.row(c);
        }
        return det;
    }

    /// Full column rank test for a tall submatrix via the Gram determinant
    /// normalized by the column norms (Hadamard ratio in [0, 1]).
    inline bool full_column_rank_by_determinant(const Matrix& sub, double ratio_tol = 1e-12)
    {
        if (sub.cols() == 0) return true;
        const Matrix gram = sub.transpose() * sub;
        double norms = 1.0;
        for (Index j = 0; j < sub.cols(); ++j) norms *= gram(j, j);
        if (norms == 0.0) return false;
        return determinant(gram) / norms > ratio_tol;
    }

    /// Solves a square system by elimination; empty when (near) singular.
    inline std::optional<Vector> solve_square(Matrix a, Vector b, double pivot_tol = 1e-12)
    {
        const Index n = a.rows();
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        for (Index c = 0; c < n; ++c) {
            Index piv = c;
            for (Index i = c + 1; i < n; ++i)
                if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
            if (std::abs(a(piv, c)) <= pivot_tol * scale) return std::nullopt;
            a.row(piv).swap(a.row(c));
            std::swap(b[piv], b[c]);
            for (Index i = c + 1; i < n; ++i) {
                const double f = a(i, c) / a(c, c);
                a.row(i) -= f * a.row(c);
                b[i] -= f * b[c];
            }
        }
        Vector x(n);
        for (Index i = n - 1; i >= 0; --i) {
            x[i] = (b[i] - a.row(i).tail(n - 1 - i).dot(x.tail(n - 1 - i))) / a(i, i);
        }
        return x;
    }

    template <typename F>
    void for_each_subset(Index n, Index r, std::vector<Index>& cur, Index start, F& f)
    {
        if (static_cast<Index>(cur.size()) == r) {
            f(cur);
            return;
        }
        for (Index i = start; i < n; ++i) {
            cur.push_back(i);
            for_each_subset(n, r, cur, i + 1, f);
            cur.pop_back();
        }
    }

    template <typename F>
    void subsets(Index n, Index r, F f)
    {
        std::vector<Index> cur;
        for_each_subset(n, r, cur, 0, f);
    }

    struct VertexOptimum
    {
        bool feasible = false;
        double objective = std::numeric_limits<double>::infinity();
        Vector vertex;
    };

    /// min c^T v s.t. G v = h, v >= 0 by enumerating basic feasible solutions.
    /// G must have full row rank and the problem must be bounded.
    inline VertexOptimum vertex_enumeration(const Vector& c, const Matrix& g, const Vector& h)
    {
        VertexOptimum best;
        const Index m = g.rows(), n = g.cols();
        subsets(n, m, [&](const std::vector<Index>& basis) {
            Matrix b(m, m);
            for (Index j = 0; j < m; ++j) b.col(j) = g.col(basis[j]);
            const auto vb = solve_square(b, h);
            if (!vb) return;
            if (vb->minCoeff() < -1e-10) return;
            Vector v = Vector::Zero(n);
            for (Index j = 0; j < m; ++j) v[basis[j]] = std::max((*vb)[j], 0.0);
            const double obj = c.dot(v);
            if (obj < best.objective) {
                best.feasible = true;
                best.objective = obj;
                best.vertex = v;
            }
        });
        return best;
    }

    /// Basic solutions of A x = y: x supported on m independent columns.
    inline std::vector<Vector> basic_solutions(const Matrix& a, const Vector& y)
    {
        std::vector<Vector> out;
        const Index m = a.rows(), n = a.cols();
        subsets(n, m, [&](const std::vector<Index>& cols) {
            Matrix b(m, m);
            for (Index j = 0; j < m; ++j) b.col(j) = a.col(cols[j]);
            const auto xb = solve_square(b, y);
            if (!xb) return;
            Vector x = Vector::Zero(n);
            for (Index j = 0; j < m; ++j) x[cols[j]] = (*xb)[j];
            out.push_back(std::move(x));
        });
        return out;
    }

    /// min sum_i w_i |x_i| s.t. A x = y for w >= 0, over the basic solutions.
    inline double weighted_l1_by_vertices(const std::vector<Vector>& basics, const Vector& w)
    {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& x : basics) best = std::min(best, w.dot(x.cwiseAbs()));
        return best;
    }

    /// max over z in {0,1}^n of sum_i z_i (1 - u |x_i|), by enumeration.
    inline double exhaustive_lagrangian_max(const Vector& x, double u)
    {
        const Index n = x.size();
        double best = -std::numeric_limits<double>::infinity();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            double v = 0.0;
            for (Index i = 0; i < n; ++i) {
                if (mask >> i & 1U) v += 1.0 - u * std::abs(x[i]);
            }
            best = std::max(best, v);
        }
        return best;
    }

    /// theta(u) = max over z in {0,1}^n and A x = y of e^T z - u ||D(z) x||_1,
    /// enumerating z and solving each inner l1 problem over basic solutions.
    inline double exact_dual_function(const Matrix& a, const Vector& y, double u)
    {
        const Index n = a.cols();
        const auto basics = basic_solutions(a, y);
        double best = -std::numeric_limits<double>::infinity();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            Vector w(n);
            double count = 0.0;
            for (Index i = 0; i < n; ++i) {
                w[i] = (mask >> i & 1U) ? 1.0 : 0.0;
                count += w[i];
            }
            best = std::max(best, count - u * weighted_l1_by_vertices(basics, w));
        }
        return best;
    }

    /// argmin x^T W x s.t. A x = y through the full KKT system
    /// [2W A^T; A 0] [x; lambda] = [0; y].
    inline Vector kkt_weighted_min_norm(const Matrix& a, const Vector& y, const Vector& w)
    {
        const Index m = a.rows(), n = a.cols();
        Matrix k = Matrix::Zero(n + m, n + m);
        k.topLeftCorner(n, n) = (2.0 * w).asDiagonal();
        k.topRightCorner(n, m) = a.transpose();
        k.bottomLeftCorner(m, n) = a;
        Vector rhs = Vector::Zero(n + m);
        rhs.tail(m) = y;
        const Vector sol = k.fullPivLu().solve(rhs);
        return sol.head(n);
    }

    inline Matrix gaussian_matrix(Index m, Index n, std::mt19937_64& rng)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        Matrix a(m, n);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < m; ++i) a(i, j) = g(rng);
        return a;
    }
}

namespace oracle
{
    struct SmallLP
    {
        Vector c;
        Matrix g;
        Vector h;
    };

    /// Feasible (h = G v0 with v0 >= 0) and bounded (c = G^T l + s with s >= 0)
    /// standard-form LP with at most max_vars variables.
    inline SmallLP random_feasible_bounded_lp(std::mt19937_64& rng, Index max_vars = 6)
    {
        std::uniform_int_distribution<Index> nd(2, max_vars);
        const Index n = nd(rng);
        std::uniform_int_distribution<Index> md(1, n - 1);
        const Index m = md(rng);
        std::uniform_real_distribution<double> pos(0.0, 3.0);
        std::bernoulli_distribution zero(0.3);

        SmallLP lp;
        lp.g = gaussian_matrix(m, n, rng);
        Vector v0(n), s(n);
        for (Index i = 0; i < n; ++i) {
            v0[i] = zero(rng) ? 0.0 : pos(rng);
            s[i] = zero(rng) ? 0.0 : pos(rng);
        }
        lp.h = lp.g * v0;
        lp.c = lp.g.transpose() * gaussian_matrix(m, 1, rng) + s;
        return lp;
    }
}
