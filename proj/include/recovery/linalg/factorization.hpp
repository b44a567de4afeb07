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

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "recovery/error.hpp"

namespace recovery
{
    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;
    using Index  = Eigen::Index;

    inline bool all_finite(const Eigen::Ref<const Matrix>& a)
    {
        return a.allFinite();
    }

    /// Absolute rank tolerance shared by every rank decision in the library:
    /// max(m, n) * machine epsilon * largest column norm.
    inline double rank_tolerance(const Eigen::Ref<const Matrix>& a)
    {
        if (a.size() == 0) {
            return 0.0;
        }
        const double largest = a.colwise().norm().maxCoeff();
        return static_cast<double>(std::max(a.rows(), a.cols()))
             * std::numeric_limits<double>::epsilon() * largest;
    }

    enum class FactorKind { qr, cholesky };

    /// QR with column pivoting (A P = Q R) or Cholesky (M = R^T R, R upper).
    struct Factorization
    {
        FactorKind kind = FactorKind::qr;
        Matrix q;                       // empty for Cholesky
        Matrix r;
        std::vector<Index> permutation; // column order of A P; empty for Cholesky
        Index rank = 0;
        double tolerance = 0.0;

        Matrix reassemble() const
        {
            if (kind == FactorKind::cholesky) {
                return r.transpose() * r;
            }
            const Matrix qr = q * r;
            Matrix out(qr.rows(), qr.cols());
            for (std::size_t j = 0; j < permutation.size(); ++j) {
                out.col(permutation[j]) = qr.col(static_cast<Index>(j));
            }
            return out;
        }

        /// Solves M x = b with a Cholesky factorization.
        Vector solve(const Eigen::Ref<const Vector>& b) const
        {
            require(kind == FactorKind::cholesky, "solve() needs a Cholesky factorization");
            require(b.size() == r.rows(), "right-hand side length mismatch");
            const auto upper = r.triangularView<Eigen::Upper>();
            Vector tmp = upper.transpose().solve(b);
            return upper.solve(tmp);
        }
    };

    inline Factorization qr_factor(const Eigen::Ref<const Matrix>& a)
    {
        require(all_finite(a), "qr_factor: matrix has non-finite entries");

        Factorization f;
        f.kind = FactorKind::qr;
        f.tolerance = rank_tolerance(a);

        const Index m = a.rows(), n = a.cols();
        if (a.size() == 0) {
            f.q = Matrix::Identity(m, m);
            f.r = Matrix::Zero(m, n);
            for (Index j = 0; j < n; ++j) f.permutation.push_back(j);
            return f;
        }

        Eigen::ColPivHouseholderQR<Matrix> qr(a);
        f.q = qr.householderQ();
        f.r = qr.matrixQR().triangularView<Eigen::Upper>();
        const auto& perm = qr.colsPermutation().indices();
        f.permutation.assign(perm.data(), perm.data() + perm.size());

        const Index diag = std::min(m, n);
        for (Index i = 0; i < diag; ++i) {
            if (std::abs(f.r(i, i)) > f.tolerance) {
                ++f.rank;
            }
        }
        return f;
    }

    inline Index numerical_rank(const Eigen::Ref<const Matrix>& a)
    {
        return qr_factor(a).rank;
    }

    /// Throws numerical_failure when a pivot is not positive.
    inline Factorization cholesky_factor(const Eigen::Ref<const Matrix>& m)
    {
        require(m.rows() == m.cols(), "cholesky_factor: matrix must be square");
        require(all_finite(m), "cholesky_factor: matrix has non-finite entries");

        Eigen::LLT<Matrix> llt(m);
        if (llt.info() != Eigen::Success) {
            throw Error(ErrorKind::numerical_failure,
                        "cholesky_factor: non-positive pivot, matrix is not positive definite");
        }
        Factorization f;
        f.kind = FactorKind::cholesky;
        f.r = llt.matrixU();
        f.rank = m.rows();
        return f;
    }

    inline Vector solve_spd(const Eigen::Ref<const Matrix>& m, const Eigen::Ref<const Vector>& b)
    {
        require(m.rows() == b.size(), "solve_spd: dimension mismatch");
        const double scale = std::max(1.0, m.norm());
        require((m - m.transpose()).norm() <= 1e-10 * scale, "solve_spd: matrix is not symmetric");
        return cholesky_factor(m).solve(b);
    }
}
