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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "recovery/core.hpp"
#include "recovery/dense_linalg.hpp"

namespace recovery
{
    /// min c^T v  s.t.  G v = h,  v >= 0.
    struct StandardLP
    {
        Vector c;
        Matrix g;
        Vector h;
    };

    enum class LPStatus { optimal, infeasible, unbounded, max_iters };

    inline std::string_view to_string(LPStatus s)
    {
        switch (s) {
            case LPStatus::optimal:    return "optimal";
            case LPStatus::infeasible: return "infeasible";
            case LPStatus::unbounded:  return "unbounded";
            case LPStatus::max_iters:  return "max_iters";
        }
        return "unknown";
    }

    struct LPSolution
    {
        Vector primal;
        Vector dual_eq;     // one entry per row of G (zero on rows removed by presolve)
        Vector dual_ineq;   // reduced costs s = c - G^T dual_eq
        double objective = 0.0;
        LPStatus status = LPStatus::max_iters;
        int iterations = 0;

        // Relative KKT residuals at the returned point.
        double primal_residual = 0.0;   // ||h - G v|| / (1 + ||h||)
        double dual_residual = 0.0;     // ||c - G^T y - s|| / (1 + ||c||)
        double gap = 0.0;               // v^T s / (1 + |c^T v|)
    };

    struct LPOptions
    {
        double tol = 1e-9;
        int max_iters = 200;
        double infeasibility_ratio = 1e8;
        double step_fraction = 0.995;
    };

    namespace detail
    {
        inline double max_step(const Vector& v, const Vector& dv)
        {
            double alpha = 1.0;
            for (Index i = 0; i < v.size(); ++i) {
                if (dv[i] < 0.0) {
                    alpha = std::min(alpha, -v[i] / dv[i]);
                }
            }
            return alpha;
        }

        /// G D G^T with its Cholesky factor. The factorization retries with a
        /// growing diagonal shift when it breaks down near the optimum; solves
        /// are refined against the unshifted matrix.
        struct NormalSystem
        {
            Matrix normal;
            Factorization chol;

            Vector solve(const Vector& rhs, int refinement_steps = 3) const
            {
                Vector sol = chol.solve(rhs);
                const double rhs_norm = rhs.norm();
                for (int k = 0; k < refinement_steps; ++k) {
                    const Vector res = rhs - normal * sol;
                    if (res.norm() <= 1e-15 * rhs_norm) break;
                    sol += chol.solve(res);
                }
                return sol;
            }
        };

        inline NormalSystem normal_equations(const Matrix& g, const Vector& d)
        {
            const Index m = g.rows();
            const Matrix gs = g * d.cwiseSqrt().asDiagonal();
            NormalSystem sys;
            sys.normal = Matrix::Zero(m, m);
            sys.normal.selfadjointView<Eigen::Lower>().rankUpdate(gs);
            sys.normal.triangularView<Eigen::StrictlyUpper>() = sys.normal.transpose();

            const double scale = std::max(sys.normal.diagonal().maxCoeff(), 1e-300);
            double shift = 0.0;
            for (int attempt = 0; attempt < 8; ++attempt) {
                try {
                    if (shift == 0.0) {
                        sys.chol = cholesky_factor(sys.normal);
                    } else {
                        Matrix shifted = sys.normal;
                        shifted.diagonal().array() += shift;
                        sys.chol = cholesky_factor(shifted);
                    }
                    return sys;
                } catch (const Error&) {
                    shift = (shift == 0.0) ? 1e-14 * scale : shift * 100.0;
                }
            }
            throw Error(ErrorKind::numerical_failure, "solve_lp: normal equations are not positive definite");
        }

        struct Presolved
        {
            std::vector<Index> kept_rows;
            bool consistent = true;
        };

        /// Drops linearly dependent rows of G and checks h against the dropped rows.
        inline Presolved presolve(const StandardLP& lp)
        {
            Presolved out;
            const Index m = lp.g.rows();
            if (m == 0) {
                return out;
            }
            const Factorization f = qr_factor(lp.g.transpose());
            out.kept_rows.assign(f.permutation.begin(), f.permutation.begin() + f.rank);
            std::sort(out.kept_rows.begin(), out.kept_rows.end());
            if (f.rank == m) {
                return out;
            }
            if (f.rank == 0) {
                out.consistent = lp.h.norm() <= 1e-9 * (1.0 + lp.h.norm());
                return out;
            }
            Matrix gk(f.rank, lp.g.cols());
            Vector hk(f.rank);
            for (Index i = 0; i < f.rank; ++i) {
                gk.row(i) = lp.g.row(out.kept_rows[i]);
                hk[i] = lp.h[out.kept_rows[i]];
            }
            const Vector v = gk.transpose() * cholesky_factor(gk * gk.transpose()).solve(hk);
            out.consistent = (lp.g * v - lp.h).norm() <= 1e-9 * (1.0 + lp.h.norm());
            return out;
        }
    }

    /// Mehrotra predictor-corrector primal-dual interior-point method on the
    /// normal equations.
    inline LPSolution solve_lp(const StandardLP& lp, const LPOptions& opts = {})
    {
        const Index nvar = lp.c.size();
        require(lp.g.cols() == nvar, "solve_lp: G has " + std::to_string(lp.g.cols())
                + " columns but c has " + std::to_string(nvar) + " entries");
        require(lp.g.rows() == lp.h.size(), "solve_lp: G rows do not match h");
        require(opts.tol > 0.0, "solve_lp: tol must be positive");
        require(opts.max_iters > 0, "solve_lp: max_iters must be positive");
        require(lp.c.allFinite() && lp.h.allFinite() && all_finite(lp.g), "solve_lp: non-finite data");

        LPSolution sol;
        sol.dual_eq = Vector::Zero(lp.g.rows());

        const detail::Presolved pre = detail::presolve(lp);
        if (!pre.consistent) {
            sol.status = LPStatus::infeasible;
            sol.primal = Vector::Zero(nvar);
            sol.dual_ineq = lp.c;
            return sol;
        }

        const Index m = static_cast<Index>(pre.kept_rows.size());
        if (m == 0) {
            // Only v >= 0 remains.
            sol.primal = Vector::Zero(nvar);
            sol.dual_ineq = lp.c;
            sol.status = (lp.c.minCoeff() < 0.0) ? LPStatus::unbounded : LPStatus::optimal;
            return sol;
        }

        Matrix g(m, nvar);
        Vector h(m);
        for (Index i = 0; i < m; ++i) {
            g.row(i) = lp.g.row(pre.kept_rows[i]);
            h[i] = lp.h[pre.kept_rows[i]];
        }
        const Vector& c = lp.c;
        const double h_norm = h.norm();
        const double c_norm = c.norm();
        const double n_double = static_cast<double>(nvar);

        // Starting point from the minimum-norm heuristic.
        Vector x, lam, s;
        {
            const detail::NormalSystem ggt = detail::normal_equations(g, Vector::Ones(nvar));
            x = g.transpose() * ggt.solve(h);
            lam = ggt.solve(g * c);
            s = c - g.transpose() * lam;

            x.array() += std::max(-1.5 * x.minCoeff(), 0.0);
            s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
            if (x.dot(s) <= std::numeric_limits<double>::epsilon()) {
                x.array() += 1.0;
                s.array() += 1.0;
            }
            const double xs = x.dot(s);
            x.array() += 0.5 * xs / s.sum();
            s.array() += 0.5 * xs / x.sum();
            x = x.cwiseMax(1e-8);
            s = s.cwiseMax(1e-8);
        }

        auto fill = [&](LPStatus status, int iters) {
            sol.status = status;
            sol.iterations = iters;
            sol.primal = x;
            for (Index i = 0; i < m; ++i) {
                sol.dual_eq[pre.kept_rows[i]] = lam[i];
            }
            sol.dual_ineq = s;
            sol.objective = c.dot(x);
            sol.primal_residual = (h - g * x).norm() / (1.0 + h_norm);
            sol.dual_residual = (c - g.transpose() * lam - s).norm() / (1.0 + c_norm);
            sol.gap = x.dot(s) / (1.0 + std::abs(sol.objective));
            return sol;
        };

        for (int iter = 0; iter < opts.max_iters; ++iter) {
            const Vector rp = h - g * x;
            const Vector rd = c - g.transpose() * lam - s;
            const double mu = x.dot(s) / n_double;
            const double cx = c.dot(x);

            const double pres = rp.norm() / (1.0 + h_norm);
            const double dres = rd.norm() / (1.0 + c_norm);
            const double gap = x.dot(s) / (1.0 + std::abs(cx));
            if (pres <= opts.tol && dres <= opts.tol && gap <= opts.tol) {
                return fill(LPStatus::optimal, iter);
            }

            // Divergence along a Farkas ray.
            const double hy = h.dot(lam);
            if (hy > opts.infeasibility_ratio * (1.0 + c.lpNorm<Eigen::Infinity>() + rd.lpNorm<Eigen::Infinity>())) {
                return fill(LPStatus::infeasible, iter);
            }
            if (-cx > opts.infeasibility_ratio * (1.0 + h.lpNorm<Eigen::Infinity>() + rp.lpNorm<Eigen::Infinity>())) {
                return fill(LPStatus::unbounded, iter);
            }

            const Vector d = x.cwiseQuotient(s);
            const detail::NormalSystem normal = detail::normal_equations(g, d);

            // Solves the Newton system for a complementarity right-hand side r_xs:
            //   G dx = rp,  G^T dlam + ds = rd,  S dx + X ds = r_xs.
            // The primal equation is refined on its true residual, which also
            // absorbs cancellation in dx when d spans many orders of magnitude.
            auto newton = [&](const Vector& r_xs, Vector& dx, Vector& dlam, Vector& ds) {
                const Vector r_over_s = r_xs.cwiseQuotient(s);
                dlam = normal.solve(rp + g * (d.cwiseProduct(rd) - r_over_s));
                ds = rd - g.transpose() * dlam;
                dx = r_over_s - d.cwiseProduct(ds);
                const double rp_norm = rp.norm();
                for (int k = 0; k < 3; ++k) {
                    const Vector err = rp - g * dx;
                    if (err.norm() <= 1e-14 * (1.0 + rp_norm + h_norm)) break;
                    const Vector corr = normal.solve(err, 0);
                    const Vector gt_corr = g.transpose() * corr;
                    dlam += corr;
                    ds -= gt_corr;
                    dx += d.cwiseProduct(gt_corr);
                }
            };

            Vector dx, dlam, ds;
            const Vector xs = x.cwiseProduct(s);
            newton(-xs, dx, dlam, ds);

            const double ap_aff = detail::max_step(x, dx);
            const double ad_aff = detail::max_step(s, ds);
            const double mu_aff = (x + ap_aff * dx).dot(s + ad_aff * ds) / n_double;
            const double sigma = std::pow(mu_aff / mu, 3);

            const Vector r_corr = (-xs - dx.cwiseProduct(ds)).array() + sigma * mu;
            newton(r_corr, dx, dlam, ds);

            const double ap = std::min(1.0, opts.step_fraction * detail::max_step(x, dx));
            const double ad = std::min(1.0, opts.step_fraction * detail::max_step(s, ds));

            x += ap * dx;
            lam += ad * dlam;
            s += ad * ds;

            if (!x.allFinite() || !lam.allFinite() || !s.allFinite()) {
                throw Error(ErrorKind::numerical_failure, "solve_lp: iterate became non-finite");
            }
        }
        return fill(LPStatus::max_iters, opts.max_iters);
    }

    inline LPSolution solve_lp(const StandardLP& lp, double tol, int max_iters)
    {
        LPOptions opts;
        opts.tol = tol;
        opts.max_iters = max_iters;
        return solve_lp(lp, opts);
    }

    /// Zero weights are raised to this floor inside weighted_l1_min.
    inline constexpr double l1_weight_floor = 1e-6;

    struct WeightedL1Solution
    {
        Vector x;
        Vector dual;            // multiplier of A x = y
        double objective = 0.0; // sum_i w_i |x_i| with the caller's weights
        LPStatus status = LPStatus::optimal;
        int iterations = 0;
    };

    /// argmin sum_i w_i |x_i|  s.t.  A x = y, solved as an LP over the split
    /// x = p - q with p, q >= 0.
    inline WeightedL1Solution weighted_l1_min(const SensingMatrix& a,
                                              const Observation& y,
                                              const Eigen::Ref<const Vector>& w,
                                              const LPOptions& opts = {},
                                              double weight_floor = l1_weight_floor)
    {
        const Index n = a.n(), m = a.m();
        require(w.size() == n, "weighted_l1_min: weight length mismatch");
        require(y.m() == m, "weighted_l1_min: observation length mismatch");
        for (Index i = 0; i < n; ++i) {
            require(w[i] >= 0.0 && std::isfinite(w[i]), "weighted_l1_min: weights must be nonnegative");
        }

        WeightedL1Solution out;
        if (y.y().isZero(0.0)) {
            out.x = Vector::Zero(n);
            out.dual = Vector::Zero(m);
            return out;
        }

        const Vector wf = w.cwiseMax(weight_floor);
        StandardLP lp;
        lp.c.resize(2 * n);
        lp.c << wf, wf;
        lp.g.resize(m, 2 * n);
        lp.g << a.entries(), -a.entries();
        lp.h = y.y();

        const LPSolution sol = solve_lp(lp, opts);
        out.x = sol.primal.head(n) - sol.primal.tail(n);
        out.dual = sol.dual_eq;
        out.objective = w.dot(out.x.cwiseAbs());
        out.status = sol.status;
        out.iterations = sol.iterations;
        return out;
    }
}
