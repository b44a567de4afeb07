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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recovery/combinatorics.hpp"
#include "recovery/core.hpp"
#include "recovery/dense_linalg.hpp"
#include "recovery/lp.hpp"

namespace recovery
{
    /// How a coordinate with |x_i| exactly equal to 1/u is classified.
    enum class TieRule { penalize, free };

    struct AltL1Config
    {
        std::optional<MultiplierU> u;   // empty: chosen from the plain l1 solution
        int L = 4;
        TieRule tie_rule = TieRule::free;
        double lp_tol = 1e-9;
        double weight_floor = l1_weight_floor;

        // Entries of x0 at or below zero_tol * ||x0||_inf do not count as
        // nonzero when u is chosen automatically.
        double zero_tol = 1e-6;

        // Least-squares re-fit on {i : z_i = 0} after the last step.
        bool support_projection = false;

        void validate() const
        {
            require(L >= 1, "AltL1Config: L must be at least 1");
            require(lp_tol > 0.0, "AltL1Config: lp_tol must be positive");
            require(weight_floor > 0.0, "AltL1Config: weight_floor must be positive");
            require(zero_tol >= 0.0, "AltL1Config: zero_tol must be nonnegative");
        }
    };

    struct BaselineConfig
    {
        /// One value: fixed epsilon (or the starting value of the adaptive
        /// schedule). Several values: explicit per-iteration schedule.
        std::vector<double> epsilon{0.1};
        int iters = 4;
        double p = 0.0;         // IRLS only

        // IRLS adaptive schedule: divide epsilon by epsilon_decay whenever the
        // iterate moves less than sqrt(epsilon)/100, stop at epsilon_floor.
        bool adaptive = false;
        double epsilon_decay = 10.0;
        double epsilon_floor = 1e-8;

        double lp_tol = 1e-9;

        static BaselineConfig reweighted_l1_defaults()
        {
            return BaselineConfig{};
        }

        static BaselineConfig irls_defaults()
        {
            BaselineConfig cfg;
            cfg.epsilon = {1.0};
            cfg.iters = 100;
            cfg.p = 0.0;
            cfg.adaptive = true;
            return cfg;
        }

        double epsilon_at(int t) const
        {
            return epsilon[static_cast<std::size_t>(std::min<int>(t, static_cast<int>(epsilon.size()) - 1))];
        }

        void validate() const
        {
            require(!epsilon.empty(), "BaselineConfig: empty epsilon schedule");
            for (std::size_t i = 0; i < epsilon.size(); ++i) {
                require(epsilon[i] > 0.0 && std::isfinite(epsilon[i]), "BaselineConfig: epsilon must be positive");
                require(i == 0 || epsilon[i] <= epsilon[i - 1], "BaselineConfig: epsilon schedule must be non-increasing");
            }
            require(iters >= 1, "BaselineConfig: iters must be at least 1");
            require(p >= 0.0 && p <= 1.0, "BaselineConfig: p must lie in [0, 1]");
            require(epsilon_decay > 1.0, "BaselineConfig: epsilon_decay must exceed 1");
            require(epsilon_floor > 0.0, "BaselineConfig: epsilon_floor must be positive");
            require(lp_tol > 0.0, "BaselineConfig: lp_tol must be positive");
        }
    };

    namespace detail
    {
        inline void check_system(const SensingMatrix& a, const Observation& y)
        {
            require(y.m() == a.m(), "decoder: observation length " + std::to_string(y.m())
                    + " does not match m = " + std::to_string(a.m()));
        }

        inline LPOptions lp_options(double tol)
        {
            LPOptions o;
            o.tol = tol;
            return o;
        }

        /// Maps a non-optimal LP status onto the decode status; true if usable.
        inline bool absorb(DecodeResult& r, const WeightedL1Solution& s)
        {
            r.lp_iterations += s.iterations;
            switch (s.status) {
                case LPStatus::optimal:
                    return true;
                case LPStatus::max_iters:
                    r.status = DecodeStatus::max_iters;
                    return true;
                case LPStatus::infeasible:
                case LPStatus::unbounded:
                    r.status = DecodeStatus::infeasible;
                    r.message = std::string("LP reported ") + std::string(to_string(s.status));
                    return false;
            }
            return false;
        }

        /// Runs body; numerical failures become a status instead of an exception.
        template <typename Body>
        DecodeResult guarded(Index n, Body&& body)
        {
            try {
                return body();
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::numerical_failure && e.kind() != ErrorKind::infeasible) {
                    throw;
                }
                DecodeResult r;
                r.x_hat = Vector::Zero(n);
                r.status = e.kind() == ErrorKind::infeasible ? DecodeStatus::infeasible
                                                             : DecodeStatus::numerical_failure;
                r.message = e.what();
                return r;
            }
        }
    }

    /// Sparsest solution of A x = y with at most k_max nonzeros, by enumerating
    /// supports in increasing size and lexicographic order. Exponential; meant
    /// for n up to about 20.
    inline SparseSignal l0_bruteforce(const SensingMatrix& a, const Observation& y, Index k_max)
    {
        detail::check_system(a, y);
        require(k_max >= 0 && k_max <= a.m(), "l0_bruteforce: need 0 <= k_max <= m");

        const Matrix& A = a.entries();
        const double tol = 1e-8 * (1.0 + y.y().norm());
        std::optional<Vector> found;

        for (Index k = 0; k <= k_max && !found; ++k) {
            for_each_combination(a.n(), k, [&](const std::vector<Index>& support) {
                Vector x = Vector::Zero(a.n());
                if (k > 0) {
                    const Matrix sub = select_columns(A, support);
                    const Vector coef = sub.colPivHouseholderQr().solve(y.y());
                    for (Index j = 0; j < k; ++j) x[support[j]] = coef[j];
                }
                if ((A * x - y.y()).norm() <= tol) {
                    found = std::move(x);
                    return false;
                }
                return true;
            });
        }
        if (!found) {
            throw Error(ErrorKind::infeasible, "l0_bruteforce: no solution with at most "
                        + std::to_string(k_max) + " nonzeros");
        }
        return SparseSignal(std::move(*found));
    }

    /// Plain l1 decoder: argmin ||x||_1 s.t. A x = y.
    inline DecodeResult l1_decode(const SensingMatrix& a, const Observation& y, double lp_tol = 1e-9)
    {
        detail::check_system(a, y);
        return detail::guarded(a.n(), [&] {
            DecodeResult r;
            const auto s = weighted_l1_min(a, y, Vector::Ones(a.n()), detail::lp_options(lp_tol));
            detail::absorb(r, s);
            r.x_hat = s.x;
            r.iterations = 1;
            return r;
        });
    }

    /// Maximizer of L(x, ., u) over {0,1}^n: z_i = 1 iff |x_i| < 1/u, ties by rule.
    inline SupportIndicator threshold_z(const Eigen::Ref<const Vector>& x,
                                        const MultiplierU& u,
                                        TieRule tie_rule = TieRule::free)
    {
        const double t = u.threshold();
        std::vector<std::uint8_t> z(static_cast<std::size_t>(x.size()));
        for (Index i = 0; i < x.size(); ++i) {
            const double ax = std::abs(x[i]);
            if (ax < t) {
                z[i] = 1;
            } else if (ax > t) {
                z[i] = 0;
            } else {
                z[i] = tie_rule == TieRule::penalize ? 1 : 0;
            }
        }
        return SupportIndicator(std::move(z));
    }

    /// Smallest u for which the ceil(m/4) largest |x0_i| reach 1/u: u = 1/t with
    /// t the ceil(m/4)-th largest magnitude.
    inline MultiplierU select_u(const Eigen::Ref<const Vector>& x0, Index m)
    {
        require(m >= 1, "select_u: m must be positive");
        const Index r = (m + 3) / 4;
        std::vector<double> mags;
        mags.reserve(static_cast<std::size_t>(x0.size()));
        for (Index i = 0; i < x0.size(); ++i) {
            if (x0[i] != 0.0) mags.push_back(std::abs(x0[i]));
        }
        if (static_cast<Index>(mags.size()) < r) {
            throw Error(ErrorKind::degenerate_input, "select_u: need " + std::to_string(r)
                        + " nonzero entries, found " + std::to_string(mags.size()));
        }
        std::nth_element(mags.begin(), mags.begin() + (r - 1), mags.end(), std::greater<>());
        return MultiplierU::from_threshold(mags[static_cast<std::size_t>(r - 1)]);
    }

    namespace detail
    {
        /// Automatic multiplier for the alternating decoder. Entries of x0 that
        /// are zero up to zero_tol are ignored; if fewer than ceil(m/4)
        /// significant entries remain, every significant entry is left free.
        inline MultiplierU auto_multiplier(const Vector& x0, Index m, double zero_tol)
        {
            const double scale = x0.lpNorm<Eigen::Infinity>();
            if (scale == 0.0) {
                return MultiplierU(1.0);
            }
            Vector cleaned = x0;
            for (Index i = 0; i < cleaned.size(); ++i) {
                if (std::abs(cleaned[i]) <= zero_tol * scale) cleaned[i] = 0.0;
            }
            const Index r = (m + 3) / 4;
            const Index nnz = (cleaned.array() != 0.0).count();
            if (nnz >= r) {
                return select_u(cleaned, m);
            }
            double smallest = scale;
            for (Index i = 0; i < cleaned.size(); ++i) {
                if (cleaned[i] != 0.0) smallest = std::min(smallest, std::abs(cleaned[i]));
            }
            return MultiplierU::from_threshold(smallest);
        }
    }

    /// Alternating l1: block ascent on L(x, z, u) starting from the plain l1
    /// solution. Each pass thresholds z from the previous x, then re-solves the
    /// l1 problem restricted to the penalized coordinates. Runs exactly cfg.L
    /// passes; the trace holds L(x, z, u) for passes 0..L.
    inline DecodeResult alt_l1(const SensingMatrix& a, const Observation& y, const AltL1Config& cfg = {})
    {
        detail::check_system(a, y);
        cfg.validate();
        const LPOptions opts = detail::lp_options(cfg.lp_tol);

        return detail::guarded(a.n(), [&] {
            DecodeResult r;
            const auto first = weighted_l1_min(a, y, Vector::Ones(a.n()), opts, cfg.weight_floor);
            if (!detail::absorb(r, first)) {
                r.x_hat = first.x;
                return r;
            }
            Vector x = first.x;
            SupportIndicator z = SupportIndicator::ones(a.n());

            const MultiplierU u = cfg.u ? *cfg.u : detail::auto_multiplier(x, a.m(), cfg.zero_tol);
            r.multiplier = u.value();
            r.lagrangian_trace.push_back(lagrangian_value(x, z, u));

            for (int l = 1; l <= cfg.L; ++l) {
                z = threshold_z(x, u, cfg.tie_rule);
                const auto step = weighted_l1_min(a, y, z.as_weights(), opts, cfg.weight_floor);
                if (!detail::absorb(r, step)) {
                    r.x_hat = x;
                    r.z_final = z;
                    return r;
                }
                x = step.x;
                r.lagrangian_trace.push_back(lagrangian_value(x, z, u));
                r.iterations = l;
            }

            if (cfg.support_projection) {
                const std::vector<Index> free = z.free_set();
                if (!free.empty() && static_cast<Index>(free.size()) <= a.m()) {
                    const Matrix sub = select_columns(a.entries(), free);
                    const Vector coef = sub.colPivHouseholderQr().solve(y.y());
                    x.setZero();
                    for (std::size_t j = 0; j < free.size(); ++j) x[free[j]] = coef[static_cast<Index>(j)];
                }
            }

            r.x_hat = std::move(x);
            r.z_final = std::move(z);
            return r;
        });
    }

    /// Reweighted l1: w = e, then w_i = 1/(|x_i| + eps) between LP solves.
    inline DecodeResult reweighted_l1(const SensingMatrix& a, const Observation& y,
                                      const BaselineConfig& cfg = BaselineConfig::reweighted_l1_defaults())
    {
        detail::check_system(a, y);
        cfg.validate();
        const LPOptions opts = detail::lp_options(cfg.lp_tol);

        return detail::guarded(a.n(), [&] {
            DecodeResult r;
            Vector w = Vector::Ones(a.n());
            Vector x = Vector::Zero(a.n());
            for (int t = 0; t < cfg.iters; ++t) {
                const auto s = weighted_l1_min(a, y, w, opts);
                if (!detail::absorb(r, s)) break;
                x = s.x;
                r.iterations = t + 1;
                w = (x.cwiseAbs().array() + cfg.epsilon_at(t)).inverse().matrix();
            }
            r.x_hat = std::move(x);
            return r;
        });
    }

    /// Iteratively reweighted least squares for the l_p quasi-norm with
    /// weights (x_i^2 + eps)^(p/2 - 1).
    inline DecodeResult irls(const SensingMatrix& a, const Observation& y,
                             const BaselineConfig& cfg = BaselineConfig::irls_defaults())
    {
        detail::check_system(a, y);
        cfg.validate();

        return detail::guarded(a.n(), [&] {
            DecodeResult r;
            Vector x = weighted_min_norm(a, y, Vector::Ones(a.n()));
            r.status = DecodeStatus::max_iters;
            double eps = cfg.epsilon.front();
            const double exponent = cfg.p / 2.0 - 1.0;

            for (int t = 0; t < cfg.iters; ++t) {
                if (!cfg.adaptive) eps = cfg.epsilon_at(t);
                const Vector w = (x.array().square() + eps).pow(exponent).matrix();
                Vector next = weighted_min_norm(a, y, w);
                const double change = (next - x).norm();
                x = std::move(next);
                r.iterations = t + 1;

                if (cfg.adaptive && change < std::sqrt(eps) / 100.0) {
                    if (eps <= cfg.epsilon_floor) {
                        r.status = DecodeStatus::converged;
                        break;
                    }
                    eps = std::max(eps / cfg.epsilon_decay, cfg.epsilon_floor);
                }
            }
            if (!cfg.adaptive) r.status = DecodeStatus::converged;
            r.x_hat = std::move(x);
            return r;
        });
    }

    /// Lower estimate of the dual function theta(u): the Lagrangian reached by
    /// L alternating passes at the fixed multiplier u.
    inline double approx_dual(const SensingMatrix& a, const Observation& y, const MultiplierU& u, int L,
                              double lp_tol = 1e-9)
    {
        AltL1Config cfg;
        cfg.u = u;
        cfg.L = L;
        cfg.lp_tol = lp_tol;
        const DecodeResult r = alt_l1(a, y, cfg);
        if (!r.ok()) {
            throw Error(r.status == DecodeStatus::infeasible ? ErrorKind::infeasible : ErrorKind::numerical_failure,
                        "approx_dual: " + r.message);
        }
        return r.lagrangian_trace.back();
    }

    struct DualPoint
    {
        double u;
        double value;
    };

    inline std::vector<DualPoint> dual_scan(const SensingMatrix& a, const Observation& y,
                                            const std::vector<MultiplierU>& u_grid, int L)
    {
        require(!u_grid.empty(), "dual_scan: empty grid");
        std::vector<DualPoint> out;
        out.reserve(u_grid.size());
        for (const auto& u : u_grid) {
            out.push_back({u.value(), approx_dual(a, y, u, L)});
        }
        return out;
    }

    /// n points log-spaced on [lo, hi].
    inline std::vector<MultiplierU> log_grid(double lo, double hi, int points)
    {
        require(lo > 0.0 && hi >= lo && points >= 1, "log_grid: need 0 < lo <= hi and points >= 1");
        std::vector<MultiplierU> grid;
        for (int i = 0; i < points; ++i) {
            const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
            grid.emplace_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
        }
        return grid;
    }
}
