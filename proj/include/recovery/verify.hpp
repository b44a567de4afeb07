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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "recovery/combinatorics.hpp"
#include "recovery/core.hpp"
#include "recovery/decoders.hpp"

namespace recovery
{
    inline constexpr std::uint64_t max_rank_subsets = 10'000'000;

    struct RankCertificate
    {
        Index k = 0;
        bool holds = true;
        std::optional<std::vector<Index>> witness;  // a 2k-subset of deficient rank
        std::uint64_t subsets_checked = 0;
    };

    /// Checks that every 2k-column submatrix of A has numerical rank 2k, which
    /// is equivalent to exact l0 decoding on all k-sparse signals. Subsets are
    /// visited in lexicographic order and the first deficient one is returned.
    inline RankCertificate check_rank_condition(const SensingMatrix& a, Index k)
    {
        require(k >= 0, "check_rank_condition: k must be nonnegative");
        require(2 * k <= a.m(), "check_rank_condition: need 2k <= m");
        const std::uint64_t total = binomial(static_cast<std::uint64_t>(a.n()), static_cast<std::uint64_t>(2 * k));
        if (total > max_rank_subsets) {
            throw Error(ErrorKind::too_large, "check_rank_condition: C(n, 2k) = "
                        + std::to_string(total) + " exceeds " + std::to_string(max_rank_subsets));
        }

        RankCertificate cert;
        cert.k = k;
        const Matrix& A = a.entries();
        for_each_combination(a.n(), 2 * k, [&](const std::vector<Index>& cols) {
            ++cert.subsets_checked;
            if (cols.empty()) return true;
            if (numerical_rank(select_columns(A, cols)) < 2 * k) {
                cert.holds = false;
                cert.witness = cols;
                return false;
            }
            return true;
        });
        return cert;
    }

    struct RecoveryCounterexample
    {
        Vector x_true;
        Vector x_decoded;
        double error;
    };

    struct EquivalenceReport
    {
        RankCertificate certificate;
        bool condition_met = false;
        int trials_run = 0;
        int trials_passed = 0;
        std::vector<RecoveryCounterexample> counterexamples;

        bool all_passed() const { return condition_met && trials_passed == trials_run; }
    };

    /// Random k-sparse vector with a uniform support and N(0, std^2) nonzeros.
    template <typename Rng>
    Vector random_sparse_vector(Index n, Index k, double std_dev, Rng& rng)
    {
        require(k >= 0 && k <= n, "random_sparse_vector: need 0 <= k <= n");
        std::vector<Index> idx(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) idx[i] = i;
        // Partial Fisher-Yates: the first k slots are a uniform k-subset.
        for (Index i = 0; i < k; ++i) {
            std::uniform_int_distribution<Index> pick(i, n - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        std::normal_distribution<double> gauss(0.0, std_dev);
        Vector x = Vector::Zero(n);
        for (Index i = 0; i < k; ++i) {
            double v = 0.0;
            while (v == 0.0) v = gauss(rng);
            x[idx[i]] = v;
        }
        return x;
    }

    /// When the rank condition holds at k, confirms that l0_bruteforce
    /// reproduces `trials` random k-sparse signals. A counterexample here
    /// points at the implementation.
    inline EquivalenceReport certify_recovery_equivalence(const SensingMatrix& a, Index k, int trials,
                                                          std::uint64_t seed, double tol = 1e-8)
    {
        require(a.n() <= 20, "certify_recovery_equivalence: n must be at most 20");
        require(trials >= 0, "certify_recovery_equivalence: trials must be nonnegative");

        EquivalenceReport report;
        report.certificate = check_rank_condition(a, k);
        report.condition_met = report.certificate.holds;
        if (!report.condition_met) {
            return report;
        }

        std::mt19937_64 rng(seed);
        for (int t = 0; t < trials; ++t) {
            const Vector x = random_sparse_vector(a.n(), k, 1.0, rng);
            const Observation y(a, a.entries() * x);
            const SparseSignal decoded = l0_bruteforce(a, y, k);
            const double err = (decoded.values() - x).lpNorm<Eigen::Infinity>();
            ++report.trials_run;
            if (err <= tol * (1.0 + x.lpNorm<Eigen::Infinity>())) {
                ++report.trials_passed;
            } else {
                report.counterexamples.push_back({x, decoded.values(), err});
            }
        }
        return report;
    }
}
