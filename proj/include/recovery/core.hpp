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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recovery/error.hpp"
#include "recovery/linalg/factorization.hpp"

namespace recovery
{
    /// Dense m x n measurement matrix with m <= n and numerical rank m.
    class SensingMatrix
    {
    public:
        explicit SensingMatrix(Matrix entries)
            : a_(std::move(entries))
        {
            require(a_.rows() <= a_.cols(), "SensingMatrix: need m <= n, got "
                    + std::to_string(a_.rows()) + " x " + std::to_string(a_.cols()));
            require(all_finite(a_), "SensingMatrix: non-finite entries");
            const Index rank = numerical_rank(a_);
            require(rank == a_.rows(), "SensingMatrix: numerical rank "
                    + std::to_string(rank) + " is below row count " + std::to_string(a_.rows()));
        }

        const Matrix& entries() const noexcept { return a_; }
        Index m() const noexcept { return a_.rows(); }
        Index n() const noexcept { return a_.cols(); }

    private:
        Matrix a_;
    };

    /// Ground-truth signal; the support is exactly the set of nonzero entries.
    class SparseSignal
    {
    public:
        explicit SparseSignal(Vector values)
            : values_(std::move(values))
        {
            require(values_.allFinite(), "SparseSignal: non-finite entries");
            for (Index i = 0; i < values_.size(); ++i) {
                if (values_[i] != 0.0) {
                    support_.push_back(i);
                }
            }
        }

        static SparseSignal zero(Index n) { return SparseSignal(Vector::Zero(n)); }

        const Vector& values() const noexcept { return values_; }
        const std::vector<Index>& support() const noexcept { return support_; }
        Index n() const noexcept { return values_.size(); }
        Index k() const noexcept { return static_cast<Index>(support_.size()); }

    private:
        Vector values_;
        std::vector<Index> support_;
    };

    class Observation
    {
    public:
        explicit Observation(Vector y) : y_(std::move(y))
        {
            require(y_.allFinite(), "Observation: non-finite entries");
        }

        Observation(const SensingMatrix& a, Vector y) : Observation(std::move(y))
        {
            require(y_.size() == a.m(), "Observation: length " + std::to_string(y_.size())
                    + " does not match m = " + std::to_string(a.m()));
        }

        static Observation measure(const SensingMatrix& a, const SparseSignal& x)
        {
            require(x.n() == a.n(), "Observation::measure: dimension mismatch");
            return Observation(a, a.entries() * x.values());
        }

        const Vector& y() const noexcept { return y_; }
        Index m() const noexcept { return y_.size(); }

    private:
        Vector y_;
    };

    /// Binary indicator z: z_i = 1 marks an l1-penalized ("believed zero")
    /// coordinate, z_i = 0 a free coordinate of the selected support.
    class SupportIndicator
    {
    public:
        explicit SupportIndicator(std::vector<std::uint8_t> z) : z_(std::move(z))
        {
            for (auto v : z_) {
                require(v == 0 || v == 1, "SupportIndicator: entries must be 0 or 1");
            }
        }

        static SupportIndicator ones(Index n)
        {
            return SupportIndicator(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1));
        }

        static SupportIndicator zeros(Index n)
        {
            return SupportIndicator(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
        }

        Index n() const noexcept { return static_cast<Index>(z_.size()); }
        std::uint8_t operator[](Index i) const { return z_[static_cast<std::size_t>(i)]; }
        const std::vector<std::uint8_t>& values() const noexcept { return z_; }

        Index count_penalized() const
        {
            Index c = 0;
            for (auto v : z_) c += v;
            return c;
        }

        /// Indices with z_i = 0.
        std::vector<Index> free_set() const
        {
            std::vector<Index> out;
            for (std::size_t i = 0; i < z_.size(); ++i) {
                if (z_[i] == 0) out.push_back(static_cast<Index>(i));
            }
            return out;
        }

        Vector as_weights() const
        {
            Vector w(n());
            for (Index i = 0; i < n(); ++i) w[i] = (*this)[i];
            return w;
        }

        friend bool operator==(const SupportIndicator&, const SupportIndicator&) = default;

    private:
        std::vector<std::uint8_t> z_;
    };

    /// Positive finite Lagrange multiplier u of the complementarity constraint.
    /// Keeps the threshold 1/u alongside u so that a multiplier built from a
    /// threshold reproduces that threshold bit for bit.
    class MultiplierU
    {
    public:
        explicit MultiplierU(double u) : u_(u), threshold_(1.0 / u)
        {
            require(std::isfinite(u) && u > 0.0, "MultiplierU: u must be positive and finite");
            require(std::isfinite(threshold_), "MultiplierU: 1/u overflows");
        }

        static MultiplierU from_threshold(double t)
        {
            require(std::isfinite(t) && t > 0.0, "MultiplierU: threshold must be positive and finite");
            MultiplierU u(1.0 / t);
            u.threshold_ = t;
            return u;
        }

        double value() const noexcept { return u_; }
        double threshold() const noexcept { return threshold_; }

    private:
        double u_;
        double threshold_;
    };

    enum class DecodeStatus { converged, max_iters, infeasible, numerical_failure };

    inline std::string_view to_string(DecodeStatus s)
    {
        switch (s) {
            case DecodeStatus::converged:         return "converged";
            case DecodeStatus::max_iters:         return "max_iters";
            case DecodeStatus::infeasible:        return "infeasible";
            case DecodeStatus::numerical_failure: return "numerical_failure";
        }
        return "unknown";
    }

    struct DecodeResult
    {
        Vector x_hat;
        std::optional<SupportIndicator> z_final;
        std::vector<double> lagrangian_trace;
        int iterations = 0;
        DecodeStatus status = DecodeStatus::converged;

        // diagnostics
        std::optional<double> multiplier;
        int lp_iterations = 0;
        std::string message;

        bool ok() const noexcept
        {
            return status == DecodeStatus::converged || status == DecodeStatus::max_iters;
        }
    };

    /// L(x, z, u) = e^T z - u * ||D(z) x||_1 = sum_i z_i (1 - u |x_i|).
    inline double lagrangian_value(const Eigen::Ref<const Vector>& x,
                                   const SupportIndicator& z,
                                   const MultiplierU& u)
    {
        require(x.size() == z.n(), "lagrangian_value: dimension mismatch");
        double count = 0.0;
        double penalty = 0.0;
        for (Index i = 0; i < x.size(); ++i) {
            if (z[i]) {
                count += 1.0;
                penalty += std::abs(x[i]);
            }
        }
        return count - u.value() * penalty;
    }
}
