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

#include "recovery/core.hpp"
#include "recovery/linalg/factorization.hpp"

namespace recovery
{
    /// Weights below this are clamped before inversion.
    inline constexpr double min_norm_weight_floor = 1e-12;

    /// argmin sum_i w_i x_i^2  s.t.  A x = y, in closed form
    /// x = W^-1 A^T (A W^-1 A^T)^-1 y with a Cholesky solve of the m x m system.
    inline Vector weighted_min_norm(const SensingMatrix& a,
                                    const Observation& y,
                                    const Eigen::Ref<const Vector>& w)
    {
        require(w.size() == a.n(), "weighted_min_norm: weight length mismatch");
        require(y.m() == a.m(), "weighted_min_norm: observation length mismatch");
        for (Index i = 0; i < w.size(); ++i) {
            require(w[i] > 0.0 && std::isfinite(w[i]), "weighted_min_norm: weights must be positive");
        }

        const Vector w_inv = w.cwiseMax(min_norm_weight_floor).cwiseInverse();
        const Matrix& A = a.entries();
        const Matrix scaled = A * w_inv.asDiagonal();   // A W^-1
        Matrix gram = scaled * A.transpose();
        gram = 0.5 * (gram + gram.transpose()).eval();

        Vector lambda;
        try {
            lambda = cholesky_factor(gram).solve(y.y());
        } catch (const Error& e) {
            throw Error(ErrorKind::numerical_failure,
                        std::string("weighted_min_norm: A W^-1 A^T is singular (") + e.what() + ")");
        }
        return scaled.transpose() * lambda;
    }
}
