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
#include <limits>
#include <vector>

#include "recovery/linalg/factorization.hpp"

namespace recovery
{
    /// C(n, r), saturating at UINT64_MAX.
    inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r)
    {
        if (r > n) return 0;
        r = std::min(r, n - r);
        unsigned __int128 acc = 1;
        for (std::uint64_t i = 1; i <= r; ++i) {
            acc = acc * (n - r + i) / i;
            if (acc > std::numeric_limits<std::uint64_t>::max()) {
                return std::numeric_limits<std::uint64_t>::max();
            }
        }
        return static_cast<std::uint64_t>(acc);
    }

    /// Visits every r-subset of {0..n-1} in lexicographic order. The visitor
    /// returns false to stop early; the function returns false iff stopped.
    template <typename Visitor>
    bool for_each_combination(Index n, Index r, Visitor&& visit)
    {
        if (r < 0 || r > n) return true;
        std::vector<Index> idx(static_cast<std::size_t>(r));
        for (Index i = 0; i < r; ++i) idx[i] = i;
        while (true) {
            if (!visit(static_cast<const std::vector<Index>&>(idx))) return false;
            Index i = r - 1;
            while (i >= 0 && idx[i] == n - r + i) --i;
            if (i < 0) return true;
            ++idx[i];
            for (Index j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    inline Matrix select_columns(const Matrix& a, const std::vector<Index>& cols)
    {
        Matrix out(a.rows(), static_cast<Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out.col(static_cast<Index>(j)) = a.col(cols[j]);
        }
        return out;
    }
}
