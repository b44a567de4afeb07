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
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "recovery/core.hpp"
#include "recovery/verify.hpp"

namespace recovery::bench
{
    struct Instance
    {
        SensingMatrix a;
        SparseSignal x;
        Observation y;
    };

    inline std::uint64_t splitmix64(std::uint64_t v)
    {
        v += 0x9e3779b97f4a7c15ULL;
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
        return v ^ (v >> 31);
    }

    /// Stable per-trial seed; independent of scheduling.
    inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t k, std::uint64_t trial)
    {
        return splitmix64(splitmix64(splitmix64(master) ^ k) ^ trial);
    }

    /// Gaussian sensing problem: A has i.i.d. N(0,1) entries with every column
    /// rescaled to Euclidean norm column_norm; x has a uniform k-subset support
    /// and N(0, signal_std^2) nonzeros; y = A x.
    template <typename Rng>
    Instance gen_problem(Index n, Index m, Index k, Rng& rng,
                         double signal_std = 2.0, double column_norm = 2.0)
    {
        require(0 <= k && k <= m && m <= n && m >= 1, "gen_problem: need 0 <= k <= m <= n");
        require(signal_std > 0.0 && column_norm > 0.0, "gen_problem: scales must be positive");

        std::normal_distribution<double> gauss(0.0, 1.0);
        Matrix a(m, n);
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < m; ++i) a(i, j) = gauss(rng);
            a.col(j) *= column_norm / a.col(j).norm();
        }
        SensingMatrix sensing(std::move(a));
        SparseSignal x(random_sparse_vector(n, k, signal_std, rng));
        Observation y = Observation::measure(sensing, x);
        return Instance{std::move(sensing), std::move(x), std::move(y)};
    }

    inline Instance gen_problem_seeded(Index n, Index m, Index k, std::uint64_t seed,
                                       double signal_std = 2.0, double column_norm = 2.0)
    {
        std::mt19937_64 rng(seed);
        return gen_problem(n, m, k, rng, signal_std, column_norm);
    }

    namespace detail
    {
        inline void write_row(std::ostream& os, const Eigen::Ref<const Vector>& v)
        {
            char buf[32];
            for (Index i = 0; i < v.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", v[i]);
                if (i) os << ' ';
                os << buf;
            }
            os << '\n';
        }
    }

    /// Plain-text instance: "n m k", then A row-major one row per line, then
    /// x, then y; 17 significant digits.
    inline void write_instance(std::ostream& os, const Instance& inst)
    {
        os << inst.a.n() << ' ' << inst.a.m() << ' ' << inst.x.k() << '\n';
        for (Index i = 0; i < inst.a.m(); ++i) {
            detail::write_row(os, inst.a.entries().row(i).transpose());
        }
        detail::write_row(os, inst.x.values());
        detail::write_row(os, inst.y.y());
    }

    inline void write_instance(const std::string& path, const Instance& inst)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
        write_instance(os, inst);
        if (!os) throw Error(ErrorKind::io, "write failed: " + path);
    }

    inline Instance read_instance(std::istream& is)
    {
        Index n = 0, m = 0, k = 0;
        if (!(is >> n >> m >> k) || n < 1 || m < 1 || k < 0) {
            throw Error(ErrorKind::io, "instance: malformed header");
        }
        auto read = [&](double& v) {
            if (!(is >> v)) throw Error(ErrorKind::io, "instance: truncated data");
        };
        Matrix a(m, n);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j) read(a(i, j));
        Vector x(n), y(m);
        for (Index i = 0; i < n; ++i) read(x[i]);
        for (Index i = 0; i < m; ++i) read(y[i]);
        double extra;
        if (is >> extra) throw Error(ErrorKind::io, "instance: trailing data");

        SensingMatrix sensing(std::move(a));
        SparseSignal signal(std::move(x));
        require(signal.k() == k, "instance: header k = " + std::to_string(k)
                + " but x has " + std::to_string(signal.k()) + " nonzeros");
        Observation obs(sensing, std::move(y));
        return Instance{std::move(sensing), std::move(signal), std::move(obs)};
    }

    inline Instance read_instance(const std::string& path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw Error(ErrorKind::io, "cannot open " + path);
        return read_instance(is);
    }
}
