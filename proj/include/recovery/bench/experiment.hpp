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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "recovery/bench/problem.hpp"
#include "recovery/decoders.hpp"

namespace recovery::bench
{
    enum class Method { alt_l1, irls, l1, reweighted_l1 };

    inline std::string method_name(Method m)
    {
        switch (m) {
            case Method::alt_l1:        return "alt_l1";
            case Method::irls:          return "irls";
            case Method::l1:            return "l1";
            case Method::reweighted_l1: return "reweighted_l1";
        }
        return "unknown";
    }

    inline Method parse_method(const std::string& s)
    {
        for (Method m : {Method::alt_l1, Method::irls, Method::l1, Method::reweighted_l1}) {
            if (method_name(m) == s) return m;
        }
        throw Error(ErrorKind::contract_violation, "unknown method '" + s
                    + "' (expected l1, alt_l1, reweighted_l1 or irls)");
    }

    struct ExperimentConfig
    {
        Index n = 256;
        Index m = 100;
        std::vector<Index> k_grid{15, 20, 25, 30, 35, 40, 45};
        int trials = 100;
        std::vector<Method> methods{Method::l1, Method::alt_l1, Method::reweighted_l1, Method::irls};
        int L = 4;
        std::uint64_t seed = 1;
        double success_tol = 1e-3;
        double signal_std = 2.0;
        double column_norm = 2.0;
        int workers = 1;

        AltL1Config alt{};
        BaselineConfig reweighted = BaselineConfig::reweighted_l1_defaults();
        BaselineConfig irls = BaselineConfig::irls_defaults();

        void validate() const
        {
            require(m >= 1 && m <= n, "ExperimentConfig: need 1 <= m <= n");
            require(!k_grid.empty(), "ExperimentConfig: empty k_grid");
            for (Index k : k_grid) {
                require(k >= 0 && k <= m, "ExperimentConfig: every k must satisfy 0 <= k <= m");
            }
            require(trials >= 1, "ExperimentConfig: trials must be positive");
            require(!methods.empty(), "ExperimentConfig: no methods selected");
            require(L >= 1, "ExperimentConfig: L must be positive");
            require(success_tol > 0.0, "ExperimentConfig: success_tol must be positive");
            require(signal_std > 0.0 && column_norm > 0.0, "ExperimentConfig: scales must be positive");
            require(workers >= 1, "ExperimentConfig: workers must be positive");
        }
    };

    struct TrialRecord
    {
        Index k = 0;
        int trial = 0;
        std::string method;
        bool success = false;
        double recovery_error = 0.0;
        double wall_time_ms = 0.0;
        std::uint64_t instance_seed = 0;
        DecodeStatus status = DecodeStatus::converged;   // not persisted
    };

    struct Score
    {
        bool success;
        double recovery_error;
    };

    /// Relative l_inf error ||x_hat - x||_inf / max(||x||_inf, 1); success iff <= tol.
    inline Score score_success(const Eigen::Ref<const Vector>& x_hat, const SparseSignal& x_true, double tol = 1e-3)
    {
        require(x_hat.size() == x_true.n(), "score_success: dimension mismatch");
        if (!x_hat.allFinite()) {
            return {false, std::numeric_limits<double>::infinity()};
        }
        const double scale = std::max(x_true.values().lpNorm<Eigen::Infinity>(), 1.0);
        const double err = (x_hat - x_true.values()).lpNorm<Eigen::Infinity>() / scale;
        return {err <= tol, err};
    }

    inline DecodeResult run_method(Method method, const Instance& inst, const ExperimentConfig& cfg)
    {
        switch (method) {
            case Method::l1:
                return l1_decode(inst.a, inst.y, cfg.alt.lp_tol);
            case Method::alt_l1: {
                AltL1Config alt = cfg.alt;
                alt.L = cfg.L;
                return alt_l1(inst.a, inst.y, alt);
            }
            case Method::reweighted_l1:
                return reweighted_l1(inst.a, inst.y, cfg.reweighted);
            case Method::irls:
                return irls(inst.a, inst.y, cfg.irls);
        }
        throw Error(ErrorKind::contract_violation, "run_method: unknown method");
    }

    struct Tally
    {
        int successes = 0;
        int trials = 0;

        double rate() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / trials; }
        friend bool operator==(const Tally&, const Tally&) = default;
    };

    /// Success rate per (method, k).
    struct SuccessCurve
    {
        std::map<std::string, std::map<Index, Tally>> rates;

        double rate(const std::string& method, Index k) const
        {
            return rates.at(method).at(k).rate();
        }

        double summed_rate(const std::string& method) const
        {
            double s = 0.0;
            for (const auto& [k, t] : rates.at(method)) s += t.rate();
            return s;
        }

        bool empty() const { return rates.empty(); }
        friend bool operator==(const SuccessCurve&, const SuccessCurve&) = default;
    };

    inline SuccessCurve aggregate(const std::vector<TrialRecord>& records)
    {
        SuccessCurve curve;
        for (const auto& r : records) {
            Tally& t = curve.rates[r.method][r.k];
            ++t.trials;
            t.successes += r.success ? 1 : 0;
        }
        return curve;
    }

    struct SweepResult
    {
        std::vector<TrialRecord> records;   // sorted by (k, trial, method)
        SuccessCurve curve;
    };

    inline void sort_records(std::vector<TrialRecord>& records)
    {
        std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
            if (a.k != b.k) return a.k < b.k;
            if (a.trial != b.trial) return a.trial < b.trial;
            return a.method < b.method;
        });
    }

    /// Decodes every (k, trial) instance with each enabled method. Instances
    /// are regenerated from trial_seed(seed, k, trial), so the output does not
    /// depend on the worker count.
    inline SweepResult run_sweep(const ExperimentConfig& cfg,
                                 const std::function<void(std::size_t, std::size_t)>& progress = {})
    {
        cfg.validate();

        struct Task { Index k; int trial; };
        std::vector<Task> tasks;
        for (Index k : cfg.k_grid)
            for (int t = 0; t < cfg.trials; ++t) tasks.push_back({k, t});

        std::vector<std::vector<TrialRecord>> slots(tasks.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> done{0};
        std::mutex progress_mutex;

        auto worker = [&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++) {
                const Task task = tasks[i];
                const std::uint64_t seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(task.k),
                                                      static_cast<std::uint64_t>(task.trial));
                const Instance inst = gen_problem_seeded(cfg.n, cfg.m, task.k, seed,
                                                         cfg.signal_std, cfg.column_norm);
                for (Method method : cfg.methods) {
                    TrialRecord rec;
                    rec.k = task.k;
                    rec.trial = task.trial;
                    rec.method = method_name(method);
                    rec.instance_seed = seed;

                    const auto t0 = std::chrono::steady_clock::now();
                    DecodeResult res;
                    try {
                        res = run_method(method, inst, cfg);
                    } catch (const Error& e) {
                        res.x_hat = Vector::Zero(cfg.n);
                        res.status = DecodeStatus::numerical_failure;
                        res.message = e.what();
                    }
                    rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count();

                    const Score score = score_success(res.x_hat, inst.x, cfg.success_tol);
                    rec.status = res.status;
                    rec.success = res.ok() && score.success;
                    rec.recovery_error = score.recovery_error;
                    slots[i].push_back(std::move(rec));
                }
                const std::size_t finished = ++done;
                if (progress) {
                    std::lock_guard<std::mutex> lock(progress_mutex);
                    progress(finished, tasks.size());
                }
            }
        };

        const int nworkers = std::min<int>(cfg.workers, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
        if (nworkers <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        SweepResult out;
        for (auto& slot : slots)
            for (auto& rec : slot) out.records.push_back(std::move(rec));
        sort_records(out.records);
        out.curve = aggregate(out.records);
        return out;
    }

    inline constexpr const char* csv_header = "k,trial,method,success,recovery_error,wall_time_ms,instance_seed";

    inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& records)
    {
        os << csv_header << '\n';
        char err[32], ms[32];
        for (const auto& r : records) {
            std::snprintf(err, sizeof err, "%.17g", r.recovery_error);
            std::snprintf(ms, sizeof ms, "%.3f", r.wall_time_ms);
            os << r.k << ',' << r.trial << ',' << r.method << ',' << (r.success ? 1 : 0) << ','
               << err << ',' << ms << ',' << r.instance_seed << '\n';
        }
    }

    inline void write_csv(const std::string& path, const std::vector<TrialRecord>& records)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw Error(ErrorKind::io, "cannot open " + path + " for writing");
        write_csv(os, records);
        if (!os) throw Error(ErrorKind::io, "write failed: " + path);
    }

    inline std::vector<TrialRecord> read_csv(std::istream& is)
    {
        std::string line;
        if (!std::getline(is, line) || line != csv_header) {
            throw Error(ErrorKind::io, "csv: missing or unexpected header");
        }
        std::vector<TrialRecord> out;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) f.push_back(cell);
            if (f.size() != 7) throw Error(ErrorKind::io, "csv: expected 7 fields in '" + line + "'");
            try {
                TrialRecord r;
                r.k = std::stol(f[0]);
                r.trial = std::stoi(f[1]);
                r.method = f[2];
                r.success = f[3] == "1";
                r.recovery_error = std::stod(f[4]);
                r.wall_time_ms = std::stod(f[5]);
                r.instance_seed = std::stoull(f[6]);
                out.push_back(std::move(r));
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::io, "csv: malformed row '" + line + "'");
            }
        }
        return out;
    }

    inline std::vector<TrialRecord> read_csv(const std::string& path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw Error(ErrorKind::io, "cannot open " + path);
        return read_csv(is);
    }
}
