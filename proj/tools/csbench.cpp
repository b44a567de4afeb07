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

// csbench: command-line front end for the sparse recovery toolkit.
//
//   csbench gen        write a random instance to a file
//   csbench decode     decode one instance with one method
//   csbench sweep      Monte Carlo success-rate sweep (CSV + optional SVG)
//   csbench certify    rank-condition certificate for exact l0 decoding
//   csbench dual-scan  alternating-l1 estimate of the dual function over a u grid

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "recovery/recovery.hpp"

using namespace recovery;
using namespace recovery::bench;
using json = nlohmann::json;

namespace
{
    struct InstanceSource
    {
        std::string path;
        Index n = 64;
        Index m = 25;
        Index k = 5;
        std::uint64_t seed = 1;
        double signal_std = 2.0;
        double column_norm = 2.0;

        void add_to(CLI::App* cmd)
        {
            cmd->add_option("--instance", path, "Instance file (otherwise one is generated)");
            cmd->add_option("--n", n, "Signal length")->capture_default_str();
            cmd->add_option("--m", m, "Number of measurements")->capture_default_str();
            cmd->add_option("--k", k, "Sparsity")->capture_default_str();
            cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
            cmd->add_option("--signal_std", signal_std, "Std. deviation of nonzeros")->capture_default_str();
            cmd->add_option("--column_norm", column_norm, "Euclidean norm of each column of A")->capture_default_str();
        }

        Instance load() const
        {
            if (!path.empty()) return read_instance(path);
            return gen_problem_seeded(n, m, k, seed, signal_std, column_norm);
        }
    };

    json vector_json(const Vector& v)
    {
        return std::vector<double>(v.data(), v.data() + v.size());
    }

    TieRule parse_tie_rule(const std::string& s)
    {
        if (s == "free") return TieRule::free;
        if (s == "penalize") return TieRule::penalize;
        throw Error(ErrorKind::contract_violation, "tie_rule must be 'free' or 'penalize'");
    }

    std::vector<MultiplierU> to_multipliers(const std::vector<double>& us)
    {
        std::vector<MultiplierU> out;
        for (double u : us) out.emplace_back(u);
        return out;
    }

    /// Applies `key = value` lines from a config file to options of cmd that
    /// were not given on the command line.
    void apply_config_file(CLI::App* cmd, const std::string& path)
    {
        std::vector<CLI::ConfigItem> items;
        try {
            items = CLI::ConfigTOML().from_file(path);
        } catch (const CLI::Error& e) {
            throw Error(ErrorKind::io, "config " + path + ": " + e.what());
        }
        for (const auto& item : items) {
            if (item.name == "++" || item.name == "--") continue;   // section markers
            CLI::Option* opt = cmd->get_option_no_throw("--" + item.name);
            if (opt == nullptr) {
                throw Error(ErrorKind::contract_violation, "config " + path + ": unknown key '" + item.name + "'");
            }
            if (opt->count() > 0) continue;
            for (const auto& value : item.inputs) opt->add_result(value);
            opt->run_callback();
        }
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Sparse signal recovery: l1, alternating l1, reweighted l1, IRLS and l0 decoders"};
    app.require_subcommand(1);

    // gen
    InstanceSource gen_src;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a Gaussian instance and write it to a file");
    gen_src.add_to(gen);
    gen->add_option("--out", gen_out, "Output path ('-' for stdout)")->required();

    // decode
    InstanceSource dec_src;
    std::string dec_method = "alt_l1";
    AltL1Config dec_alt;
    std::optional<double> dec_u;
    std::string dec_tie = "free";
    std::vector<double> dec_eps;
    std::optional<int> dec_iters;
    double dec_p = 0.0;
    double dec_tol = 1e-3;
    auto* decode = app.add_subcommand("decode", "Decode one instance with one method");
    dec_src.add_to(decode);
    decode->add_option("--method", dec_method, "l1, alt_l1, reweighted_l1 or irls")->capture_default_str();
    decode->add_option("--L", dec_alt.L, "Alternations for alt_l1")->capture_default_str();
    decode->add_option("--u", dec_u, "Fixed multiplier for alt_l1 (default: automatic)");
    decode->add_option("--tie_rule", dec_tie, "free or penalize")->capture_default_str();
    decode->add_flag("--support_projection", dec_alt.support_projection, "Least-squares re-fit on the final support");
    decode->add_option("--epsilon", dec_eps, "Epsilon value or schedule for the baselines")->delimiter(',');
    decode->add_option("--iters", dec_iters, "Iterations for the baselines");
    decode->add_option("--p", dec_p, "IRLS exponent")->capture_default_str();
    decode->add_option("--success_tol", dec_tol, "Relative l_inf tolerance for success")->capture_default_str();

    // sweep
    ExperimentConfig sw;
    std::vector<std::string> sw_methods{"l1", "alt_l1", "reweighted_l1", "irls"};
    std::string sw_config, sw_csv, sw_svg;
    bool sw_quiet = false;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo success-rate sweep");
    sweep->add_option("--config", sw_config, "key = value file with ExperimentConfig fields");
    sweep->add_option("--n", sw.n, "Signal length")->capture_default_str();
    sweep->add_option("--m", sw.m, "Number of measurements")->capture_default_str();
    sweep->add_option("--k_grid", sw.k_grid, "Sparsity levels")->delimiter(',')->capture_default_str();
    sweep->add_option("--trials", sw.trials, "Trials per sparsity level")->capture_default_str();
    sweep->add_option("--methods", sw_methods, "Methods to compare")->delimiter(',')->capture_default_str();
    sweep->add_option("--L", sw.L, "Alternations for alt_l1")->capture_default_str();
    sweep->add_option("--seed", sw.seed, "Master seed")->capture_default_str();
    sweep->add_option("--success_tol", sw.success_tol, "Relative l_inf tolerance for success")->capture_default_str();
    sweep->add_option("--signal_std", sw.signal_std, "Std. deviation of nonzeros")->capture_default_str();
    sweep->add_option("--column_norm", sw.column_norm, "Euclidean norm of each column of A")->capture_default_str();
    sweep->add_option("--workers", sw.workers, "Worker threads")->capture_default_str();
    sweep->add_option("--csv", sw_csv, "Output CSV path")->required();
    sweep->add_option("--svg", sw_svg, "Optional SVG plot path");
    sweep->add_flag("--quiet", sw_quiet, "No progress output");

    // certify
    InstanceSource cert_src;
    Index cert_k = 1;
    int cert_trials = 0;
    std::uint64_t cert_seed = 1;
    auto* certify = app.add_subcommand("certify", "Check the 2k-column rank condition for exact l0 decoding");
    cert_src.n = 10;
    cert_src.m = 6;
    cert_src.k = 0;
    cert_src.add_to(certify);
    certify->add_option("--sparsity", cert_k, "Sparsity level k to certify")->capture_default_str();
    certify->add_option("--trials", cert_trials, "Random l0 decoding trials when the condition holds")->capture_default_str();
    certify->add_option("--trial_seed", cert_seed, "Seed for the decoding trials")->capture_default_str();

    // dual-scan
    InstanceSource ds_src;
    std::vector<double> ds_u;
    double ds_lo = 0.01, ds_hi = 100.0;
    int ds_points = 10;
    int ds_L = 4;
    auto* dscan = app.add_subcommand("dual-scan", "Evaluate the alternating-l1 dual estimate over a grid of u");
    ds_src.add_to(dscan);
    dscan->add_option("--u", ds_u, "Explicit grid of multipliers")->delimiter(',');
    dscan->add_option("--u_min", ds_lo, "Lower end of the log grid")->capture_default_str();
    dscan->add_option("--u_max", ds_hi, "Upper end of the log grid")->capture_default_str();
    dscan->add_option("--points", ds_points, "Points in the log grid")->capture_default_str();
    dscan->add_option("--L", ds_L, "Alternations per evaluation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::fprintf(stderr, "csbench: error: %s\n", e.what());
        return e.get_exit_code();
    }

    try {
        if (*gen) {
            const Instance inst = gen_src.load();
            if (gen_out == "-") {
                write_instance(std::cout, inst);
            } else {
                write_instance(gen_out, inst);
            }
        } else if (*decode) {
            const Instance inst = dec_src.load();
            const Method method = parse_method(dec_method);
            DecodeResult res;
            if (method == Method::alt_l1) {
                dec_alt.tie_rule = parse_tie_rule(dec_tie);
                if (dec_u) dec_alt.u = MultiplierU(*dec_u);
                res = alt_l1(inst.a, inst.y, dec_alt);
            } else if (method == Method::l1) {
                res = l1_decode(inst.a, inst.y);
            } else {
                BaselineConfig cfg = method == Method::irls ? BaselineConfig::irls_defaults()
                                                            : BaselineConfig::reweighted_l1_defaults();
                if (!dec_eps.empty()) cfg.epsilon = dec_eps;
                if (dec_iters) cfg.iters = *dec_iters;
                cfg.p = dec_p;
                res = method == Method::irls ? irls(inst.a, inst.y, cfg) : reweighted_l1(inst.a, inst.y, cfg);
            }
            const Score score = score_success(res.x_hat, inst.x, dec_tol);

            json out;
            out["method"] = dec_method;
            out["n"] = inst.a.n();
            out["m"] = inst.a.m();
            out["k"] = inst.x.k();
            out["status"] = std::string(to_string(res.status));
            out["iterations"] = res.iterations;
            out["lp_iterations"] = res.lp_iterations;
            if (res.multiplier) out["u"] = *res.multiplier;
            if (!res.lagrangian_trace.empty()) out["lagrangian_trace"] = res.lagrangian_trace;
            if (res.z_final) out["free_set"] = res.z_final->free_set();
            if (!res.message.empty()) out["message"] = res.message;
            out["success"] = score.success;
            out["recovery_error"] = score.recovery_error;
            out["x_hat"] = vector_json(res.x_hat);
            std::cout << out.dump(2) << '\n';
            if (!res.ok()) return 2;
        } else if (*sweep) {
            if (!sw_config.empty()) apply_config_file(sweep, sw_config);
            sw.methods.clear();
            for (const auto& name : sw_methods) sw.methods.push_back(parse_method(name));

            auto progress = [&](std::size_t done, std::size_t total) {
                if (!sw_quiet && (done % 10 == 0 || done == total)) {
                    std::fprintf(stderr, "\r%zu/%zu instances", done, total);
                    if (done == total) std::fputc('\n', stderr);
                }
            };
            const SweepResult result = run_sweep(sw, progress);
            write_csv(sw_csv, result.records);
            if (!sw_svg.empty()) {
                emit_plot(result.curve, sw_svg,
                          "Success rate, n = " + std::to_string(sw.n) + ", m = " + std::to_string(sw.m)
                          + ", L = " + std::to_string(sw.L));
            }
            if (!sw_quiet) {
                for (const auto& [method, by_k] : result.curve.rates) {
                    std::fprintf(stderr, "%-14s", method.c_str());
                    for (const auto& [k, t] : by_k) std::fprintf(stderr, " k=%ld:%.2f", static_cast<long>(k), t.rate());
                    std::fputc('\n', stderr);
                }
            }
        } else if (*certify) {
            const Instance inst = cert_src.load();
            json out;
            out["n"] = inst.a.n();
            out["m"] = inst.a.m();
            out["k"] = cert_k;
            if (cert_trials > 0) {
                const EquivalenceReport rep = certify_recovery_equivalence(inst.a, cert_k, cert_trials, cert_seed);
                out["holds"] = rep.certificate.holds;
                out["subsets_checked"] = rep.certificate.subsets_checked;
                if (rep.certificate.witness) out["witness"] = *rep.certificate.witness;
                out["trials_run"] = rep.trials_run;
                out["trials_passed"] = rep.trials_passed;
                out["counterexamples"] = rep.counterexamples.size();
            } else {
                const RankCertificate cert = check_rank_condition(inst.a, cert_k);
                out["holds"] = cert.holds;
                out["subsets_checked"] = cert.subsets_checked;
                if (cert.witness) out["witness"] = *cert.witness;
            }
            std::cout << out.dump(2) << '\n';
        } else if (*dscan) {
            const Instance inst = ds_src.load();
            const auto grid = ds_u.empty() ? log_grid(ds_lo, ds_hi, ds_points) : to_multipliers(ds_u);
            const auto points = dual_scan(inst.a, inst.y, grid, ds_L);
            std::printf("u,approx_dual\n");
            for (const auto& p : points) std::printf("%.17g,%.17g\n", p.u, p.value);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "csbench: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
