// loopdh: derive and verify integrable loop-model weights.
//
//   loopdh verify [--config cfg.json] [--model on|c2|gen-on] [--branch ...]
//                 [--tol 1e-10] [--out report.json]
//   loopdh derive ...     (prints solved weight tables)
//   loopdh limits ...     (gen-on limit checks)
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 bad config or I/O.

#include <CLI11.hpp>
#include <iostream>

#include "loopdh/report.hpp"
#include "loopdh/sweep.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string model;
    std::string branch;
    double tol = -1.0;
    bool seed_free = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "Path to a JSON sweep configuration");
    cmd->add_option("--out", o.out_path, "Path for the JSON report");
    cmd->add_option("--model", o.model, "Model: on | c2 | gen-on (overrides config)");
    cmd->add_option("--branch", o.branch, "Branch: real | imaginary | both (overrides config)");
    cmd->add_option("--tol", o.tol, "Residual tolerance override");
    // The engine has no randomness anywhere; the flag is reserved and takes
    // no value.
    cmd->add_flag("--seed-free", o.seed_free, "Reserved: the engine is deterministic")
        ->disable_flag_override();
}

loopdh::SweepConfig build_config(const CommonOpts& o) {
    loopdh::SweepConfig cfg;
    if (!o.config_path.empty()) {
        cfg = loopdh::load_config_file(o.config_path);
    } else {
        loopdh::SweepModel m = loopdh::SweepModel::On;
        if (o.model == "c2") m = loopdh::SweepModel::C2;
        else if (o.model == "gen-on") m = loopdh::SweepModel::GenOn;
        else if (!o.model.empty() && o.model != "on")
            throw loopdh::config_error("unknown model '" + o.model + "'");
        cfg = loopdh::default_config(m);
    }
    if (!o.model.empty() && !o.config_path.empty()) {
        // Model switches invalidate grids/checks wholesale; rebuild defaults.
        throw loopdh::config_error("--model cannot override a config file; set it in the config");
    }
    if (!o.branch.empty()) {
        if (o.branch == "real") cfg.branch = loopdh::BranchChoice::Real;
        else if (o.branch == "imaginary") cfg.branch = loopdh::BranchChoice::Imaginary;
        else if (o.branch == "both") cfg.branch = loopdh::BranchChoice::Both;
        else throw loopdh::config_error("unknown branch '" + o.branch + "'");
    }
    if (o.tol > 0) cfg.tol.residual = o.tol;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-integrable loop model derivation and verification engine"};
    app.require_subcommand(1);

    CommonOpts verify_opts, derive_opts, limits_opts;
    auto* verify = app.add_subcommand("verify", "Run residual/rank/reduction sweeps");
    add_common(verify, verify_opts);
    auto* derive = app.add_subcommand("derive", "Solve the linear systems and print weight tables");
    add_common(derive, derive_opts);
    auto* limits = app.add_subcommand("limits", "Generalised-model limit checks (gen-on)");
    add_common(limits, limits_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const std::string cmd = verify->parsed() ? "verify" : derive->parsed() ? "derive" : "limits";
    const CommonOpts& opts =
        verify->parsed() ? verify_opts : derive->parsed() ? derive_opts : limits_opts;

    try {
        loopdh::SweepConfig cfg = build_config(opts);
        if (cmd == "limits" && opts.config_path.empty() && opts.model.empty()) {
            cfg = loopdh::default_config(loopdh::SweepModel::GenOn);
        }
        loopdh::VerificationReport report;
        const int rc = loopdh::run_command(cmd, cfg, report, std::cout);
        if (!opts.out_path.empty()) {
            loopdh::write_report_file(report, opts.out_path);
        } else if (cmd != "derive") {
            std::cout << loopdh::report_to_json(report);
        }
        for (const auto& [check, maxr] : report.summary.max_residual_per_check) {
            std::cerr << check << ": max residual " << maxr << "\n";
        }
        std::cerr << (rc == 0 ? "all checks passed" : "some checks FAILED") << "\n";
        return rc;
    } catch (const loopdh::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
