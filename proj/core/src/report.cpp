#include "loopdh/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace loopdh {

using nlohmann::json;

std::string engine_version() { return "loopdh 0.1.0"; }

std::string to_string(SweepModel m) {
    switch (m) {
        case SweepModel::On: return "on";
        case SweepModel::C2: return "c2";
        case SweepModel::GenOn: return "gen-on";
    }
    return "?";
}

std::string to_string(BranchChoice b) {
    switch (b) {
        case BranchChoice::Real: return "real";
        case BranchChoice::Imaginary: return "imaginary";
        case BranchChoice::Both: return "both";
    }
    return "?";
}

namespace {

SweepModel model_from_string(const std::string& s) {
    if (s == "on") return SweepModel::On;
    if (s == "c2") return SweepModel::C2;
    if (s == "gen-on") return SweepModel::GenOn;
    throw config_error("unknown model '" + s + "' (expected on | c2 | gen-on)");
}

BranchChoice branch_from_string(const std::string& s) {
    if (s == "real") return BranchChoice::Real;
    if (s == "imaginary") return BranchChoice::Imaginary;
    if (s == "both") return BranchChoice::Both;
    throw config_error("unknown branch '" + s + "' (expected real | imaginary | both)");
}

WeightSymbol symbol_from_string(const std::string& s) {
    for (auto sym : {WeightSymbol::T, WeightSymbol::U1, WeightSymbol::U2, WeightSymbol::V,
                     WeightSymbol::W1, WeightSymbol::W2, WeightSymbol::Beta1, WeightSymbol::Beta2,
                     WeightSymbol::Beta3, WeightSymbol::Beta4}) {
        if (to_string(sym) == s) return sym;
    }
    throw config_error("unknown weight symbol '" + s + "'");
}

const std::vector<std::string> kKnownChecks = {"dh-bulk", "dh-boundary", "solve", "reflection",
                                               "limits"};

std::vector<double> grid_from(const json& j, const char* name) {
    if (!j.is_array() || j.empty()) {
        throw config_error(std::string("grid '") + name + "' must be a non-empty array");
    }
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw config_error(std::string("grid '") + name + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

SweepConfig default_config(SweepModel model) {
    SweepConfig cfg;
    cfg.model = model;
    cfg.branch = BranchChoice::Both;
    cfg.lambda_grid = {0.2, 0.3, 0.45};
    cfg.lambda1_grid = {0.1, 0.2};
    cfg.x_grid = {0.15, 0.4, 0.7};
    cfg.y_grid = {0.1, 0.25};
    cfg.k_grid = {0.0, 0.5, 2.0};
    cfg.scale = 1.0;
    switch (model) {
        case SweepModel::On:
        case SweepModel::C2:
            cfg.checks = {"dh-bulk", "dh-boundary", "solve", "reflection"};
            break;
        case SweepModel::GenOn:
            cfg.checks = {"reflection", "limits"};
            break;
    }
    return cfg;
}

SweepConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config root must be an object");

    const SweepModel model =
        j.contains("model") ? model_from_string(j["model"].get<std::string>()) : SweepModel::On;
    SweepConfig cfg = default_config(model);

    if (j.contains("branch")) cfg.branch = branch_from_string(j["branch"].get<std::string>());
    if (j.contains("grids")) {
        const auto& g = j["grids"];
        if (!g.is_object()) throw config_error("'grids' must be an object");
        if (g.contains("lambda")) cfg.lambda_grid = grid_from(g["lambda"], "lambda");
        if (g.contains("lambda1")) cfg.lambda1_grid = grid_from(g["lambda1"], "lambda1");
        if (g.contains("x")) cfg.x_grid = grid_from(g["x"], "x");
        if (g.contains("y")) cfg.y_grid = grid_from(g["y"], "y");
        if (g.contains("k")) cfg.k_grid = grid_from(g["k"], "k");
    }
    if (j.contains("scale")) cfg.scale = j["scale"].get<double>();
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (t.contains("residual")) cfg.tol.residual = t["residual"].get<double>();
        if (t.contains("rank")) cfg.tol.rank = t["rank"].get<double>();
        if (t.contains("projective")) cfg.tol.projective = t["projective"].get<double>();
    }
    if (!(cfg.tol.residual > 0) || !(cfg.tol.rank > 0) || !(cfg.tol.projective > 0)) {
        throw config_error("tolerances must be positive");
    }
    if (j.contains("checks")) {
        cfg.checks.clear();
        for (const auto& c : j["checks"]) {
            const auto name = c.get<std::string>();
            if (std::find(kKnownChecks.begin(), kKnownChecks.end(), name) == kKnownChecks.end()) {
                throw config_error("unknown check '" + name + "'");
            }
            cfg.checks.push_back(name);
        }
        if (cfg.checks.empty()) throw config_error("'checks' must not be empty");
    }
    if (j.contains("perturbation") && !j["perturbation"].is_null()) {
        const auto& p = j["perturbation"];
        Perturbation pert;
        pert.target = symbol_from_string(p.at("target").get<std::string>());
        pert.delta = p.at("delta").get<double>();
        cfg.perturbation = pert;
    }
    if (cfg.model == SweepModel::GenOn) {
        for (const auto& c : cfg.checks) {
            if (c == "dh-bulk" || c == "dh-boundary" || c == "solve") {
                throw config_error("check '" + c + "' is not defined for model gen-on");
            }
        }
    } else {
        for (const auto& c : cfg.checks) {
            if (c == "limits") throw config_error("check 'limits' requires model gen-on");
        }
    }
    return cfg;
}

SweepConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

json config_json(const SweepConfig& cfg) {
    json j;
    j["model"] = to_string(cfg.model);
    j["branch"] = to_string(cfg.branch);
    j["grids"] = {{"lambda", cfg.lambda_grid}, {"lambda1", cfg.lambda1_grid},
                  {"x", cfg.x_grid}, {"y", cfg.y_grid}, {"k", cfg.k_grid}};
    j["scale"] = cfg.scale;
    j["tolerances"] = {{"residual", cfg.tol.residual}, {"rank", cfg.tol.rank},
                       {"projective", cfg.tol.projective}};
    j["checks"] = cfg.checks;
    if (cfg.perturbation) {
        j["perturbation"] = {{"target", to_string(cfg.perturbation->target)},
                             {"delta", cfg.perturbation->delta}};
    } else {
        j["perturbation"] = nullptr;
    }
    return j;
}

json record_json(const Record& r) {
    json j;
    j["check"] = r.check;
    j["model"] = r.model;
    j["branch"] = r.branch;
    json pt = json::object();
    if (r.point.lambda) pt["lambda"] = *r.point.lambda;
    if (r.point.lambda1) pt["lambda1"] = *r.point.lambda1;
    if (r.point.x) pt["x"] = *r.point.x;
    if (r.point.y) pt["y"] = *r.point.y;
    if (r.point.k) pt["k"] = *r.point.k;
    j["params"] = pt;
    j["kind"] = r.kind;
    j["value"] = r.value;
    if (r.expected_rank) j["expected_rank"] = *r.expected_rank;
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.verdict;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

// JSON writer with reals at 17 significant digits.
void dump(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                dump(v, out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string config_to_json(const SweepConfig& cfg) {
    std::string out;
    dump(config_json(cfg), out);
    return out;
}

void VerificationReport::add(Record r) { records.push_back(std::move(r)); }

void VerificationReport::finalize() {
    std::stable_sort(records.begin(), records.end(),
                     [](const Record& a, const Record& b) { return a.check < b.check; });
    summary = Summary{};
    for (const auto& r : records) {
        if (r.verdict == "skipped") {
            ++summary.skipped;
            continue;
        }
        if (r.kind == "residual") {
            auto& m = summary.max_residual_per_check[r.check];
            m = std::max(m, r.value);
        }
        if (r.verdict == "pass") {
            ++summary.pass_per_check[r.check];
        } else {
            ++summary.fail_per_check[r.check];
            summary.all_pass = false;
        }
    }
}

std::string report_to_json(const VerificationReport& report) {
    json j;
    j["engine"] = report.engine;
    j["timestamp"] = report.timestamp;
    j["config"] = config_json(report.config);
    json recs = json::array();
    for (const auto& r : report.records) recs.push_back(record_json(r));
    j["records"] = recs;
    json checks = json::object();
    for (const auto& [name, maxr] : report.summary.max_residual_per_check)
        checks[name]["max_residual"] = maxr;
    for (const auto& [name, n] : report.summary.pass_per_check) checks[name]["pass"] = n;
    for (const auto& [name, n] : report.summary.fail_per_check) checks[name]["fail"] = n;
    j["summary"] = {{"checks", checks},
                    {"skipped", report.summary.skipped},
                    {"all_pass", report.summary.all_pass}};
    std::string out;
    dump(j, out);
    out += '\n';
    return out;
}

void write_report_file(const VerificationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open report path for writing: " + path);
    out << report_to_json(report);
}

}  // namespace loopdh
