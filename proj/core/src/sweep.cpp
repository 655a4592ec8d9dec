#include "loopdh/sweep.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>

#include "loopdh/dhsys.hpp"
#include "loopdh/reflect.hpp"

namespace loopdh {

namespace {

constexpr double kLargeK = 1e6;
constexpr double kLimitTol = 1e-4;

std::string now_iso8601() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Runner {
    const SweepConfig& cfg;
    VerificationReport& report;
    bool any_fail = false;

    bool wants(const std::string& check) const {
        return std::find(cfg.checks.begin(), cfg.checks.end(), check) != cfg.checks.end();
    }

    std::vector<Branch> branches() const {
        switch (cfg.branch) {
            case BranchChoice::Real: return {Branch::RealFlux};
            case BranchChoice::Imaginary: return {Branch::ImaginaryFlux};
            case BranchChoice::Both: return {Branch::RealFlux, Branch::ImaginaryFlux};
        }
        return {};
    }

    void residual(const std::string& check, const std::string& branch, GridPoint pt, double value,
                  const std::string& note = "") {
        add(check, branch, pt, "residual", value, cfg.tol.residual, value <= cfg.tol.residual, note);
    }

    void identity(const std::string& check, const std::string& branch, GridPoint pt, double value,
                  const std::string& note = "") {
        add(check, branch, pt, "identity", value, kIdentityTol, value <= kIdentityTol, note);
    }

    void deviation(const std::string& check, const std::string& branch, GridPoint pt, double value,
                   double tol, const std::string& note = "") {
        add(check, branch, pt, "deviation", value, tol, value <= tol, note);
    }

    void rank(const std::string& check, const std::string& branch, GridPoint pt, int got,
              int expected, const std::string& note = "") {
        Record r;
        r.check = check;
        r.model = to_string(cfg.model);
        r.branch = branch;
        r.point = pt;
        r.kind = "rank";
        r.value = got;
        r.expected_rank = expected;
        r.tolerance = cfg.tol.rank;
        r.verdict = got == expected ? "pass" : "fail";
        r.note = note;
        if (got != expected) any_fail = true;
        report.add(std::move(r));
    }

    void skip(const std::string& check, GridPoint pt, const std::string& why) {
        Record r;
        r.check = check;
        r.model = to_string(cfg.model);
        r.branch = "n/a";
        r.point = pt;
        r.kind = "skip";
        r.verdict = "skipped";
        r.note = why;
        report.add(std::move(r));
    }

    void add(const std::string& check, const std::string& branch, GridPoint pt,
             const std::string& kind, double value, double tol, bool pass,
             const std::string& note) {
        Record r;
        r.check = check;
        r.model = to_string(cfg.model);
        r.branch = branch;
        r.point = pt;
        r.kind = kind;
        r.value = value;
        r.tolerance = tol;
        r.verdict = pass ? "pass" : "fail";
        r.note = note;
        if (!pass) any_fail = true;
        report.add(std::move(r));
    }
};

bool on_point_singular(double lambda, double lambda1) {
    return std::abs(std::sin(4 * lambda + 4 * lambda1)) <= kDenominatorTol;
}

bool c2_point_singular(double lambda1) {
    return std::abs(std::sin(4 * lambda1)) <= kDenominatorTol ||
           std::abs(std::cos(2 * lambda1)) <= kDenominatorTol;
}

WeightSet perturbed(WeightSet w, const std::optional<Perturbation>& p) {
    if (p && w.has(p->target)) w.set(p->target, w.at(p->target) + p->delta);
    return w;
}

// ---- O(n) checks ----

void verify_on(Runner& run) {
    const auto& cfg = run.cfg;
    if (run.wants("dh-bulk")) {
        for (double l : cfg.lambda_grid) {
            for (double x : cfg.x_grid) {
                for (double l1 : cfg.lambda1_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (on_point_singular(l, l1)) {
                        run.skip("dh-bulk", pt, "sin(4*lambda+4*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = on_params(l, l1, x, cfg.scale);
                    const auto w = perturbed(on_bulk(p), cfg.perturbation);
                    run.residual("dh-bulk", "n/a", pt, on_bulk_system(p).max_residual(w),
                                 "four bulk forms");
                    const auto [blob1, blob2] = on_bulk_blob_systems(p);
                    run.residual("dh-bulk", "n/a", pt, blob1.max_residual(w), "blob set 1");
                    run.residual("dh-bulk", "n/a", pt, blob2.max_residual(w), "blob set 2");
                    run.identity("dh-bulk", "n/a", pt, std::abs(n3_condition(p)), "n3 condition");
                    const double fdev = std::abs(p.n3 * p.n3 -
                                                 (p.n1 * p.n1 + p.n2 * p.n2 - p.n * p.n1 * p.n2));
                    run.identity("dh-bulk", "n/a", pt, fdev, "n3^2 = n1^2 + n2^2 - n n1 n2");
                }
            }
        }
    }
    if (run.wants("dh-boundary")) {
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (on_point_singular(l, l1)) {
                        run.skip("dh-boundary", pt, "sin(4*lambda+4*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = on_params(l, l1, x, cfg.scale);
                    const auto forms = on_boundary_forms(p);
                    for (Branch b : run.branches()) {
                        const auto w = perturbed(on_boundary(p, b), cfg.perturbation);
                        run.residual("dh-boundary", to_string(b), pt,
                                     branch_rows(forms, b).max_residual(w), "R or I rows");
                        // blobbed specialisation at n1 = -sin4l1/sin(4l+4l1), n2 = 1
                        const auto pb = on_params(l, l1, x, 1.0);
                        const auto wb = on_boundary(pb, b);
                        const auto hat = on_blobbed(l, l1, x, b);
                        const double fac = blob_rescale_factor(l, l1, b);
                        double dev = 0.0;
                        for (auto s : {WeightSymbol::Beta1, WeightSymbol::Beta2, WeightSymbol::Beta3})
                            dev = std::max(dev, std::abs(fac * wb.at(s) - hat.at(s)));
                        run.identity("dh-boundary", to_string(b), pt, dev, "blobbed specialisation");
                        // diagonal specialisation (beta3 = 0)
                        const auto diag = on_boundary_diagonal(l, x, b);
                        WeightSet dw(Model::OnBoundary, b);
                        dw.set(WeightSymbol::Beta1, diag.at(WeightSymbol::Beta1));
                        dw.set(WeightSymbol::Beta2, diag.at(WeightSymbol::Beta2));
                        dw.set(WeightSymbol::Beta3, 0.0);
                        const auto row1 = branch_rows(forms, b).forms.front();
                        run.residual("dh-boundary", to_string(b), pt,
                                     row1.residual(dw, forms.ctx), "diagonal R1/I1");
                    }
                }
            }
        }
    }
    if (run.wants("solve")) {
        for (double l : cfg.lambda_grid) {
            for (double x : cfg.x_grid) {
                GridPoint pt{l, {}, x, {}, {}};
                const double s = 3.0 * l / std::numbers::pi + 1.0;
                const auto at_spin = [&](double spin) {
                    return nullspace(on_bulk_system_at(l, x, spin).real_matrix(), cfg.tol.rank);
                };
                run.rank("solve", "n/a", pt, static_cast<int>(at_spin(s).basis.size()), 1,
                         "bulk nullity at integrable spin");
                run.rank("solve", "n/a", pt, static_cast<int>(at_spin(s + 0.01).basis.size()), 0,
                         "bulk nullity at s + 0.01");
                run.rank("solve", "n/a", pt, static_cast<int>(at_spin(s - 0.01).basis.size()), 0,
                         "bulk nullity at s - 0.01");
                const auto solved = solve_on_bulk(l, x, cfg.tol.rank);
                run.deviation("solve", "n/a", pt,
                              projective_deviation(solved.values(), on_bulk(l, x).values()),
                              cfg.tol.projective, "solve_on_bulk vs closed form");
            }
        }
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (on_point_singular(l, l1)) {
                        run.skip("solve", pt, "sin(4*lambda+4*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = on_params(l, l1, x, cfg.scale);
                    const auto forms = on_boundary_forms(p);
                    for (Branch b : run.branches()) {
                        const auto rows = branch_rows(forms, b);
                        run.rank("solve", to_string(b), pt,
                                 nullspace(rows.real_matrix(), cfg.tol.rank).rank, 2,
                                 "rank of boundary rows");
                        const auto solved = solve_on_boundary(p, b, cfg.tol.rank);
                        run.deviation("solve", to_string(b), pt,
                                      projective_deviation(solved.values(),
                                                           on_boundary(p, b).values()),
                                      cfg.tol.projective, "solve_on_boundary vs closed form");
                    }
                }
            }
        }
    }
    if (run.wants("reflection")) {
        const auto model = on_reflection_model(false);
        const auto L = enumerate_side(lhs_spec(), model);
        const auto R = enumerate_side(rhs_spec(), model);
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                if (on_point_singular(l, l1)) {
                    run.skip("reflection", GridPoint{l, l1, {}, {}, {}},
                             "sin(4*lambda+4*lambda1) ~ 0");
                    continue;
                }
                for (double x : cfg.x_grid) {
                    for (double y : cfg.y_grid) {
                        GridPoint pt{l, l1, x, y, {}};
                        const auto fug = LoopFugacities::from(on_params(l, l1, x, cfg.scale));
                        for (Branch b : run.branches()) {
                            ReWeightFamily fam{
                                [&, l, l1, b](double a) {
                                    return perturbed(
                                        on_boundary(on_params(l, l1, a, cfg.scale), b),
                                        cfg.perturbation);
                                },
                                [&, l](double a) {
                                    return perturbed(on_bulk(l, a), cfg.perturbation);
                                }};
                            double worst = 0.0;
                            for (const auto& [cls, r] : re_residuals(L, R, fam, x, y, fug))
                                worst = std::max(worst, r);
                            run.residual("reflection", to_string(b), pt, worst,
                                         "max over terminal classes");
                        }
                    }
                }
            }
        }
    }
}

// ---- C2(1) checks ----

void verify_c2(Runner& run) {
    const auto& cfg = run.cfg;
    if (run.wants("dh-bulk")) {
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (c2_point_singular(l1)) {
                        run.skip("dh-bulk", pt, "sin(4*lambda1) or cos(2*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = c2_params(l, l1, x, cfg.scale);
                    const auto w = perturbed(c2_bulk(p), cfg.perturbation);
                    run.residual("dh-bulk", "n/a", pt, c2_bulk_systems(p).max_residual(w),
                                 "nine bulk forms");
                }
            }
        }
    }
    if (run.wants("dh-boundary")) {
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (c2_point_singular(l1)) {
                        run.skip("dh-boundary", pt, "sin(4*lambda1) or cos(2*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = c2_params(l, l1, x, cfg.scale);
                    const auto forms = c2_boundary_forms(p);
                    for (Branch b : run.branches()) {
                        const auto w = perturbed(c2_boundary(p, b), cfg.perturbation);
                        run.residual("dh-boundary", to_string(b), pt,
                                     branch_rows(forms, b).max_residual(w), "R or I rows");
                    }
                }
            }
        }
    }
    if (run.wants("solve")) {
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (c2_point_singular(l1)) {
                        run.skip("solve", pt, "sin(4*lambda1) or cos(2*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = c2_params(l, l1, x, cfg.scale);
                    const auto forms = c2_boundary_forms(p);
                    for (Branch b : run.branches()) {
                        const auto rows = branch_rows(forms, b);
                        run.rank("solve", to_string(b), pt,
                                 nullspace(rows.real_matrix(), cfg.tol.rank).rank, 3,
                                 "rank of boundary rows");
                        const auto solved = solve_c2_boundary(p, b, cfg.tol.rank);
                        run.deviation("solve", to_string(b), pt,
                                      projective_deviation(solved.values(),
                                                           c2_boundary(p, b).values()),
                                      cfg.tol.projective, "solve_c2_boundary vs closed form");
                    }
                }
            }
        }
    }
    if (run.wants("reflection")) {
        const auto model = c2_reflection_model();
        const auto L = enumerate_side(lhs_spec(), model);
        const auto R = enumerate_side(rhs_spec(), model);
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                if (c2_point_singular(l1)) {
                    run.skip("reflection", GridPoint{l, l1, {}, {}, {}},
                             "sin(4*lambda1) or cos(2*lambda1) ~ 0");
                    continue;
                }
                for (double x : cfg.x_grid) {
                    for (double y : cfg.y_grid) {
                        GridPoint pt{l, l1, x, y, {}};
                        const auto fug = LoopFugacities::from(c2_params(l, l1, x, cfg.scale));
                        for (Branch b : run.branches()) {
                            ReWeightFamily fam{
                                [&, l, l1, b](double a) {
                                    return perturbed(
                                        c2_boundary(c2_params(l, l1, a, cfg.scale), b),
                                        cfg.perturbation);
                                },
                                [&, l](double a) {
                                    return perturbed(c2_bulk(l, a), cfg.perturbation);
                                }};
                            double worst = 0.0;
                            for (const auto& [cls, r] : re_residuals(L, R, fam, x, y, fug))
                                worst = std::max(worst, r);
                            run.residual("reflection", to_string(b), pt, worst,
                                         "max over terminal classes");
                        }
                    }
                }
            }
        }
    }
}

// ---- generalised O(n) ----

void verify_gen_on(Runner& run) {
    const auto& cfg = run.cfg;
    if (!run.wants("reflection")) return;
    const auto model = on_reflection_model(true);
    const auto L = enumerate_side(lhs_spec(), model);
    const auto R = enumerate_side(rhs_spec(), model);
    for (double l : cfg.lambda_grid) {
        for (double k : cfg.k_grid) {
            for (double x : cfg.x_grid) {
                for (double y : cfg.y_grid) {
                    GridPoint pt;
                    pt.lambda = l;
                    pt.x = x;
                    pt.y = y;
                    pt.k = k;
                    const GenOnParams g{l, x, k, cfg.scale};
                    const double n = -2.0 * std::cos(4.0 * l);
                    const auto fug = LoopFugacities::equal(n, cfg.scale);
                    ReWeightFamily fam{
                        [&, g](double a) {
                            return perturbed(
                                on_generalized_boundary(GenOnParams{g.lambda, a, g.k, g.n1}),
                                cfg.perturbation);
                        },
                        [&, l](double a) { return perturbed(on_bulk(l, a), cfg.perturbation); }};
                    double worst = 0.0;
                    for (const auto& [cls, r] : re_residuals(L, R, fam, x, y, fug))
                        worst = std::max(worst, r);
                    run.residual("reflection", "n/a", pt, worst, "beta4-extended catalog");
                }
            }
        }
    }
}

void limits_gen_on(Runner& run) {
    const auto& cfg = run.cfg;
    for (double l : cfg.lambda_grid) {
        for (double x : cfg.x_grid) {
            GridPoint pt;
            pt.lambda = l;
            pt.x = x;
            // k -> 0: reduces to 2 cos(lambda) times the diagonal sine pair.
            {
                GridPoint p0 = pt;
                p0.k = 0.0;
                const auto g = on_generalized_boundary(GenOnParams{l, x, 0.0, cfg.scale});
                const auto d = on_boundary_diagonal(l, x, Branch::RealFlux);
                double dev = std::max(
                    {std::abs(g.at(WeightSymbol::Beta1) - 2 * std::cos(l) * d.at(WeightSymbol::Beta1)),
                     std::abs(g.at(WeightSymbol::Beta2) - 2 * std::cos(l) * d.at(WeightSymbol::Beta2)),
                     std::abs(g.at(WeightSymbol::Beta3)), std::abs(g.at(WeightSymbol::Beta4))});
                run.deviation("limits", "n/a", p0, dev, kIdentityTol, "k -> 0 diagonal reduction");
            }
            // k -> infinity at k = 1e6: the rescaled weights approach the
            // n1 = n2 boundary solution (lambda1 = -lambda/2), real branch.
            {
                GridPoint pk = pt;
                pk.k = kLargeK;
                const double denom = std::sin(0.5 * l - x);
                if (std::abs(denom) < 1e-6) {
                    run.skip("limits", pk, "x = lambda/2: limit rescaling singular");
                    continue;
                }
                const auto g = on_generalized_boundary(GenOnParams{l, x, kLargeK, cfg.scale});
                const double r = -1.0 / (kLargeK * kLargeK * denom);
                const std::vector<double> lim = {r * g.at(WeightSymbol::Beta1),
                                                 r * g.at(WeightSymbol::Beta2),
                                                 r * g.at(WeightSymbol::Beta3)};
                const auto p = on_params(l, -0.5 * l, x, cfg.scale);
                const auto w = on_boundary(p, Branch::RealFlux);
                run.deviation("limits", "real", pk, projective_deviation(lim, w.values()),
                              kLimitTol, "rescaled large-k limit vs n1 = n2 solution");
                const double beta4_lim = std::abs(r * g.at(WeightSymbol::Beta4));
                const double scale =
                    std::max({std::abs(lim[0]), std::abs(lim[1]), std::abs(lim[2]), 1e-30});
                run.deviation("limits", "real", pk, beta4_lim / scale, kLimitTol,
                              "rescaled beta4 -> 0");
            }
        }
    }
}

// ---- derive ----

void derive_tables(Runner& run, std::ostream& out) {
    const auto& cfg = run.cfg;
    out << std::setprecision(12);
    auto print_ws = [&out](const std::string& head, const WeightSet& w) {
        out << head << ":";
        for (const auto& [s, v] : w.entries()) out << "  " << to_string(s) << " = " << v;
        out << "\n";
    };
    if (cfg.model == SweepModel::On) {
        for (double l : cfg.lambda_grid) {
            for (double x : cfg.x_grid) {
                GridPoint pt{l, {}, x, {}, {}};
                const auto solved = solve_on_bulk(l, x, cfg.tol.rank);
                print_ws("on bulk  lambda=" + std::to_string(l) + " x=" + std::to_string(x), solved);
                run.deviation("solve", "n/a", pt,
                              projective_deviation(solved.values(), on_bulk(l, x).values()),
                              cfg.tol.projective, "derived bulk weights vs closed form");
            }
        }
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (on_point_singular(l, l1)) {
                        run.skip("solve", pt, "sin(4*lambda+4*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = on_params(l, l1, x, cfg.scale);
                    for (Branch b : run.branches()) {
                        const auto solved = solve_on_boundary(p, b, cfg.tol.rank);
                        print_ws("on boundary (" + to_string(b) + ") lambda=" + std::to_string(l) +
                                     " lambda1=" + std::to_string(l1) + " x=" + std::to_string(x),
                                 solved);
                        run.deviation("solve", to_string(b), pt,
                                      projective_deviation(solved.values(),
                                                           on_boundary(p, b).values()),
                                      cfg.tol.projective, "derived boundary weights vs closed form");
                    }
                }
            }
        }
    } else if (cfg.model == SweepModel::C2) {
        for (double l : cfg.lambda_grid) {
            for (double l1 : cfg.lambda1_grid) {
                for (double x : cfg.x_grid) {
                    GridPoint pt{l, l1, x, {}, {}};
                    if (c2_point_singular(l1)) {
                        run.skip("solve", pt, "sin(4*lambda1) or cos(2*lambda1) ~ 0");
                        continue;
                    }
                    const auto p = c2_params(l, l1, x, cfg.scale);
                    for (Branch b : run.branches()) {
                        const auto solved = solve_c2_boundary(p, b, cfg.tol.rank);
                        print_ws("c2 boundary (" + to_string(b) + ") lambda=" + std::to_string(l) +
                                     " lambda1=" + std::to_string(l1) + " x=" + std::to_string(x),
                                 solved);
                        run.deviation("solve", to_string(b), pt,
                                      projective_deviation(solved.values(),
                                                           c2_boundary(p, b).values()),
                                      cfg.tol.projective, "derived boundary weights vs closed form");
                    }
                }
            }
        }
    } else {
        for (double l : cfg.lambda_grid) {
            for (double x : cfg.x_grid) {
                for (double k : cfg.k_grid) {
                    GridPoint pt;
                    pt.lambda = l;
                    pt.x = x;
                    pt.k = k;
                    const auto g = on_generalized_boundary(GenOnParams{l, x, k, cfg.scale});
                    print_ws("gen-on boundary lambda=" + std::to_string(l) + " x=" +
                                 std::to_string(x) + " k=" + std::to_string(k),
                             g);
                    if (k == 0.0) {
                        const auto d = on_boundary_diagonal(l, x, Branch::RealFlux);
                        const std::vector<double> a = {g.at(WeightSymbol::Beta1),
                                                       g.at(WeightSymbol::Beta2)};
                        const std::vector<double> b = {d.at(WeightSymbol::Beta1),
                                                       d.at(WeightSymbol::Beta2)};
                        run.deviation("solve", "n/a", pt, projective_deviation(a, b), kIdentityTol,
                                      "k = 0 matches diagonal solution projectively");
                    }
                }
            }
        }
    }
}

}  // namespace

int run_verify(const SweepConfig& cfg, VerificationReport& report) {
    Runner run{cfg, report};
    switch (cfg.model) {
        case SweepModel::On: verify_on(run); break;
        case SweepModel::C2: verify_c2(run); break;
        case SweepModel::GenOn: verify_gen_on(run); break;
    }
    return run.any_fail ? 1 : 0;
}

int run_derive(const SweepConfig& cfg, VerificationReport& report, std::ostream& tables) {
    Runner run{cfg, report};
    derive_tables(run, tables);
    return run.any_fail ? 1 : 0;
}

int run_limits(const SweepConfig& cfg, VerificationReport& report) {
    if (cfg.model != SweepModel::GenOn) {
        throw config_error("limits requires model gen-on");
    }
    Runner run{cfg, report};
    limits_gen_on(run);
    return run.any_fail ? 1 : 0;
}

int run_command(const std::string& command, const SweepConfig& cfg, VerificationReport& report,
                std::ostream& tables) {
    report.engine = engine_version();
    report.timestamp = now_iso8601();
    report.config = cfg;
    int rc = 0;
    if (command == "verify") {
        rc = run_verify(cfg, report);
    } else if (command == "derive") {
        rc = run_derive(cfg, report, tables);
    } else if (command == "limits") {
        rc = run_limits(cfg, report);
    } else {
        throw config_error("unknown command: " + command);
    }
    report.finalize();
    return rc;
}

}  // namespace loopdh
