#include "loopdh/dhsys.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace loopdh {

namespace {
constexpr double kPi = std::numbers::pi;

using Sym = WeightSymbol;
using Term = std::pair<WeightSymbol, std::vector<Monomial>>;

Monomial mono(int sign, double xi_power, int zeta_power,
              Fugacity f = Fugacity::One, Defect d = Defect::One) {
    return Monomial{xi_power, zeta_power, f, d, sign};
}
}  // namespace

EvalContext EvalContext::from(const OnParams& p) {
    return EvalContext{p.theta_xi, p.x, p.n, p.n1, p.n2, p.n3, p.q1};
}

EvalContext EvalContext::from(const C2Params& p) {
    return EvalContext{p.theta_xi, p.x, p.n, p.n1, p.n2, p.n3, p.q1};
}

EvalContext EvalContext::on_bulk_at_spin(double lambda, double x, double s) {
    EvalContext ctx;
    ctx.theta_xi = s * kPi;
    ctx.x = x;
    ctx.n = -2.0 * std::cos(4.0 * lambda);
    return ctx;
}

double EvalContext::fugacity(Fugacity f) const {
    switch (f) {
        case Fugacity::One: return 1.0;
        case Fugacity::N: return n;
        case Fugacity::N1: return n1;
        case Fugacity::N2: return n2;
        case Fugacity::N3: return n3;
    }
    return 1.0;
}

Complex EvalContext::defect(Defect d) const {
    switch (d) {
        case Defect::One: return 1.0;
        case Defect::Q1: return q1;
        case Defect::Q1Conj: return std::conj(q1);
        case Defect::Q1Q1Conj: return q1 * std::conj(q1);
        case Defect::Q1Sq: return q1 * q1;
    }
    return 1.0;
}

Complex Monomial::eval(const EvalContext& ctx) const {
    return static_cast<double>(sign) * ctx.fugacity(fug) * ctx.defect(defect) *
           ctx.xi_pow(xi_power) * ctx.zeta_pow(zeta_power);
}

Complex LinearForm::coefficient(WeightSymbol s, const EvalContext& ctx) const {
    Complex c = 0.0;
    for (const auto& [sym, monos] : terms) {
        if (sym != s) continue;
        for (const auto& m : monos) c += m.eval(ctx);
    }
    switch (kind) {
        case FormKind::Complex: return c;
        case FormKind::RealPart: return Complex(c.real(), 0.0);
        case FormKind::ImagPart: return Complex(c.imag(), 0.0);
    }
    return c;
}

Complex LinearForm::value(const WeightSet& w, const EvalContext& ctx) const {
    Complex total = 0.0;
    for (const auto& [sym, monos] : terms) {
        Complex c = 0.0;
        for (const auto& m : monos) c += m.eval(ctx);
        total += c * w.at(sym);
    }
    switch (kind) {
        case FormKind::Complex: return total;
        case FormKind::RealPart: return Complex(total.real(), 0.0);
        case FormKind::ImagPart: return Complex(total.imag(), 0.0);
    }
    return total;
}

double LinearForm::residual(const WeightSet& w, const EvalContext& ctx) const {
    double den = 0.0;
    double max_c = 0.0, max_w = 0.0;
    for (const auto& [sym, monos] : terms) {
        const Complex c = coefficient(sym, ctx);
        const double wv = w.at(sym);
        den = std::max(den, std::abs(c * wv));
        max_c = std::max(max_c, std::abs(c));
        max_w = std::max(max_w, std::abs(wv));
    }
    const double floor = kResidualFloor * max_c * max_w;
    return std::abs(value(w, ctx)) / std::max({den, floor, 1e-300});
}

Eigen::MatrixXcd EquationSystem::complex_matrix() const {
    Eigen::MatrixXcd m(static_cast<long>(forms.size()), static_cast<long>(unknowns.size()));
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = 0; j < unknowns.size(); ++j)
            m(static_cast<long>(i), static_cast<long>(j)) = forms[i].coefficient(unknowns[j], ctx);
    return m;
}

Eigen::MatrixXd EquationSystem::real_matrix() const {
    std::vector<Eigen::RowVectorXd> rows;
    const long k = static_cast<long>(unknowns.size());
    for (const auto& f : forms) {
        Eigen::RowVectorXcd c(k);
        for (long j = 0; j < k; ++j) c(j) = f.coefficient(unknowns[static_cast<std::size_t>(j)], ctx);
        if (f.kind == FormKind::Complex) {
            rows.push_back(c.real());
            rows.push_back(c.imag());
        } else {
            rows.push_back(c.real());
        }
    }
    Eigen::MatrixXd m(static_cast<long>(rows.size()), k);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<long>(i)) = rows[i];
    return m;
}

std::vector<double> EquationSystem::residuals(const WeightSet& w) const {
    std::vector<double> out;
    out.reserve(forms.size());
    for (const auto& f : forms) out.push_back(f.residual(w, ctx));
    return out;
}

double EquationSystem::max_residual(const WeightSet& w) const {
    double r = 0.0;
    for (const auto& f : forms) r = std::max(r, f.residual(w, ctx));
    return r;
}

// ---------------------------------------------------------------------------
// Bulk O(n), four complex equations:
//   n u1 + zeta xi^2 v - xi^-1 u2 - zeta (w2 + n w1)            = 0
//   n u2 + zeta xi (n w2 + w1) - xi u1 - zeta xi^-1 v           = 0
//   n v + zeta xi^2 u1 - (xi^2 w1 + xi^-2 w2) - zeta xi^-1 u2   = 0
//   t + zeta xi u2 - v - zeta u1                                = 0
// ---------------------------------------------------------------------------

namespace {

std::vector<LinearForm> on_bulk_forms() {
    using F = Fugacity;
    std::vector<LinearForm> forms(4);
    forms[0].terms = {
        Term{Sym::U1, {mono(+1, 0, 0, F::N)}},
        Term{Sym::V, {mono(+1, 2, 1)}},
        Term{Sym::U2, {mono(-1, -1, 0)}},
        Term{Sym::W2, {mono(-1, 0, 1)}},
        Term{Sym::W1, {mono(-1, 0, 1, F::N)}},
    };
    forms[1].terms = {
        Term{Sym::U2, {mono(+1, 0, 0, F::N)}},
        Term{Sym::W2, {mono(+1, 1, 1, F::N)}},
        Term{Sym::W1, {mono(+1, 1, 1)}},
        Term{Sym::U1, {mono(-1, 1, 0)}},
        Term{Sym::V, {mono(-1, -1, 1)}},
    };
    forms[2].terms = {
        Term{Sym::V, {mono(+1, 0, 0, F::N)}},
        Term{Sym::U1, {mono(+1, 2, 1)}},
        Term{Sym::W1, {mono(-1, 2, 0)}},
        Term{Sym::W2, {mono(-1, -2, 0)}},
        Term{Sym::U2, {mono(-1, -1, 1)}},
    };
    forms[3].terms = {
        Term{Sym::T, {mono(+1, 0, 0)}},
        Term{Sym::U2, {mono(+1, 1, 1)}},
        Term{Sym::V, {mono(-1, 0, 0)}},
        Term{Sym::U1, {mono(-1, 0, 1)}},
    };
    return forms;
}

const std::vector<Sym> kOnBulkUnknowns = {Sym::T, Sym::U1, Sym::U2, Sym::V, Sym::W1, Sym::W2};
const std::vector<Sym> kOnBoundaryUnknowns = {Sym::Beta1, Sym::Beta2, Sym::Beta3};
const std::vector<Sym> kC2BulkUnknowns = {Sym::U1, Sym::U2, Sym::V, Sym::W1, Sym::W2};
const std::vector<Sym> kC2BoundaryUnknowns = {Sym::Beta1, Sym::Beta2, Sym::Beta3, Sym::Beta4};

}  // namespace

EquationSystem on_bulk_system(const OnParams& p) {
    return EquationSystem{on_bulk_forms(), kOnBulkUnknowns, EvalContext::from(p)};
}

EquationSystem on_bulk_system_at(double lambda, double x, double s) {
    return EquationSystem{on_bulk_forms(), kOnBulkUnknowns,
                          EvalContext::on_bulk_at_spin(lambda, x, s)};
}

// ---------------------------------------------------------------------------
// Blobbed bulk sets. First set:
//   n1 u1 + q1* zeta xi^2 v - q1 xi^-1 u2 - zeta (q1 w2 + n1 w1)          = 0
//   n1 u2 + zeta xi (n1 w2 + q1* w1) - q1* xi u1 - q1 zeta xi^-1 v        = 0
//   n1 v + q1* zeta xi^2 u1 - (q1* xi^2 w1 + q1 xi^-2 w2) - q1 zeta xi^-1 u2 = 0
// Second set:
//   q1 n1 u1 + zeta xi^2 q1* n3 v - xi^-1 q1 n2 u2 - zeta q1 (n2 w2 + n1 w1)        = 0
//   q1 n1 u2 + zeta xi (q1 n1 w2 + q1* n3 w1) - xi q1* n3 u1 - zeta xi^-1 q1 n2 v   = 0
//   q1 n1 v + zeta xi^2 q1* n3 u1 - (xi^2 q1* n3 w1 + xi^-2 q1 n2 w2)
//                                                   - zeta xi^-1 q1 n2 u2           = 0
// ---------------------------------------------------------------------------

std::pair<EquationSystem, EquationSystem> on_bulk_blob_systems(const OnParams& p) {
    using F = Fugacity;
    using D = Defect;
    std::vector<LinearForm> set1(3), set2(3);

    set1[0].terms = {
        Term{Sym::U1, {mono(+1, 0, 0, F::N1)}},
        Term{Sym::V, {mono(+1, 2, 1, F::One, D::Q1Conj)}},
        Term{Sym::U2, {mono(-1, -1, 0, F::One, D::Q1)}},
        Term{Sym::W2, {mono(-1, 0, 1, F::One, D::Q1)}},
        Term{Sym::W1, {mono(-1, 0, 1, F::N1)}},
    };
    set1[1].terms = {
        Term{Sym::U2, {mono(+1, 0, 0, F::N1)}},
        Term{Sym::W2, {mono(+1, 1, 1, F::N1)}},
        Term{Sym::W1, {mono(+1, 1, 1, F::One, D::Q1Conj)}},
        Term{Sym::U1, {mono(-1, 1, 0, F::One, D::Q1Conj)}},
        Term{Sym::V, {mono(-1, -1, 1, F::One, D::Q1)}},
    };
    set1[2].terms = {
        Term{Sym::V, {mono(+1, 0, 0, F::N1)}},
        Term{Sym::U1, {mono(+1, 2, 1, F::One, D::Q1Conj)}},
        Term{Sym::W1, {mono(-1, 2, 0, F::One, D::Q1Conj)}},
        Term{Sym::W2, {mono(-1, -2, 0, F::One, D::Q1)}},
        Term{Sym::U2, {mono(-1, -1, 1, F::One, D::Q1)}},
    };

    set2[0].terms = {
        Term{Sym::U1, {mono(+1, 0, 0, F::N1, D::Q1)}},
        Term{Sym::V, {mono(+1, 2, 1, F::N3, D::Q1Conj)}},
        Term{Sym::U2, {mono(-1, -1, 0, F::N2, D::Q1)}},
        Term{Sym::W2, {mono(-1, 0, 1, F::N2, D::Q1)}},
        Term{Sym::W1, {mono(-1, 0, 1, F::N1, D::Q1)}},
    };
    set2[1].terms = {
        Term{Sym::U2, {mono(+1, 0, 0, F::N1, D::Q1)}},
        Term{Sym::W2, {mono(+1, 1, 1, F::N1, D::Q1)}},
        Term{Sym::W1, {mono(+1, 1, 1, F::N3, D::Q1Conj)}},
        Term{Sym::U1, {mono(-1, 1, 0, F::N3, D::Q1Conj)}},
        Term{Sym::V, {mono(-1, -1, 1, F::N2, D::Q1)}},
    };
    set2[2].terms = {
        Term{Sym::V, {mono(+1, 0, 0, F::N1, D::Q1)}},
        Term{Sym::U1, {mono(+1, 2, 1, F::N3, D::Q1Conj)}},
        Term{Sym::W1, {mono(-1, 2, 0, F::N3, D::Q1Conj)}},
        Term{Sym::W2, {mono(-1, -2, 0, F::N2, D::Q1)}},
        Term{Sym::U2, {mono(-1, -1, 1, F::N2, D::Q1)}},
    };

    const auto ctx = EvalContext::from(p);
    return {EquationSystem{std::move(set1), kOnBulkUnknowns, ctx},
            EquationSystem{std::move(set2), kOnBulkUnknowns, ctx}};
}

Complex n3_condition(const OnParams& p) {
    const Complex qb = std::conj(p.q1);
    return std::polar(1.0, 8.0 * p.lambda) * qb * (p.n3 - p.q1) + p.q1 * (p.n2 - p.q1);
}

// ---------------------------------------------------------------------------
// O(n) boundary contour forms. The complex forms (with the xi^{-1/2}
// prefactor as printed) are
//   f1 = xi^-1/2 (zeta^-1 beta1 - zeta beta2 - zeta q1 beta3)
//   f2 = xi^-1/2 q1 (zeta^-1 beta1 - zeta beta2 - zeta n2 beta3)
//   f3 = xi^-1/2 (zeta^-1 q1* beta1 - zeta q1* beta2 - zeta q1 n3 beta3)
// and R_i = Re f_i, I_i = Im f_i reproduce the printed trigonometric rows.
// ---------------------------------------------------------------------------

namespace {
std::vector<LinearForm> on_boundary_cforms() {
    using F = Fugacity;
    using D = Defect;
    std::vector<LinearForm> forms(3);
    forms[0].terms = {
        Term{Sym::Beta1, {mono(+1, -0.5, -1)}},
        Term{Sym::Beta2, {mono(-1, -0.5, 1)}},
        Term{Sym::Beta3, {mono(-1, -0.5, 1, F::One, D::Q1)}},
    };
    forms[1].terms = {
        Term{Sym::Beta1, {mono(+1, -0.5, -1, F::One, D::Q1)}},
        Term{Sym::Beta2, {mono(-1, -0.5, 1, F::One, D::Q1)}},
        Term{Sym::Beta3, {mono(-1, -0.5, 1, F::N2, D::Q1)}},
    };
    forms[2].terms = {
        Term{Sym::Beta1, {mono(+1, -0.5, -1, F::One, D::Q1Conj)}},
        Term{Sym::Beta2, {mono(-1, -0.5, 1, F::One, D::Q1Conj)}},
        Term{Sym::Beta3, {mono(-1, -0.5, 1, F::N3, D::Q1)}},
    };
    return forms;
}
}  // namespace

EquationSystem on_boundary_forms(const OnParams& p) {
    std::vector<LinearForm> out;
    for (auto& cf : on_boundary_cforms()) {
        LinearForm re = cf, im = cf;
        re.kind = FormKind::RealPart;
        im.kind = FormKind::ImagPart;
        out.push_back(std::move(re));
        out.push_back(std::move(im));
    }
    return EquationSystem{std::move(out), kOnBoundaryUnknowns, EvalContext::from(p)};
}

// ---------------------------------------------------------------------------
// C2(1) bulk: three sets of three complex equations. Set 1:
//   n u1 + xi zeta v - xi^-1 u2 - n zeta w1 - zeta w2                = 0
//   n xi^-1 w2 + xi^-1 w1 + n zeta u2 - v - xi^-1 zeta u1            = 0
//   n v + xi zeta u1 - xi w1 - xi^-1 w2 - zeta u2                    = 0
// Sets 2 and 3 carry the same skeleton, dressed with q1/q1* and n1, n2, n3.
// ---------------------------------------------------------------------------

EquationSystem c2_bulk_systems(const C2Params& p) {
    using F = Fugacity;
    using D = Defect;
    std::vector<LinearForm> forms(9);

    forms[0].terms = {
        Term{Sym::U1, {mono(+1, 0, 0, F::N)}},
        Term{Sym::V, {mono(+1, 1, 1)}},
        Term{Sym::U2, {mono(-1, -1, 0)}},
        Term{Sym::W1, {mono(-1, 0, 1, F::N)}},
        Term{Sym::W2, {mono(-1, 0, 1)}},
    };
    forms[1].terms = {
        Term{Sym::W2, {mono(+1, -1, 0, F::N)}},
        Term{Sym::W1, {mono(+1, -1, 0)}},
        Term{Sym::U2, {mono(+1, 0, 1, F::N)}},
        Term{Sym::V, {mono(-1, 0, 0)}},
        Term{Sym::U1, {mono(-1, -1, 1)}},
    };
    forms[2].terms = {
        Term{Sym::V, {mono(+1, 0, 0, F::N)}},
        Term{Sym::U1, {mono(+1, 1, 1)}},
        Term{Sym::W1, {mono(-1, 1, 0)}},
        Term{Sym::W2, {mono(-1, -1, 0)}},
        Term{Sym::U2, {mono(-1, 0, 1)}},
    };

    forms[3].terms = {
        Term{Sym::U1, {mono(+1, 0, 0, F::N1)}},
        Term{Sym::V, {mono(+1, 1, 1, F::One, D::Q1Conj)}},
        Term{Sym::U2, {mono(-1, -1, 0, F::One, D::Q1)}},
        Term{Sym::W1, {mono(-1, 0, 1, F::N1)}},
        Term{Sym::W2, {mono(-1, 0, 1, F::One, D::Q1)}},
    };
    forms[4].terms = {
        Term{Sym::W2, {mono(+1, -1, 0, F::N1)}},
        Term{Sym::W1, {mono(+1, -1, 0, F::One, D::Q1)}},
        Term{Sym::U2, {mono(+1, 0, 1, F::N1)}},
        Term{Sym::V, {mono(-1, 0, 0, F::One, D::Q1Conj)}},
        Term{Sym::U1, {mono(-1, -1, 1, F::One, D::Q1)}},
    };
    forms[5].terms = {
        Term{Sym::V, {mono(+1, 0, 0, F::N1)}},
        Term{Sym::U1, {mono(+1, 1, 1, F::One, D::Q1Conj)}},
        Term{Sym::W1, {mono(-1, 1, 0, F::One, D::Q1Conj)}},
        Term{Sym::W2, {mono(-1, -1, 0, F::One, D::Q1)}},
        Term{Sym::U2, {mono(-1, 0, 1, F::One, D::Q1)}},
    };

    forms[6].terms = {
        Term{Sym::U1, {mono(+1, 0, 0, F::N1, D::Q1)}},
        Term{Sym::V, {mono(+1, 1, 1, F::N3, D::Q1Conj)}},
        Term{Sym::U2, {mono(-1, -1, 0, F::N2, D::Q1)}},
        Term{Sym::W1, {mono(-1, 0, 1, F::N1, D::Q1)}},
        Term{Sym::W2, {mono(-1, 0, 1, F::N2, D::Q1)}},
    };
    forms[7].terms = {
        Term{Sym::W2, {mono(+1, -1, 0, F::N1, D::Q1)}},
        Term{Sym::W1, {mono(+1, -1, 0, F::N2, D::Q1)}},
        Term{Sym::U2, {mono(+1, 0, 1, F::N1, D::Q1)}},
        Term{Sym::V, {mono(-1, 0, 0, F::N3, D::Q1Conj)}},
        Term{Sym::U1, {mono(-1, -1, 1, F::N2, D::Q1)}},
    };
    forms[8].terms = {
        Term{Sym::V, {mono(+1, 0, 0, F::N1, D::Q1)}},
        Term{Sym::U1, {mono(+1, 1, 1, F::N3, D::Q1Conj)}},
        Term{Sym::W1, {mono(-1, 1, 0, F::N3, D::Q1Conj)}},
        Term{Sym::W2, {mono(-1, -1, 0, F::N2, D::Q1)}},
        Term{Sym::U2, {mono(-1, 0, 1, F::N2, D::Q1)}},
    };

    return EquationSystem{std::move(forms), kC2BulkUnknowns, EvalContext::from(p)};
}

// ---------------------------------------------------------------------------
// C2(1) boundary contour forms:
//   f1 = -zeta beta1 + zeta^-1 beta2 - q1 zeta beta3 + q1* zeta^-1 beta4
//   f2 = -q1 zeta beta1 + q1 zeta^-1 beta2 - q1 n2 zeta beta3 + q1 q1* zeta^-1 beta4
//   f3 =  q1 zeta^-1 beta1 - q1 zeta beta2 + q1 q1* zeta^-1 beta3 - n2 q1 zeta beta4
//   f4 = -q1 zeta beta1 + q1 zeta^-1 beta2 - q1^2 zeta beta3 + q1* n3 zeta^-1 beta4
//   f5 =  q1 zeta^-1 beta1 - q1 zeta beta2 + n3 q1* zeta^-1 beta3 - q1^2 zeta beta4
// R_i = Re f_i, I_i = Im f_i.
// ---------------------------------------------------------------------------

namespace {
std::vector<LinearForm> c2_boundary_cforms() {
    using F = Fugacity;
    using D = Defect;
    std::vector<LinearForm> forms(5);
    forms[0].terms = {
        Term{Sym::Beta1, {mono(-1, 0, 1)}},
        Term{Sym::Beta2, {mono(+1, 0, -1)}},
        Term{Sym::Beta3, {mono(-1, 0, 1, F::One, D::Q1)}},
        Term{Sym::Beta4, {mono(+1, 0, -1, F::One, D::Q1Conj)}},
    };
    forms[1].terms = {
        Term{Sym::Beta1, {mono(-1, 0, 1, F::One, D::Q1)}},
        Term{Sym::Beta2, {mono(+1, 0, -1, F::One, D::Q1)}},
        Term{Sym::Beta3, {mono(-1, 0, 1, F::N2, D::Q1)}},
        Term{Sym::Beta4, {mono(+1, 0, -1, F::One, D::Q1Q1Conj)}},
    };
    forms[2].terms = {
        Term{Sym::Beta1, {mono(+1, 0, -1, F::One, D::Q1)}},
        Term{Sym::Beta2, {mono(-1, 0, 1, F::One, D::Q1)}},
        Term{Sym::Beta3, {mono(+1, 0, -1, F::One, D::Q1Q1Conj)}},
        Term{Sym::Beta4, {mono(-1, 0, 1, F::N2, D::Q1)}},
    };
    forms[3].terms = {
        Term{Sym::Beta1, {mono(-1, 0, 1, F::One, D::Q1)}},
        Term{Sym::Beta2, {mono(+1, 0, -1, F::One, D::Q1)}},
        Term{Sym::Beta3, {mono(-1, 0, 1, F::One, D::Q1Sq)}},
        Term{Sym::Beta4, {mono(+1, 0, -1, F::N3, D::Q1Conj)}},
    };
    forms[4].terms = {
        Term{Sym::Beta1, {mono(+1, 0, -1, F::One, D::Q1)}},
        Term{Sym::Beta2, {mono(-1, 0, 1, F::One, D::Q1)}},
        Term{Sym::Beta3, {mono(+1, 0, -1, F::N3, D::Q1Conj)}},
        Term{Sym::Beta4, {mono(-1, 0, 1, F::One, D::Q1Sq)}},
    };
    return forms;
}
}  // namespace

EquationSystem c2_boundary_forms(const C2Params& p) {
    std::vector<LinearForm> out;
    auto cf = c2_boundary_cforms();
    for (const auto& f : cf) {
        LinearForm re = f;
        re.kind = FormKind::RealPart;
        out.push_back(std::move(re));
    }
    for (const auto& f : cf) {
        LinearForm im = f;
        im.kind = FormKind::ImagPart;
        out.push_back(std::move(im));
    }
    return EquationSystem{std::move(out), kC2BoundaryUnknowns, EvalContext::from(p)};
}

EquationSystem branch_rows(const EquationSystem& sys, Branch branch) {
    const FormKind want = branch == Branch::RealFlux ? FormKind::RealPart : FormKind::ImagPart;
    EquationSystem out;
    out.unknowns = sys.unknowns;
    out.ctx = sys.ctx;
    for (const auto& f : sys.forms)
        if (f.kind == want) out.forms.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------

NullspaceResult nullspace(const Eigen::MatrixXd& m, double rank_tol) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw std::invalid_argument("nullspace: empty matrix");
    }
    if (!(rank_tol > 0.0)) {
        throw std::invalid_argument("nullspace: rank_tol must be positive");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
    int rank = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;

    NullspaceResult out;
    out.rank = rank;
    for (long j = rank; j < m.cols(); ++j) {
        Eigen::VectorXd v = svd.matrixV().col(j);
        long imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        v /= v(imax);
        out.basis.push_back(std::move(v));
    }
    return out;
}

WeightSet solve_on_bulk(double lambda, double x, double rank_tol) {
    const double s = 3.0 * lambda / kPi + 1.0;
    const auto sys = on_bulk_system_at(lambda, x, s);
    const auto ns = nullspace(sys.real_matrix(), rank_tol);
    if (ns.basis.size() != 1) {
        throw rank_deficiency_error("solve_on_bulk: nullspace dimension " +
                                    std::to_string(ns.basis.size()) + ", expected 1");
    }
    const auto closed = on_bulk(lambda, x);
    const Eigen::VectorXd& v = ns.basis[0];
    const double t_index = 0;  // unknown order: t, u1, u2, v, w1, w2
    const double scale = closed.at(Sym::T) / v(static_cast<long>(t_index));
    WeightSet out(Model::OnBulk, Branch::NotApplicable);
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j)
        out.set(sys.unknowns[j], scale * v(static_cast<long>(j)));
    return out;
}

namespace {
WeightSet solve_boundary(const EquationSystem& all_forms, Branch branch,
                         const WeightSet& closed, Model model, double rank_tol) {
    const auto sys = branch_rows(all_forms, branch);
    const auto ns = nullspace(sys.real_matrix(), rank_tol);
    if (ns.basis.size() != 1) {
        throw rank_deficiency_error("boundary solve: nullspace dimension " +
                                    std::to_string(ns.basis.size()) + ", expected 1");
    }
    const Eigen::VectorXd& v = ns.basis[0];
    // Fix the projective scale against the closed form at its largest entry.
    long imax = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
        const double a = std::abs(closed.at(sys.unknowns[j]));
        if (a > best) {
            best = a;
            imax = static_cast<long>(j);
        }
    }
    const double scale = closed.at(sys.unknowns[static_cast<std::size_t>(imax)]) / v(imax);
    WeightSet out(model, branch);
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j)
        out.set(sys.unknowns[j], scale * v(static_cast<long>(j)));
    return out;
}
}  // namespace

WeightSet solve_on_boundary(const OnParams& p, Branch branch, double rank_tol) {
    return solve_boundary(on_boundary_forms(p), branch, on_boundary(p, branch),
                          Model::OnBoundary, rank_tol);
}

WeightSet solve_c2_boundary(const C2Params& p, Branch branch, double rank_tol) {
    return solve_boundary(c2_boundary_forms(p), branch, c2_boundary(p, branch),
                          Model::C2Boundary, rank_tol);
}

double projective_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("projective_deviation: size mismatch");
    }
    double ma = 0.0, mb = 0.0;
    for (double v : a) ma = std::max(ma, std::abs(v));
    for (double v : b) mb = std::max(mb, std::abs(v));
    if (ma == 0.0 && mb == 0.0) {
        throw std::invalid_argument("projective_deviation: both vectors zero");
    }
    double cross = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            cross = std::max(cross, std::abs(a[i] * b[j] - a[j] * b[i]));
    return cross / std::max(ma * mb, 1e-300);
}

bool projective_match(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    return projective_deviation(a, b) <= tol;
}

}  // namespace loopdh
