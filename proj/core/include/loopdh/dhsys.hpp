#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "loopdh/params.hpp"
#include "loopdh/weights.hpp"

namespace loopdh {

struct rank_deficiency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbolic factors a coefficient monomial can carry.
enum class Fugacity : std::uint8_t { One, N, N1, N2, N3 };
enum class Defect : std::uint8_t { One, Q1, Q1Conj, Q1Q1Conj, Q1Sq };

// Everything needed to evaluate monomials numerically. theta_xi is the phase
// of xi, so fractional xi powers stay single-valued: xi^p = e^{i p theta_xi}.
struct EvalContext {
    double theta_xi = 0.0;
    double x = 0.0;
    double n = 0.0, n1 = 0.0, n2 = 0.0, n3 = 0.0;
    Complex q1{};

    static EvalContext from(const OnParams& p);
    static EvalContext from(const C2Params& p);
    // Bulk O(n) context with the spin chosen freely (spin-criticality scans).
    static EvalContext on_bulk_at_spin(double lambda, double x, double s);

    Complex xi_pow(double p) const { return std::polar(1.0, theta_xi * p); }
    Complex zeta_pow(int p) const { return std::polar(1.0, -x * p); }
    double fugacity(Fugacity f) const;
    Complex defect(Defect d) const;
};

// One signed product  sign * fug * defect * xi^xi_power * zeta^zeta_power.
// xi powers are half-integers in the boundary contour forms, hence a double.
struct Monomial {
    double xi_power = 0.0;
    int zeta_power = 0;
    Fugacity fug = Fugacity::One;
    Defect defect = Defect::One;
    int sign = 1;

    Complex eval(const EvalContext& ctx) const;
};

enum class FormKind : std::uint8_t { Complex, RealPart, ImagPart };

// One discrete-holomorphicity equation: weight symbol -> monomial list.
// RealPart/ImagPart forms are the stated part of the underlying complex
// contour sum; their coefficients are real.
struct LinearForm {
    FormKind kind = FormKind::Complex;
    std::vector<std::pair<WeightSymbol, std::vector<Monomial>>> terms;

    Complex coefficient(WeightSymbol s, const EvalContext& ctx) const;
    Complex value(const WeightSet& w, const EvalContext& ctx) const;

    // |form(w)| / max(max_i |c_i w_i|, floor * max|c| * max|w|). The relative
    // floor keeps the ratio meaningful at isolated points where every
    // individual product c_i w_i happens to vanish.
    double residual(const WeightSet& w, const EvalContext& ctx) const;

    static constexpr double kResidualFloor = 1e-5;
};

struct EquationSystem {
    std::vector<LinearForm> forms;
    std::vector<WeightSymbol> unknowns;
    EvalContext ctx;

    Eigen::MatrixXcd complex_matrix() const;
    // Complex forms are split into Re and Im rows; RealPart/ImagPart forms
    // contribute one row each.
    Eigen::MatrixXd real_matrix() const;

    std::vector<double> residuals(const WeightSet& w) const;
    double max_residual(const WeightSet& w) const;
};

// ---- system builders (coefficient tables transcribed from the printed
// equation displays; evaluation is bound to the given parameter point) ----

// Four complex bulk O(n) equations in (t, u1, u2, v, w1, w2).
EquationSystem on_bulk_system(const OnParams& p);
EquationSystem on_bulk_system_at(double lambda, double x, double s);

// Blobbed-observable bulk systems: the q1-dressed set (three equations) and
// the doubly-dressed set with n2, n3 (three more).
std::pair<EquationSystem, EquationSystem> on_bulk_blob_systems(const OnParams& p);

// e^{8 i lambda} conj(q1) (n3 - q1) + q1 (n2 - q1); vanishes on any
// on_params output.
Complex n3_condition(const OnParams& p);

// Six real boundary forms {R1, I1, R2, I2, R3, I3} in (beta1, beta2, beta3),
// in that order.
EquationSystem on_boundary_forms(const OnParams& p);

// Nine complex C2(1) bulk equations (three sets of three).
EquationSystem c2_bulk_systems(const C2Params& p);

// Ten real boundary forms {R1..R5, I1..I5} in (beta1..beta4): R1..R5 first.
EquationSystem c2_boundary_forms(const C2Params& p);

// Subsets by flux branch: rows {R_i} for RealFlux, {I_i} for ImaginaryFlux.
EquationSystem branch_rows(const EquationSystem& sys, Branch branch);

// ---- rank-revealing nullspace ----

struct NullspaceResult {
    int rank = 0;
    std::vector<Eigen::VectorXd> basis;   // each normalised: largest |entry| -> +1
};

inline constexpr double kDefaultRankTol = 1e-9;

NullspaceResult nullspace(const Eigen::MatrixXd& m, double rank_tol = kDefaultRankTol);

// Solve the 8x6 real bulk system at the integrable spin s = 3 lambda/pi + 1;
// the one-dimensional nullspace is rescaled so t matches on_bulk's t.
// Throws rank_deficiency_error when the nullspace dimension is not 1.
WeightSet solve_on_bulk(double lambda, double x, double rank_tol = kDefaultRankTol);

// Boundary solves: nullspace of the branch rows, projectively normalised
// against the closed-form weights.
WeightSet solve_on_boundary(const OnParams& p, Branch branch, double rank_tol = kDefaultRankTol);
WeightSet solve_c2_boundary(const C2Params& p, Branch branch, double rank_tol = kDefaultRankTol);

// max_{i<j} |a_i b_j - a_j b_i| <= tol * max|a| * max|b|; rejects a == b == 0.
bool projective_match(const std::vector<double>& a, const std::vector<double>& b, double tol);
// The scale-free deviation used by projective_match.
double projective_deviation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace loopdh
