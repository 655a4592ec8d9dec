#pragma once

#include <complex>
#include <stdexcept>

namespace loopdh {

using Complex = std::complex<double>;

// Thrown when a parameterisation denominator vanishes (a genuine
// singularity of the model parameterisation, not an internal error).
struct singular_parameter_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Tolerance below which a parameterisation denominator counts as zero.
inline constexpr double kDenominatorTol = 1e-12;

// Dilute O(n) model parameters.
//
// Inputs: crossing parameter lambda, boundary crossing parameter lambda1,
// spectral parameter x (all radians) and the free boundary fugacity scale n2.
// Everything else is derived:
//   s    = 3 lambda / pi + 1
//   n    = -2 cos 4lambda
//   rho  = n2 sin 2lambda1 / sin(4lambda + 4lambda1)
//   n3   = -n2 sin 4lambda / sin(4lambda + 4lambda1)
//   n1   = -2 rho cos 2lambda1
//   q1   = rho e^{i(4lambda + 2lambda1)}
// Phases: xi = e^{i s pi}, zeta = e^{-i x}. Powers of xi (including the
// half-integer ones used by boundary contour forms) are always taken through
// theta_xi = s*pi, so xi^{1/2} = e^{i s pi / 2} without branch ambiguity.
struct OnParams {
    double lambda = 0.0;
    double lambda1 = 0.0;
    double x = 0.0;
    double n2 = 0.0;

    double s = 0.0;
    double n = 0.0;
    double n1 = 0.0;
    double n3 = 0.0;
    double rho = 0.0;
    Complex q1{};

    double theta_xi = 0.0;   // s * pi

    Complex xi() const { return std::polar(1.0, theta_xi); }
    Complex zeta() const { return std::polar(1.0, -x); }
    Complex xi_half() const { return std::polar(1.0, 0.5 * theta_xi); }

    // Rhombus angle, derived and report-only: x = alpha (s - 1).
    double alpha() const { return x / (s - 1.0); }
};

// C2(1) model parameters. The free fugacity scale is n1; derived:
//   rho = -n1 / (2 cos 2lambda1)
//   q1  = rho e^{i(4lambda + 2lambda1)}
//   n2  = -n1 sin(4lambda + 4lambda1) / sin 4lambda1
//   n3  =  n1 sin 4lambda / sin 4lambda1
// The spin enters only through xi = e^{2 pi i s}; the value of s that makes
// every bulk discrete-holomorphicity identity close numerically is
// s = 3 lambda / pi - 1/2, i.e. xi = -e^{6 i lambda}.
struct C2Params {
    double lambda = 0.0;
    double lambda1 = 0.0;
    double x = 0.0;
    double n1 = 0.0;

    double s = 0.0;
    double n = 0.0;
    double n2 = 0.0;
    double n3 = 0.0;
    double rho = 0.0;
    Complex q1{};

    double theta_xi = 0.0;   // 2 * pi * s = 6 lambda - pi

    Complex xi() const { return std::polar(1.0, theta_xi); }
    Complex zeta() const { return std::polar(1.0, -x); }

    double alpha() const { return x / (2.0 * s - 1.0); }
};

// Generalised dilute O(n) model with asymmetric boundary plaquettes
// (appendix family). All three boundary fugacities coincide and are held in
// n1; k labels the one-parameter solution family.
struct GenOnParams {
    double lambda = 0.0;
    double x = 0.0;
    double k = 0.0;
    double n1 = 0.0;
};

// Builders; throw singular_parameter_error on degenerate denominators.
OnParams on_params(double lambda, double lambda1, double x, double n2);
C2Params c2_params(double lambda, double lambda1, double x, double n1);

// e^{-i s W}; W is the winding angle of the defect.
Complex phase(double s, double winding);

}  // namespace loopdh
