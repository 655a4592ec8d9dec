#include "loopdh/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace loopdh {

namespace {
constexpr double kPi = std::numbers::pi;

void require_nonzero(double value, const char* what) {
    if (std::abs(value) <= kDenominatorTol) {
        throw singular_parameter_error(std::string(what) + " vanishes: parameterisation singular");
    }
}
}  // namespace

OnParams on_params(double lambda, double lambda1, double x, double n2) {
    const double s44 = std::sin(4.0 * lambda + 4.0 * lambda1);
    require_nonzero(s44, "sin(4*lambda + 4*lambda1)");

    OnParams p;
    p.lambda = lambda;
    p.lambda1 = lambda1;
    p.x = x;
    p.n2 = n2;
    p.s = 3.0 * lambda / kPi + 1.0;
    p.theta_xi = p.s * kPi;
    p.n = -2.0 * std::cos(4.0 * lambda);
    p.rho = n2 * std::sin(2.0 * lambda1) / s44;
    p.n3 = -n2 * std::sin(4.0 * lambda) / s44;
    p.n1 = -2.0 * p.rho * std::cos(2.0 * lambda1);
    const double arg = 4.0 * lambda + 2.0 * lambda1;
    p.q1 = p.rho * Complex(std::cos(arg), std::sin(arg));
    return p;
}

C2Params c2_params(double lambda, double lambda1, double x, double n1) {
    require_nonzero(std::sin(4.0 * lambda1), "sin(4*lambda1)");
    require_nonzero(std::cos(2.0 * lambda1), "cos(2*lambda1)");

    C2Params p;
    p.lambda = lambda;
    p.lambda1 = lambda1;
    p.x = x;
    p.n1 = n1;
    p.s = 3.0 * lambda / kPi - 0.5;
    p.theta_xi = 2.0 * kPi * p.s;   // = 6 lambda - pi
    p.n = -2.0 * std::cos(4.0 * lambda);
    p.rho = -n1 / (2.0 * std::cos(2.0 * lambda1));
    const double arg = 4.0 * lambda + 2.0 * lambda1;
    p.q1 = p.rho * Complex(std::cos(arg), std::sin(arg));
    p.n2 = -n1 * std::sin(4.0 * lambda + 4.0 * lambda1) / std::sin(4.0 * lambda1);
    p.n3 = n1 * std::sin(4.0 * lambda) / std::sin(4.0 * lambda1);
    return p;
}

Complex phase(double s, double winding) {
    return std::polar(1.0, -s * winding);
}

}  // namespace loopdh
