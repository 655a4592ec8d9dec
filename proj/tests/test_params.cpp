#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loopdh/params.hpp"

using namespace loopdh;
using std::numbers::pi;

TEST_SUITE_BEGIN("params");

TEST_CASE("loop fugacity n at special crossing parameters") {
    CHECK(on_params(pi / 8, 0.2, 0.4, 1.0).n == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(on_params(pi / 4, 0.1, 0.4, 1.0).n == doctest::Approx(2.0));
    CHECK(c2_params(pi / 8, 0.2, 0.5, 1.0).n == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("derived O(n) quantities satisfy the printed relations") {
    for (double lam : {0.2, 0.3, 0.45}) {
        for (double lam1 : {0.1, 0.2}) {
            const auto p = on_params(lam, lam1, 0.37, 1.3);
            CHECK(p.s == doctest::Approx(3 * lam / pi + 1).epsilon(1e-15));
            CHECK(std::abs(p.xi()) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(p.zeta()) == doctest::Approx(1.0).epsilon(1e-14));
            // n1/n2 = -sin 4l1 / sin(4l + 4l1), n1/n3 = sin 4l1 / sin 4l
            CHECK(p.n1 / p.n2 ==
                  doctest::Approx(-std::sin(4 * lam1) / std::sin(4 * lam + 4 * lam1)).epsilon(1e-12));
            CHECK(p.n1 / p.n3 ==
                  doctest::Approx(std::sin(4 * lam1) / std::sin(4 * lam)).epsilon(1e-12));
            // n3^2 = n1^2 + n2^2 - n n1 n2
            CHECK(std::abs(p.n3 * p.n3 - (p.n1 * p.n1 + p.n2 * p.n2 - p.n * p.n1 * p.n2)) < 1e-12);
            // q1 = rho e^{i(4l + 2l1)}
            CHECK(std::abs(p.q1 - p.rho * std::polar(1.0, 4 * lam + 2 * lam1)) < 1e-14);
        }
    }
}

TEST_CASE("fugacity identity evaluated against an independent route") {
    // Evaluate the section formulas directly instead of through the struct.
    const double lam = 0.3, lam1 = 0.2, n2 = 1.0;
    const double rho = n2 * std::sin(2 * lam1) / std::sin(4 * lam + 4 * lam1);
    const double n3 = -n2 * std::sin(4 * lam) / std::sin(4 * lam + 4 * lam1);
    const double n1 = -2 * rho * std::cos(2 * lam1);
    const double n = -2 * std::cos(4 * lam);
    CHECK(std::abs(n3 * n3 - (n1 * n1 + n2 * n2 - n * n1 * n2)) < 1e-12);

    const auto p = on_params(lam, lam1, 0.4, n2);
    CHECK(p.rho == doctest::Approx(rho).epsilon(1e-15));
    CHECK(p.n1 == doctest::Approx(n1).epsilon(1e-15));
    CHECK(p.n3 == doctest::Approx(n3).epsilon(1e-15));
}

TEST_CASE("degenerate denominators are rejected") {
    // 4 lambda + 4 lambda1 = pi  ->  sin vanishes
    CHECK_THROWS_AS(on_params(pi / 8, pi / 8, 0.4, 1.0), singular_parameter_error);
    CHECK_THROWS_AS(c2_params(0.3, 0.0, 0.4, 1.0), singular_parameter_error);   // sin 4l1 = 0
    CHECK_THROWS_AS(c2_params(0.3, pi / 4, 0.4, 1.0), singular_parameter_error); // cos 2l1 = 0
}

TEST_CASE("C2 derived quantities") {
    const auto p = c2_params(0.3, pi / 8, 0.5, 1.0);
    CHECK(p.n3 == doctest::Approx(std::sin(1.2)).epsilon(1e-14));   // sin 4l1 = 1
    const auto q = c2_params(0.25, 0.15, 0.5, 2.0);
    CHECK(q.n2 / q.n1 == doctest::Approx(-std::sin(1.6) / std::sin(0.6)).epsilon(1e-13));
    CHECK(q.rho == doctest::Approx(-2.0 / (2 * std::cos(0.3))).epsilon(1e-14));
    // q1 = -(n1 / 2cos2l1) e^{i(4l + 2l1)}
    const Complex expected = -(q.n1 / (2 * std::cos(0.3))) * std::polar(1.0, 1.3);
    CHECK(std::abs(q.q1 - expected) < 1e-14);
}

TEST_CASE("phase") {
    CHECK(std::abs(phase(0.77, 0.0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(phase(1.0, 2 * pi) - Complex(1, 0)) < 1e-14);
    const double s = 3 * 0.3 / pi + 1;
    CHECK(std::abs(phase(s, pi / 2) - std::exp(Complex(0, -(0.45 + pi / 2)))) < 1e-14);
}

TEST_CASE("phase is multiplicative in the winding angle") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        const double s = dist(rng), w1 = dist(rng), w2 = dist(rng);
        CHECK(std::abs(phase(s, w1 + w2) - phase(s, w1) * phase(s, w2)) < 1e-13);
    }
}

TEST_CASE("construction is deterministic") {
    const auto a = on_params(0.3, 0.2, 0.4, 1.0);
    const auto b = on_params(0.3, 0.2, 0.4, 1.0);
    CHECK(a.n1 == b.n1);
    CHECK(a.q1 == b.q1);
    CHECK(a.theta_xi == b.theta_xi);
    const auto c = c2_params(0.25, 0.15, 0.5, 1.0);
    const auto d = c2_params(0.25, 0.15, 0.5, 1.0);
    CHECK(c.n2 == d.n2);
    CHECK(c.q1 == d.q1);
}

TEST_CASE("report-only rhombus angle") {
    const auto p = on_params(0.3, 0.2, 0.4, 1.0);
    CHECK(p.alpha() == doctest::Approx(0.4 / (p.s - 1)));
    const auto c = c2_params(0.25, 0.15, 0.5, 1.0);
    CHECK(c.alpha() == doctest::Approx(0.5 / (2 * c.s - 1)));
}

TEST_SUITE_END();
