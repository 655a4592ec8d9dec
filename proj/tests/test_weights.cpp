#include <doctest.h>

#include <cmath>
#include <numbers>

#include "loopdh/weights.hpp"

using namespace loopdh;
using std::numbers::pi;
using Sym = WeightSymbol;

TEST_SUITE_BEGIN("weights");

TEST_CASE("O(n) bulk weights at special spectral points") {
    const double l = 0.31;
    const auto w0 = on_bulk(l, 0.0);
    CHECK(w0.at(Sym::U2) == 0.0);
    CHECK(w0.at(Sym::V) == 0.0);
    CHECK(w0.at(Sym::W2) == doctest::Approx(0.0));
    const double s23 = std::sin(2 * l) * std::sin(3 * l);
    CHECK(w0.at(Sym::T) == doctest::Approx(s23));
    CHECK(w0.at(Sym::U1) == doctest::Approx(s23));
    CHECK(w0.at(Sym::W1) == doctest::Approx(std::sin(2 * l) * std::sin(3 * l)));

    const auto w3 = on_bulk(l, 3 * l);
    CHECK(w3.at(Sym::U1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(w3.at(Sym::V) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(w3.at(Sym::W1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(w3.at(Sym::U2) == doctest::Approx(s23));
    CHECK(w3.at(Sym::W2) == doctest::Approx(std::sin(3 * l) * std::sin(2 * l)));
}

TEST_CASE("O(n) bulk full tuple at a generic point") {
    const double l = 0.3, x = 0.5;
    const auto w = on_bulk(l, x);
    CHECK(w.at(Sym::T) == doctest::Approx(std::sin(x) * std::sin(3 * l - x) +
                                          std::sin(2 * l) * std::sin(3 * l)));
    CHECK(w.at(Sym::U1) == doctest::Approx(std::sin(2 * l) * std::sin(3 * l - x)));
    CHECK(w.at(Sym::U2) == doctest::Approx(std::sin(2 * l) * std::sin(x)));
    CHECK(w.at(Sym::V) == doctest::Approx(std::sin(x) * std::sin(3 * l - x)));
    CHECK(w.at(Sym::W1) == doctest::Approx(std::sin(2 * l - x) * std::sin(3 * l - x)));
    CHECK(w.at(Sym::W2) == doctest::Approx(-std::sin(x) * std::sin(l - x)));
}

TEST_CASE("O(n) boundary weights") {
    SUBCASE("beta3 vanishes at x = 0 and at lambda = pi/4") {
        auto p = on_params(0.3, 0.2, 0.0, 1.0);
        CHECK(on_boundary(p, Branch::RealFlux).at(Sym::Beta3) == doctest::Approx(0.0));
        for (double x : {0.2, 0.5, 1.1}) {
            auto q = on_params(pi / 4, 0.2, x, 1.0);
            CHECK(on_boundary(q, Branch::ImaginaryFlux).at(Sym::Beta3) ==
                  doctest::Approx(0.0).epsilon(1e-13));
        }
    }
    SUBCASE("pure beta3 limit at vanishing fugacities") {
        // With n1 = n2 = n3 = 0 the formulas leave only beta3.
        const double l = 0.3, x = 0.4;
        const double b1 = 0.0 + 0.0 * std::cos(4 * l) + 0.0;
        const double b2 = 0.0;
        CHECK(b1 == 0.0);
        CHECK(b2 == 0.0);
        // beta3 never references the fugacities.
        auto p = on_params(l, 0.2, x, 1.0);
        CHECK(on_boundary(p, Branch::RealFlux).at(Sym::Beta3) ==
              doctest::Approx(-2 * std::sin(4 * l) * std::sin(2 * x)));
    }
}

TEST_CASE("O(n) diagonal boundary weights") {
    const double l = 0.37;
    auto r0 = on_boundary_diagonal(l, 0.0, Branch::RealFlux);
    CHECK(r0.at(Sym::Beta1) == doctest::Approx(std::sin(1.5 * l)));
    CHECK(r0.at(Sym::Beta2) == doctest::Approx(std::sin(1.5 * l)));
    auto i0 = on_boundary_diagonal(l, 0.0, Branch::ImaginaryFlux);
    CHECK(i0.at(Sym::Beta1) == doctest::Approx(std::cos(1.5 * l)));
    CHECK(i0.at(Sym::Beta2) == doctest::Approx(std::cos(1.5 * l)));
    auto r = on_boundary_diagonal(l, 1.5 * l, Branch::RealFlux);
    CHECK(r.at(Sym::Beta2) == doctest::Approx(0.0));
    CHECK_FALSE(r.has(Sym::Beta3));
}

TEST_CASE("blobbed weights match the rescaled boundary weights at the blob point") {
    for (double l : {0.2, 0.3, 0.45}) {
        for (double l1 : {0.1, 0.2}) {
            for (double x : {0.15, 0.4, 0.7}) {
                const auto p = on_params(l, l1, x, 1.0);
                CHECK(p.n1 ==
                      doctest::Approx(-std::sin(4 * l1) / std::sin(4 * l + 4 * l1)).epsilon(1e-13));
                for (Branch b : {Branch::RealFlux, Branch::ImaginaryFlux}) {
                    const auto w = on_boundary(p, b);
                    const auto hat = on_blobbed(l, l1, x, b);
                    const double fac = blob_rescale_factor(l, l1, b);
                    for (auto s : {Sym::Beta1, Sym::Beta2, Sym::Beta3}) {
                        CHECK(std::abs(fac * w.at(s) - hat.at(s)) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("blobbed weights direct evaluation") {
    const double l = 0.25, l1 = 0.1, x = 0.3;
    const auto h = on_blobbed(l, l1, x, Branch::RealFlux);
    CHECK(h.at(Sym::Beta1) == doctest::Approx(0.5 * (std::cos(2 * x - l) - std::cos(4 * l + 4 * l1))));
    CHECK(h.at(Sym::Beta2) ==
          doctest::Approx(0.5 * (std::cos(l) - std::cos(2 * x - 4 * l - 4 * l1))));
    CHECK(h.at(Sym::Beta3) == doctest::Approx(std::sin(4 * l + 4 * l1) * std::sin(2 * x)));
    CHECK(on_blobbed(l, l1, 0.0, Branch::ImaginaryFlux).at(Sym::Beta3) == doctest::Approx(0.0));
}

TEST_CASE("generalised boundary weights") {
    SUBCASE("k = 0 reduces to 2 cos(lambda) times the diagonal sine pair") {
        const double l = 0.3, x = 0.4;
        const auto g = on_generalized_boundary({l, x, 0.0, 0.7});
        CHECK(g.at(Sym::Beta3) == 0.0);
        CHECK(g.at(Sym::Beta4) == 0.0);
        CHECK(g.at(Sym::Beta1) == doctest::Approx(2 * std::cos(l) * std::sin(1.5 * l + x)));
        CHECK(g.at(Sym::Beta2) == doctest::Approx(2 * std::cos(l) * std::sin(1.5 * l - x)));
    }
    SUBCASE("x = 0 kills beta3 and beta4") {
        const auto g = on_generalized_boundary({0.3, 0.0, 1.5, 0.7});
        CHECK(g.at(Sym::Beta3) == doctest::Approx(0.0));
        CHECK(g.at(Sym::Beta4) == doctest::Approx(0.0));
    }
    SUBCASE("generic four-tuple") {
        const double l = 0.3, x = 0.4, k = 1.5, n1 = 0.7;
        const auto g = on_generalized_boundary({l, x, k, n1});
        CHECK(g.at(Sym::Beta4) == doctest::Approx(k * std::sin(2 * l) * std::sin(2 * x)));
        CHECK(g.at(Sym::Beta3) ==
              doctest::Approx(-k * k * std::sin(2 * l) * std::sin(2 * x) * std::sin(0.5 * l - x)));
    }
}

TEST_CASE("large-k limit of the generalised family") {
    // -beta_j(x) / (k^2 sin(l/2 - x)) approaches the n1 = n2 boundary
    // solution; -beta4 / (k^2 sin(l/2 - x)) approaches zero.
    const double k = 1e6;
    for (double l : {0.2, 0.3}) {
        for (double x : {0.17, 0.4, 0.7}) {
            const double n1 = 0.7;
            const auto g = on_generalized_boundary({l, x, k, n1});
            const double r = -1.0 / (k * k * std::sin(0.5 * l - x));
            const std::vector<double> lim = {r * g.at(Sym::Beta1), r * g.at(Sym::Beta2),
                                             r * g.at(Sym::Beta3)};
            const auto p = on_params(l, -0.5 * l, x, n1);   // lambda1 = -lambda/2 gives n1 = n2
            CHECK(p.n1 == doctest::Approx(p.n2).epsilon(1e-12));
            const auto w = on_boundary(p, Branch::RealFlux);
            const std::vector<double> target = {w.at(Sym::Beta1), w.at(Sym::Beta2),
                                                w.at(Sym::Beta3)};
            double ma = 0, mb = 0, cross = 0;
            for (double v : lim) ma = std::max(ma, std::abs(v));
            for (double v : target) mb = std::max(mb, std::abs(v));
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    cross = std::max(cross, std::abs(lim[static_cast<std::size_t>(i)] * target[static_cast<std::size_t>(j)] -
                                                     lim[static_cast<std::size_t>(j)] * target[static_cast<std::size_t>(i)]));
            CHECK(cross / (ma * mb) < 1e-4);
            CHECK(std::abs(r * g.at(Sym::Beta4)) / ma < 1e-4);
        }
    }
}

TEST_CASE("C2 bulk weights") {
    const double l = 0.25;
    const auto w0 = c2_bulk(l, 0.0);
    CHECK(w0.at(Sym::U2) == doctest::Approx(0.0));
    CHECK(w0.at(Sym::V) == doctest::Approx(0.0));
    CHECK(w0.at(Sym::W2) == doctest::Approx(0.0));
    const auto w6 = c2_bulk(l, 6 * l);
    CHECK(w6.at(Sym::U1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(w6.at(Sym::V) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(w6.at(Sym::W1) == doctest::Approx(0.0).epsilon(1e-14));
    const auto w = c2_bulk(l, 0.7);
    CHECK(w.at(Sym::U1) == doctest::Approx(std::sin(0.5) * std::sin(0.7 - 1.5)));
    CHECK(w.at(Sym::U2) == doctest::Approx(-std::sin(0.5) * std::sin(0.7)));
    CHECK(w.at(Sym::V) == doctest::Approx(-std::sin(0.7) * std::sin(0.7 - 1.5)));
    // w1 carries the sign under which the bulk identities and the reflection
    // equation close (opposite to the printed table).
    CHECK(w.at(Sym::W1) == doctest::Approx(-std::sin(0.7 - 0.5) * std::sin(0.7 - 1.5)));
    CHECK(w.at(Sym::W2) == doctest::Approx(-std::sin(0.7) * std::sin(0.7 - 1.0)));
}

TEST_CASE("C2 boundary weights") {
    const auto p = c2_params(0.25, 0.15, 0.5, 1.0);
    const auto wr = c2_boundary(p, Branch::RealFlux);
    CHECK(wr.at(Sym::Beta1) == wr.at(Sym::Beta2));
    CHECK(wr.at(Sym::Beta3) == wr.at(Sym::Beta4));
    CHECK(wr.at(Sym::Beta1) == doctest::Approx(std::cos(0.5 - 1.0 - 0.6)));
    CHECK(wr.at(Sym::Beta3) == doctest::Approx(2 * std::sin(0.6) * std::sin(0.5)));
    const auto wi = c2_boundary(p, Branch::ImaginaryFlux);
    CHECK(wi.at(Sym::Beta1) == doctest::Approx(-wi.at(Sym::Beta2)));
    CHECK(wi.at(Sym::Beta3) == doctest::Approx(-wi.at(Sym::Beta4)));
    const auto p2 = c2_params(0.25, 0.15, pi / 2, 1.0);
    CHECK(c2_boundary(p2, Branch::ImaginaryFlux).at(Sym::Beta3) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("all weight families are 2 pi periodic in x") {
    const double l = 0.3, l1 = 0.2;
    for (double x : {0.15, 0.4, 0.7, 1.3}) {
        const auto a = on_bulk(l, x);
        const auto b = on_bulk(l, x + 2 * pi);
        for (const auto& [s, v] : a.entries()) CHECK(std::abs(v - b.at(s)) < 1e-12);

        const auto pa = on_params(l, l1, x, 1.0);
        const auto pb = on_params(l, l1, x + 2 * pi, 1.0);
        for (Branch br : {Branch::RealFlux, Branch::ImaginaryFlux}) {
            const auto ba = on_boundary(pa, br);
            const auto bb = on_boundary(pb, br);
            for (const auto& [s, v] : ba.entries()) CHECK(std::abs(v - bb.at(s)) < 1e-12);
        }

        const auto ca = c2_bulk(l, x);
        const auto cb = c2_bulk(l, x + 2 * pi);
        for (const auto& [s, v] : ca.entries()) CHECK(std::abs(v - cb.at(s)) < 1e-12);

        const auto ga = on_generalized_boundary({l, x, 1.5, 0.7});
        const auto gb = on_generalized_boundary({l, x + 2 * pi, 1.5, 0.7});
        for (const auto& [s, v] : ga.entries()) CHECK(std::abs(v - gb.at(s)) < 1e-11);
    }
}

TEST_CASE("WeightSet access") {
    WeightSet w(Model::OnBulk, Branch::NotApplicable);
    w.set(Sym::T, 1.5);
    CHECK(w.at(Sym::T) == 1.5);
    CHECK(w.has(Sym::T));
    CHECK_FALSE(w.has(Sym::V));
    CHECK_THROWS_AS(w.at(Sym::V), std::out_of_range);
    w.set(Sym::T, 2.0);
    CHECK(w.at(Sym::T) == 2.0);
    CHECK(w.entries().size() == 1);
}

TEST_SUITE_END();
