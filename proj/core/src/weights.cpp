#include "loopdh/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopdh {

std::string to_string(WeightSymbol s) {
    switch (s) {
        case WeightSymbol::T: return "t";
        case WeightSymbol::U1: return "u1";
        case WeightSymbol::U2: return "u2";
        case WeightSymbol::V: return "v";
        case WeightSymbol::W1: return "w1";
        case WeightSymbol::W2: return "w2";
        case WeightSymbol::Beta1: return "beta1";
        case WeightSymbol::Beta2: return "beta2";
        case WeightSymbol::Beta3: return "beta3";
        case WeightSymbol::Beta4: return "beta4";
    }
    return "?";
}

std::string to_string(Model m) {
    switch (m) {
        case Model::OnBulk: return "on-bulk";
        case Model::OnBoundary: return "on-boundary";
        case Model::C2Bulk: return "c2-bulk";
        case Model::C2Boundary: return "c2-boundary";
        case Model::GenOnBoundary: return "gen-on-boundary";
    }
    return "?";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::RealFlux: return "real";
        case Branch::ImaginaryFlux: return "imaginary";
        case Branch::NotApplicable: return "n/a";
    }
    return "?";
}

void WeightSet::set(WeightSymbol s, double v) {
    for (auto& [sym, val] : entries_) {
        if (sym == s) {
            val = v;
            return;
        }
    }
    entries_.emplace_back(s, v);
}

double WeightSet::at(WeightSymbol s) const {
    for (const auto& [sym, val] : entries_) {
        if (sym == s) return val;
    }
    throw std::out_of_range("WeightSet: no entry for symbol " + to_string(s));
}

bool WeightSet::has(WeightSymbol s) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [s](const auto& e) { return e.first == s; });
}

std::vector<double> WeightSet::values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& [sym, val] : entries_) out.push_back(val);
    return out;
}

WeightSet on_bulk(double lambda, double x) {
    const double l = lambda;
    WeightSet w(Model::OnBulk, Branch::NotApplicable);
    w.set(WeightSymbol::T, std::sin(x) * std::sin(3 * l - x) + std::sin(2 * l) * std::sin(3 * l));
    w.set(WeightSymbol::U1, std::sin(2 * l) * std::sin(3 * l - x));
    w.set(WeightSymbol::U2, std::sin(2 * l) * std::sin(x));
    w.set(WeightSymbol::V, std::sin(x) * std::sin(3 * l - x));
    w.set(WeightSymbol::W1, std::sin(2 * l - x) * std::sin(3 * l - x));
    w.set(WeightSymbol::W2, -std::sin(x) * std::sin(l - x));
    return w;
}

WeightSet on_bulk(const OnParams& p) { return on_bulk(p.lambda, p.x); }

WeightSet on_boundary(const OnParams& p, Branch branch) {
    const double l = p.lambda;
    const double x = p.x;
    const double sgn = branch == Branch::RealFlux ? 1.0 : -1.0;
    WeightSet w(Model::OnBoundary, branch);
    w.set(WeightSymbol::Beta1, p.n1 + p.n2 * std::cos(4 * l) + sgn * p.n3 * std::cos(2 * x - l));
    w.set(WeightSymbol::Beta2,
          p.n1 * std::cos(2 * x) + p.n2 * std::cos(2 * x - 4 * l) + sgn * p.n3 * std::cos(l));
    w.set(WeightSymbol::Beta3, -2.0 * std::sin(4 * l) * std::sin(2 * x));
    return w;
}

WeightSet on_boundary_diagonal(double lambda, double x, Branch branch) {
    WeightSet w(Model::OnBoundary, branch);
    if (branch == Branch::RealFlux) {
        w.set(WeightSymbol::Beta1, std::sin(1.5 * lambda + x));
        w.set(WeightSymbol::Beta2, std::sin(1.5 * lambda - x));
    } else {
        w.set(WeightSymbol::Beta1, std::cos(1.5 * lambda + x));
        w.set(WeightSymbol::Beta2, std::cos(1.5 * lambda - x));
    }
    return w;
}

WeightSet on_blobbed(double lambda, double lambda1, double x, Branch branch) {
    const double l = lambda, l1 = lambda1;
    const double sgn = branch == Branch::RealFlux ? 1.0 : -1.0;
    WeightSet w(Model::OnBoundary, branch);
    w.set(WeightSymbol::Beta1, 0.5 * (std::cos(2 * x - l) - sgn * std::cos(4 * l + 4 * l1)));
    w.set(WeightSymbol::Beta2, 0.5 * (std::cos(l) - sgn * std::cos(2 * x - 4 * l - 4 * l1)));
    w.set(WeightSymbol::Beta3, sgn * std::sin(4 * l + 4 * l1) * std::sin(2 * x));
    return w;
}

double blob_rescale_factor(double lambda, double lambda1, Branch branch) {
    const double sgn = branch == Branch::RealFlux ? -1.0 : 1.0;
    return sgn * std::sin(4 * lambda + 4 * lambda1) / (2.0 * std::sin(4 * lambda));
}

WeightSet on_generalized_boundary(const GenOnParams& g) {
    const double l = g.lambda, x = g.x, k = g.k, n1 = g.n1;
    const double k2n1 = k * k * n1;
    WeightSet w(Model::GenOnBoundary, Branch::NotApplicable);
    w.set(WeightSymbol::Beta1,
          2 * std::cos(l) * std::sin(1.5 * l + x) -
              k2n1 * std::sin(0.5 * l + x) * std::sin(0.5 * l - x) * std::sin(1.5 * l - x));
    w.set(WeightSymbol::Beta2,
          std::sin(1.5 * l - x) * (2 * std::cos(l) - k2n1 * std::pow(std::sin(0.5 * l - x), 2)));
    w.set(WeightSymbol::Beta3,
          -k * k * std::sin(2 * l) * std::sin(2 * x) * std::sin(0.5 * l - x));
    w.set(WeightSymbol::Beta4, k * std::sin(2 * l) * std::sin(2 * x));
    return w;
}

WeightSet c2_bulk(double lambda, double x) {
    const double l = lambda;
    WeightSet w(Model::C2Bulk, Branch::NotApplicable);
    w.set(WeightSymbol::U1, std::sin(2 * l) * std::sin(x - 6 * l));
    w.set(WeightSymbol::U2, -std::sin(2 * l) * std::sin(x));
    w.set(WeightSymbol::V, -std::sin(x) * std::sin(x - 6 * l));
    w.set(WeightSymbol::W1, -std::sin(x - 2 * l) * std::sin(x - 6 * l));
    w.set(WeightSymbol::W2, -std::sin(x) * std::sin(x - 4 * l));
    return w;
}

WeightSet c2_bulk(const C2Params& p) { return c2_bulk(p.lambda, p.x); }

WeightSet c2_boundary(const C2Params& p, Branch branch) {
    const double l = p.lambda, l1 = p.lambda1, x = p.x;
    WeightSet w(Model::C2Boundary, branch);
    if (branch == Branch::RealFlux) {
        const double b1 = p.n1 * std::cos(x - 4 * l - 4 * l1);
        const double b3 = 2.0 * std::sin(4 * l1) * std::sin(x);
        w.set(WeightSymbol::Beta1, b1);
        w.set(WeightSymbol::Beta2, b1);
        w.set(WeightSymbol::Beta3, b3);
        w.set(WeightSymbol::Beta4, b3);
    } else {
        const double b1 = p.n1 * std::sin(x - 4 * l - 4 * l1);
        const double b3 = -2.0 * std::sin(4 * l1) * std::cos(x);
        w.set(WeightSymbol::Beta1, b1);
        w.set(WeightSymbol::Beta2, -b1);
        w.set(WeightSymbol::Beta3, b3);
        w.set(WeightSymbol::Beta4, -b3);
    }
    return w;
}

}  // namespace loopdh
