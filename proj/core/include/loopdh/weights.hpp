#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "loopdh/params.hpp"

namespace loopdh {

enum class WeightSymbol : std::uint8_t { T, U1, U2, V, W1, W2, Beta1, Beta2, Beta3, Beta4 };

std::string to_string(WeightSymbol s);

enum class Model : std::uint8_t { OnBulk, OnBoundary, C2Bulk, C2Boundary, GenOnBoundary };
enum class Branch : std::uint8_t { RealFlux, ImaginaryFlux, NotApplicable };

std::string to_string(Model m);
std::string to_string(Branch b);

// An ordered symbol -> value map for one weight family at one spectral point.
class WeightSet {
  public:
    WeightSet(Model model, Branch branch) : model_(model), branch_(branch) {}

    void set(WeightSymbol s, double v);
    double at(WeightSymbol s) const;          // throws std::out_of_range if absent
    bool has(WeightSymbol s) const;

    const std::vector<std::pair<WeightSymbol, double>>& entries() const { return entries_; }
    Model model() const { return model_; }
    Branch branch() const { return branch_; }

    std::vector<double> values() const;

  private:
    Model model_;
    Branch branch_;
    std::vector<std::pair<WeightSymbol, double>> entries_;
};

// Bulk dilute O(n) integrable weights:
//   t  = sin x sin(3l - x) + sin 2l sin 3l
//   u1 = sin 2l sin(3l - x)        u2 = sin 2l sin x
//   v  = sin x sin(3l - x)
//   w1 = sin(2l - x) sin(3l - x)   w2 = -sin x sin(l - x)
WeightSet on_bulk(const OnParams& p);
WeightSet on_bulk(double lambda, double x);

// Non-diagonal O(n) boundary weights; the real-flux branch takes the upper
// sign in +-n3:
//   beta1 = n1 + n2 cos 4l +- n3 cos(2x - l)
//   beta2 = n1 cos 2x + n2 cos(2x - 4l) +- n3 cos l
//   beta3 = -2 sin 4l sin 2x
WeightSet on_boundary(const OnParams& p, Branch branch);

// Diagonal boundary (beta3 = 0): sine pair for the real-flux branch, cosine
// pair for the imaginary-flux branch.
WeightSet on_boundary_diagonal(double lambda, double x, Branch branch);

// Blobbed specialisation; the sign pairing follows the printed display
// (upper symbols for the real-flux branch):
//   bhat1 = 1/2 [cos(2x - l) -+ cos(4l + 4l1)]
//   bhat2 = 1/2 [cos l -+ cos(2x - 4l - 4l1)]
//   bhat3 = +- sin(4l + 4l1) sin 2x
WeightSet on_blobbed(double lambda, double lambda1, double x, Branch branch);

// Rescaling factor -+ sin(4l+4l1) / (2 sin 4l) relating on_boundary at the
// blob point (n1 = -sin 4l1 / sin(4l+4l1), n2 = 1) to the hatted weights.
double blob_rescale_factor(double lambda, double lambda1, Branch branch);

// One-parameter boundary family of the generalised O(n) model (beta4 != 0
// requires n1 = n2 = n3).
WeightSet on_generalized_boundary(const GenOnParams& g);

// C2(1) bulk weights. The printed w1 has the opposite sign; the sign used
// here is the one under which all nine bulk discrete-holomorphicity
// identities and both reflection-equation branches close:
//   u1 = sin 2l sin(x - 6l)        u2 = -sin 2l sin x
//   v  = -sin x sin(x - 6l)
//   w1 = -sin(x - 2l) sin(x - 6l)  w2 = -sin x sin(x - 4l)
WeightSet c2_bulk(const C2Params& p);
WeightSet c2_bulk(double lambda, double x);

// C2(1) boundary weights, both branches:
//   real:      beta1 =  beta2 = n1 cos(x - 4l - 4l1),  beta3 =  beta4 = 2 sin 4l1 sin x
//   imaginary: beta1 = -beta2 = n1 sin(x - 4l - 4l1),  beta3 = -beta4 = -2 sin 4l1 cos x
WeightSet c2_boundary(const C2Params& p, Branch branch);

}  // namespace loopdh
