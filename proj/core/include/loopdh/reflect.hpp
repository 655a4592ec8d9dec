#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "loopdh/params.hpp"
#include "loopdh/weights.hpp"

namespace loopdh {

struct catalog_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Edge state: 0 = empty, 1/2 = loop colour. The dilute O(n) model uses
// {0, 1}; the dense C2(1) model uses {1, 2}.
using EdgeColour = std::uint8_t;

enum class AnchorType : std::uint8_t { Top, Bottom };
enum class LoopFugacity : std::uint8_t { N, N1, N2, N3 };

// Where a strand touches the wall: rank is the global top-to-bottom position
// of the anchor in the diagram (upper boundary slot before lower, top anchor
// before bottom anchor within a slot).
struct AnchorTouch {
    int rank = 0;
    AnchorType type = AnchorType::Top;
    auto operator<=>(const AnchorTouch&) const = default;
};

// Fugacity of a closed loop from its wall-touch profile:
//   no touches                          -> N
//   {top, bottom} with topmost = top    -> N1
//   {top, bottom} with topmost = bottom -> N2
//   {top, top} or {bottom, bottom}      -> N3
// Profiles with more than two touches are rejected (a strand has two ends).
LoopFugacity classify_loop(std::vector<AnchorTouch> profile);

// One local plaquette filling. Diamond edges are indexed NW=0, NE=1, SE=2,
// SW=3; triangle edges top=0, bottom=1. `edge[i]` is the required state of
// edge i (0 = empty). Pairs connect edges through the plaquette; anchors end
// a strand on the wall.
struct PlaquetteTemplate {
    WeightSymbol symbol;
    int num_edges = 4;
    std::array<EdgeColour, 4> edge{};
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::pair<int, AnchorType>> anchors;
};

// Plaquette catalogs (reconstructed; validated by the printed five-term
// functional equation and by the zero-residual checks on both solution
// branches of each model).
std::vector<PlaquetteTemplate> on_bulk_catalog();
std::vector<PlaquetteTemplate> on_boundary_catalog(bool with_beta4 = false);
std::vector<PlaquetteTemplate> c2_bulk_catalog();
std::vector<PlaquetteTemplate> c2_boundary_catalog();

struct ReflectionModel {
    std::vector<PlaquetteTemplate> bulk;
    std::vector<PlaquetteTemplate> boundary;
    bool dense = false;
};

ReflectionModel on_reflection_model(bool with_beta4 = false);
ReflectionModel c2_reflection_model();

// Spectral-argument tag of a slot: boundary slots carry x or y, bulk slots
// x + y or y - x.
enum class ArgTag : std::uint8_t { X, Sum, Y, Diff };

enum class SlotKind : std::uint8_t { Boundary, Bulk };
enum class Side : std::uint8_t { Left, Right };

// A side of the reflection equation as a wired diagram of four slots.
struct SideSpec {
    struct Slot {
        SlotKind kind;
        ArgTag arg;
    };
    struct Edge {
        // (slot, edge index) incidences; internal edges have two.
        std::array<std::pair<int, int>, 2> inc;
        int num_inc = 0;
        int terminal = -1;   // 0=beta, 1=alpha, 2=gamma, 3=delta, -1 internal
    };
    Side side = Side::Left;
    std::array<Slot, 4> slots;
    std::vector<Edge> edges;
    std::array<int, 4> anchor_base{};   // per slot; -1 for bulk slots
};

// Slot order on the left: boundary(x), bulk(x+y), boundary(y), bulk(y-x);
// on the right: boundary(x), bulk(x+y), boundary(y), bulk(y-x) with the
// mirrored wiring.
const SideSpec& lhs_spec();
const SideSpec& rhs_spec();

// External connectivity of the four terminals (beta, alpha, gamma, delta,
// top to bottom). state: edge colour (0 empty). link: -1 empty, -2 attached
// to the wall, otherwise the partner terminal.
struct TerminalClass {
    std::array<EdgeColour, 4> state{};
    std::array<int, 4> link{-1, -1, -1, -1};

    auto operator<=>(const TerminalClass&) const = default;
    TerminalClass mirrored() const;
    bool mirror_symmetric() const { return mirrored() == *this; }
};

// One merged contribution to a side: the four slot weight symbols (in slot
// order), the accumulated loop-fugacity exponents (N, N1, N2, N3) and the
// number of raw configurations merged into it.
struct DiagramTerm {
    std::array<WeightSymbol, 4> factors{};
    std::array<int, 4> fugacity{};
    int multiplicity = 0;

    auto operator<=>(const DiagramTerm&) const = default;
};

using SideTerms = std::map<TerminalClass, std::vector<DiagramTerm>>;

struct EnumerationStats {
    long configurations = 0;
    long closed_bulk_loops = 0;
    long boundary_loops = 0;
    long n3_loops = 0;
};

// Enumerate every consistent filling of one side, grouped by the induced
// terminal class. Terms with equal factor lists and fugacities are merged.
SideTerms enumerate_side(const SideSpec& side, const ReflectionModel& model,
                         EnumerationStats* stats = nullptr);

// Terms of a single class (empty when the class admits no filling).
std::vector<DiagramTerm> enumerate_side(const SideSpec& side, const TerminalClass& cls,
                                        const ReflectionModel& model);

struct LoopFugacities {
    double n = 0.0, n1 = 0.0, n2 = 0.0, n3 = 0.0;

    static LoopFugacities from(const OnParams& p) { return {p.n, p.n1, p.n2, p.n3}; }
    static LoopFugacities from(const C2Params& p) { return {p.n, p.n1, p.n2, p.n3}; }
    static LoopFugacities equal(double n, double n123) { return {n, n123, n123, n123}; }
};

// Boundary and bulk weight families as functions of the spectral parameter.
struct ReWeightFamily {
    std::function<WeightSet(double)> boundary;
    std::function<WeightSet(double)> bulk;
};

double side_value(const SideSpec& side, const std::vector<DiagramTerm>& terms,
                  const ReWeightFamily& fam, double x, double y, const LoopFugacities& fug,
                  double* max_term = nullptr);

// |LHS - RHS| / max(|LHS|, |RHS|, floor * largest term, 1e-30) for one class.
double re_residual(const SideTerms& lhs, const SideTerms& rhs, const TerminalClass& cls,
                   const ReWeightFamily& fam, double x, double y, const LoopFugacities& fug);

inline constexpr double kReResidualFloor = 1e-4;

// Residuals for every class seen on either side.
std::map<TerminalClass, double> re_residuals(const SideTerms& lhs, const SideTerms& rhs,
                                             const ReWeightFamily& fam, double x, double y,
                                             const LoopFugacities& fug);

// Convenience drivers; boundary weights are rebuilt per spectral argument
// from the model parameters, bulk weights from lambda.
std::map<TerminalClass, double> re_residuals_on(double lambda, double lambda1, double n2_scale,
                                                Branch branch, double x, double y);
std::map<TerminalClass, double> re_residuals_c2(double lambda, double lambda1, double n1_scale,
                                                Branch branch, double x, double y);
// Generalised O(n) model with the beta4-extended catalog; fugacities default
// to n1 = n2 = n3 = g.n1 as the model requires, but can be overridden for
// negative controls.
std::map<TerminalClass, double> re_residuals_generalized(const GenOnParams& g, double x, double y);
std::map<TerminalClass, double> re_residuals_generalized(const GenOnParams& g, double x, double y,
                                                         const LoopFugacities& fug);

// Classes whose two sides differ as term multisets (one functional equation
// per mirror pair; mirror-symmetric classes are identically satisfied).
std::vector<TerminalClass> nontrivial_classes(const SideTerms& lhs, const SideTerms& rhs);
// Number of distinct functional equations: mirror pairs counted once.
int equation_count(const SideTerms& lhs, const SideTerms& rhs);

}  // namespace loopdh
