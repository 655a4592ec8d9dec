#include "loopdh/reflect.hpp"

#include <algorithm>
#include <cmath>

namespace loopdh {

namespace {
using Sym = WeightSymbol;

// Diamond edge indices.
constexpr int NW = 0, NE = 1, SE = 2, SW = 3;
// Triangle edge indices.
constexpr int TOP = 0, BOT = 1;

PlaquetteTemplate bulk4(Sym s, std::array<EdgeColour, 4> e,
                        std::vector<std::pair<int, int>> pairs) {
    PlaquetteTemplate t;
    t.symbol = s;
    t.num_edges = 4;
    t.edge = e;
    t.pairs = std::move(pairs);
    return t;
}

PlaquetteTemplate bdy2(Sym s, EdgeColour top, EdgeColour bot,
                       std::vector<std::pair<int, int>> pairs,
                       std::vector<std::pair<int, AnchorType>> anchors) {
    PlaquetteTemplate t;
    t.symbol = s;
    t.num_edges = 2;
    t.edge = {top, bot, 0, 0};
    t.pairs = std::move(pairs);
    t.anchors = std::move(anchors);
    return t;
}
}  // namespace

LoopFugacity classify_loop(std::vector<AnchorTouch> profile) {
    if (profile.empty()) return LoopFugacity::N;
    if (profile.size() != 2) {
        throw std::invalid_argument("classify_loop: a loop touches at most two anchors");
    }
    std::sort(profile.begin(), profile.end());
    if (profile[0].type == profile[1].type) return LoopFugacity::N3;
    return profile[0].type == AnchorType::Top ? LoopFugacity::N1 : LoopFugacity::N2;
}

// ---------------------------------------------------------------------------
// Catalogs.
//
// Dilute O(n) bulk: empty face t; corner arcs u1 (left/right vertex) and
// u2 (top/bottom vertex); straight strands v; double arcs w1 (left+right)
// and w2 (top+bottom).
// ---------------------------------------------------------------------------

std::vector<PlaquetteTemplate> on_bulk_catalog() {
    std::vector<PlaquetteTemplate> cat;
    cat.push_back(bulk4(Sym::T, {0, 0, 0, 0}, {}));
    cat.push_back(bulk4(Sym::U1, {0, 1, 1, 0}, {{NE, SE}}));
    cat.push_back(bulk4(Sym::U1, {1, 0, 0, 1}, {{NW, SW}}));
    cat.push_back(bulk4(Sym::U2, {1, 1, 0, 0}, {{NW, NE}}));
    cat.push_back(bulk4(Sym::U2, {0, 0, 1, 1}, {{SE, SW}}));
    cat.push_back(bulk4(Sym::V, {0, 1, 0, 1}, {{NE, SW}}));
    cat.push_back(bulk4(Sym::V, {1, 0, 1, 0}, {{NW, SE}}));
    cat.push_back(bulk4(Sym::W1, {1, 1, 1, 1}, {{NW, SW}, {NE, SE}}));
    cat.push_back(bulk4(Sym::W2, {1, 1, 1, 1}, {{NW, NE}, {SE, SW}}));
    return cat;
}

// Boundary triangles: beta1 empty, beta2 an arc between the two bulk edges,
// beta3 two strands each ending on the wall (top edge at the top anchor,
// bottom edge at the bottom anchor). beta4 (generalised model only) carries
// a single anchored strand, in either position.
std::vector<PlaquetteTemplate> on_boundary_catalog(bool with_beta4) {
    std::vector<PlaquetteTemplate> cat;
    cat.push_back(bdy2(Sym::Beta1, 0, 0, {}, {}));
    cat.push_back(bdy2(Sym::Beta2, 1, 1, {{TOP, BOT}}, {}));
    cat.push_back(bdy2(Sym::Beta3, 1, 1, {}, {{TOP, AnchorType::Top}, {BOT, AnchorType::Bottom}}));
    if (with_beta4) {
        cat.push_back(bdy2(Sym::Beta4, 1, 0, {}, {{TOP, AnchorType::Top}}));
        cat.push_back(bdy2(Sym::Beta4, 0, 1, {}, {{BOT, AnchorType::Bottom}}));
    }
    return cat;
}

// C2(1) bulk: every edge carries one of two colours, two strands per face.
//   u1: left+right arcs, opposite strand colours
//   u2: top+bottom arcs, opposite strand colours
//   w1: left+right arcs, equal strand colours
//   w2: top+bottom arcs, equal strand colours
//   v : crossing, necessarily opposite colours
// All weights are colour symmetric (each template appears in both colourings).
std::vector<PlaquetteTemplate> c2_bulk_catalog() {
    std::vector<PlaquetteTemplate> cat;
    for (EdgeColour c : {EdgeColour{1}, EdgeColour{2}}) {
        const EdgeColour b = static_cast<EdgeColour>(3 - c);
        cat.push_back(bulk4(Sym::W2, {c, c, c, c}, {{NW, NE}, {SE, SW}}));
        cat.push_back(bulk4(Sym::W1, {c, c, c, c}, {{NW, SW}, {NE, SE}}));
        cat.push_back(bulk4(Sym::U2, {c, c, b, b}, {{NW, NE}, {SE, SW}}));
        cat.push_back(bulk4(Sym::U1, {c, b, b, c}, {{NW, SW}, {NE, SE}}));
        cat.push_back(bulk4(Sym::V, {c, b, c, b}, {{NW, SE}, {NE, SW}}));
    }
    return cat;
}

// C2(1) boundary: beta1/beta2 are colour-preserving arcs of the two colours;
// beta3/beta4 anchored pairs of the matching colours.
std::vector<PlaquetteTemplate> c2_boundary_catalog() {
    std::vector<PlaquetteTemplate> cat;
    cat.push_back(bdy2(Sym::Beta1, 1, 1, {{TOP, BOT}}, {}));
    cat.push_back(bdy2(Sym::Beta2, 2, 2, {{TOP, BOT}}, {}));
    cat.push_back(bdy2(Sym::Beta3, 1, 1, {}, {{TOP, AnchorType::Top}, {BOT, AnchorType::Bottom}}));
    cat.push_back(bdy2(Sym::Beta4, 2, 2, {}, {{TOP, AnchorType::Top}, {BOT, AnchorType::Bottom}}));
    return cat;
}

ReflectionModel on_reflection_model(bool with_beta4) {
    return ReflectionModel{on_bulk_catalog(), on_boundary_catalog(with_beta4), false};
}

ReflectionModel c2_reflection_model() {
    return ReflectionModel{c2_bulk_catalog(), c2_boundary_catalog(), true};
}

// ---------------------------------------------------------------------------
// Diagram wiring. Terminals top to bottom: beta, alpha, gamma, delta.
//
// Left side: boundary(x) on top (terminal beta on its top edge), bulk(x+y)
// wedged between the two triangles (terminal alpha on NW), boundary(y)
// below, bulk(y-x) hanging underneath with terminals gamma (SW) and delta
// (SE). The right side is the top-bottom mirror.
// ---------------------------------------------------------------------------

namespace {
SideSpec make_lhs() {
    SideSpec s;
    s.side = Side::Left;
    s.slots = {SideSpec::Slot{SlotKind::Boundary, ArgTag::X},
               SideSpec::Slot{SlotKind::Bulk, ArgTag::Sum},
               SideSpec::Slot{SlotKind::Boundary, ArgTag::Y},
               SideSpec::Slot{SlotKind::Bulk, ArgTag::Diff}};
    auto edge = [](std::initializer_list<std::pair<int, int>> inc, int term) {
        SideSpec::Edge e;
        e.num_inc = static_cast<int>(inc.size());
        int i = 0;
        for (auto p : inc) e.inc[static_cast<std::size_t>(i++)] = p;
        e.terminal = term;
        return e;
    };
    s.edges = {
        edge({{0, TOP}}, 0),                 // beta
        edge({{0, BOT}, {1, NE}}, -1),       // nu
        edge({{1, NW}}, 1),                  // alpha
        edge({{1, SE}, {2, TOP}}, -1),       // mu
        edge({{1, SW}, {3, NW}}, -1),        // nu'
        edge({{2, BOT}, {3, NE}}, -1),       // mu'
        edge({{3, SW}}, 2),                  // gamma
        edge({{3, SE}}, 3),                  // delta
    };
    s.anchor_base = {0, -1, 2, -1};
    return s;
}

SideSpec make_rhs() {
    SideSpec s;
    s.side = Side::Right;
    s.slots = {SideSpec::Slot{SlotKind::Boundary, ArgTag::X},
               SideSpec::Slot{SlotKind::Bulk, ArgTag::Sum},
               SideSpec::Slot{SlotKind::Boundary, ArgTag::Y},
               SideSpec::Slot{SlotKind::Bulk, ArgTag::Diff}};
    auto edge = [](std::initializer_list<std::pair<int, int>> inc, int term) {
        SideSpec::Edge e;
        e.num_inc = static_cast<int>(inc.size());
        int i = 0;
        for (auto p : inc) e.inc[static_cast<std::size_t>(i++)] = p;
        e.terminal = term;
        return e;
    };
    // boundary(y) is the upper triangle here; boundary(x) the lower one.
    s.edges = {
        edge({{3, NE}}, 0),                  // beta  = bulk(y-x).NE
        edge({{3, NW}}, 1),                  // alpha = bulk(y-x).NW
        edge({{3, SE}, {2, TOP}}, -1),       // nu
        edge({{3, SW}, {1, NW}}, -1),        // nu'
        edge({{2, BOT}, {1, NE}}, -1),       // mu
        edge({{1, SW}}, 2),                  // gamma = bulk(x+y).SW
        edge({{1, SE}, {0, TOP}}, -1),       // mu'
        edge({{0, BOT}}, 3),                 // delta
    };
    s.anchor_base = {2, -1, 0, -1};
    return s;
}
}  // namespace

const SideSpec& lhs_spec() {
    static const SideSpec s = make_lhs();
    return s;
}

const SideSpec& rhs_spec() {
    static const SideSpec s = make_rhs();
    return s;
}

TerminalClass TerminalClass::mirrored() const {
    // Top-bottom swap: beta <-> delta, alpha <-> gamma.
    static constexpr std::array<int, 4> m = {3, 2, 1, 0};
    TerminalClass out;
    for (int i = 0; i < 4; ++i) {
        out.state[static_cast<std::size_t>(i)] = state[static_cast<std::size_t>(m[static_cast<std::size_t>(i)])];
        const int l = link[static_cast<std::size_t>(m[static_cast<std::size_t>(i)])];
        out.link[static_cast<std::size_t>(i)] = l >= 0 ? m[static_cast<std::size_t>(l)] : l;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

namespace {

struct SlotEdges {
    // slot -> plaquette edge index -> global edge id
    std::array<std::array<int, 4>, 4> at{};
};

SlotEdges slot_edges_of(const SideSpec& side) {
    SlotEdges se;
    for (auto& row : se.at) row.fill(-1);
    for (std::size_t ei = 0; ei < side.edges.size(); ++ei) {
        const auto& e = side.edges[ei];
        for (int i = 0; i < e.num_inc; ++i) {
            const auto [slot, k] = e.inc[static_cast<std::size_t>(i)];
            se.at[static_cast<std::size_t>(slot)][static_cast<std::size_t>(k)] = static_cast<int>(ei);
        }
    }
    return se;
}

// Node ids in the strand graph: 0..nE-1 edge midpoints, nE + rank anchors.
struct StrandGraph {
    int n_edges = 0;
    std::vector<std::array<int, 2>> adj;   // up to two links per node
    std::vector<int> degree;

    explicit StrandGraph(int edges) : n_edges(edges), adj(static_cast<std::size_t>(edges) + 4), degree(static_cast<std::size_t>(edges) + 4, 0) {
        for (auto& a : adj) a = {-1, -1};
    }
    void connect(int a, int b) {
        adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(degree[static_cast<std::size_t>(a)]++)] = b;
        adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(degree[static_cast<std::size_t>(b)]++)] = a;
    }
};

}  // namespace

SideTerms enumerate_side(const SideSpec& side, const ReflectionModel& model,
                         EnumerationStats* stats) {
    const int nE = static_cast<int>(side.edges.size());
    const auto se = slot_edges_of(side);
    const EdgeColour lo = model.dense ? 1 : 0;
    const EdgeColour hi = model.dense ? 2 : 1;

    SideTerms out;
    std::vector<EdgeColour> state(static_cast<std::size_t>(nE), lo);

    std::array<std::vector<const PlaquetteTemplate*>, 4> matches;

    const long total = static_cast<long>(std::pow(2.0, nE));
    for (long code = 0; code < total; ++code) {
        for (int ei = 0; ei < nE; ++ei)
            state[static_cast<std::size_t>(ei)] = ((code >> ei) & 1) ? hi : lo;

        bool feasible = true;
        for (int si = 0; si < 4 && feasible; ++si) {
            const auto& cat = side.slots[static_cast<std::size_t>(si)].kind == SlotKind::Boundary
                                  ? model.boundary
                                  : model.bulk;
            auto& ms = matches[static_cast<std::size_t>(si)];
            ms.clear();
            const int nk = side.slots[static_cast<std::size_t>(si)].kind == SlotKind::Boundary ? 2 : 4;
            for (const auto& t : cat) {
                bool good = true;
                for (int k = 0; k < nk; ++k) {
                    if (t.edge[static_cast<std::size_t>(k)] !=
                        state[static_cast<std::size_t>(se.at[static_cast<std::size_t>(si)][static_cast<std::size_t>(k)])]) {
                        good = false;
                        break;
                    }
                }
                if (good) ms.push_back(&t);
            }
            if (ms.empty()) feasible = false;
        }
        if (!feasible) continue;

        // Loop over template combinations.
        std::array<std::size_t, 4> pick{};
        while (true) {
            // ---- trace one configuration ----
            StrandGraph g(nE);
            for (int si = 0; si < 4; ++si) {
                const auto& t = *matches[static_cast<std::size_t>(si)][pick[static_cast<std::size_t>(si)]];
                for (const auto& [a, b] : t.pairs)
                    g.connect(se.at[static_cast<std::size_t>(si)][static_cast<std::size_t>(a)],
                              se.at[static_cast<std::size_t>(si)][static_cast<std::size_t>(b)]);
                for (const auto& [k, type] : t.anchors) {
                    const int rank = side.anchor_base[static_cast<std::size_t>(si)] +
                                     (type == AnchorType::Top ? 0 : 1);
                    g.connect(se.at[static_cast<std::size_t>(si)][static_cast<std::size_t>(k)], nE + rank);
                }
            }

            TerminalClass cls;
            std::array<int, 4> fug{0, 0, 0, 0};
            std::vector<char> visited(static_cast<std::size_t>(nE) + 4, 0);

            auto is_anchor = [&](int node) { return node >= nE; };
            auto terminal_of = [&](int node) {
                return node < nE ? side.edges[static_cast<std::size_t>(node)].terminal : -1;
            };
            auto anchor_touch = [&](int node) {
                const int rank = node - nE;
                return AnchorTouch{rank, rank % 2 == 0 ? AnchorType::Top : AnchorType::Bottom};
            };

            for (std::size_t ei = 0; ei < side.edges.size(); ++ei) {
                const auto& e = side.edges[ei];
                if (e.terminal >= 0) {
                    cls.state[static_cast<std::size_t>(e.terminal)] = state[ei];
                    if (state[ei] == 0) cls.link[static_cast<std::size_t>(e.terminal)] = -1;
                }
            }

            // Walk open paths from endpoints (occupied terminal edges and
            // used anchors), then count remaining cycles.
            for (int start = 0; start < nE + 4; ++start) {
                if (visited[static_cast<std::size_t>(start)] || g.degree[static_cast<std::size_t>(start)] != 1) continue;
                const bool start_term = !is_anchor(start) && terminal_of(start) >= 0;
                if (!start_term && !is_anchor(start)) continue;
                std::vector<AnchorTouch> touches;
                if (is_anchor(start)) touches.push_back(anchor_touch(start));
                visited[static_cast<std::size_t>(start)] = 1;
                int prev = -1, cur = start;
                while (true) {
                    int nxt = -1;
                    for (int cand : g.adj[static_cast<std::size_t>(cur)])
                        if (cand >= 0 && cand != prev) nxt = cand;
                    if (nxt < 0) break;
                    prev = cur;
                    cur = nxt;
                    visited[static_cast<std::size_t>(cur)] = 1;
                    if (is_anchor(cur) || (terminal_of(cur) >= 0 && g.degree[static_cast<std::size_t>(cur)] == 1)) break;
                }
                const int a_term = start_term ? terminal_of(start) : -1;
                const int b_term = !is_anchor(cur) && terminal_of(cur) >= 0 ? terminal_of(cur) : -1;
                if (is_anchor(cur)) touches.push_back(anchor_touch(cur));

                if (a_term >= 0 && b_term >= 0) {
                    cls.link[static_cast<std::size_t>(a_term)] = b_term;
                    cls.link[static_cast<std::size_t>(b_term)] = a_term;
                } else if (a_term >= 0 || b_term >= 0) {
                    cls.link[static_cast<std::size_t>(a_term >= 0 ? a_term : b_term)] = -2;
                } else {
                    // closed boundary loop (two anchors)
                    const LoopFugacity f = classify_loop(touches);
                    ++fug[static_cast<std::size_t>(f)];
                    if (stats) {
                        ++stats->boundary_loops;
                        if (f == LoopFugacity::N3) ++stats->n3_loops;
                    }
                }
            }
            for (int start = 0; start < nE; ++start) {
                if (visited[static_cast<std::size_t>(start)] || g.degree[static_cast<std::size_t>(start)] != 2) continue;
                int prev = -1, cur = start;
                do {
                    visited[static_cast<std::size_t>(cur)] = 1;
                    int nxt = -1;
                    for (int cand : g.adj[static_cast<std::size_t>(cur)])
                        if (cand >= 0 && cand != prev) nxt = cand;
                    prev = cur;
                    cur = nxt;
                } while (cur != start);
                ++fug[0];
                if (stats) ++stats->closed_bulk_loops;
            }

            DiagramTerm term;
            for (int si = 0; si < 4; ++si)
                term.factors[static_cast<std::size_t>(si)] =
                    matches[static_cast<std::size_t>(si)][pick[static_cast<std::size_t>(si)]]->symbol;
            term.fugacity = fug;
            term.multiplicity = 1;

            auto& terms = out[cls];
            bool merged = false;
            for (auto& t : terms) {
                if (t.factors == term.factors && t.fugacity == term.fugacity) {
                    ++t.multiplicity;
                    merged = true;
                    break;
                }
            }
            if (!merged) terms.push_back(term);
            if (stats) ++stats->configurations;

            // ---- next combination ----
            int si = 0;
            for (; si < 4; ++si) {
                if (++pick[static_cast<std::size_t>(si)] < matches[static_cast<std::size_t>(si)].size()) break;
                pick[static_cast<std::size_t>(si)] = 0;
            }
            if (si == 4) break;
        }
    }

    for (auto& [cls, terms] : out) std::sort(terms.begin(), terms.end());
    return out;
}

std::vector<DiagramTerm> enumerate_side(const SideSpec& side, const TerminalClass& cls,
                                        const ReflectionModel& model) {
    auto all = enumerate_side(side, model);
    auto it = all.find(cls);
    if (it == all.end()) return {};
    return it->second;
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace {
double arg_of(ArgTag tag, double x, double y) {
    switch (tag) {
        case ArgTag::X: return x;
        case ArgTag::Sum: return x + y;
        case ArgTag::Y: return y;
        case ArgTag::Diff: return y - x;
    }
    return 0.0;
}

double fug_value(const LoopFugacities& f, const std::array<int, 4>& e) {
    double v = 1.0;
    for (int i = 0; i < e[0]; ++i) v *= f.n;
    for (int i = 0; i < e[1]; ++i) v *= f.n1;
    for (int i = 0; i < e[2]; ++i) v *= f.n2;
    for (int i = 0; i < e[3]; ++i) v *= f.n3;
    return v;
}
}  // namespace

double side_value(const SideSpec& side, const std::vector<DiagramTerm>& terms,
                  const ReWeightFamily& fam, double x, double y, const LoopFugacities& fug,
                  double* max_term) {
    std::array<WeightSet, 4> cache = {
        WeightSet(Model::OnBulk, Branch::NotApplicable), WeightSet(Model::OnBulk, Branch::NotApplicable),
        WeightSet(Model::OnBulk, Branch::NotApplicable), WeightSet(Model::OnBulk, Branch::NotApplicable)};
    for (int si = 0; si < 4; ++si) {
        const auto& slot = side.slots[static_cast<std::size_t>(si)];
        const double a = arg_of(slot.arg, x, y);
        cache[static_cast<std::size_t>(si)] =
            slot.kind == SlotKind::Boundary ? fam.boundary(a) : fam.bulk(a);
    }
    double total = 0.0;
    for (const auto& t : terms) {
        double v = static_cast<double>(t.multiplicity) * fug_value(fug, t.fugacity);
        for (int si = 0; si < 4; ++si)
            v *= cache[static_cast<std::size_t>(si)].at(t.factors[static_cast<std::size_t>(si)]);
        total += v;
        if (max_term) *max_term = std::max(*max_term, std::abs(v));
    }
    return total;
}

double re_residual(const SideTerms& lhs, const SideTerms& rhs, const TerminalClass& cls,
                   const ReWeightFamily& fam, double x, double y, const LoopFugacities& fug) {
    static const std::vector<DiagramTerm> empty;
    auto il = lhs.find(cls);
    auto ir = rhs.find(cls);
    double max_term = 0.0;
    const double l = side_value(lhs_spec(), il == lhs.end() ? empty : il->second, fam, x, y, fug, &max_term);
    const double r = side_value(rhs_spec(), ir == rhs.end() ? empty : ir->second, fam, x, y, fug, &max_term);
    const double den = std::max({std::abs(l), std::abs(r), kReResidualFloor * max_term, 1e-30});
    return std::abs(l - r) / den;
}

std::map<TerminalClass, double> re_residuals(const SideTerms& lhs, const SideTerms& rhs,
                                             const ReWeightFamily& fam, double x, double y,
                                             const LoopFugacities& fug) {
    std::map<TerminalClass, double> out;
    for (const auto& [cls, terms] : lhs) out[cls] = 0.0;
    for (const auto& [cls, terms] : rhs) out[cls] = 0.0;
    for (auto& [cls, r] : out) r = re_residual(lhs, rhs, cls, fam, x, y, fug);
    return out;
}

std::map<TerminalClass, double> re_residuals_on(double lambda, double lambda1, double n2_scale,
                                                Branch branch, double x, double y) {
    const auto model = on_reflection_model(false);
    const auto L = enumerate_side(lhs_spec(), model);
    const auto R = enumerate_side(rhs_spec(), model);
    const auto fug = LoopFugacities::from(on_params(lambda, lambda1, x, n2_scale));
    ReWeightFamily fam{
        [=](double a) { return on_boundary(on_params(lambda, lambda1, a, n2_scale), branch); },
        [=](double a) { return on_bulk(lambda, a); }};
    return re_residuals(L, R, fam, x, y, fug);
}

std::map<TerminalClass, double> re_residuals_c2(double lambda, double lambda1, double n1_scale,
                                                Branch branch, double x, double y) {
    const auto model = c2_reflection_model();
    const auto L = enumerate_side(lhs_spec(), model);
    const auto R = enumerate_side(rhs_spec(), model);
    const auto fug = LoopFugacities::from(c2_params(lambda, lambda1, x, n1_scale));
    ReWeightFamily fam{
        [=](double a) { return c2_boundary(c2_params(lambda, lambda1, a, n1_scale), branch); },
        [=](double a) { return c2_bulk(lambda, a); }};
    return re_residuals(L, R, fam, x, y, fug);
}

std::map<TerminalClass, double> re_residuals_generalized(const GenOnParams& g, double x, double y,
                                                         const LoopFugacities& fug) {
    const auto model = on_reflection_model(true);
    const auto L = enumerate_side(lhs_spec(), model);
    const auto R = enumerate_side(rhs_spec(), model);
    ReWeightFamily fam{
        [=](double a) {
            return on_generalized_boundary(GenOnParams{g.lambda, a, g.k, g.n1});
        },
        [=](double a) { return on_bulk(g.lambda, a); }};
    return re_residuals(L, R, fam, x, y, fug);
}

std::map<TerminalClass, double> re_residuals_generalized(const GenOnParams& g, double x, double y) {
    const double n = -2.0 * std::cos(4.0 * g.lambda);
    return re_residuals_generalized(g, x, y, LoopFugacities::equal(n, g.n1));
}

std::vector<TerminalClass> nontrivial_classes(const SideTerms& lhs, const SideTerms& rhs) {
    std::vector<TerminalClass> out;
    std::map<TerminalClass, int> seen;
    for (const auto& [cls, t] : lhs) seen[cls] |= 1;
    for (const auto& [cls, t] : rhs) seen[cls] |= 2;
    static const std::vector<DiagramTerm> empty;
    for (const auto& [cls, mask] : seen) {
        const auto* l = &empty;
        const auto* r = &empty;
        if (auto it = lhs.find(cls); it != lhs.end()) l = &it->second;
        if (auto it = rhs.find(cls); it != rhs.end()) r = &it->second;
        if (*l != *r) out.push_back(cls);
    }
    return out;
}

int equation_count(const SideTerms& lhs, const SideTerms& rhs) {
    const auto classes = nontrivial_classes(lhs, rhs);
    std::vector<TerminalClass> seen;
    int count = 0;
    for (const auto& c : classes) {
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
        seen.push_back(c);
        seen.push_back(c.mirrored());
        ++count;
    }
    return count;
}

}  // namespace loopdh
