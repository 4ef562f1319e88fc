/* lifting.hpp -- brute-force lifting properties and the fibration taxonomy.
 *
 * The engine extends partial maps over the nondegenerate dendrices of a
 * finite dendroidal set, one Aut-orbit at a time in order of vertex count;
 * values on degenerate dendrices and on the rest of an orbit are forced, so a
 * candidate only has to match the already-assigned elementary faces, the
 * stabilizer of its cell and the projection constraint.  Everything else in
 * this header (inner/left/coCartesian fibration checks, the coCart space,
 * marked anodyne generators) is quantification over squares driven through
 * this engine, with materialized witnesses on failure.
 */

#ifndef DENDRO_LIFTING_HPP_
#define DENDRO_LIFTING_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/dendset.hpp"
#include "dendro/marked.hpp"
#include "dendro/operad.hpp"
#include "dendro/simplicial.hpp"
#include "dendro/simpset.hpp"

namespace dendro {

using CellKey = std::pair<std::string, DendrexId>;  // (tree key, dendrex id)
using CellAssignment = std::map<CellKey, DendrexId>;

namespace detail {

struct PlanCell {
    Tree shape;
    DendrexId id;
    enum class Kind { from_a, rep, orbit_image, degenerate } kind;
    // degenerate: the collapse and its base cell; orbit_image: handled by reps
    TreeMorphism witness = TreeMorphism::identity(eta("w"));
    DendrexId base;
};

struct LiftPlan {
    std::vector<PlanCell> order;           // assignment order, by vertex count
    std::vector<std::size_t> rep_indices;  // choice points within `order`
};

inline LiftPlan build_plan_uncached(const DendSet& b, const DendSet* a) {
    LiftPlan plan;
    std::set<CellKey> placed;
    for (std::size_t vc = 0; vc <= b.bounds().vertices; ++vc) {
        for (const auto& shape : trees_with_vertices(vc, b.bounds().arity)) {
            auto degens = elementary_degeneracies(shape);
            auto auts = automorphisms(shape);
            for (const auto& id : b.level(shape)) {
                CellKey key{tree_key(shape), id};
                if (placed.count(key)) continue;
                if (a && a->contains(shape, id)) {
                    plan.order.push_back({shape, id, PlanCell::Kind::from_a});
                    placed.insert(key);
                    continue;
                }
                bool degenerate = false;
                for (const auto& s : degens) {
                    for (const auto& y : b.level(s.target()))
                        if (b.restrict(s, y) == id) {
                            PlanCell c{shape, id, PlanCell::Kind::degenerate, s, y};
                            plan.order.push_back(std::move(c));
                            degenerate = true;
                            break;
                        }
                    if (degenerate) break;
                }
                if (degenerate) {
                    placed.insert(key);
                    continue;
                }
                // a fresh representative; its whole orbit is forced with it
                plan.rep_indices.push_back(plan.order.size());
                plan.order.push_back({shape, id, PlanCell::Kind::rep});
                placed.insert(key);
                for (const auto& h : automorphisms(shape)) {
                    std::map<Edge, Edge> em(h.begin(), h.end());
                    TreeMorphism hm(shape, shape, em, false);
                    DendrexId img = b.restrict(hm, id);
                    CellKey ik{tree_key(shape), img};
                    if (placed.count(ik)) continue;
                    plan.order.push_back({shape, img, PlanCell::Kind::orbit_image, hm, id});
                    placed.insert(ik);
                }
            }
            (void)auts;
        }
    }
    return plan;
}

// Plans depend only on the underlying implementations, so cache them.  The
// cache pins the implementations it has seen, which keeps the pointer keys
// from ever being reused by the allocator.
inline const LiftPlan& build_plan(const DendSet& b, const DendSet* a) {
    struct Entry {
        LiftPlan plan;
        std::shared_ptr<const DendSetImpl> pin_b, pin_a;
    };
    static std::map<std::pair<const void*, const void*>, Entry> cache;
    static std::mutex mu;
    std::pair<const void*, const void*> key{&b.impl(), a ? static_cast<const void*>(&a->impl()) : nullptr};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.plan;
    Entry e{build_plan_uncached(b, a), b.impl_ptr(), a ? a->impl_ptr() : nullptr};
    return cache.emplace(key, std::move(e)).first->second.plan;
}

}  // namespace detail

// A complete levelwise assignment realizing a map B -> X.
class AssignedMap {
public:
    AssignedMap(DendSet source, DendSet target, CellAssignment table)
        : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {}

    DendrexId operator()(const Tree& shape, const DendrexId& id) const {
        return table_.at({tree_key(canonical_shape(shape)), id});
    }
    const CellAssignment& table() const { return table_; }

    DendMap as_dendmap() const {
        auto t = table_;
        return DendMap(source_, target_, [t](const Tree& shape, const DendrexId& id) {
            return t.at({tree_key(shape), id});
        });
    }

private:
    DendSet source_, target_;
    CellAssignment table_;
};

struct LiftingProblem {
    DendSet a;       // subobject of b, sharing dendrex identifiers
    DendSet b;
    DendMap p;       // X -> Y
    CellAssignment top;     // values of A in X
    CellAssignment bottom;  // values of B in Y
};

namespace detail {

struct SearchSpec {
    const DendSet* b = nullptr;
    const DendSet* a = nullptr;  // may be null
    const DendSet* x = nullptr;
    // optional projection constraint: p : X -> Y and required value per B-cell
    const DendMap* p = nullptr;
    const CellAssignment* required = nullptr;
    const CellAssignment* top = nullptr;     // values on A
    const CellAssignment* pinned = nullptr;  // extra forced cells (by key)
    std::size_t max_results = static_cast<std::size_t>(-1);
};

inline std::vector<CellAssignment> run_search(const SearchSpec& spec) {
    const DendSet& b = *spec.b;
    const DendSet& x = *spec.x;
    const detail::LiftPlan& plan = detail::build_plan(b, spec.a);
    std::vector<CellAssignment> results;
    CellAssignment assign;

    auto passes = [&](const CellKey& key, const Tree& shape, const DendrexId& v) {
        if (spec.pinned) {
            auto it = spec.pinned->find(key);
            if (it != spec.pinned->end() && it->second != v) return false;
        }
        if (spec.required) {
            auto it = spec.required->find(key);
            if (it != spec.required->end() && (*spec.p)(shape, v) != it->second) return false;
        }
        return true;
    };

    // candidate check for a representative cell
    auto candidates = [&](const detail::PlanCell& cell) {
        std::vector<DendrexId> out;
        CellKey key{tree_key(cell.shape), cell.id};
        auto fs = faces(cell.shape);
        std::vector<std::pair<TreeMorphism, DendrexId>> face_targets;
        for (const auto& f : fs)
            face_targets.push_back(
                {f.inclusion, assign.at({tree_key(canonical_shape(f.inclusion.source())),
                                         b.restrict(f.inclusion, cell.id)})});
        std::vector<TreeMorphism> stab;
        for (const auto& h : automorphisms(cell.shape)) {
            std::map<Edge, Edge> em(h.begin(), h.end());
            TreeMorphism hm(cell.shape, cell.shape, em, false);
            if (!hm.is_identity() && b.restrict(hm, cell.id) == cell.id) stab.push_back(hm);
        }
        for (const auto& cand : x.level(cell.shape)) {
            if (!passes(key, cell.shape, cand)) continue;
            bool ok = true;
            for (const auto& [f, want] : face_targets)
                if (x.restrict(f, cand) != want) {
                    ok = false;
                    break;
                }
            if (ok)
                for (const auto& hm : stab)
                    if (x.restrict(hm, cand) != cand) {
                        ok = false;
                        break;
                    }
            if (ok) out.push_back(cand);
        }
        return out;
    };

    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (results.size() >= spec.max_results) return true;
        if (i == plan.order.size()) {
            results.push_back(assign);
            return results.size() >= spec.max_results;
        }
        const auto& cell = plan.order[i];
        CellKey key{tree_key(cell.shape), cell.id};
        DendrexId v;
        switch (cell.kind) {
            case detail::PlanCell::Kind::from_a:
                v = spec.top->at(key);
                break;
            case detail::PlanCell::Kind::degenerate:
                v = x.restrict(cell.witness,
                               assign.at({tree_key(canonical_shape(cell.witness.target())),
                                          cell.base}));
                break;
            case detail::PlanCell::Kind::orbit_image:
                v = x.restrict(cell.witness, assign.at({tree_key(cell.shape), cell.base}));
                break;
            case detail::PlanCell::Kind::rep: {
                for (const auto& cand : candidates(cell)) {
                    assign[key] = cand;
                    if (go(i + 1)) {
                        assign.erase(key);
                        return true;
                    }
                    assign.erase(key);
                }
                return false;
            }
        }
        if (!passes(key, cell.shape, v)) return false;
        assign[key] = v;
        bool stop = go(i + 1);
        assign.erase(key);
        return stop;
    };
    go(0);
    return results;
}

}  // namespace detail

// all fillers of a lifting problem
inline std::vector<AssignedMap> fillers(const LiftingProblem& prob,
                                        std::size_t max_results = static_cast<std::size_t>(-1)) {
    detail::SearchSpec spec;
    spec.b = &prob.b;
    spec.a = &prob.a;
    spec.x = &prob.p.source();
    spec.p = &prob.p;
    spec.required = &prob.bottom;
    spec.top = &prob.top;
    spec.max_results = max_results;
    std::vector<AssignedMap> out;
    for (auto& table : detail::run_search(spec))
        out.push_back(AssignedMap(prob.b, prob.p.source(), std::move(table)));
    return out;
}

// all maps B -> X (no constraints)
inline std::vector<AssignedMap> enumerate_maps(const DendSet& b, const DendSet& x,
                                               std::size_t max_results = static_cast<std::size_t>(-1)) {
    detail::SearchSpec spec;
    spec.b = &b;
    spec.x = &x;
    spec.max_results = max_results;
    std::vector<AssignedMap> out;
    for (auto& table : detail::run_search(spec)) out.push_back(AssignedMap(b, x, std::move(table)));
    return out;
}

// all maps A -> X lying over a given assignment of A in Y via p, with optional
// pinned cells
inline std::vector<AssignedMap> enumerate_maps_over(const DendSet& a, const DendMap& p,
                                                    const CellAssignment& required,
                                                    const CellAssignment* pinned = nullptr,
                                                    std::size_t max_results =
                                                        static_cast<std::size_t>(-1)) {
    detail::SearchSpec spec;
    spec.b = &a;
    spec.x = &p.source();
    spec.p = &p;
    spec.required = &required;
    spec.pinned = pinned;
    spec.max_results = max_results;
    std::vector<AssignedMap> out;
    for (auto& table : detail::run_search(spec))
        out.push_back(AssignedMap(a, p.source(), std::move(table)));
    return out;
}

// the assignment of B in Y classified by a dendrex y in Y_T (B a subobject of
// the representable of T): every cell of B is a morphism into T
inline CellAssignment classify_cells(const DendSet& b, const Tree& t, const DendSet& y,
                                     const DendrexId& y_cell) {
    CellAssignment out;
    for (const auto& shape : b.shapes())
        for (const auto& id : b.level(shape)) {
            TreeMorphism m = morphism_of_dendrex(shape, t, id);
            out[{tree_key(shape), id}] = y.restrict(m, y_cell);
        }
    return out;
}

// ---------------------------------------------------------------------------
// fibration checks

struct Witness {
    std::string description;
    Tree shape = eta("w");
    DendrexId bottom_cell;
    CellAssignment top;
};

struct Verdict {
    bool ok = true;
    std::optional<Witness> witness;
    std::string note;

    explicit operator bool() const { return ok; }
};

// right lifting property of p against A subset B, where B is a subobject of
// the representable on t containing it; quantifies over all squares
inline Verdict rlp_against(const DendMap& p, const DendSet& a, const DendSet& b, const Tree& t,
                           const std::string& what) {
    const DendSet& x = p.source();
    const DendSet& y = p.target();
    for (const auto& y_cell : y.level(t)) {
        CellAssignment required = classify_cells(b, t, y, y_cell);
        for (const auto& top : enumerate_maps_over(a, p, required)) {
            LiftingProblem prob{a, b, p, top.table(), required};
            if (fillers(prob, 1).empty()) {
                Witness w{what, canonical_shape(t), y_cell, top.table()};
                return {false, w, ""};
            }
        }
    }
    return {};
}

inline Bounds common_bounds(const DendMap& p) { return p.source().bounds().meet(p.target().bounds()); }

// RLP against all inner horns of trees within the bound
inline Verdict is_inner_fibration(const DendMap& p, std::size_t vertex_bound) {
    Bounds b = common_bounds(p);
    b.vertices = std::min(b.vertices, vertex_bound);
    for (std::size_t vc = 2; vc <= b.vertices; ++vc)
        for (const auto& t : trees_with_vertices(vc, b.arity))
            for (const auto& e : t.inner_edges()) {
                DendSet h = inner_horn(t, e, rep_bounds(t));
                Verdict v = rlp_against(p, h, representable_cached(t, rep_bounds(t)), t,
                                        "inner horn at " + e + " of " + tree_key(t));
                if (!v.ok) return v;
            }
    return {};
}

// the inputs of a corolla dendrex, in the order of the canonical leaf edges
inline std::vector<DendrexId> corolla_inputs(const DendSet& x, std::size_t n, const DendrexId& id) {
    const Tree& c = corolla_shape(n);
    std::vector<DendrexId> out;
    for (const auto& e : c.edges())
        if (c.is_leaf(e)) out.push_back(x.colour_at(c, id, e));
    return out;
}

inline DendrexId corolla_output(const DendSet& x, std::size_t n, const DendrexId& id) {
    const Tree& c = corolla_shape(n);
    return x.colour_at(c, id, c.root());
}

// condition (ii) of a left fibration: corolla lifts with prescribed inputs
inline Verdict has_corolla_lifts(const DendMap& p,
                                 const std::function<bool(std::size_t, const DendrexId&)>& wanted,
                                 const std::function<bool(std::size_t, const DendrexId&)>& accept) {
    const DendSet& x = p.source();
    const DendSet& y = p.target();
    Bounds b = common_bounds(p);
    auto colours_over = [&](const DendrexId& s) {
        std::vector<DendrexId> out;
        for (const auto& c : x.level(eta("c")))
            if (p(eta("c"), c) == s) out.push_back(c);
        return out;
    };
    for (std::size_t n = 0; n <= b.arity; ++n) {
        const Tree& cn = corolla_shape(n);
        for (const auto& sigma : y.level(cn)) {
            if (!wanted(n, sigma)) continue;
            auto s_inputs = corolla_inputs(y, n, sigma);
            // all tuples of X-colours over the inputs
            std::vector<std::vector<DendrexId>> pools;
            for (const auto& si : s_inputs) pools.push_back(colours_over(si));
            std::vector<std::size_t> idx(n, 0);
            bool done = n == 0 ? false : std::any_of(pools.begin(), pools.end(),
                                                     [](const auto& v) { return v.empty(); });
            while (!done) {
                std::vector<DendrexId> tuple;
                for (std::size_t i = 0; i < n; ++i) tuple.push_back(pools[i][idx[i]]);
                bool found = false;
                for (const auto& xi : x.level(cn)) {
                    if (p(cn, xi) != sigma) continue;
                    if (corolla_inputs(x, n, xi) != tuple) continue;
                    if (!accept(n, xi)) continue;
                    found = true;
                    break;
                }
                if (!found) {
                    Witness w{"no corolla lift over " + sigma, cn, sigma, {}};
                    for (std::size_t i = 0; i < n; ++i)
                        w.top[{"input", std::to_string(i)}] = tuple[i];
                    return {false, w, ""};
                }
                std::size_t k = 0;
                while (k < n && ++idx[k] == pools[k].size()) idx[k++] = 0;
                if (n == 0 || k == n) done = true;
            }
        }
    }
    return {};
}

// a corolla pinned at the leaf vertex of the horns being checked
struct PinnedCorolla {
    std::size_t arity;
    DendrexId cell;
};

// leaf-horn lifting for trees with at least two vertices; when a corolla is
// pinned, only horns whose leaf vertex has that arity are considered and the
// leaf corolla of the horn is forced to the pinned dendrex
inline Verdict has_leaf_horn_lifts(const DendMap& p, std::size_t vertex_bound,
                                   const std::optional<PinnedCorolla>& pin = std::nullopt) {
    Bounds b = common_bounds(p);
    b.vertices = std::min(b.vertices, vertex_bound);
    for (std::size_t vc = 2; vc <= b.vertices; ++vc)
        for (const auto& t : trees_with_vertices(vc, b.arity))
            for (const auto& v : t.vertices()) {
                bool leaf_vertex = true;
                for (const auto& in : v.inputs) leaf_vertex &= t.is_leaf(in);
                if (!leaf_vertex) continue;
                if (pin && v.inputs.size() != pin->arity) continue;
                DendSet horn_d = leaf_horn(t, v.output, rep_bounds(t));
                DendSet rep = representable_cached(t, rep_bounds(t));
                CellAssignment pinned;
                if (pin) {
                    TreeVertex cv{v.inputs, v.output};
                    Tree csub(v.output, {cv});
                    std::map<Edge, Edge> em;
                    for (const auto& e : csub.edges()) em[e] = e;
                    auto [shape, id] = dendrex_of_morphism(TreeMorphism(csub, t, em, false));
                    pinned[{tree_key(shape), id}] = pin->cell;
                }
                const DendSet& y = p.target();
                for (const auto& y_cell : y.level(t)) {
                    CellAssignment required = classify_cells(horn_d, t, y, y_cell);
                    for (const auto& top :
                         enumerate_maps_over(horn_d, p, required, pin ? &pinned : nullptr)) {
                        LiftingProblem prob{horn_d, rep, p, top.table(), required};
                        if (fillers(prob, 1).empty()) {
                            Witness w{"leaf horn at vertex over " + v.output + " of " + tree_key(t),
                                      canonical_shape(t), y_cell, top.table()};
                            return {false, w, ""};
                        }
                    }
                }
            }
    return {};
}

inline Verdict is_left_fibration(const DendMap& p, std::size_t vertex_bound) {
    Verdict inner = is_inner_fibration(p, vertex_bound);
    if (!inner.ok) return inner;
    Verdict lifts = has_corolla_lifts(
        p, [](std::size_t, const DendrexId&) { return true; },
        [](std::size_t, const DendrexId&) { return true; });
    if (!lifts.ok) return lifts;
    return has_leaf_horn_lifts(p, vertex_bound);
}

// is the corolla dendrex xi (of arity n) p-coCartesian?  For nerves bound 3
// suffices: the nerve of an operad is 2-coskeletal, so lifts against horns of
// trees with four or more vertices exist automatically.
inline Verdict is_cocartesian_corolla(const DendMap& p, std::size_t n, const DendrexId& xi,
                                      std::size_t vertex_bound = 3) {
    Verdict v = has_leaf_horn_lifts(p, vertex_bound, PinnedCorolla{n, xi});
    if (!v.ok)
        v.witness->description = "corolla " + xi + " is not coCartesian: " + v.witness->description;
    else
        v.note = "checked through trees with " + std::to_string(vertex_bound) +
                 " vertices; sufficient for 2-coskeletal inputs";
    return v;
}

// every corolla lift required by a coCartesian fibration exists and is coCartesian
inline Verdict is_cocartesian_fibration(const DendMap& p, std::size_t vertex_bound,
                                        std::size_t corolla_bound = 3) {
    Verdict inner = is_inner_fibration(p, vertex_bound);
    if (!inner.ok) return inner;
    std::map<std::pair<std::size_t, DendrexId>, bool> cocart_memo;
    auto is_cc = [&](std::size_t n, const DendrexId& xi) {
        auto key = std::make_pair(n, xi);
        auto it = cocart_memo.find(key);
        if (it != cocart_memo.end()) return it->second;
        bool ok = is_cocartesian_corolla(p, n, xi, corolla_bound).ok;
        cocart_memo.emplace(key, ok);
        return ok;
    };
    return has_corolla_lifts(
        p, [](std::size_t, const DendrexId&) { return true; }, is_cc);
}

// ---------------------------------------------------------------------------
// the pullback-square criterion for coCartesian operations of Set operads

struct PullbackInstance {
    std::vector<Colour> y_tuple;  // contains the output of xi at position i
    Colour z;
    std::size_t i;

    friend bool operator<(const PullbackInstance& a, const PullbackInstance& b) {
        if (a.y_tuple != b.y_tuple) return a.y_tuple < b.y_tuple;
        if (a.z != b.z) return a.z < b.z;
        return a.i < b.i;
    }
};

// checks that precomposition with xi at position i makes the square
//   X(y; z) -> X(y_x; z),  S(p y; p z) -> S(p y_x; p z)
// a pullback, for every instance where either side is inhabited
inline Verdict cocart_pullback_criterion(const OperadMorphism& p, const OpId& xi) {
    const FiniteOperad& x = *p.source;
    const FiniteOperad& s = *p.target;
    const Signature& xsig = x.signature(xi);
    const Colour& out = xsig.output;
    std::size_t n = xsig.arity();
    OpId pxi = p.at(xi);

    std::set<PullbackInstance> instances;
    for (const auto& chi : x.all_ops()) {
        const auto& sig = x.signature(chi);
        for (std::size_t i = 0; i < sig.arity(); ++i)
            if (sig.inputs[i] == out) instances.insert({sig.inputs, sig.output, i});
    }
    for (const auto& phi : x.all_ops()) {
        const auto& sig = x.signature(phi);
        if (sig.arity() < n) continue;
        for (std::size_t i = 0; i + n <= sig.arity(); ++i) {
            bool block = true;
            for (std::size_t j = 0; j < n; ++j) block &= sig.inputs[i + j] == xsig.inputs[j];
            if (!block) continue;
            std::vector<Colour> y(sig.inputs.begin(), sig.inputs.begin() + i);
            y.push_back(out);
            y.insert(y.end(), sig.inputs.begin() + i + n, sig.inputs.end());
            instances.insert({y, sig.output, i});
        }
    }

    for (const auto& inst : instances) {
        if (!x.within_truncation(inst.y_tuple.size() + n - 1)) continue;
        // the left-hand side of the comparison map
        std::vector<OpId> lhs;
        for (const auto& chi : x.ops({inst.y_tuple, inst.z})) lhs.push_back(chi);
        // the fiber product: pairs (phi, psi) with p(phi) = psi composed with p(xi)
        std::vector<Colour> y_x(inst.y_tuple.begin(), inst.y_tuple.begin() + inst.i);
        y_x.insert(y_x.end(), xsig.inputs.begin(), xsig.inputs.end());
        y_x.insert(y_x.end(), inst.y_tuple.begin() + inst.i + 1, inst.y_tuple.end());
        std::vector<Colour> py, pyx;
        for (const auto& c : inst.y_tuple) py.push_back(p(c));
        for (const auto& c : y_x) pyx.push_back(p(c));
        std::set<std::pair<OpId, OpId>> pairs;
        for (const auto& phi : x.ops({y_x, inst.z}))
            for (const auto& psi : s.ops({py, p(inst.z)}))
                if (s.compose_at(psi, inst.i, pxi) == p.at(phi)) pairs.insert({phi, psi});
        std::set<std::pair<OpId, OpId>> images;
        bool injective = true;
        for (const auto& chi : lhs) {
            std::pair<OpId, OpId> im{x.compose_at(chi, inst.i, xi), p.at(chi)};
            if (!images.insert(im).second) injective = false;
            if (!pairs.count(im)) injective = false;  // image must land in the fiber product
        }
        if (!injective || images.size() != pairs.size()) {
            Witness w{"pullback square fails for " + xi + " at output " + inst.z, eta("w"), "", {}};
            return {false, w, ""};
        }
    }
    return {};
}

// opfibered: coCartesian lifts (in the pullback-square sense) exist for every
// operation of the base and every lift of its inputs
inline Verdict is_opfibered(const OperadMorphism& p, std::vector<std::string>* missing = nullptr) {
    const FiniteOperad& x = *p.source;
    const FiniteOperad& s = *p.target;
    std::map<OpId, bool> memo;
    auto cocart = [&](const OpId& op) {
        auto it = memo.find(op);
        if (it != memo.end()) return it->second;
        bool ok = cocart_pullback_criterion(p, op).ok;
        memo.emplace(op, ok);
        return ok;
    };
    Verdict verdict;
    for (const auto& [sig, ops] : s.op_table())
        for (const auto& sigma : ops) {
            // all tuples of X-colours over the inputs
            std::vector<std::vector<Colour>> pools;
            for (const auto& si : sig.inputs) {
                std::vector<Colour> pool;
                for (const auto& c : x.colours())
                    if (p(c) == si) pool.push_back(c);
                pools.push_back(std::move(pool));
            }
            std::vector<std::size_t> idx(sig.arity(), 0);
            bool done = std::any_of(pools.begin(), pools.end(),
                                    [](const auto& v) { return v.empty(); });
            while (!done) {
                std::vector<Colour> tuple;
                for (std::size_t i = 0; i < sig.arity(); ++i) tuple.push_back(pools[i][idx[i]]);
                bool found = false;
                for (const auto& [xsig, xops] : x.op_table()) {
                    if (xsig.inputs != tuple) continue;
                    for (const auto& cand : xops)
                        if (p.at(cand) == sigma && cocart(cand)) {
                            found = true;
                            break;
                        }
                    if (found) break;
                }
                if (!found) {
                    verdict.ok = false;
                    std::string key = "no coCartesian lift of " + sigma + " at (";
                    for (std::size_t i = 0; i < tuple.size(); ++i)
                        key += (i ? "," : "") + tuple[i];
                    key += ")";
                    if (missing)
                        missing->push_back(key);
                    else
                        return {false, Witness{key, eta("w"), sigma, {}}, ""};
                }
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
                if (idx.empty() || k == idx.size()) done = true;
            }
        }
    if (!verdict.ok && missing && !missing->empty())
        verdict.witness = Witness{missing->front(), eta("w"), "", {}};
    return verdict;
}

// opfibered in groupoids: opfibered and every operation is coCartesian
inline Verdict is_opfibered_in_groupoids(const OperadMorphism& p) {
    Verdict base = is_opfibered(p);
    if (!base.ok) return base;
    for (const auto& op : p.source->all_ops()) {
        Verdict v = cocart_pullback_criterion(p, op);
        if (!v.ok) {
            v.witness->description = "operation " + op + " is not coCartesian";
            return v;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// the space of coCartesian lifts

// the linear subtree of C_k * [n-1] realizing the join inclusion [n] -> C_k * [n-1]
inline TreeMorphism join_spine_inclusion(std::size_t k, std::size_t n) {
    Tree join = join_corolla(k, n);
    std::vector<TreeVertex> vs;
    for (std::size_t i = 0; i < n; ++i)
        vs.push_back({{"j" + std::to_string(i)}, "j" + std::to_string(i + 1)});
    Tree spine_t("j" + std::to_string(n), std::move(vs));
    std::map<Edge, Edge> em;
    for (const auto& e : spine_t.edges()) em[e] = e;
    return TreeMorphism(spine_t, join, std::move(em), false);
}

// the top corolla of C_k * [n-1]
inline TreeMorphism join_corolla_inclusion(std::size_t k, std::size_t n) {
    Tree join = join_corolla(k, n);
    TreeVertex top;
    top.output = "j0";
    for (std::size_t i = 1; i <= k; ++i) top.inputs.push_back("l" + std::to_string(i));
    Tree c(top.output, {top});
    std::map<Edge, Edge> em;
    for (const auto& e : c.edges()) em[e] = e;
    return TreeMorphism(c, join, std::move(em), false);
}

// join morphism C_k * [m-1] -> C_k * [n-1] induced by alpha : [m] -> [n]
inline TreeMorphism join_operator(std::size_t k, std::size_t m, std::size_t n,
                                  const std::vector<std::size_t>& alpha) {
    Tree src = join_corolla(k, m);
    Tree dst = join_corolla(k, n);
    std::map<Edge, Edge> em;
    for (std::size_t i = 1; i <= k; ++i) em["l" + std::to_string(i)] = "l" + std::to_string(i);
    for (std::size_t j = 0; j <= m; ++j) em["j" + std::to_string(j)] = "j" + std::to_string(alpha[j]);
    return TreeMorphism(src, dst, std::move(em), false);
}

// the simplicial set of coCartesian lifts of sigma with the given inputs,
// through the requested simplicial dimension
inline SimpSet cocart_space(const DendMap& p, std::size_t k, const DendrexId& sigma,
                            const std::vector<DendrexId>& inputs, std::size_t dim_bound,
                            std::size_t corolla_bound = 3) {
    const DendSet& x = p.source();
    const DendSet& y = p.target();
    std::multiset<DendrexId> want_inputs(inputs.begin(), inputs.end());
    DendrexId s_colour = corolla_output(y, k, sigma);
    std::map<DendrexId, bool> cocart_memo;
    auto cocart = [&](const DendrexId& xi) {
        auto it = cocart_memo.find(xi);
        if (it != cocart_memo.end()) return it->second;
        bool ok = is_cocartesian_corolla(p, k, xi, corolla_bound).ok;
        cocart_memo.emplace(xi, ok);
        return ok;
    };

    SimpSet q(dim_bound);
    std::vector<std::vector<DendrexId>> members(dim_bound + 1);
    for (std::size_t n = 0; n <= dim_bound; ++n) {
        Tree join = join_corolla(k, n);
        TreeMorphism cor = join_corolla_inclusion(k, n);
        TreeMorphism sp = join_spine_inclusion(k, n);
        // the degenerate n-simplex on the output colour of sigma, in Y
        std::map<Edge, Edge> to_eta;
        for (const auto& e : sp.source().edges()) to_eta[e] = "c";
        TreeMorphism collapse(sp.source(), eta("c"), to_eta, false);
        DendrexId constant = y.restrict(collapse, s_colour);
        for (const auto& f : x.level(join)) {
            DendrexId xi = x.restrict(cor, f);
            if (p(cor.source(), xi) != sigma) continue;
            auto got = corolla_inputs(x, k, xi);
            if (std::multiset<DendrexId>(got.begin(), got.end()) != want_inputs) continue;
            if (y.restrict(sp, p(join, f)) != constant) continue;
            if (!cocart(xi)) continue;
            q.add_simplex(n, f);
            members[n].push_back(f);
        }
    }
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& f : members[n]) {
            if (n > 0)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<std::size_t> delta;
                    for (std::size_t j = 0; j <= n; ++j)
                        if (j != i) delta.push_back(j);
                    DendrexId face = x.restrict(join_operator(k, n - 1, n, delta), f);
                    if (!q.contains(n - 1, face))
                        throw DendError("coCart space is not closed under faces at " + f);
                    q.set_face(n, f, i, face);
                }
            if (n + 1 <= dim_bound)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<std::size_t> sg;
                    for (std::size_t j = 0; j <= n; ++j) {
                        sg.push_back(j);
                        if (j == i) sg.push_back(j);
                    }
                    q.set_degeneracy(n, f, i, x.restrict(join_operator(k, n + 1, n, sg), f));
                }
        }
    return q;
}

}  // namespace dendro

#endif  // DENDRO_LIFTING_HPP_
