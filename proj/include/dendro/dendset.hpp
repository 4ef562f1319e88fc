/* dendset.hpp -- bounded dendroidal sets.
 *
 * A DendSet materializes its dendrex sets per canonical tree shape within an
 * explicit bound (vertex count and arity).  Dendrices are identifier strings
 * scoped to their level; restriction along arbitrary tree morphisms is
 * provided by each implementation and memoized.  Levels at non-canonical
 * trees are obtained by transport along the canonical relabelling, so every
 * implementation only ever sees canonical shapes.
 */

#ifndef DENDRO_DENDSET_HPP_
#define DENDRO_DENDSET_HPP_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "dendro/omega.hpp"
#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

struct DendError : std::runtime_error {
    explicit DendError(const std::string& what) : std::runtime_error(what) {}
};

struct Bounds {
    std::size_t vertices = 3;
    std::size_t arity = 3;

    bool admits(const Tree& t) const {
        return t.vertex_count() <= vertices && t.max_arity() <= arity;
    }
    Bounds meet(const Bounds& o) const {
        return {std::min(vertices, o.vertices), std::min(arity, o.arity)};
    }
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

// morphisms between canonical trees, cached globally
inline const std::vector<TreeMorphism>& canonical_hom_set(const Tree& r, const Tree& t) {
    static std::map<std::pair<std::string, std::string>, std::vector<TreeMorphism>> cache;
    static std::mutex mu;
    auto key = std::make_pair(tree_key(r), tree_key(t));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, hom_set(r, t)).first->second;
}

inline const Tree& canonical_shape(const Tree& t) {
    static std::map<std::string, Tree> cache;
    static std::mutex mu;
    std::string key = tree_key(t);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, canonical_form(t).tree).first->second;
}

using DendrexId = std::string;

struct DendSetImpl {
    virtual ~DendSetImpl() = default;
    virtual Bounds bounds() const = 0;
    // full dendrex set at a canonical shape, sorted
    virtual std::vector<DendrexId> level(const Tree& shape) const = 0;
    // restriction along m : R -> T (both canonical), of a dendrex at T
    virtual DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const = 0;
};

class DendSet {
public:
    DendSet() = default;
    explicit DendSet(std::shared_ptr<const DendSetImpl> impl) : impl_(std::move(impl)) {}

    Bounds bounds() const { return impl_->bounds(); }

    // all canonical shapes within bounds
    std::vector<Tree> shapes() const { return tree_universe(bounds().vertices, bounds().arity); }

    // The vertex bound is hard: levels above it are not materialized.  The
    // arity bound only governs quantification sweeps (shapes()); levels at
    // larger arities are still answered, and are typically empty.
    const std::vector<DendrexId>& level(const Tree& shape) const {
        const Tree& cano = canonical_shape(shape);
        if (cano.vertex_count() > bounds().vertices)
            throw DendError("shape exceeds the bound of this dendroidal set");
        std::lock_guard<std::mutex> lock(state_->mu);
        auto key = tree_key(cano);
        auto it = state_->levels.find(key);
        if (it != state_->levels.end()) return it->second;
        auto lv = impl_->level(cano);
        std::sort(lv.begin(), lv.end());
        return state_->levels.emplace(key, std::move(lv)).first->second;
    }

    bool contains(const Tree& shape, const DendrexId& x) const {
        const auto& lv = level(shape);
        return std::binary_search(lv.begin(), lv.end(), x);
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& s : shapes()) n += level(s).size();
        return n;
    }

    // restriction along m : R -> T of x in X_T; trees need not be canonical
    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const {
        auto [cm, key] = canonicalize_morphism(m);
        {
            std::lock_guard<std::mutex> lock(state_->mu);
            auto it = state_->restr.find({key, x});
            if (it != state_->restr.end()) return it->second;
        }
        DendrexId out = impl_->restrict(cm, x);
        std::lock_guard<std::mutex> lock(state_->mu);
        state_->restr.emplace(std::make_pair(key, x), out);
        return out;
    }

    // the dendrex of X at eta lying under x (its colour at the given edge)
    DendrexId colour_at(const Tree& shape, const DendrexId& x, const Edge& e) const {
        const Tree& cano = canonical_shape(shape);
        TreeMorphism inc(eta("c"), cano, {{"c", e}}, false);
        return restrict(inc, x);
    }

    const DendSetImpl& impl() const { return *impl_; }
    std::shared_ptr<const DendSetImpl> impl_ptr() const { return impl_; }
    bool valid_handle() const { return impl_ != nullptr; }

private:
    std::shared_ptr<const DendSetImpl> impl_;
    struct State {
        std::mutex mu;
        std::map<std::string, std::vector<DendrexId>> levels;
        std::map<std::pair<std::string, DendrexId>, DendrexId> restr;
    };
    std::shared_ptr<State> state_ = std::make_shared<State>();

    // rewrite m : R -> T as a morphism between canonical shapes
    static std::pair<TreeMorphism, std::string> canonicalize_morphism(const TreeMorphism& m) {
        auto cr = canonical_form(m.source());
        auto ct = canonical_form(m.target());
        std::map<Edge, Edge> inv_r;
        for (const auto& [a, b] : cr.relabelling) inv_r[b] = a;
        std::map<Edge, Edge> em;
        for (const auto& e : cr.tree.edges()) em[e] = ct.relabelling.at(m(inv_r.at(e)));
        TreeMorphism cm(canonical_shape(m.source()), canonical_shape(m.target()), em, false);
        std::string key;
        key += tree_key(cm.source());
        key += "|";
        key += tree_key(cm.target());
        for (const auto& [a, b] : cm.edge_map()) key += "|" + a + ">" + b;
        return {cm, key};
    }
};

// ---------------------------------------------------------------------------
// id codecs shared by implementations

namespace detail {
inline std::string encode_map(const std::map<std::string, std::string>& m) {
    std::string out;
    for (const auto& [k, v] : m) {
        if (!out.empty()) out += ";";
        out += k + ">" + v;
    }
    return out;
}

inline std::map<std::string, std::string> decode_map(const std::string& s) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t gt = s.find('>', pos);
        std::size_t semi = s.find(';', gt);
        if (semi == std::string::npos) semi = s.size();
        out[s.substr(pos, gt - pos)] = s.substr(gt + 1, semi - gt - 1);
        pos = semi + 1;
    }
    return out;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// the empty dendroidal set

class EmptyImpl final : public DendSetImpl {
public:
    explicit EmptyImpl(Bounds b) : bounds_(b) {}
    Bounds bounds() const override { return bounds_; }
    std::vector<DendrexId> level(const Tree&) const override { return {}; }
    DendrexId restrict(const TreeMorphism&, const DendrexId& x) const override {
        throw DendError("empty dendroidal set has no dendrices, asked for " + x);
    }

private:
    Bounds bounds_;
};

inline DendSet empty_dendset(Bounds b) { return DendSet(std::make_shared<EmptyImpl>(b)); }

// ---------------------------------------------------------------------------
// representables

class RepresentableImpl final : public DendSetImpl {
public:
    RepresentableImpl(Tree t, Bounds b) : tree_(std::move(t)), bounds_(b) {
        if (bounds_.vertices < tree_.vertex_count() || bounds_.arity < tree_.max_arity())
            throw DendError("representable bound must admit the representing tree");
    }

    const Tree& representing_tree() const { return tree_; }

    Bounds bounds() const override { return bounds_; }

    std::vector<DendrexId> level(const Tree& shape) const override {
        std::map<Edge, Edge> inv;
        for (const auto& [a, b] : canonical_form(tree_).relabelling) inv[b] = a;
        std::vector<DendrexId> out;
        for (const auto& m : canonical_hom_set(shape, canonical_shape(tree_))) {
            std::map<std::string, std::string> em;
            for (const auto& [a, b] : m.edge_map()) em[a] = inv.at(b);
            out.push_back(detail::encode_map(em));
        }
        return out;
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const override {
        auto em = detail::decode_map(x);  // target-shape edge -> tree_ edge
        std::map<std::string, std::string> out;
        for (const auto& e : m.source().edges()) out[e] = em.at(m(e));
        return detail::encode_map(out);
    }

private:
    Tree tree_;
    Bounds bounds_;
};

inline DendSet representable(const Tree& t, Bounds b) {
    return DendSet(std::make_shared<RepresentableImpl>(t, b));
}

// the arity needed to see every dendrex of the representable on t: the
// largest frontier of any subtree of t (contracting everything produces a
// corolla of that arity)
inline std::size_t max_subtree_frontier(const Tree& t) {
    std::size_t m = 1;
    for (const auto& c : t.edges())
        for (const auto& f : subtree_frontiers(t, c)) m = std::max(m, f.size());
    return m;
}

// bounds that admit every shape carrying a nondegenerate dendrex of Omega[t]
inline Bounds rep_bounds(const Tree& t, std::size_t extra_vertices = 0) {
    return Bounds{t.vertex_count() + extra_vertices, max_subtree_frontier(t)};
}

inline DendSet representable(const Tree& t, std::size_t vertex_bound) {
    Bounds b = rep_bounds(t);
    b.vertices = std::max(vertex_bound, b.vertices);
    return representable(t, b);
}

// exact serialization of a tree, for content-keyed caches
inline std::string tree_fingerprint(const Tree& t) {
    std::string out = t.root();
    for (const auto& v : t.vertices()) {
        out += ";" + v.output + "<";
        for (const auto& in : v.inputs) out += in + ",";
    }
    return out;
}

// shared representable instances: reusing one object shares its level and
// restriction memos across independent sweeps
inline const DendSet& representable_cached(const Tree& t, Bounds b) {
    static std::map<std::string, DendSet> cache;
    static std::mutex mu;
    std::string key = tree_fingerprint(t) + "#" + std::to_string(b.vertices) + "," +
                      std::to_string(b.arity);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, representable(t, b)).first->second;
}

// the dendrex of Omega[t] given by a morphism into t
inline std::pair<Tree, DendrexId> dendrex_of_morphism(const TreeMorphism& f) {
    auto cf = canonical_form(f.source());
    std::map<std::string, std::string> em;
    for (const auto& [a, b] : cf.relabelling) em[b] = f(a);
    return {cf.tree, detail::encode_map(em)};
}

// decode a dendrex of Omega[t] at a canonical shape back into a morphism
inline TreeMorphism morphism_of_dendrex(const Tree& shape, const Tree& t, const DendrexId& x) {
    auto em = detail::decode_map(x);
    std::map<Edge, Edge> mm(em.begin(), em.end());
    return TreeMorphism(canonical_shape(shape), t, std::move(mm), false);
}

// ---------------------------------------------------------------------------
// nerves of finite operads

class NerveImpl final : public DendSetImpl {
public:
    NerveImpl(FiniteOperad p, Bounds b) : operad_(std::move(p)), bounds_(b) {
        if (operad_.arity_truncation() && bounds_.arity > *operad_.arity_truncation())
            throw DendError("nerve bound exceeds the operad's arity truncation");
    }

    const FiniteOperad& operad() const { return operad_; }
    Bounds bounds() const override { return bounds_; }

    // dendrex id: "edge>colour;..." then "|" then "vertexoutput=op;..."
    static DendrexId encode(const std::map<Edge, Colour>& colours,
                            const std::map<Edge, OpId>& ops) {
        std::string a = detail::encode_map(colours);
        std::string b;
        for (const auto& [k, v] : ops) {
            if (!b.empty()) b += ";";
            b += k + "=" + v;
        }
        return a + "|" + b;
    }
    static std::pair<std::map<Edge, Colour>, std::map<Edge, OpId>> decode(const DendrexId& x) {
        auto bar = x.find('|');
        auto colours = detail::decode_map(x.substr(0, bar));
        std::map<Edge, OpId> ops;
        std::string rest = x.substr(bar + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t eq = rest.find('=', pos);
            std::size_t semi = rest.find(';', eq);
            if (semi == std::string::npos) semi = rest.size();
            ops[rest.substr(pos, eq - pos)] = rest.substr(eq + 1, semi - eq - 1);
            pos = semi + 1;
        }
        std::map<Edge, Colour> cm(colours.begin(), colours.end());
        return {cm, ops};
    }

    std::vector<DendrexId> level(const Tree& shape) const override {
        if (operad_.arity_truncation() && shape.max_arity() > *operad_.arity_truncation())
            throw DendError("shape arity exceeds the operad's truncation");
        std::vector<DendrexId> out;
        std::map<Edge, Colour> colours;
        std::map<Edge, OpId> ops;
        enumerate(shape, shape.root(), colours, ops, out);
        return out;
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const override {
        auto [colours, ops] = decode(x);
        std::map<Edge, Colour> nc;
        for (const auto& e : m.source().edges()) nc[e] = colours.at(m(e));
        std::map<Edge, OpId> nops;
        for (const auto& v : m.source().vertices()) {
            std::vector<Edge> requested;
            for (const auto& in : v.inputs) requested.push_back(m(in));
            nops[v.output] = evaluate(m.target(), colours, ops, m(v.output), requested);
        }
        return encode(nc, nops);
    }

    // evaluate the operation of the dendrex on the subtree of `shape` with the
    // given root and ordered leaves
    OpId evaluate(const Tree& shape, const std::map<Edge, Colour>& colours,
                  const std::map<Edge, OpId>& ops, const Edge& root,
                  const std::vector<Edge>& leaf_order) const {
        if (leaf_order.size() == 1 && leaf_order[0] == root) return operad_.unit(colours.at(root));
        const TreeVertex* v = shape.vertex_above(root);
        if (!v) throw DendError("no subtree at " + root + " with the requested leaves");
        std::set<Edge> frontier(leaf_order.begin(), leaf_order.end());
        std::vector<OpId> children;
        std::vector<Edge> natural;
        for (const auto& in : v->inputs) {
            if (frontier.count(in)) {
                children.push_back(operad_.unit(colours.at(in)));
                natural.push_back(in);
                continue;
            }
            auto above = shape.edges_above(in);
            std::vector<Edge> sub_order;
            for (const auto& l : leaf_order)
                if (std::binary_search(above.begin(), above.end(), l)) sub_order.push_back(l);
            children.push_back(evaluate(shape, colours, ops, in, sub_order));
            natural.insert(natural.end(), sub_order.begin(), sub_order.end());
        }
        OpId composite = operad_.compose(ops.at(v->output), children);
        if (natural == leaf_order) return composite;
        Perm q(leaf_order.size());
        for (std::size_t i = 0; i < leaf_order.size(); ++i) {
            auto it = std::find(natural.begin(), natural.end(), leaf_order[i]);
            q[i] = static_cast<std::size_t>(it - natural.begin());
        }
        return operad_.sigma(composite, q);
    }

private:
    void enumerate(const Tree& shape, const Edge& e, std::map<Edge, Colour>& colours,
                   std::map<Edge, OpId>& ops, std::vector<DendrexId>& out) const {
        // colour the edges and pick vertex operations by depth-first search
        // over the tree, assigning an edge's colour before its vertex's op
        std::vector<Edge> order;
        std::vector<Edge> stack{shape.root()};
        while (!stack.empty()) {
            Edge cur = stack.back();
            stack.pop_back();
            order.push_back(cur);
            if (const TreeVertex* v = shape.vertex_above(cur))
                for (const auto& in : v->inputs) stack.push_back(in);
        }
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (i == order.size()) {
                out.push_back(encode(colours, ops));
                return;
            }
            const Edge& cur = order[i];
            const TreeVertex* v = shape.vertex_above(cur);
            if (i == 0) {
                for (const auto& c : operad_.colours()) {
                    colours[cur] = c;
                    descend(shape, cur, v, i, colours, ops, go);
                }
                colours.erase(cur);
            } else {
                descend(shape, cur, v, i, colours, ops, go);
            }
        };
        (void)e;
        go(0);
    }

    void descend(const Tree& shape, const Edge& cur, const TreeVertex* v, std::size_t i,
                 std::map<Edge, Colour>& colours, std::map<Edge, OpId>& ops,
                 const std::function<void(std::size_t)>& go) const {
        if (!v) {
            go(i + 1);
            return;
        }
        // choose an operation whose output is the colour of cur; its inputs
        // determine the colours of the input edges (sorted order)
        for (const auto& [sig, list] : operad_.op_table()) {
            if (sig.output != colours.at(cur) || sig.arity() != v->inputs.size()) continue;
            for (const auto& op : list) {
                for (std::size_t k = 0; k < v->inputs.size(); ++k) colours[v->inputs[k]] = sig.inputs[k];
                ops[v->output] = op;
                go(i + 1);
            }
        }
        for (const auto& in : v->inputs) colours.erase(in);
        ops.erase(v->output);
    }

    FiniteOperad operad_;
    Bounds bounds_;
};

inline DendSet nerve(const FiniteOperad& p, std::size_t vertex_bound) {
    std::size_t ar = p.max_arity();
    if (p.arity_truncation()) ar = *p.arity_truncation();
    return DendSet(std::make_shared<NerveImpl>(p, Bounds{vertex_bound, std::max<std::size_t>(ar, 1)}));
}

// ---------------------------------------------------------------------------
// degeneracy bookkeeping

// is x at shape T the image of a dendrex under an elementary degeneracy?
inline bool is_degenerate(const DendSet& x, const Tree& shape, const DendrexId& id) {
    const Tree& cano = canonical_shape(shape);
    for (const auto& s : elementary_degeneracies(cano)) {
        for (const auto& y : x.level(s.target()))
            if (x.restrict(s, y) == id) return true;
    }
    return false;
}

struct Cell {
    Tree shape;  // canonical
    DendrexId id;
};

inline std::vector<Cell> nondegenerate_cells(const DendSet& x) {
    std::vector<Cell> out;
    for (const auto& s : x.shapes())
        for (const auto& id : x.level(s))
            if (!is_degenerate(x, s, id)) out.push_back({s, id});
    return out;
}

// the orbit of x under restriction along the automorphisms of its shape
inline std::vector<DendrexId> aut_orbit(const DendSet& x, const Tree& shape, const DendrexId& id) {
    const Tree& cano = canonical_shape(shape);
    std::set<DendrexId> orbit;
    for (const auto& h : automorphisms(cano)) {
        std::map<Edge, Edge> em(h.begin(), h.end());
        orbit.insert(x.restrict(TreeMorphism(cano, cano, em, false), id));
    }
    return {orbit.begin(), orbit.end()};
}

// stabilizer size of x inside Aut(shape)
inline std::size_t stabilizer_size(const DendSet& x, const Tree& shape, const DendrexId& id) {
    const Tree& cano = canonical_shape(shape);
    std::size_t n = 0;
    for (const auto& h : automorphisms(cano)) {
        std::map<Edge, Edge> em(h.begin(), h.end());
        if (x.restrict(TreeMorphism(cano, cano, em, false), id) == id) ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// subobjects, coproducts, pushouts

class SubobjectImpl final : public DendSetImpl {
public:
    SubobjectImpl(DendSet ambient, std::map<std::string, std::set<DendrexId>> levels)
        : ambient_(std::move(ambient)), levels_(std::move(levels)), bounds_(ambient_.bounds()) {}
    SubobjectImpl(DendSet ambient, std::map<std::string, std::set<DendrexId>> levels, Bounds b)
        : ambient_(std::move(ambient)), levels_(std::move(levels)), bounds_(b) {}

    Bounds bounds() const override { return bounds_; }

    std::vector<DendrexId> level(const Tree& shape) const override {
        auto it = levels_.find(tree_key(shape));
        if (it == levels_.end()) return {};
        return {it->second.begin(), it->second.end()};
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const override {
        return ambient_.restrict(m, x);
    }

    const DendSet& ambient() const { return ambient_; }

private:
    DendSet ambient_;
    std::map<std::string, std::set<DendrexId>> levels_;
    Bounds bounds_;
};

// the subpresheaf of `ambient` generated by the given cells
inline DendSet subpresheaf(const DendSet& ambient, const std::vector<Cell>& generators) {
    std::map<std::string, std::set<DendrexId>> levels;
    for (const auto& g : generators) {
        for (const auto& r : ambient.shapes()) {
            if (r.vertex_count() > ambient.bounds().vertices) continue;
            for (const auto& m : canonical_hom_set(r, g.shape))
                levels[tree_key(r)].insert(ambient.restrict(m, g.id));
        }
    }
    return DendSet(std::make_shared<SubobjectImpl>(ambient, std::move(levels)));
}

inline DendSet union_subobjects(const DendSet& ambient, const std::vector<DendSet>& subs) {
    std::map<std::string, std::set<DendrexId>> levels;
    for (const auto& s : ambient.shapes()) {
        auto key = tree_key(s);
        for (const auto& sub : subs)
            for (const auto& id : sub.level(s)) levels[key].insert(id);
    }
    return DendSet(std::make_shared<SubobjectImpl>(ambient, std::move(levels)));
}

// boundary of a representable: the union of all its faces
inline DendSet boundary(const Tree& t, Bounds b) {
    DendSet amb = representable(t, b);
    std::vector<Cell> gens;
    for (const auto& f : faces(t)) {
        auto [shape, id] = dendrex_of_morphism(f.inclusion);
        gens.push_back({shape, id});
    }
    return subpresheaf(amb, gens);
}

// horn of a representable: all faces except the named one
inline DendSet horn(const Tree& t, const FaceLabel& omitted, Bounds b) {
    static std::map<std::string, DendSet> cache;
    static std::mutex mu;
    std::string key = tree_fingerprint(t) + "#" + std::to_string(static_cast<int>(omitted.kind)) +
                      omitted.edge + "#" + std::to_string(b.vertices) + "," +
                      std::to_string(b.arity);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    DendSet amb = representable_cached(t, b);
    std::vector<Cell> gens;
    bool found = false;
    for (const auto& f : faces(t)) {
        if (f.label == omitted) {
            found = true;
            continue;
        }
        auto [shape, id] = dendrex_of_morphism(f.inclusion);
        gens.push_back({shape, id});
    }
    if (!found) throw DendError("no face with the requested label on this tree");
    DendSet out = subpresheaf(amb, gens);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(out)).first->second;
}

inline DendSet inner_horn(const Tree& t, const Edge& e, Bounds b) {
    return horn(t, {FaceLabel::Kind::inner, e}, b);
}
inline DendSet leaf_horn(const Tree& t, const Edge& vertex_output, Bounds b) {
    return horn(t, {FaceLabel::Kind::leaf_vertex, vertex_output}, b);
}

// the spine: one corolla per vertex glued along the inner edges; for eta it is
// the whole representable
inline DendSet spine(const Tree& t, Bounds b) {
    DendSet amb = representable(t, b);
    if (t.vertex_count() == 0) return amb;
    std::vector<Cell> gens;
    for (const auto& c : spine_presentation(t).corollas) {
        auto [shape, id] = dendrex_of_morphism(c);
        gens.push_back({shape, id});
    }
    return subpresheaf(amb, gens);
}

class CoproductImpl final : public DendSetImpl {
public:
    CoproductImpl(DendSet x, DendSet y) : x_(std::move(x)), y_(std::move(y)) {}
    Bounds bounds() const override { return x_.bounds().meet(y_.bounds()); }
    std::vector<DendrexId> level(const Tree& shape) const override {
        std::vector<DendrexId> out;
        for (const auto& id : x_.level(shape)) out.push_back("0:" + id);
        for (const auto& id : y_.level(shape)) out.push_back("1:" + id);
        return out;
    }
    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const override {
        if (x.rfind("0:", 0) == 0) return "0:" + x_.restrict(m, x.substr(2));
        return "1:" + y_.restrict(m, x.substr(2));
    }
    const DendSet& left() const { return x_; }
    const DendSet& right() const { return y_; }

private:
    DendSet x_, y_;
};

inline DendSet coproduct(const DendSet& x, const DendSet& y) {
    return DendSet(std::make_shared<CoproductImpl>(x, y));
}

// ---------------------------------------------------------------------------
// maps of dendroidal sets

class DendMap {
public:
    DendMap() = default;
    DendMap(DendSet source, DendSet target,
            std::function<DendrexId(const Tree&, const DendrexId&)> component)
        : source_(std::move(source)), target_(std::move(target)), component_(std::move(component)) {}

    static DendMap identity(const DendSet& x) {
        return DendMap(x, x, [](const Tree&, const DendrexId& id) { return id; });
    }

    const DendSet& source() const { return source_; }
    const DendSet& target() const { return target_; }

    DendrexId operator()(const Tree& shape, const DendrexId& x) const {
        return component_(canonical_shape(shape), x);
    }

    DendMap then(const DendMap& g) const {
        auto f = component_;
        auto gg = g.component_;
        return DendMap(source_, g.target_, [f, gg](const Tree& s, const DendrexId& x) {
            return gg(s, f(s, x));
        });
    }

    // naturality against every morphism within the common bound
    bool natural(std::string* why = nullptr) const {
        Bounds b = source_.bounds().meet(target_.bounds());
        auto shapes = tree_universe(b.vertices, b.arity);
        for (const auto& r : shapes)
            for (const auto& t : shapes)
                for (const auto& m : canonical_hom_set(r, t))
                    for (const auto& x : source_.level(t)) {
                        DendrexId lhs = (*this)(r, source_.restrict(m, x));
                        DendrexId rhs = target_.restrict(m, (*this)(t, x));
                        if (lhs != rhs) {
                            if (why)
                                *why = "naturality fails at " + tree_key(r) + " -> " + tree_key(t) +
                                       " on " + x;
                            return false;
                        }
                    }
        return true;
    }

    bool levelwise_injective() const {
        Bounds b = source_.bounds().meet(target_.bounds());
        for (const auto& s : tree_universe(b.vertices, b.arity)) {
            std::set<DendrexId> seen;
            for (const auto& x : source_.level(s))
                if (!seen.insert((*this)(s, x)).second) return false;
        }
        return true;
    }

private:
    DendSet source_, target_;
    std::function<DendrexId(const Tree&, const DendrexId&)> component_;
};

// inclusion of a subobject into its ambient dendroidal set
inline DendMap subobject_inclusion(const DendSet& sub, const DendSet& ambient) {
    return DendMap(sub, ambient, [](const Tree&, const DendrexId& id) { return id; });
}

// the nerve is functorial: a morphism of operads induces a map of nerves
inline DendMap nerve_map(const OperadMorphism& f, std::size_t vertex_bound) {
    DendSet nx = nerve(*f.source, vertex_bound);
    DendSet ny = nerve(*f.target, vertex_bound);
    auto cmap = f.colour_map;
    auto omap = f.op_map;
    return DendMap(nx, ny, [cmap, omap](const Tree&, const DendrexId& x) {
        auto [colours, ops] = NerveImpl::decode(x);
        std::map<Edge, Colour> nc;
        for (const auto& [e, c] : colours) nc[e] = cmap.at(c);
        std::map<Edge, OpId> nops;
        for (const auto& [e, op] : ops) nops[e] = omap.at(op);
        return NerveImpl::encode(nc, nops);
    });
}

// map from a representable classifying a dendrex (Yoneda)
inline DendMap classifying_map(const Tree& t, const DendSet& x, const DendrexId& top_cell,
                               Bounds b) {
    DendSet rep = representable(t, b);
    const Tree& cano = canonical_shape(t);
    auto rel = canonical_form(t).relabelling;
    return DendMap(rep, x, [cano, x, top_cell, rel](const Tree& shape, const DendrexId& id) {
        // id encodes shape -> t; view it as a morphism into the canonical tree
        auto em = detail::decode_map(id);
        std::map<Edge, Edge> mm;
        for (const auto& [a, b2] : em) mm[a] = rel.at(b2);
        TreeMorphism m(canonical_shape(shape), cano, std::move(mm), false);
        return x.restrict(m, top_cell);
    });
}

// pushout of  X <-f- A -g-> B  along a levelwise-injective g
class PushoutImpl final : public DendSetImpl {
public:
    PushoutImpl(DendMap f, DendMap g) : f_(std::move(f)), g_(std::move(g)) {
        if (!g_.levelwise_injective())
            throw DendError("pushout requires a levelwise-injective attaching map");
    }

    Bounds bounds() const override {
        return f_.target().bounds().meet(g_.target().bounds()).meet(f_.source().bounds());
    }

    std::vector<DendrexId> level(const Tree& shape) const override {
        std::vector<DendrexId> out;
        for (const auto& id : f_.target().level(shape)) out.push_back("x:" + id);
        std::set<DendrexId> image;
        for (const auto& a : f_.source().level(shape)) image.insert(g_(shape, a));
        for (const auto& id : g_.target().level(shape))
            if (!image.count(id)) out.push_back("b:" + id);
        return out;
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const override {
        if (x.rfind("x:", 0) == 0) return "x:" + f_.target().restrict(m, x.substr(2));
        DendrexId b = g_.target().restrict(m, x.substr(2));
        // the restriction may fall into the glued image; reroute through A
        for (const auto& a : f_.source().level(m.source()))
            if (g_(m.source(), a) == b) return "x:" + f_(m.source(), a);
        return "b:" + b;
    }

    const DendMap& left_leg() const { return f_; }
    const DendMap& right_leg() const { return g_; }

private:
    DendMap f_, g_;
};

struct Pushout {
    DendSet object;
    DendMap from_x;  // X -> P
    DendMap from_b;  // B -> P
};

inline Pushout pushout(const DendMap& f, const DendMap& g) {
    DendSet p(std::make_shared<PushoutImpl>(f, g));
    DendMap from_x(f.target(), p, [](const Tree&, const DendrexId& id) { return "x:" + id; });
    DendSet a = f.source();
    DendMap from_b(g.target(), p, [f, g, a](const Tree& shape, const DendrexId& id) -> DendrexId {
        for (const auto& x : a.level(shape))
            if (g(shape, x) == id) return "x:" + f(shape, x);
        return "b:" + id;
    });
    return {p, from_x, from_b};
}

// image of a map as a subobject of its target
inline DendSet image(const DendMap& f) {
    std::map<std::string, std::set<DendrexId>> levels;
    Bounds b = f.source().bounds().meet(f.target().bounds());
    for (const auto& s : tree_universe(b.vertices, b.arity))
        for (const auto& x : f.source().level(s)) levels[tree_key(s)].insert(f(s, x));
    return DendSet(std::make_shared<SubobjectImpl>(f.target(), std::move(levels), b));
}

// levelwise injectivity plus trivial stabilizers outside the image
inline bool is_normal_mono(const DendMap& f, std::string* why = nullptr) {
    if (!f.levelwise_injective()) throw DendError("is_normal_mono expects an injective map");
    Bounds b = f.source().bounds().meet(f.target().bounds());
    for (const auto& s : tree_universe(b.vertices, b.arity)) {
        std::set<DendrexId> img;
        for (const auto& x : f.source().level(s)) img.insert(f(s, x));
        for (const auto& y : f.target().level(s)) {
            if (img.count(y)) continue;
            if (stabilizer_size(f.target(), s, y) != 1) {
                if (why) *why = "dendrex " + y + " at " + tree_key(s) + " has a nontrivial stabilizer";
                return false;
            }
        }
    }
    return true;
}

inline bool is_normal(const DendSet& x, std::string* why = nullptr) {
    DendMap from_empty(empty_dendset(x.bounds()), x,
                       [](const Tree&, const DendrexId& id) { return id; });
    return is_normal_mono(from_empty, why);
}

}  // namespace dendro

#endif  // DENDRO_DENDSET_HPP_
