/* omega.hpp -- morphisms of the tree category Omega.
 *
 * A morphism R -> T is an edge map sending the generator operation of every
 * vertex of R to an operation of the free operad on T, i.e. for every vertex
 * there is a (necessarily unique) subtree of T whose root and leaves match
 * the images.  Faces, degeneracies and brute-force hom-set enumeration live
 * here as well.
 */

#ifndef DENDRO_OMEGA_HPP_
#define DENDRO_OMEGA_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

class TreeMorphism {
public:
    TreeMorphism(Tree source, Tree target, std::map<Edge, Edge> edge_map, bool check = true)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(edge_map)) {
        if (check && !valid()) throw TreeError("edge map is not a morphism of trees");
    }

    static TreeMorphism identity(const Tree& t) {
        std::map<Edge, Edge> m;
        for (const auto& e : t.edges()) m[e] = e;
        return TreeMorphism(t, t, std::move(m), false);
    }

    const Tree& source() const { return source_; }
    const Tree& target() const { return target_; }
    const std::map<Edge, Edge>& edge_map() const { return map_; }
    const Edge& operator()(const Edge& e) const {
        auto it = map_.find(e);
        if (it == map_.end()) throw TreeError("morphism undefined on edge " + e);
        return it->second;
    }

    bool valid() const {
        for (const auto& e : source_.edges()) {
            auto it = map_.find(e);
            if (it == map_.end() || !target_.has_edge(it->second)) return false;
        }
        for (const auto& v : source_.vertices()) {
            std::set<Edge> frontier;
            for (const auto& in : v.inputs) frontier.insert(map_.at(in));
            if (frontier.size() != v.inputs.size()) return false;  // must be injective on inputs
            if (!find_subtree(target_, map_.at(v.output), frontier)) return false;
        }
        return true;
    }

    bool is_mono() const {
        std::set<Edge> img;
        for (const auto& e : source_.edges()) img.insert(map_.at(e));
        return img.size() == source_.edge_count();
    }

    bool is_iso() const { return is_mono() && source_.edge_count() == target_.edge_count(); }

    bool is_identity() const {
        if (source_ != target_) return false;
        for (const auto& [a, b] : map_)
            if (a != b) return false;
        return true;
    }

    // g.then(f) = f o g, defined when g.target == f.source
    TreeMorphism then(const TreeMorphism& f) const {
        if (!(target_ == f.source_)) throw TreeError("morphisms are not composable");
        std::map<Edge, Edge> m;
        for (const auto& e : source_.edges()) m[e] = f(map_.at(e));
        return TreeMorphism(source_, f.target_, std::move(m), false);
    }

    friend bool operator==(const TreeMorphism& a, const TreeMorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.map_ == b.map_;
    }
    friend bool operator<(const TreeMorphism& a, const TreeMorphism& b) {
        if (!(a.source_ == b.source_)) return a.source_ < b.source_;
        if (!(a.target_ == b.target_)) return a.target_ < b.target_;
        return a.map_ < b.map_;
    }

private:
    Tree source_, target_;
    std::map<Edge, Edge> map_;
};

// ---------------------------------------------------------------------------
// hom-set enumeration

namespace detail {
inline std::vector<std::map<Edge, Edge>> maps_from(const Tree& r, const Tree& t, const Edge& er,
                                                   const Edge& et) {
    const TreeVertex* v = r.vertex_above(er);
    if (!v) return {{{er, et}}};
    std::vector<std::map<Edge, Edge>> out;
    for (const auto& frontier : subtree_frontiers(t, et)) {
        if (frontier.size() != v->inputs.size()) continue;
        std::vector<Edge> fr(frontier.begin(), frontier.end());
        std::sort(fr.begin(), fr.end());
        do {
            std::vector<std::map<Edge, Edge>> layers{{{er, et}}};
            for (std::size_t i = 0; i < v->inputs.size() && !layers.empty(); ++i) {
                auto subs = maps_from(r, t, v->inputs[i], fr[i]);
                std::vector<std::map<Edge, Edge>> nxt;
                for (const auto& base : layers)
                    for (const auto& sub : subs) {
                        std::map<Edge, Edge> m = base;
                        m.insert(sub.begin(), sub.end());
                        nxt.push_back(std::move(m));
                    }
                layers = std::move(nxt);
            }
            for (auto& m : layers) out.push_back(std::move(m));
        } while (std::next_permutation(fr.begin(), fr.end()));
    }
    return out;
}
}  // namespace detail

// all morphisms r -> t
inline std::vector<TreeMorphism> hom_set(const Tree& r, const Tree& t) {
    std::vector<TreeMorphism> out;
    for (const auto& et : t.edges())
        for (auto& m : detail::maps_from(r, t, r.root(), et))
            out.push_back(TreeMorphism(r, t, std::move(m), false));
    return out;
}

// all monomorphisms r -> t
inline std::vector<TreeMorphism> mono_set(const Tree& r, const Tree& t) {
    std::vector<TreeMorphism> out;
    for (auto& m : hom_set(r, t))
        if (m.is_mono()) out.push_back(std::move(m));
    return out;
}

// ---------------------------------------------------------------------------
// faces

struct FaceLabel {
    enum class Kind { inner, leaf_vertex, root_vertex, edge_inclusion };
    Kind kind;
    Edge edge;  // inner: contracted edge; leaf_vertex: output edge of the vertex;
                // root_vertex: the unique inner input of the root vertex;
                // edge_inclusion: the included edge of a corolla

    friend bool operator==(const FaceLabel&, const FaceLabel&) = default;
    friend bool operator<(const FaceLabel& a, const FaceLabel& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.edge < b.edge;
    }
};

struct Face {
    FaceLabel label;
    TreeMorphism inclusion;  // face tree -> T
};

// the inner face contracting e, as a tree on the remaining edge names
inline Tree contract_inner_edge(const Tree& t, const Edge& e) {
    if (!t.is_inner_edge(e)) throw TreeError("contract: " + e + " is not an inner edge");
    const TreeVertex* up = t.vertex_above(e);
    const TreeVertex* down = t.vertex_below(e);
    std::vector<TreeVertex> vs;
    for (const auto& v : t.vertices()) {
        if (&v == up) continue;
        if (&v == down) {
            TreeVertex merged;
            merged.output = down->output;
            for (const auto& in : down->inputs)
                if (in != e) merged.inputs.push_back(in);
            for (const auto& in : up->inputs) merged.inputs.push_back(in);
            vs.push_back(std::move(merged));
        } else {
            vs.push_back(v);
        }
    }
    return Tree(t.root(), std::move(vs));
}

// all codimension-1 monomorphisms into t
inline std::vector<Face> faces(const Tree& t) {
    std::vector<Face> out;
    if (t.vertex_count() == 0) return out;
    if (t.vertex_count() == 1) {
        for (const auto& e : t.edges()) {
            Tree src = eta(e);
            out.push_back({{FaceLabel::Kind::edge_inclusion, e},
                           TreeMorphism(src, t, {{e, e}}, false)});
        }
        return out;
    }
    for (const auto& e : t.inner_edges()) {
        Tree src = contract_inner_edge(t, e);
        std::map<Edge, Edge> m;
        for (const auto& x : src.edges()) m[x] = x;
        out.push_back({{FaceLabel::Kind::inner, e}, TreeMorphism(src, t, std::move(m), false)});
    }
    for (const auto& v : t.vertices()) {
        bool all_leaves = true;
        for (const auto& in : v.inputs) all_leaves &= t.is_leaf(in);
        if (!all_leaves) continue;
        // chop the leaf corolla with this vertex
        std::vector<TreeVertex> vs;
        for (const auto& w : t.vertices())
            if (!(w == v)) vs.push_back(w);
        Tree src(t.root(), std::move(vs));
        std::map<Edge, Edge> m;
        for (const auto& x : src.edges()) m[x] = x;
        out.push_back({{FaceLabel::Kind::leaf_vertex, v.output}, TreeMorphism(src, t, std::move(m), false)});
    }
    {
        const TreeVertex* w = t.vertex_above(t.root());
        std::vector<Edge> inner;
        for (const auto& in : w->inputs)
            if (!t.is_leaf(in)) inner.push_back(in);
        if (inner.size() == 1) {
            Tree src = subtree_above(t, inner[0]);
            std::map<Edge, Edge> m;
            for (const auto& x : src.edges()) m[x] = x;
            out.push_back({{FaceLabel::Kind::root_vertex, inner[0]},
                           TreeMorphism(src, t, std::move(m), false)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// degeneracies

// the elementary degeneracy collapsing the unary vertex above `in`, mapping
// both its edges to the output edge
inline TreeMorphism collapse_unary(const Tree& t, const TreeVertex& v) {
    if (v.inputs.size() != 1) throw TreeError("collapse: vertex is not unary");
    Edge in = v.inputs[0], out = v.output;
    std::vector<TreeVertex> vs;
    for (const auto& w : t.vertices()) {
        if (w == v) continue;
        TreeVertex nw;
        nw.output = w.output == in ? out : w.output;
        for (const auto& x : w.inputs) nw.inputs.push_back(x == in ? out : x);
        vs.push_back(std::move(nw));
    }
    Tree small(t.root() == in ? out : t.root(), std::move(vs));
    std::map<Edge, Edge> m;
    for (const auto& e : t.edges()) m[e] = e == in ? out : e;
    return TreeMorphism(t, small, std::move(m), false);
}

// all elementary degeneracies out of t
inline std::vector<TreeMorphism> elementary_degeneracies(const Tree& t) {
    std::vector<TreeMorphism> out;
    for (const auto& v : t.vertices())
        if (v.inputs.size() == 1) out.push_back(collapse_unary(t, v));
    return out;
}

// ---------------------------------------------------------------------------
// factorization of monomorphisms through faces

// true when m equals (a composite of face inclusions) o (an isomorphism)
inline bool factors_through_faces(const TreeMorphism& m) {
    if (!m.is_mono()) return false;
    if (m.is_iso()) return true;
    for (const auto& f : faces(m.target())) {
        // does m land inside this face?
        std::set<Edge> img;
        for (const auto& [a, b] : f.inclusion.edge_map()) img.insert(b);
        bool inside = true;
        for (const auto& e : m.source().edges()) inside &= img.count(m(e)) > 0;
        if (!inside) continue;
        std::map<Edge, Edge> inv;
        for (const auto& [a, b] : f.inclusion.edge_map()) inv[b] = a;
        std::map<Edge, Edge> restricted;
        for (const auto& e : m.source().edges()) restricted[e] = inv.at(m(e));
        TreeMorphism down(m.source(), f.inclusion.source(), std::move(restricted), false);
        if (!down.valid()) continue;
        if (factors_through_faces(down)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// spine presentation: one corolla per vertex, glued along inner edges

struct SpinePresentation {
    struct Gluing {
        Edge inner_edge;
        std::size_t lower;  // corolla having the edge as an input
        std::size_t upper;  // corolla having the edge as its output
    };
    std::vector<TreeMorphism> corollas;  // corolla subtree -> T, one per vertex
    std::vector<Gluing> gluings;         // one per inner edge
};

inline SpinePresentation spine_presentation(const Tree& t) {
    SpinePresentation out;
    std::map<Edge, std::size_t> by_output;
    for (const auto& v : t.vertices()) {
        TreeVertex cv{v.inputs, v.output};
        Tree c(v.output, {cv});
        std::map<Edge, Edge> m;
        for (const auto& e : c.edges()) m[e] = e;
        by_output[v.output] = out.corollas.size();
        out.corollas.push_back(TreeMorphism(c, t, std::move(m), false));
    }
    for (const auto& e : t.inner_edges()) {
        const TreeVertex* below = t.vertex_below(e);
        out.gluings.push_back({e, by_output.at(below->output), by_output.at(e)});
    }
    return out;
}

}  // namespace dendro

#endif  // DENDRO_OMEGA_HPP_
