/* wspace.hpp -- cube-valued operation spaces of the W-construction and the
 * straightening cubes.
 *
 * The space of operations with leaves c... and root c is the cube on the
 * inner edges of the unique spanning subtree (a point when that set is
 * empty, empty when no subtree exists).  Composition grafts subtrees and
 * assigns length 1 to the newly arising inner edges.  The straightening cube
 * of an edge c is the cube on the colours strictly above c; faces of the
 * tree induce {0}-padded inclusions of cubes, degeneracies project away the
 * upper of the two merged coordinates.
 */

#ifndef DENDRO_WSPACE_HPP_
#define DENDRO_WSPACE_HPP_

#include <optional>

#include "dendro/omega.hpp"
#include "dendro/simpset.hpp"

namespace dendro {

// inner edges of the subtree of t with root c and the given frontier
inline std::optional<std::vector<Edge>> subtree_inner_edges(const Tree& t, const Edge& c,
                                                            const std::set<Edge>& frontier) {
    auto edges = find_subtree(t, c, frontier);
    if (!edges) return std::nullopt;
    std::vector<Edge> inner;
    for (const auto& e : *edges)
        if (e != c && !frontier.count(e)) inner.push_back(e);
    return inner;
}

// the operation space W(Omega(t))(leaves; root) as a cube, or nothing
inline std::optional<Cube> w_space(const Tree& t, const std::vector<Edge>& leaves,
                                   const Edge& root) {
    std::set<Edge> fr(leaves.begin(), leaves.end());
    if (fr.size() != leaves.size()) return std::nullopt;
    auto inner = subtree_inner_edges(t, root, fr);
    if (!inner) return std::nullopt;
    std::sort(inner->begin(), inner->end());
    return Cube{*inner};
}

// a W-operation: a signature together with a vertex of its cube
struct WOperation {
    std::vector<Edge> leaves;
    Edge root;
    CubePoint point;  // lengths of the inner edges of the spanning subtree
};

inline WOperation w_identity(const Edge& c) { return {{c}, c, {}}; }

// grafting composition: children[i] must have root leaves[i]; the edges along
// which the grafting occurs become inner of length 1
inline WOperation w_compose(const Tree& t, const WOperation& parent,
                            const std::vector<WOperation>& children) {
    if (children.size() != parent.leaves.size())
        throw TreeError("w_compose: child count does not match the arity");
    WOperation out;
    out.root = parent.root;
    out.point = parent.point;
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (children[i].root != parent.leaves[i])
            throw TreeError("w_compose: child root does not match the leaf " + parent.leaves[i]);
        bool child_trivial = children[i].leaves == std::vector<Edge>{children[i].root};
        bool parent_trivial = parent.leaves == std::vector<Edge>{parent.root};
        if (!child_trivial && !parent_trivial) out.point[parent.leaves[i]] = 1;
        for (const auto& [e, v] : children[i].point) out.point[e] = v;
        out.leaves.insert(out.leaves.end(), children[i].leaves.begin(), children[i].leaves.end());
    }
    if (parent.leaves == std::vector<Edge>{parent.root}) {
        // composing the identity: the single child is the result
        out = children[0];
    }
    auto cube = w_space(t, out.leaves, out.root);
    if (!cube) throw TreeError("w_compose: the grafted signature has no spanning subtree");
    for (const auto& e : cube->coords)
        if (!out.point.count(e)) throw TreeError("w_compose: missing coordinate " + e);
    if (out.point.size() != cube->coords.size()) {
        // drop coordinates that are no longer inner (identity children)
        CubePoint trimmed;
        for (const auto& e : cube->coords) trimmed[e] = out.point.at(e);
        out.point = std::move(trimmed);
    }
    return out;
}

// ---------------------------------------------------------------------------
// straightening cubes

// Delta[t/c]: the cube on the colours of the subtree above c, minus c itself
inline Cube straightening_cube(const Tree& t, const Edge& c) {
    std::vector<std::string> coords;
    for (const auto& e : t.edges_above(c))
        if (e != c) coords.push_back(e);
    return Cube{coords};
}

// a map of cubes: each target coordinate is pulled from a source coordinate
// or held constant
struct CubeMap {
    Cube source, target;
    std::map<std::string, std::string> pull;  // target coord -> source coord
    int constant = 0;                         // value for target coords not pulled

    CubePoint apply(const CubePoint& p) const {
        CubePoint out;
        for (const auto& d : target.coords) {
            auto it = pull.find(d);
            out[d] = it == pull.end() ? constant : p.at(it->second);
        }
        return out;
    }

    // transport a simplex of the source cube (threshold encoding)
    SimplexId apply_simplex(std::size_t degree, const SimplexId& id) const {
        auto t = detail::decode_thresholds(id);
        std::map<std::string, std::size_t> out;
        for (const auto& d : target.coords) {
            auto it = pull.find(d);
            if (it != pull.end())
                out[d] = t.at(it->second);
            else
                out[d] = constant == 1 ? 0 : degree + 1;
        }
        return detail::encode_thresholds(out);
    }

    CubeMap then(const CubeMap& g) const {
        CubeMap out{source, g.target, {}, g.constant};
        for (const auto& d : g.target.coords) {
            auto it = g.pull.find(d);
            if (it == g.pull.end()) continue;
            auto it2 = pull.find(it->second);
            if (it2 != pull.end()) out.pull[d] = it2->second;
            // a coordinate pulled to one held constant stays constant
        }
        return out;
    }

    friend bool operator==(const CubeMap&, const CubeMap&) = default;
};

// the map Delta[R/c] -> Delta[T/f(c)] induced by a morphism f : R -> T that is
// a composite of faces (an inclusion padded by 0) or of degeneracies (a
// projection keeping the coordinate nearer the root)
inline CubeMap straightening_map(const TreeMorphism& f, const Edge& c) {
    const Tree& r = f.source();
    const Tree& t = f.target();
    Cube src = straightening_cube(r, c);
    Cube dst = straightening_cube(t, f(c));
    CubeMap out{src, dst, {}, 0};
    for (const auto& d : dst.coords) {
        // preimages of d above c in R
        std::vector<Edge> pre;
        for (const auto& e : src.coords)
            if (f(e) == d) pre.push_back(e);
        if (pre.empty()) continue;  // padded by 0
        if (pre.size() == 1) {
            out.pull[d] = pre[0];
            continue;
        }
        // a degeneracy merged a unary chain: keep the coordinate nearest the root
        Edge best = pre[0];
        auto depth = [&](const Edge& e) {
            std::size_t k = 0;
            Edge cur = e;
            while (cur != r.root()) {
                cur = r.vertex_below(cur)->output;
                ++k;
            }
            return k;
        };
        for (const auto& e : pre)
            if (depth(e) < depth(best)) best = e;
        out.pull[d] = best;
    }
    return out;
}

}  // namespace dendro

#endif  // DENDRO_WSPACE_HPP_
