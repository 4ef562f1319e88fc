/* simplicial.hpp -- restriction along the embedding of the simplex category.
 *
 * i sends [n] to the linear tree L_n.  Simplicial vertex j corresponds to the
 * edge at depth n - j, i.e. vertex 0 sits at the top (leaf) end and vertex n
 * at the root, matching the join maps used for coCartesian lifts.
 */

#ifndef DENDRO_SIMPLICIAL_HPP_
#define DENDRO_SIMPLICIAL_HPP_

#include "dendro/dendset.hpp"
#include "dendro/simpset.hpp"

namespace dendro {

// is this canonical shape a linear tree, and of which length?
inline std::optional<std::size_t> linear_length(const Tree& t) {
    if (t.max_arity() > 1) return std::nullopt;
    if (t.leaves().size() != 1) return std::nullopt;
    for (const auto& v : t.vertices())
        if (v.inputs.empty()) return std::nullopt;
    return t.vertex_count();
}

// the edge of a linear tree at the given depth below the leaf end: simplicial
// vertex j of [n] is the edge with n - j vertices below it
inline Edge linear_edge_for_vertex(const Tree& t, std::size_t n, std::size_t j) {
    Edge cur = t.root();
    // walk from the root upward n - (n - j) ... : vertex j is at depth n-j from root
    for (std::size_t step = 0; step < n - j; ++step) cur = t.vertex_above(cur)->inputs[0];
    return cur;
}

// tree morphism L_m -> L_n realizing a simplicial operator alpha : [m] -> [n]
inline TreeMorphism linear_morphism(const Tree& lm, const Tree& ln,
                                    const std::vector<std::size_t>& alpha) {
    std::size_t m = lm.vertex_count(), n = ln.vertex_count();
    std::map<Edge, Edge> em;
    for (std::size_t j = 0; j <= m; ++j)
        em[linear_edge_for_vertex(lm, m, j)] = linear_edge_for_vertex(ln, n, alpha[j]);
    return TreeMorphism(lm, ln, std::move(em), false);
}

// recover the simplicial operator of a morphism between linear trees
inline std::vector<std::size_t> simplicial_op_of(const TreeMorphism& f) {
    auto m = linear_length(f.source());
    auto n = linear_length(f.target());
    if (!m || !n) throw DendError("not a morphism of linear trees");
    std::map<Edge, std::size_t> vertex_of;
    for (std::size_t j = 0; j <= *n; ++j) vertex_of[linear_edge_for_vertex(f.target(), *n, j)] = j;
    std::vector<std::size_t> alpha(*m + 1);
    for (std::size_t j = 0; j <= *m; ++j)
        alpha[j] = vertex_of.at(f(linear_edge_for_vertex(f.source(), *m, j)));
    return alpha;
}

// i^* : restriction of a dendroidal set to linear shapes
inline SimpSet simplicial_restriction(const DendSet& x, std::size_t dim_bound) {
    if (dim_bound > x.bounds().vertices)
        throw DendError("simplicial degree exceeds the vertex bound");
    SimpSet s(dim_bound);
    std::vector<Tree> lin;
    for (std::size_t n = 0; n <= dim_bound; ++n) lin.push_back(canonical_shape(linear_tree(n)));
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& id : x.level(lin[n])) s.add_simplex(n, id);
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& id : x.level(lin[n])) {
            if (n > 0)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<std::size_t> delta;
                    for (std::size_t j = 0; j <= n; ++j)
                        if (j != i) delta.push_back(j);
                    s.set_face(n, id, i, x.restrict(linear_morphism(lin[n - 1], lin[n], delta), id));
                }
            if (n + 1 <= dim_bound)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<std::size_t> sg;
                    for (std::size_t j = 0; j <= n; ++j) {
                        sg.push_back(j);
                        if (j == i) sg.push_back(j);
                    }
                    s.set_degeneracy(n, id, i,
                                     x.restrict(linear_morphism(lin[n + 1], lin[n], sg), id));
                }
        }
    return s;
}

// i_! : a simplicial set as a dendroidal set concentrated on linear shapes
class SimplicialImpl final : public DendSetImpl {
public:
    SimplicialImpl(SimpSet k, Bounds b) : simp_(std::move(k)), bounds_(b) {
        if (bounds_.vertices > simp_.dim_bound())
            throw DendError("vertex bound exceeds the simplicial dimension bound");
    }

    const SimpSet& simplicial_set() const { return simp_; }
    Bounds bounds() const override { return bounds_; }

    std::vector<DendrexId> level(const Tree& shape) const override {
        auto n = linear_length(shape);
        if (!n) return {};
        return simp_.simplices(*n);
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& x) const override {
        return simp_.apply(simplicial_op_of(m), *linear_length(m.target()), x);
    }

private:
    SimpSet simp_;
    Bounds bounds_;
};

inline DendSet simplicial_extension(const SimpSet& k, std::size_t vertex_bound,
                                    std::size_t arity_bound = 3) {
    return DendSet(std::make_shared<SimplicialImpl>(
        k, Bounds{std::min(vertex_bound, k.dim_bound()), arity_bound}));
}

}  // namespace dendro

#endif  // DENDRO_SIMPLICIAL_HPP_
