/* maptree.hpp -- mapping trees of simplicial algebras over a fixed tree.
 *
 * An algebra A assigns a simplicial set to every edge of T and a simplicial
 * action map to every vertex.  An R-dendrex of M(A) is a tree morphism
 * delta : R -> T together with, for each leaf l of R, a simplex of A(delta l)
 * whose dimension is the number of vertices between l and the root of R.
 * Restriction along leaf-chopping faces applies the algebra action after the
 * initial-vertex face, then the diagonal; in the marked variant a corolla is
 * marked when all its leaf 1-simplices are degenerate.
 */

#ifndef DENDRO_MAPTREE_HPP_
#define DENDRO_MAPTREE_HPP_

#include "dendro/dendset.hpp"
#include "dendro/marked.hpp"
#include "dendro/simplicial.hpp"
#include "dendro/simpset.hpp"

namespace dendro {

class TreeAlgebra {
public:
    TreeAlgebra() = default;
    TreeAlgebra(Tree t, std::size_t dim_bound) : tree_(std::move(t)), dim_(dim_bound) {}

    const Tree& tree() const { return tree_; }
    std::size_t dim_bound() const { return dim_; }

    void set_space(const Edge& e, SimpSet s) {
        if (s.dim_bound() < dim_) throw SimpError("space dimension below the algebra bound");
        spaces_[e] = std::move(s);
    }
    const SimpSet& space(const Edge& e) const {
        auto it = spaces_.find(e);
        if (it == spaces_.end()) throw SimpError("no space at edge " + e);
        return it->second;
    }

    // action of the vertex with the given output, at one simplicial degree,
    // on a tuple of simplices ordered by the vertex's sorted inputs
    void set_action(const Edge& vertex_output, std::size_t degree,
                    const std::vector<SimplexId>& args, const SimplexId& result) {
        action_[{vertex_output, degree, args}] = result;
    }
    SimplexId act(const Edge& vertex_output, std::size_t degree,
                  const std::vector<SimplexId>& args) const {
        auto it = action_.find({vertex_output, degree, args});
        if (it == action_.end())
            throw SimpError("algebra action missing at " + vertex_output + " in degree " +
                            std::to_string(degree));
        return it->second;
    }

    bool check_algebra(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        for (const auto& e : tree_.edges()) {
            if (!spaces_.count(e)) return bad("no space at " + e);
            std::string sw;
            if (!spaces_.at(e).check_identities(&sw)) return bad("space at " + e + ": " + sw);
        }
        // each action commutes with faces and degeneracies
        for (const auto& v : tree_.vertices()) {
            for (std::size_t n = 0; n <= dim_; ++n) {
                std::vector<std::vector<SimplexId>> pools;
                for (const auto& in : v.inputs) pools.push_back(space(in).simplices(n));
                std::vector<std::size_t> idx(v.inputs.size(), 0);
                bool done = std::any_of(pools.begin(), pools.end(),
                                        [](const auto& p) { return p.empty(); });
                while (!done) {
                    std::vector<SimplexId> args;
                    for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(pools[i][idx[i]]);
                    SimplexId out = act(v.output, n, args);
                    if (!space(v.output).contains(n, out))
                        return bad("action leaves the carrier at " + v.output);
                    if (n > 0)
                        for (std::size_t i = 0; i <= n; ++i) {
                            std::vector<SimplexId> fargs;
                            for (std::size_t a = 0; a < args.size(); ++a)
                                fargs.push_back(space(v.inputs[a]).face(n, args[a], i));
                            if (act(v.output, n - 1, fargs) != space(v.output).face(n, out, i))
                                return bad("action does not commute with faces at " + v.output);
                        }
                    if (n + 1 <= dim_)
                        for (std::size_t i = 0; i <= n; ++i) {
                            std::vector<SimplexId> dargs;
                            for (std::size_t a = 0; a < args.size(); ++a)
                                dargs.push_back(space(v.inputs[a]).degeneracy(n, args[a], i));
                            if (act(v.output, n + 1, dargs) !=
                                space(v.output).degeneracy(n, out, i))
                                return bad("action does not commute with degeneracies at " +
                                           v.output);
                        }
                    std::size_t k = 0;
                    while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
                    if (idx.empty() || k == idx.size()) done = true;
                }
            }
        }
        return true;
    }

private:
    Tree tree_ = eta("e");
    std::size_t dim_ = 0;
    std::map<Edge, SimpSet> spaces_;
    std::map<std::tuple<Edge, std::size_t, std::vector<SimplexId>>, SimplexId> action_;
};

// the constant algebra at a chosen point of a simplicial set with one vertex
inline TreeAlgebra point_algebra(const Tree& t, std::size_t dim_bound) {
    TreeAlgebra a(t, dim_bound);
    SimpSet pt(dim_bound);
    std::vector<SimplexId> degen{"*"};
    pt.add_simplex(0, "*");
    for (std::size_t n = 1; n <= dim_bound; ++n) pt.add_simplex(n, "*");
    for (std::size_t n = 0; n <= dim_bound; ++n) {
        if (n > 0)
            for (std::size_t i = 0; i <= n; ++i) pt.set_face(n, "*", i, "*");
        if (n + 1 <= dim_bound)
            for (std::size_t i = 0; i <= n; ++i) pt.set_degeneracy(n, "*", i, "*");
    }
    for (const auto& e : t.edges()) a.set_space(e, pt);
    for (const auto& v : t.vertices())
        for (std::size_t n = 0; n <= dim_bound; ++n)
            a.set_action(v.output, n, std::vector<SimplexId>(v.inputs.size(), "*"), "*");
    return a;
}

// ---------------------------------------------------------------------------
// the mapping tree M(A)

class MappingTreeImpl final : public DendSetImpl {
public:
    MappingTreeImpl(TreeAlgebra a, Bounds b) : a_(std::move(a)), bounds_(b) {
        if (bounds_.vertices > a_.dim_bound())
            throw DendError("mapping tree bound exceeds the algebra's simplicial bound");
    }

    const TreeAlgebra& algebra() const { return a_; }
    Bounds bounds() const override { return bounds_; }

    static DendrexId encode(const DendrexId& delta_part, const std::map<Edge, SimplexId>& leaves) {
        std::string l;
        for (const auto& [k, v] : leaves) {
            if (!l.empty()) l += ";";
            l += k + "=" + v;
        }
        return delta_part + "||" + l;
    }
    static std::pair<DendrexId, std::map<Edge, SimplexId>> decode(const DendrexId& id) {
        auto bar = id.find("||");
        std::map<Edge, SimplexId> leaves;
        std::string rest = id.substr(bar + 2);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto eq = rest.find('=', pos);
            auto semi = rest.find(';', eq);
            if (semi == std::string::npos) semi = rest.size();
            leaves[rest.substr(pos, eq - pos)] = rest.substr(eq + 1, semi - eq - 1);
            pos = semi + 1;
        }
        return {id.substr(0, bar), leaves};
    }

    std::vector<DendrexId> level(const Tree& shape) const override {
        std::vector<DendrexId> out;
        for (const auto& delta : canonical_hom_set(shape, canonical_shape(a_.tree()))) {
            // rename targets back to the original tree
            std::map<Edge, Edge> back;
            for (const auto& [orig, cano] : canonical_form(a_.tree()).relabelling) back[cano] = orig;
            std::map<Edge, Edge> dmap;
            for (const auto& [e, img] : delta.edge_map()) dmap[e] = back.at(img);
            std::vector<Edge> leaves = shape.leaves();
            std::vector<std::vector<SimplexId>> pools;
            for (const auto& l : leaves)
                pools.push_back(a_.space(dmap.at(l)).simplices(path_length(shape, l)));
            std::vector<std::size_t> idx(leaves.size(), 0);
            bool done = std::any_of(pools.begin(), pools.end(),
                                    [](const auto& p) { return p.empty(); });
            std::map<std::string, std::string> dmap_str(dmap.begin(), dmap.end());
            while (!done) {
                std::map<Edge, SimplexId> lam;
                for (std::size_t i = 0; i < leaves.size(); ++i) lam[leaves[i]] = pools[i][idx[i]];
                out.push_back(encode(detail::encode_map(dmap_str), lam));
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
                if (idx.empty() || k == idx.size()) done = true;
            }
        }
        return out;
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& id) const override {
        auto [dpart, lam] = decode(id);
        auto dm = detail::decode_map(dpart);
        const Tree& q = m.target();  // shape of the dendrex
        const Tree& r = m.source();
        std::map<std::string, std::string> nd;
        for (const auto& e : r.edges()) nd[e] = dm.at(m(e));
        std::map<Edge, SimplexId> nl;
        for (const auto& l : r.leaves()) {
            Edge ql = m(l);
            // derived simplex at ql, then the path operator
            SimplexId big = derived_simplex(q, dm, lam, ql);
            auto qpath = path_edges(q, ql);
            auto rpath = path_edges(r, l);
            std::vector<std::size_t> alpha;
            for (const auto& re : rpath) {
                Edge img = m(re);
                std::size_t pos = std::find(qpath.begin(), qpath.end(), img) - qpath.begin();
                alpha.push_back(pos);
            }
            nl[l] = a_.space(dm.at(ql)).apply(alpha, qpath.size() - 1, big);
        }
        return encode(detail::encode_map(nd), nl);
    }

    // the simplex classifying the dendrex's behaviour at an arbitrary edge
    SimplexId derived_simplex(const Tree& q, const std::map<std::string, std::string>& dm,
                              const std::map<Edge, SimplexId>& lam, const Edge& e) const {
        if (q.is_leaf(e)) return lam.at(e);
        const TreeVertex* v = q.vertex_above(e);
        std::size_t n = path_length(q, e);
        std::vector<Edge> leaves;
        std::vector<SimplexId> args;
        for (const auto& in : v->inputs) {
            SimplexId s = derived_simplex(q, dm, lam, in);
            leaves.push_back(dm.at(in));
            args.push_back(a_.space(dm.at(in)).face(n + 1, s, 0));
        }
        return act_along(dm.at(e), leaves, args, n);
    }

    // apply the operation of the free tree operad given by the subtree with
    // the stated root and leaves, composing the vertex actions
    SimplexId act_along(const Edge& root_t, const std::vector<Edge>& leaves,
                        const std::vector<SimplexId>& args, std::size_t degree) const {
        if (leaves.size() == 1 && leaves[0] == root_t) return args[0];
        const TreeVertex* w = a_.tree().vertex_above(root_t);
        if (!w) throw DendError("no operation with root " + root_t + " and the requested leaves");
        std::set<Edge> frontier(leaves.begin(), leaves.end());
        std::vector<SimplexId> child_vals;
        for (const auto& in : w->inputs) {
            if (frontier.count(in)) {
                auto pos = std::find(leaves.begin(), leaves.end(), in) - leaves.begin();
                child_vals.push_back(args[pos]);
                continue;
            }
            auto above = a_.tree().edges_above(in);
            std::vector<Edge> sub;
            std::vector<SimplexId> sub_args;
            for (std::size_t i = 0; i < leaves.size(); ++i)
                if (std::binary_search(above.begin(), above.end(), leaves[i])) {
                    sub.push_back(leaves[i]);
                    sub_args.push_back(args[i]);
                }
            child_vals.push_back(act_along(in, sub, sub_args, degree));
        }
        return a_.act(w->output, degree, child_vals);
    }

    static std::size_t path_length(const Tree& t, const Edge& e) {
        return path_edges(t, e).size() - 1;
    }
    // edges from e down to the root, e first
    static std::vector<Edge> path_edges(const Tree& t, const Edge& e) {
        std::vector<Edge> out{e};
        Edge cur = e;
        while (cur != t.root()) {
            cur = t.vertex_below(cur)->output;
            out.push_back(cur);
        }
        return out;
    }

private:
    TreeAlgebra a_;
    Bounds bounds_;
};

inline DendSet mapping_tree(const TreeAlgebra& a, std::size_t vertex_bound) {
    Bounds b = rep_bounds(a.tree());
    b.vertices = std::min(vertex_bound, a.dim_bound());
    return DendSet(std::make_shared<MappingTreeImpl>(a, b));
}

// M+(A): a corolla is marked when all of its leaf 1-simplices are degenerate
inline MarkedDendSet marked_mapping_tree(const DendSet& m) {
    const auto* impl = dynamic_cast<const MappingTreeImpl*>(&m.impl());
    if (!impl) throw DendError("marked_mapping_tree expects a mapping tree");
    std::set<std::pair<std::size_t, DendrexId>> marked;
    for (std::size_t n = 0; n <= m.bounds().arity; ++n) {
        if (m.bounds().vertices < 1) break;
        for (const auto& id : m.level(corolla_shape(n))) {
            auto [dpart, lam] = MappingTreeImpl::decode(id);
            auto dm = detail::decode_map(dpart);
            bool all_degenerate = true;
            for (const auto& [l, s] : lam)
                all_degenerate &= impl->algebra().space(dm.at(l)).is_degenerate(1, s);
            if (all_degenerate) marked.insert({n, id});
        }
    }
    return MarkedDendSet(m, std::move(marked));
}

// the fiber of M(A) over a colour c of the tree, as a simplicial set
inline SimpSet mapping_tree_fiber(const DendSet& m, const Edge& c, std::size_t dim_bound) {
    SimpSet out(dim_bound);
    std::vector<Tree> lin;
    for (std::size_t n = 0; n <= dim_bound; ++n) lin.push_back(canonical_shape(linear_tree(n)));
    auto constant_at_c = [&](const DendrexId& id) {
        auto [dpart, lam] = MappingTreeImpl::decode(id);
        for (const auto& [e, img] : detail::decode_map(dpart))
            if (img != c) return false;
        return true;
    };
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& id : m.level(lin[n]))
            if (constant_at_c(id)) out.add_simplex(n, id);
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& id : out.simplices(n)) {
            if (n > 0)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<std::size_t> delta;
                    for (std::size_t j = 0; j <= n; ++j)
                        if (j != i) delta.push_back(j);
                    out.set_face(n, id, i, m.restrict(linear_morphism(lin[n - 1], lin[n], delta), id));
                }
            if (n + 1 <= dim_bound)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<std::size_t> sg;
                    for (std::size_t j = 0; j <= n; ++j) {
                        sg.push_back(j);
                        if (j == i) sg.push_back(j);
                    }
                    out.set_degeneracy(n, id, i,
                                       m.restrict(linear_morphism(lin[n + 1], lin[n], sg), id));
                }
        }
    return out;
}

}  // namespace dendro

#endif  // DENDRO_MAPTREE_HPP_
