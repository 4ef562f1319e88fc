/* tensor.hpp -- the Boardman-Vogt tensor product of bounded dendroidal sets.
 *
 * A Q-dendrex of Omega[S] tensor Omega[T] is an edge labelling of Q by pairs
 * (edge of S, edge of T) that factors through a shuffle; by the Boardman-Vogt
 * relation the labelling determines the dendrex, so gluing distinct shuffles
 * is by matching labelled subtrees.  Factors may be representables or
 * subobjects of representables (cells are then monomorphisms, i.e. subtrees);
 * coproducts distribute.  The levels are unions over pairs of cells of the
 * labellings pulled back from the shuffles of the two subtrees.
 */

#ifndef DENDRO_TENSOR_HPP_
#define DENDRO_TENSOR_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dendro/dendset.hpp"
#include "dendro/marked.hpp"
#include "dendro/shuffle.hpp"
#include "dendro/simplicial.hpp"

namespace dendro {

namespace detail {

// the image of a monomorphism as a subtree carrying the ambient edge names
inline Tree image_tree(const TreeMorphism& mono) {
    std::vector<TreeVertex> vs;
    for (const auto& v : mono.source().vertices()) {
        TreeVertex w;
        w.output = mono(v.output);
        for (const auto& in : v.inputs) w.inputs.push_back(mono(in));
        vs.push_back(std::move(w));
    }
    return Tree(mono(mono.source().root()), std::move(vs));
}

// a factor of a tensor: a subobject of a representable, with its ambient tree
struct TensorFactor {
    DendSet object;
    Tree ambient;
    std::vector<Tree> cell_subtrees;  // images of the nondegenerate cells
};

inline TensorFactor tensor_factor(const DendSet& x) {
    const DendSetImpl* impl = &x.impl();
    const Tree* ambient = nullptr;
    if (const auto* rep = dynamic_cast<const RepresentableImpl*>(impl)) {
        ambient = &rep->representing_tree();
    } else if (const auto* sub = dynamic_cast<const SubobjectImpl*>(impl)) {
        const auto* rep2 = dynamic_cast<const RepresentableImpl*>(&sub->ambient().impl());
        if (rep2) ambient = &rep2->representing_tree();
    }
    if (!ambient)
        throw DendError(
            "tensor factors must be representables or subobjects of representables "
            "(coproducts distribute)");
    check_shuffle_factor(*ambient);
    TensorFactor f{x, *ambient, {}};
    for (const auto& cell : nondegenerate_cells(x)) {
        TreeMorphism m = morphism_of_dendrex(cell.shape, *ambient, cell.id);
        if (!m.is_mono())
            throw DendError("nondegenerate dendrex of a subobject of a representable "
                            "must be a monomorphism");
        f.cell_subtrees.push_back(image_tree(m));
    }
    return f;
}

}  // namespace detail

// labellings are encoded like dendrex ids: "q-edge>s,t;..."
class TensorImpl final : public DendSetImpl {
public:
    TensorImpl(detail::TensorFactor a, detail::TensorFactor b, Bounds bd)
        : a_(std::move(a)), b_(std::move(b)), bounds_(bd) {}

    Bounds bounds() const override { return bounds_; }

    std::vector<DendrexId> level(const Tree& shape) const override {
        std::set<DendrexId> out;
        for (const auto& sa : a_.cell_subtrees)
            for (const auto& sb : b_.cell_subtrees)
                for (const auto& sh : shuffles(sa, sb))
                    for (const auto& phi : hom_set(shape, sh.tree)) {
                        std::map<std::string, std::string> lab;
                        for (const auto& e : shape.edges()) lab[e] = phi(e);
                        out.insert(detail::encode_map(lab));
                    }
        return {out.begin(), out.end()};
    }

    DendrexId restrict(const TreeMorphism& m, const DendrexId& id) const override {
        auto lab = detail::decode_map(id);
        std::map<std::string, std::string> out;
        for (const auto& e : m.source().edges()) out[e] = lab.at(m(e));
        return detail::encode_map(out);
    }

    const Tree& left_tree() const { return a_.ambient; }
    const Tree& right_tree() const { return b_.ambient; }

private:
    detail::TensorFactor a_, b_;
    Bounds bounds_;
};

// the two components of a labelled tensor dendrex
inline std::map<Edge, Edge> tensor_component(const DendrexId& id, bool left) {
    std::map<Edge, Edge> out;
    for (const auto& [e, pr] : detail::decode_map(id)) {
        auto [s, t] = split_pair_edge(pr);
        out[e] = left ? s : t;
    }
    return out;
}

inline DendSet tensor(const DendSet& x, const DendSet& y, Bounds b) {
    if (const auto* cx = dynamic_cast<const CoproductImpl*>(&x.impl()))
        return coproduct(tensor(cx->left(), y, b), tensor(cx->right(), y, b));
    if (const auto* cy = dynamic_cast<const CoproductImpl*>(&y.impl()))
        return coproduct(tensor(x, cy->left(), b), tensor(x, cy->right(), b));
    return DendSet(
        std::make_shared<TensorImpl>(detail::tensor_factor(x), detail::tensor_factor(y), b));
}

// inclusion induced on tensors by subobject inclusions of the factors
inline DendMap tensor_inclusion(const DendSet& small, const DendSet& big) {
    return DendMap(small, big, [](const Tree&, const DendrexId& id) { return id; });
}

// marked tensor: marked corollas are the corollas of the tensor of the
// closures of the two marking sets
inline MarkedDendSet marked_tensor(const MarkedDendSet& x, const MarkedDendSet& y, Bounds b) {
    DendSet full = tensor(x.underlying(), y.underlying(), b);
    auto closure = [](const MarkedDendSet& m) {
        std::vector<Cell> gens;
        for (const auto& [n, id] : m.marked_set()) gens.push_back({corolla_shape(n), id});
        return subpresheaf(m.underlying(), gens);
    };
    DendSet sub = tensor(closure(x), closure(y), b);
    std::set<std::pair<std::size_t, DendrexId>> marked;
    for (std::size_t n = 0; n <= b.arity; ++n)
        for (const auto& id : sub.level(corolla_shape(n))) marked.insert({n, id});
    return MarkedDendSet(full, std::move(marked));
}

}  // namespace dendro

#endif  // DENDRO_TENSOR_HPP_
