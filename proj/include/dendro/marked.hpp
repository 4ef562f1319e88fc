/* marked.hpp -- marked dendroidal sets.
 *
 * A marking selects corolla dendrices (all arities); it must contain every
 * degenerate 1-corolla and be closed under the symmetric group actions, which
 * is asserted on construction.
 */

#ifndef DENDRO_MARKED_HPP_
#define DENDRO_MARKED_HPP_

#include "dendro/dendset.hpp"

namespace dendro {

inline const Tree& corolla_shape(std::size_t n) { return canonical_shape(corolla(n)); }

// the degenerate 1-corolla on a colour: restriction along the collapse L_1 -> eta
inline DendrexId degenerate_one_corolla(const DendSet& x, const DendrexId& colour) {
    const Tree& c1 = corolla_shape(1);
    TreeMorphism collapse = collapse_unary(c1, c1.vertices()[0]);
    return x.restrict(collapse, colour);
}

class MarkedDendSet {
public:
    MarkedDendSet() = default;
    MarkedDendSet(DendSet underlying, std::set<std::pair<std::size_t, DendrexId>> marked,
                  bool check = true)
        : x_(std::move(underlying)), marked_(std::move(marked)) {
        if (check) validate();
    }

    const DendSet& underlying() const { return x_; }

    bool marked(std::size_t arity, const DendrexId& corolla_id) const {
        return marked_.count({arity, corolla_id}) > 0;
    }
    const std::set<std::pair<std::size_t, DendrexId>>& marked_set() const { return marked_; }

    std::size_t marked_count() const { return marked_.size(); }

private:
    void validate() const {
        for (const auto& [n, id] : marked_) {
            if (n > x_.bounds().arity) throw DendError("marked corolla arity exceeds the bound");
            if (!x_.contains(corolla_shape(n), id))
                throw DendError("marked id " + id + " is not a corolla dendrex");
            for (const auto& o : aut_orbit(x_, corolla_shape(n), id))
                if (!marked_.count({n, o}))
                    throw DendError("marking is not closed under the symmetric action: " + id);
        }
        for (const auto& colour : x_.level(eta("c")))
            if (!marked_.count({1, degenerate_one_corolla(x_, colour)}))
                throw DendError("degenerate 1-corolla at " + colour + " is not marked");
    }

    DendSet x_;
    std::set<std::pair<std::size_t, DendrexId>> marked_;
};

// minimal marking: only the degenerate 1-corollas
inline MarkedDendSet flat(const DendSet& x) {
    std::set<std::pair<std::size_t, DendrexId>> marked;
    for (const auto& colour : x.level(eta("c")))
        marked.insert({1, degenerate_one_corolla(x, colour)});
    return MarkedDendSet(x, std::move(marked), false);
}

// maximal marking: every corolla dendrex
inline MarkedDendSet sharp(const DendSet& x) {
    std::set<std::pair<std::size_t, DendrexId>> marked;
    for (std::size_t n = 0; n <= x.bounds().arity; ++n)
        for (const auto& id : x.level(corolla_shape(n))) marked.insert({n, id});
    return MarkedDendSet(x, std::move(marked), false);
}

// extend a base marking with extra corollas, closing under the symmetric action
inline MarkedDendSet with_marks(const DendSet& x,
                                const std::vector<std::pair<std::size_t, DendrexId>>& extra) {
    MarkedDendSet base = flat(x);
    auto marked = base.marked_set();
    for (const auto& [n, id] : extra)
        for (const auto& o : aut_orbit(x, corolla_shape(n), id)) marked.insert({n, o});
    return MarkedDendSet(x, std::move(marked));
}

class MarkedDendMap {
public:
    MarkedDendMap() = default;
    MarkedDendMap(MarkedDendSet source, MarkedDendSet target, DendMap map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

    const MarkedDendSet& source() const { return source_; }
    const MarkedDendSet& target() const { return target_; }
    const DendMap& map() const { return map_; }

    bool preserves_markings(std::string* why = nullptr) const {
        std::size_t a = std::min(source_.underlying().bounds().arity,
                                 target_.underlying().bounds().arity);
        for (std::size_t n = 0; n <= a; ++n)
            for (const auto& [m, id] : source_.marked_set())
                if (m == n && !target_.marked(n, map_(corolla_shape(n), id))) {
                    if (why) *why = "image of marked corolla " + id + " is unmarked";
                    return false;
                }
        return true;
    }

private:
    MarkedDendSet source_, target_;
    DendMap map_;
};

}  // namespace dendro

#endif  // DENDRO_MARKED_HPP_
