/* tau.hpp -- the left adjoint tau_d on bounded dendroidal sets.
 *
 * Generators are the corolla dendrices; every 2-vertex dendrex imposes the
 * relation "inner face = composite of the two vertex corollas".  Composition
 * is resolved by folding these rewrite rules; conflicting rules merge
 * generators (a bounded union-find closure).  When some composite of
 * generators has no resolving rule the bounded word problem has escaped the
 * nerve-like regime and the construction fails loudly rather than truncating.
 */

#ifndef DENDRO_TAU_HPP_
#define DENDRO_TAU_HPP_

#include "dendro/dendset.hpp"
#include "dendro/marked.hpp"

namespace dendro {

namespace detail {

struct TauBuilder {
    const DendSet& x;
    std::size_t budget;

    std::map<std::string, std::size_t> gen_index;  // corolla dendrex id -> index
    std::vector<std::pair<std::size_t, DendrexId>> gens;  // (arity, dendrex id)
    std::vector<Signature> sigs;
    std::vector<std::size_t> uf;
    // sigma actions between generators, by index
    std::map<std::pair<std::size_t, Perm>, std::size_t> sigma_table;
    // rules: (parent, position, child) -> (result gen, alignment perm)
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::pair<std::size_t, Perm>>
        rules;

    std::size_t find(std::size_t a) {
        while (uf[a] != a) a = uf[a] = uf[uf[a]];
        return a;
    }

    // union respecting the symmetric actions: merging two generators merges
    // their whole orbits
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        uf[std::max(a, b)] = std::min(a, b);
        for (const auto& perm : all_perms(sigs[a].arity()))
            unite(sigma_table.at({a, perm}), sigma_table.at({b, perm}));
    }

    static Perm inverse_perm(const Perm& p) {
        Perm q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = i;
        return q;
    }

    // leaf edges of the canonical corolla, sorted (the slot order of gens)
    static std::vector<Edge> corolla_slots(std::size_t n) {
        std::vector<Edge> out;
        const Tree& c = corolla_shape(n);
        for (const auto& e : c.edges())
            if (c.is_leaf(e)) out.push_back(e);
        return out;
    }

    void collect_generators() {
        for (std::size_t n = 0; n <= x.bounds().arity; ++n) {
            auto slots = corolla_slots(n);
            for (const auto& id : x.level(corolla_shape(n))) {
                Signature sig;
                for (const auto& l : slots) sig.inputs.push_back(x.colour_at(corolla_shape(n), id, l));
                sig.output = x.colour_at(corolla_shape(n), id, corolla_shape(n).root());
                gen_index[id] = gens.size();
                gens.push_back({n, id});
                sigs.push_back(std::move(sig));
            }
        }
        uf.resize(gens.size());
        for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = i;
        // sigma: restriction along the automorphism realizing each slot permutation
        for (std::size_t g = 0; g < gens.size(); ++g) {
            auto [n, id] = gens[g];
            auto slots = corolla_slots(n);
            const Tree& c = corolla_shape(n);
            for (const auto& perm : all_perms(n)) {
                std::map<Edge, Edge> em;
                em[c.root()] = c.root();
                for (std::size_t i = 0; i < n; ++i) em[slots[i]] = slots[perm[i]];
                DendrexId tw = x.restrict(TreeMorphism(c, c, em, false), id);
                sigma_table[{g, perm}] = gen_index.at(tw);
            }
        }
    }

    std::size_t sigma_of(std::size_t g, const Perm& p) { return find(sigma_table.at({find(g), p})); }

    // record a rule, merging generators on conflict
    void add_rule(std::size_t parent, std::size_t pos, std::size_t child, std::size_t result,
                  const Perm& align) {
        auto key = std::make_tuple(find(parent), pos, find(child));
        auto it = rules.find(key);
        if (it == rules.end()) {
            rules[key] = {find(result), align};
            return;
        }
        auto [old, old_align] = it->second;
        // both twists describe the same composite: align and merge
        std::size_t lhs = sigma_of(result, align);
        std::size_t rhs = sigma_of(old, old_align);
        if (lhs != rhs) unite(lhs, rhs);
    }

    void collect_relations() {
        for (const auto& shape : trees_with_vertices(2, x.bounds().arity)) {
            if (shape.max_arity() > x.bounds().arity) continue;
            // identify the two vertices: w at the root, v above the inner edge
            const TreeVertex* w = shape.vertex_above(shape.root());
            Edge inner = shape.inner_edges().front();
            const TreeVertex* v = shape.vertex_above(inner);
            std::size_t m = w->inputs.size(), n = v->inputs.size();
            if (m + n - 1 > x.bounds().arity) continue;
            // corolla inclusions with canonicalized sources
            TreeVertex wc{w->inputs, w->output};
            Tree wt(w->output, {wc});
            TreeVertex vc{v->inputs, v->output};
            Tree vt(v->output, {vc});
            std::map<Edge, Edge> wm, vm;
            for (const auto& e : wt.edges()) wm[e] = e;
            for (const auto& e : vt.edges()) vm[e] = e;
            TreeMorphism w_inc(wt, shape, wm, false);
            TreeMorphism v_inc(vt, shape, vm, false);
            // the inner face as a morphism
            Tree contracted = contract_inner_edge(shape, inner);
            std::map<Edge, Edge> cm;
            for (const auto& e : contracted.edges()) cm[e] = e;
            TreeMorphism c_inc(contracted, shape, cm, false);

            // slot bookkeeping through the canonical relabellings
            auto slot_order = [&](const Tree& src) {
                auto rel = canonical_form(src).relabelling;
                auto slots = corolla_slots(src.leaves().size());
                std::map<Edge, std::size_t> pos_of;
                for (std::size_t i = 0; i < slots.size(); ++i) pos_of[slots[i]] = i;
                // original leaf -> canonical slot position
                std::map<Edge, std::size_t> out;
                for (const auto& l : src.leaves()) out[l] = pos_of.at(rel.at(l));
                return out;
            };
            auto w_slots = slot_order(wt);   // edges of w (inputs) -> slot of the parent gen
            auto v_slots = slot_order(vt);   // edges of v -> slot of the child gen
            auto c_slots = slot_order(contracted);
            std::size_t inner_pos = w_slots.at(inner);
            // the natural order of the composite: parent slots with the child
            // spliced at inner_pos
            std::vector<Edge> natural(m + n - 1);
            for (const auto& [e, s] : w_slots) {
                if (e == inner) continue;
                std::size_t shifted = s < inner_pos ? s : s + n - 1;
                natural[shifted] = e;
            }
            for (const auto& [e, s] : v_slots) natural[inner_pos + s] = e;
            // aligning permutation: composite slot k holds natural[k], which sits
            // at c_slots[natural[k]] in the contracted generator
            Perm align(m + n - 1);
            for (std::size_t k2 = 0; k2 < natural.size(); ++k2) align[k2] = c_slots.at(natural[k2]);
            // align as stored maps result slots to natural positions: we need
            // sigma(result, pi) with pi[k] = c-slot of the edge at natural k
            for (const auto& xid : x.level(shape)) {
                std::size_t parent = gen_index.at(x.restrict(w_inc, xid));
                std::size_t child = gen_index.at(x.restrict(v_inc, xid));
                std::size_t result = gen_index.at(x.restrict(c_inc, xid));
                add_rule(parent, inner_pos, child, result, align);
            }
        }
    }

    // Resolve a single partial composition through the rules.  Rules are
    // recorded against the slot orders of the stored corolla restrictions, so
    // lookups search across the symmetric twists of the parent and translate
    // the alignment back by the equivariance axiom.
    std::optional<std::pair<std::size_t, Perm>> resolve(std::size_t parent, std::size_t pos,
                                                        std::size_t child) {
        parent = find(parent);
        child = find(child);
        if (sigs[child].arity() == 1 && is_unit_gen(child))
            return std::make_pair(parent, identity_perm(sigs[parent].arity()));
        if (is_unit_gen(parent)) return std::make_pair(child, identity_perm(sigs[child].arity()));
        for (const auto& pi : all_perms(sigs[parent].arity())) {
            std::size_t p = sigma_of(parent, inverse_perm(pi));
            auto it = rules.find({p, pi[pos], child});
            if (it == rules.end()) continue;
            const auto& [g, align] = it->second;
            std::vector<std::size_t> sizes(sigs[parent].arity(), 1);
            sizes[pi[pos]] = sigs[child].arity();
            return std::make_pair(find(g), compose_perms(align, block_perm(pi, sizes)));
        }
        return std::nullopt;
    }

    std::map<std::size_t, bool> unit_memo;
    bool is_unit_gen(std::size_t g) {
        g = find(g);
        auto it = unit_memo.find(g);
        if (it != unit_memo.end()) return it->second;
        bool unit = false;
        if (sigs[g].arity() == 1) {
            // degenerate 1-corollas are the units
            for (const auto& colour : x.level(eta("c")))
                unit |= find(gen_index.at(degenerate_one_corolla(x, colour))) == g;
        }
        unit_memo[g] = unit;
        return unit;
    }

    FiniteOperad finish() {
        // iterate rule normalization until the union-find stabilizes
        for (std::size_t round = 0; round < budget; ++round) {
            std::size_t before = 0;
            for (std::size_t i = 0; i < uf.size(); ++i) before += find(i);
            auto old_rules = rules;
            rules.clear();
            unit_memo.clear();
            for (const auto& [key, val] : old_rules)
                add_rule(std::get<0>(key), std::get<1>(key), std::get<2>(key), val.first,
                         val.second);
            std::size_t after = 0;
            for (std::size_t i = 0; i < uf.size(); ++i) after += find(i);
            if (before == after) break;
            if (round + 1 == budget)
                throw OperadError("tau_d: relation closure did not stabilize within the budget");
        }
        FiniteOperad p;
        auto name = [&](std::size_t g) { return "t" + std::to_string(find(g)); };
        for (const auto& colour : x.level(eta("c"))) p.add_colour(colour);
        std::set<std::size_t> reps;
        for (std::size_t g = 0; g < gens.size(); ++g) reps.insert(find(g));
        for (auto g : reps) p.add_op(name(g), sigs[g]);
        for (const auto& colour : x.level(eta("c")))
            p.set_unit(colour, name(gen_index.at(degenerate_one_corolla(x, colour))));
        for (auto g : reps)
            for (const auto& perm : all_perms(sigs[g].arity()))
                p.set_sigma(name(g), perm, name(sigma_of(g, perm)));
        // total composition by right-to-left folding of the rules; composites
        // beyond the arity bound of the presentation truncate the result
        std::size_t ops_built = 0;
        bool truncated = false;
        for (auto f : reps) {
            std::function<void(std::size_t, std::vector<std::size_t>&)> tuples =
                [&](std::size_t i, std::vector<std::size_t>& acc) {
                    if (i == sigs[f].arity()) {
                        std::size_t total = 0;
                        for (auto g : acc) total += sigs[g].arity();
                        if (total > x.bounds().arity) {
                            truncated = true;
                            return;
                        }
                        if (++ops_built > budget * 1000)
                            throw OperadError("tau_d: composition closure exceeded the budget");
                        std::size_t out_gen;
                        Perm out_perm;
                        if (!fold(f, acc, out_gen, out_perm))
                            throw OperadError(
                                "tau_d: a composite of generators has no resolving relation; "
                                "the presentation is not closed within the bound");
                        p.set_composite(name(f), names(acc), name(sigma_of(out_gen, out_perm)));
                        return;
                    }
                    for (auto g : reps)
                        if (sigs[g].output == sigs[f].inputs[i]) {
                            acc.push_back(g);
                            tuples(i + 1, acc);
                            acc.pop_back();
                        }
                };
            std::vector<std::size_t> acc;
            tuples(0, acc);
        }
        if (truncated) p.set_arity_truncation(x.bounds().arity);
        return p;
    }

    std::vector<OpId> names(const std::vector<std::size_t>& gs) {
        std::vector<OpId> out;
        for (auto g : gs) out.push_back("t" + std::to_string(find(g)));
        return out;
    }

    // Fold a full tuple of children into the parent.  The state is
    // sigma(t, rho): slot k of the partial composite is t's slot rho[k].  One
    // step substitutes a child at a state slot via a rule and re-twists by the
    // parent-equivariance axiom.  Children of smaller arity go first so that
    // no intermediate composite exceeds the arity bound of the presentation.
    bool fold(std::size_t parent, const std::vector<std::size_t>& children, std::size_t& out_gen,
              Perm& out_perm) {
        std::size_t t = find(parent);
        Perm rho = identity_perm(sigs[t].arity());
        std::vector<long> shift(children.size(), 0);
        std::vector<bool> processed(children.size(), false);
        for (std::size_t step_i = 0; step_i < children.size(); ++step_i) {
            std::size_t j = children.size();
            for (std::size_t cand = 0; cand < children.size(); ++cand) {
                if (processed[cand]) continue;
                if (j == children.size() ||
                    sigs[find(children[cand])].arity() < sigs[find(children[j])].arity())
                    j = cand;
            }
            std::size_t child = find(children[j]);
            std::size_t pos = static_cast<std::size_t>(static_cast<long>(j) + shift[j]);
            auto step = resolve(t, rho[pos], child);
            if (!step) return false;
            const auto& [g2, align] = *step;
            std::vector<std::size_t> sizes(sigs[t].arity(), 1);
            sizes[rho[pos]] = sigs[child].arity();
            Perm blockp = block_perm(rho, sizes);
            t = g2;
            rho = compose_perms(align, blockp);
            processed[j] = true;
            for (std::size_t k = j + 1; k < children.size(); ++k)
                if (!processed[k]) shift[k] += static_cast<long>(sigs[child].arity()) - 1;
        }
        out_gen = t;
        out_perm = rho;
        return true;
    }
};

}  // namespace detail

inline FiniteOperad tau_d(const DendSet& x, std::size_t budget = 100) {
    detail::TauBuilder b{x, budget, {}, {}, {}, {}, {}, {}, {}};
    b.collect_generators();
    b.collect_relations();
    return b.finish();
}

}  // namespace dendro

#endif  // DENDRO_TAU_HPP_
