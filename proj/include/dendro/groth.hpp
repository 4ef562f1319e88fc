/* groth.hpp -- the Grothendieck construction for Set operads and its
 * quasi-inverse.
 *
 * The total operad of a Cat-valued algebra has colours the pairs (base
 * colour, object); an operation over sigma is a morphism F(sigma)(b...) -> b.
 * The straightening of p : X -> S assigns to s the category p/s: objects are
 * Sigma-orbits of (tuple of X-colours, operation of S into s); morphisms are
 * equivalence classes of tuples of X-operations together with an assignment
 * of source positions to their input slots, taken up to re-presentation of
 * both endpoints and per-operation twists.  Cleavages choose coCartesian
 * lifts one Sigma-orbit at a time; Phi rebuilds the fiberwise algebra with
 * comparison isomorphisms given by unique vertical factorizations.
 */

#ifndef DENDRO_GROTH_HPP_
#define DENDRO_GROTH_HPP_

#include "dendro/algebra.hpp"
#include "dendro/lifting.hpp"

namespace dendro {

// ---------------------------------------------------------------------------
// corepresentable Set algebras

namespace detail {
inline std::string orbit_key_op(const FiniteOperad& s, const OpId& op) {
    OpId best = op;
    for (const auto& perm : all_perms(s.arity(op))) best = std::min(best, s.sigma(op, perm));
    return best;
}

template <typename Fn>
inline void for_tuples_of(const std::vector<std::vector<std::string>>& pools, Fn&& fn) {
    std::vector<std::string> cur;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == pools.size()) {
            fn(cur);
            return;
        }
        for (const auto& v : pools[i]) {
            cur.push_back(v);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
}
}  // namespace detail

// the free algebra at colour `at` on one generator: c -> (coprod_n S(at..at; c))/Sigma_n
inline SetAlgebra corepresentable(const FiniteOperad& s, const Colour& at) {
    if (s.arity_truncation())
        throw AlgebraError("corepresentable algebras need an untruncated operad");
    SetAlgebra f(&s);
    for (const auto& c : s.colours()) {
        std::set<std::string> elems;
        for (const auto& [sig, ops] : s.op_table()) {
            if (sig.output != c) continue;
            bool all_at = true;
            for (const auto& in : sig.inputs) all_at &= in == at;
            if (!all_at) continue;
            for (const auto& op : ops) elems.insert(detail::orbit_key_op(s, op));
        }
        f.set_value(c, {elems.begin(), elems.end()});
    }
    for (const auto& op : s.all_ops()) {
        const auto& sig = s.signature(op);
        std::vector<std::vector<std::string>> pools;
        for (const auto& c : sig.inputs) pools.push_back(f.value(c));
        detail::for_tuples_of(pools, [&](const std::vector<std::string>& args) {
            f.set_action(op, args, detail::orbit_key_op(s, s.compose(op, args)));
        });
    }
    return f;
}

// the parametrized corepresentable s(-) x_Sigma X for a finite set X
inline SetAlgebra corepresentable_times(const FiniteOperad& s, const Colour& at,
                                        const std::vector<std::string>& xs) {
    if (s.arity_truncation())
        throw AlgebraError("corepresentable algebras need an untruncated operad");
    SetAlgebra f(&s);
    auto orbit_key = [&](const OpId& op, const std::vector<std::string>& tuple) {
        std::pair<OpId, std::vector<std::string>> best{op, tuple};
        for (const auto& perm : all_perms(s.arity(op)))
            best = std::min(best, {s.sigma(op, perm), apply_perm(perm, tuple)});
        std::string key = best.first + "@";
        for (const auto& x : best.second) key += x + ",";
        return key;
    };
    std::map<std::string, std::pair<OpId, std::vector<std::string>>> reps;
    for (const auto& c : s.colours()) {
        std::set<std::string> elems;
        for (const auto& [sig, ops] : s.op_table()) {
            if (sig.output != c) continue;
            bool all_at = true;
            for (const auto& in : sig.inputs) all_at &= in == at;
            if (!all_at) continue;
            for (const auto& op : ops) {
                std::vector<std::vector<std::string>> pools(sig.arity(), xs);
                detail::for_tuples_of(pools, [&](const std::vector<std::string>& t) {
                    std::string key = orbit_key(op, t);
                    elems.insert(key);
                    reps.emplace(key, std::make_pair(op, t));
                });
            }
        }
        f.set_value(c, {elems.begin(), elems.end()});
    }
    for (const auto& op : s.all_ops()) {
        const auto& sig = s.signature(op);
        std::vector<std::vector<std::string>> pools;
        for (const auto& c : sig.inputs) pools.push_back(f.value(c));
        detail::for_tuples_of(pools, [&](const std::vector<std::string>& args) {
            std::vector<OpId> children;
            std::vector<std::string> tuple;
            for (const auto& a : args) {
                const auto& [cop, ct] = reps.at(a);
                children.push_back(cop);
                tuple.insert(tuple.end(), ct.begin(), ct.end());
            }
            f.set_action(op, args, orbit_key(s.compose(op, children), tuple));
        });
    }
    return f;
}

// ---------------------------------------------------------------------------
// the Grothendieck construction of a strict Cat-valued algebra

inline std::string groth_colour(const Colour& s, const Ob& b) { return s + ":" + b; }
inline std::string groth_op(const OpId& sigma, const std::vector<Ob>& bs, const MorId& f) {
    std::string out = "(" + sigma + "|";
    for (const auto& b : bs) out += b + ",";
    return out + "|" + f + ")";
}

class Grothendieck {
public:
    struct OpData {
        OpId sigma;
        std::vector<Ob> inputs;
        MorId arrow;
    };

    Grothendieck(const FiniteOperad& base, const CatAlgebra& f) : base_(base), f_(f) { build(); }

    const FiniteOperad& total() const { return total_; }
    const FiniteOperad& base() const { return base_; }
    OperadMorphism projection() const { return OperadMorphism{&total_, &base_, colour_proj_, op_proj_}; }
    const OpData& decode(const OpId& op) const { return data_.at(op); }
    const Ob& object_of_colour(const Colour& c) const { return colour_ob_.at(c); }

private:
    void build() {
        for (const auto& s : base_.colours())
            for (const auto& b : f_.category(s).objects()) {
                Colour c = groth_colour(s, b);
                total_.add_colour(c);
                colour_proj_[c] = s;
                colour_ob_[c] = b;
            }
        for (const auto& sigma : base_.all_ops()) {
            const auto& sig = base_.signature(sigma);
            f_.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& bs) {
                Ob mid = f_.act_ob(sigma, bs);
                const FiniteCategory& out_cat = f_.category(sig.output);
                for (const auto& arrow : out_cat.morphisms()) {
                    if (out_cat.source(arrow) != mid) continue;
                    OpId op = groth_op(sigma, bs, arrow);
                    Signature osig;
                    for (std::size_t i = 0; i < bs.size(); ++i)
                        osig.inputs.push_back(groth_colour(sig.inputs[i], bs[i]));
                    osig.output = groth_colour(sig.output, out_cat.target(arrow));
                    total_.add_op(op, osig);
                    data_[op] = {sigma, bs, arrow};
                    op_proj_[op] = sigma;
                }
            });
        }
        for (const auto& s : base_.colours())
            for (const auto& b : f_.category(s).objects())
                total_.set_unit(groth_colour(s, b),
                                groth_op(base_.unit(s), {b}, f_.category(s).identity(b)));
        for (const auto& [op, d] : data_)
            for (const auto& perm : all_perms(d.inputs.size()))
                total_.set_sigma(op, perm,
                                 groth_op(base_.sigma(d.sigma, perm), apply_perm(perm, d.inputs),
                                          d.arrow));
        for (const auto& [op, d] : data_) {
            const auto& sig = total_.signature(op);
            std::vector<OpId> cur;
            detail::composable_tuples(total_, sig.inputs, 0, cur, [&](const std::vector<OpId>& gs) {
                std::vector<OpId> taus;
                std::vector<Ob> cs;
                std::vector<MorId> arrows;
                for (const auto& g : gs) {
                    const auto& gd = data_.at(g);
                    taus.push_back(gd.sigma);
                    cs.insert(cs.end(), gd.inputs.begin(), gd.inputs.end());
                    arrows.push_back(gd.arrow);
                }
                if (!base_.within_truncation(cs.size())) return;
                OpId stau = base_.compose(d.sigma, taus);
                MorId h = f_.category(base_.signature(d.sigma).output)
                              .compose(d.arrow, f_.act_mor(d.sigma, arrows));
                total_.set_composite(op, gs, groth_op(stau, cs, h));
            });
        }
    }

    const FiniteOperad& base_;
    const CatAlgebra& f_;
    FiniteOperad total_;
    std::map<OpId, OpData> data_;
    std::map<Colour, Colour> colour_proj_;
    std::map<Colour, Ob> colour_ob_;
    std::map<OpId, OpId> op_proj_;
};

// ---------------------------------------------------------------------------
// cleavages

// a cleavage: for every operation of the base and lift of its inputs, a
// chosen coCartesian operation, closed under the symmetric actions
class Cleavage {
public:
    Cleavage() = default;
    explicit Cleavage(const OperadMorphism* p) : p_(p) {}

    void set(const OpId& sigma, const std::vector<Colour>& lifts, const OpId& xi) {
        table_[{sigma, lifts}] = xi;
    }
    const OpId& at(const OpId& sigma, const std::vector<Colour>& lifts) const {
        auto it = table_.find({sigma, lifts});
        if (it == table_.end()) throw AlgebraError("cleavage missing at " + sigma);
        return it->second;
    }
    const std::map<std::pair<OpId, std::vector<Colour>>, OpId>& table() const { return table_; }

    bool valid(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        const FiniteOperad& x = *p_->source;
        const FiniteOperad& s = *p_->target;
        for (const auto& [key, xi] : table_) {
            const auto& [sigma, lifts] = key;
            const auto& xsig = x.signature(xi);
            if (xsig.inputs != lifts) return bad("cleavage member has the wrong inputs: " + xi);
            if (p_->at(xi) != sigma) return bad("cleavage member projects wrongly: " + xi);
            if (!cocart_pullback_criterion(*p_, xi).ok)
                return bad("cleavage member is not coCartesian: " + xi);
            for (const auto& perm : all_perms(lifts.size())) {
                auto tw = table_.find({s.sigma(sigma, perm), apply_perm(perm, lifts)});
                if (tw == table_.end() || tw->second != x.sigma(xi, perm))
                    return bad("cleavage is not closed under the symmetric actions at " + xi);
            }
        }
        return true;
    }

private:
    const OperadMorphism* p_ = nullptr;
    std::map<std::pair<OpId, std::vector<Colour>>, OpId> table_;
};

// deterministic cleavage: the lexicographically smallest stabilizer-fixed
// coCartesian lift per Sigma-orbit, propagated along the actions
inline Cleavage choose_cleavage(const OperadMorphism& p, std::string* error = nullptr,
                                bool prefer_largest = false) {
    const FiniteOperad& x = *p.source;
    const FiniteOperad& s = *p.target;
    Cleavage k(&p);
    std::map<OpId, bool> cocart_memo;
    auto cocart = [&](const OpId& op) {
        auto it = cocart_memo.find(op);
        if (it != cocart_memo.end()) return it->second;
        bool ok = cocart_pullback_criterion(p, op).ok;
        cocart_memo.emplace(op, ok);
        return ok;
    };
    std::set<std::pair<OpId, std::vector<Colour>>> done;
    for (const auto& [sig, ops] : s.op_table())
        for (const auto& sigma : ops) {
            std::vector<std::vector<std::string>> pools;
            for (const auto& si : sig.inputs) {
                std::vector<Colour> pool;
                for (const auto& c : x.colours())
                    if (p(c) == si) pool.push_back(c);
                pools.push_back(std::move(pool));
            }
            bool failed = false;
            detail::for_tuples_of(pools, [&](const std::vector<Colour>& lifts) {
                if (failed || done.count({sigma, lifts})) return;
                // cleavages are normalized: units lift to units
                if (s.is_unit(sigma)) {
                    done.insert({sigma, lifts});
                    k.set(sigma, lifts, x.unit(lifts[0]));
                    return;
                }
                // stabilizer of (sigma, lifts)
                std::vector<Perm> stab;
                for (const auto& perm : all_perms(lifts.size()))
                    if (s.sigma(sigma, perm) == sigma && apply_perm(perm, lifts) == lifts)
                        stab.push_back(perm);
                // candidates: stabilizer-fixed coCartesian lifts
                std::vector<OpId> cands;
                for (const auto& [xsig, xops] : x.op_table()) {
                    if (xsig.inputs != lifts) continue;
                    for (const auto& cand : xops) {
                        if (p.at(cand) != sigma || !cocart(cand)) continue;
                        bool fixed = true;
                        for (const auto& perm : stab) fixed &= x.sigma(cand, perm) == cand;
                        if (fixed) cands.push_back(cand);
                    }
                }
                if (cands.empty()) {
                    failed = true;
                    if (error)
                        *error = "no Sigma-closed coCartesian lift of " + sigma + " at (" +
                                 [&] {
                                     std::string t;
                                     for (const auto& l : lifts) t += l + ",";
                                     return t;
                                 }();
                    return;
                }
                std::sort(cands.begin(), cands.end());
                OpId chosen = prefer_largest ? cands.back() : cands.front();
                // propagate along the whole orbit
                for (const auto& perm : all_perms(lifts.size())) {
                    auto key = std::make_pair(s.sigma(sigma, perm), apply_perm(perm, lifts));
                    if (done.insert(key).second) k.set(key.first, key.second, x.sigma(chosen, perm));
                }
            });
            if (failed) return Cleavage(&p);
        }
    return k;
}

// ---------------------------------------------------------------------------
// Phi: the fiberwise algebra of a cleaved opfibered operad

struct PhiResult {
    CatAlgebra algebra;  // fibers with the sigma_! actions (strict skeleton)
    // comparison isomorphisms gamma_{sigma,taus} at each object tuple: the
    // unique vertical isomorphism (sigma o tau)_! => sigma_! o (tau_i)_!
    std::map<std::tuple<OpId, std::vector<OpId>, std::vector<Ob>>, MorId> comparisons;
};

namespace detail {
// the unique vertical unary operation g with g o along == to, if any
inline std::optional<OpId> unique_vertical_fill(const OperadMorphism& p, const OpId& along,
                                                const OpId& to) {
    const FiniteOperad& x = *p.source;
    const FiniteOperad& s = *p.target;
    const Colour& from_c = x.signature(along).output;
    const Colour& to_c = x.signature(to).output;
    std::optional<OpId> found;
    for (const auto& [sig, ops] : x.op_table()) {
        if (sig.arity() != 1 || sig.inputs[0] != from_c || sig.output != to_c) continue;
        for (const auto& g : ops) {
            if (p.at(g) != s.unit(p(to_c))) continue;
            if (!x.has_composite(g, {along}) || x.compose(g, {along}) != to) continue;
            if (found) return std::nullopt;  // not unique
            found = g;
        }
    }
    return found;
}
}  // namespace detail

inline PhiResult phi(const OperadMorphism& p, const Cleavage& k) {
    const FiniteOperad& x = *p.source;
    const FiniteOperad& s = *p.target;
    PhiResult out;
    out.algebra = CatAlgebra(&s);

    // fibers: colours of X over s, unary operations over the unit
    for (const auto& sc : s.colours()) {
        FiniteCategory fib;
        for (const auto& c : x.colours())
            if (p(c) == sc) fib.add_object(c);
        for (const auto& [sig, ops] : x.op_table()) {
            if (sig.arity() != 1 || p(sig.inputs[0]) != sc || p(sig.output) != sc) continue;
            for (const auto& f : ops)
                if (p.at(f) == s.unit(sc)) fib.add_morphism(f, sig.inputs[0], sig.output);
        }
        for (const auto& c : fib.objects()) fib.set_identity(c, x.unit(c));
        for (const auto& f : fib.morphisms())
            for (const auto& g : fib.morphisms())
                if (fib.source(g) == fib.target(f)) fib.set_composite(g, f, x.compose(g, {f}));
        out.algebra.set_category(sc, std::move(fib));
    }

    // sigma_!: objects through the cleavage, morphisms through unique fills
    for (const auto& sigma : s.all_ops()) {
        const auto& sig = s.signature(sigma);
        out.algebra.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
            std::vector<Colour> lifts(objs.begin(), objs.end());
            OpId xi = k.at(sigma, lifts);
            out.algebra.set_object_action(sigma, objs, x.signature(xi).output);
        });
        out.algebra.for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            std::vector<Colour> src, dst;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const auto& fib = out.algebra.category(sig.inputs[i]);
                src.push_back(fib.source(ms[i]));
                dst.push_back(fib.target(ms[i]));
            }
            OpId xi_src = k.at(sigma, src);
            OpId xi_dst = k.at(sigma, dst);
            OpId composite = x.compose(xi_dst, ms);
            auto g = detail::unique_vertical_fill(p, xi_src, composite);
            if (!g)
                throw AlgebraError("unique vertical fill failed; cleavage member at " + sigma +
                                   " is not coCartesian");
            out.algebra.set_morphism_action(sigma, ms, *g);
        });
    }

    // comparison isomorphisms
    for (const auto& sigma : s.all_ops()) {
        const auto& sig = s.signature(sigma);
        std::vector<OpId> cur;
        detail::composable_tuples(s, sig.inputs, 0, cur, [&](const std::vector<OpId>& taus) {
            std::size_t total = 0;
            for (const auto& t : taus) total += s.arity(t);
            if (!s.within_truncation(total)) return;
            OpId stau = s.compose(sigma, taus);
            std::vector<Colour> all_inputs = s.signature(stau).inputs;
            out.algebra.for_object_tuples(all_inputs, [&](const std::vector<Ob>& objs) {
                OpId direct = k.at(stau, std::vector<Colour>(objs.begin(), objs.end()));
                std::vector<OpId> step;
                std::vector<Colour> mids;
                std::size_t off = 0;
                for (const auto& tau : taus) {
                    std::vector<Colour> part(objs.begin() + off, objs.begin() + off + s.arity(tau));
                    OpId xt = k.at(tau, part);
                    step.push_back(xt);
                    mids.push_back(x.signature(xt).output);
                    off += s.arity(tau);
                }
                OpId outer = k.at(sigma, mids);
                OpId composite = x.compose(outer, step);
                auto h = detail::unique_vertical_fill(p, direct, composite);
                if (!h) throw AlgebraError("comparison isomorphism missing at " + sigma);
                out.comparisons[{sigma, taus, objs}] = *h;
            });
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// round trips

// Rebuild the total operad of the cleaved data: colours are pairs (s, object
// of the fiber), operations over sigma are fiber morphisms out of the
// cleavage codomain, and composition corrects the cleavage mismatch by the
// comparison isomorphisms.  This realizes the Grothendieck construction of
// the weak algebra Phi(p).
struct CleavedGroth {
    FiniteOperad total;
    std::map<OpId, Grothendieck::OpData> data;
    std::map<Colour, Colour> colour_proj;
    std::map<OpId, OpId> op_proj;
};

inline CleavedGroth groth_of_cleaved(const OperadMorphism& p, const Cleavage& k,
                                     const PhiResult& ph) {
    const FiniteOperad& x = *p.source;
    const FiniteOperad& s = *p.target;
    CleavedGroth out;
    for (const auto& sc : s.colours())
        for (const auto& b : ph.algebra.category(sc).objects()) {
            Colour c = groth_colour(sc, b);
            out.total.add_colour(c);
            out.colour_proj[c] = sc;
        }
    for (const auto& sigma : s.all_ops()) {
        const auto& sig = s.signature(sigma);
        ph.algebra.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& bs) {
            Ob mid = ph.algebra.act_ob(sigma, bs);
            const FiniteCategory& out_cat = ph.algebra.category(sig.output);
            for (const auto& arrow : out_cat.morphisms()) {
                if (out_cat.source(arrow) != mid) continue;
                OpId op = groth_op(sigma, bs, arrow);
                Signature osig;
                for (std::size_t i = 0; i < bs.size(); ++i)
                    osig.inputs.push_back(groth_colour(sig.inputs[i], bs[i]));
                osig.output = groth_colour(sig.output, out_cat.target(arrow));
                out.total.add_op(op, osig);
                out.data[op] = {sigma, bs, arrow};
                out.op_proj[op] = sigma;
            }
        });
    }
    for (const auto& sc : s.colours())
        for (const auto& b : ph.algebra.category(sc).objects())
            out.total.set_unit(groth_colour(sc, b),
                               groth_op(s.unit(sc), {b}, ph.algebra.category(sc).identity(b)));
    for (const auto& [op, d] : out.data)
        for (const auto& perm : all_perms(d.inputs.size()))
            out.total.set_sigma(op, perm,
                                groth_op(s.sigma(d.sigma, perm), apply_perm(perm, d.inputs),
                                         d.arrow));
    for (const auto& [op, d] : out.data) {
        const auto& sig = out.total.signature(op);
        std::vector<OpId> cur;
        detail::composable_tuples(out.total, sig.inputs, 0, cur, [&](const std::vector<OpId>& gs) {
            std::vector<OpId> taus;
            std::vector<Ob> cs;
            std::vector<MorId> arrows;
            for (const auto& g : gs) {
                const auto& gd = out.data.at(g);
                taus.push_back(gd.sigma);
                cs.insert(cs.end(), gd.inputs.begin(), gd.inputs.end());
                arrows.push_back(gd.arrow);
            }
            if (!s.within_truncation(cs.size())) return;
            OpId stau = s.compose(d.sigma, taus);
            const FiniteCategory& out_cat = ph.algebra.category(s.signature(d.sigma).output);
            MorId gamma = ph.comparisons.at({d.sigma, taus, cs});
            MorId h = out_cat.compose(d.arrow,
                                      out_cat.compose(ph.algebra.act_mor(d.sigma, arrows), gamma));
            out.total.set_composite(op, gs, groth_op(stau, cs, h));
        });
    }
    return out;
}

// the counit: (sigma, b..., f) -> f o (cleavage lift); an isomorphism of
// operads over S by the unique coCartesian-then-vertical factorization
struct CounitCheck {
    bool ok = true;
    std::string why;
};

inline CounitCheck counit_check(const OperadMorphism& p, const Cleavage& k, const PhiResult& ph) {
    const FiniteOperad& x = *p.source;
    CounitCheck out;
    CleavedGroth g = groth_of_cleaved(p, k, ph);
    // the fiber objects are colours of X: peel off the base-colour prefix
    std::map<Colour, Colour> cmap;
    for (const auto& c : g.total.colours()) cmap[c] = c.substr(g.colour_proj.at(c).size() + 1);
    if (cmap.size() != x.colours().size()) {
        out.ok = false;
        out.why = "colour counts differ";
        return out;
    }
    OperadMorphism eps{&g.total, &x, cmap, {}};
    for (const auto& [op, d] : g.data) {
        std::vector<Colour> lifts;
        for (const auto& b : d.inputs) lifts.push_back(b);
        OpId tilde = k.at(d.sigma, lifts);
        eps.op_map[op] = x.compose(d.arrow, {tilde});
    }
    std::string why;
    if (!eps.valid(&why)) {
        out.ok = false;
        out.why = "counit is not a morphism: " + why;
        return out;
    }
    std::set<OpId> image;
    for (const auto& [a, b] : eps.op_map) image.insert(b);
    if (image.size() != eps.op_map.size() || image.size() != x.op_count()) {
        out.ok = false;
        out.why = "counit is not a bijection on operations";
        return out;
    }
    for (const auto& [a, b] : eps.op_map)
        if (p.at(b) != g.op_proj.at(a)) {
            out.ok = false;
            out.why = "counit does not live over the base";
            return out;
        }
    return out;
}

// the canonical cleavage of a Grothendieck construction: the operations (sigma, id)
inline Cleavage canonical_cleavage(const Grothendieck& g, const OperadMorphism& proj,
                                   const CatAlgebra& f) {
    Cleavage k(&proj);
    const FiniteOperad& s = g.base();
    for (const auto& op : g.total().all_ops()) {
        const auto& d = g.decode(op);
        if (!f.category(s.signature(d.sigma).output).is_identity(d.arrow)) continue;
        k.set(d.sigma, g.total().signature(op).inputs, op);
    }
    return k;
}

// the unit: Phi of the Grothendieck construction of F recovers F
struct UnitCheck {
    bool ok = true;
    std::string why;
};

inline UnitCheck unit_check(const FiniteOperad& s, const CatAlgebra& f) {
    UnitCheck out;
    auto bad = [&](const std::string& m) {
        out.ok = false;
        out.why = m;
        return out;
    };
    Grothendieck g(s, f);
    OperadMorphism proj = g.projection();
    Cleavage k = canonical_cleavage(g, proj, f);
    std::string err;
    if (!k.valid(&err)) return bad("the canonical cleavage is invalid: " + err);
    PhiResult ph = phi(proj, k);
    // componentwise isomorphism of categories: objects s:b <-> b
    for (const auto& sc : s.colours()) {
        const FiniteCategory& fib = ph.algebra.category(sc);
        const FiniteCategory& orig = f.category(sc);
        if (fib.objects().size() != orig.objects().size() ||
            fib.morphisms().size() != orig.morphisms().size())
            return bad("fiber at " + sc + " has the wrong size");
        for (const auto& b : orig.objects())
            if (!fib.has_object(groth_colour(sc, b))) return bad("missing object " + b);
        // morphisms of the fiber are (unit, b, f~); recover f~
        for (const auto& m : fib.morphisms()) {
            const auto& d = g.decode(m);
            if (!s.is_unit(d.sigma)) return bad("fiber morphism over a non-unit");
            if (orig.source(d.arrow) != d.inputs[0]) return bad("fiber morphism mismatched");
        }
    }
    // the actions agree through the identification on objects
    for (const auto& sigma : s.all_ops()) {
        const auto& sig = s.signature(sigma);
        bool ok = true;
        f.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
            std::vector<Ob> lifted;
            for (std::size_t i = 0; i < objs.size(); ++i)
                lifted.push_back(groth_colour(sig.inputs[i], objs[i]));
            Ob got = ph.algebra.act_ob(sigma, lifted);
            // the canonical cleavage gives exactly (sigma, id); other choices
            // agree up to the canonical vertical isomorphism, which on the
            // nose means equality of underlying objects here
            Ob want = groth_colour(sig.output, f.act_ob(sigma, objs));
            if (g.object_of_colour(got) != g.object_of_colour(want)) ok = false;
        });
        if (!ok) return bad("object action differs at " + sigma);
        f.for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            std::vector<MorId> lifted;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const FiniteCategory& ci = f.category(sig.inputs[i]);
                lifted.push_back(
                    groth_op(s.unit(sig.inputs[i]), {ci.source(ms[i])}, ms[i]));
            }
            MorId got = ph.algebra.act_mor(sigma, lifted);
            if (g.decode(got).arrow != f.act_mor(sigma, ms)) ok = false;
        });
        if (!ok) return bad("morphism action differs at " + sigma);
    }
    return out;
}

// two cleavages induce canonically isomorphic algebras: exhibit the unique
// vertical isomorphisms and check naturality squares
inline bool compare_cleavages(const OperadMorphism& p, const Cleavage& k1, const Cleavage& k2,
                              std::string* why = nullptr) {
    const FiniteOperad& x = *p.source;
    auto bad = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    PhiResult a = phi(p, k1);
    PhiResult b = phi(p, k2);
    for (const auto& [key, xi1] : k1.table()) {
        const OpId& xi2 = k2.at(key.first, key.second);
        auto h = detail::unique_vertical_fill(p, xi1, xi2);
        auto hinv = detail::unique_vertical_fill(p, xi2, xi1);
        if (!h || !hinv) return bad("no canonical comparison at " + xi1);
        if (x.compose(*hinv, {*h}) != x.unit(x.signature(xi1).output))
            return bad("comparison is not an isomorphism at " + xi1);
        // naturality: h_dst o sigma_!^1(f...) == sigma_!^2(f...) o h_src
        const auto& sigma = key.first;
        const auto& sig = p.target->signature(sigma);
        bool ok = true;
        a.algebra.for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            std::vector<Ob> src, dst;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const auto& fib = a.algebra.category(sig.inputs[i]);
                src.push_back(fib.source(ms[i]));
                dst.push_back(fib.target(ms[i]));
            }
            if (std::vector<Colour>(src.begin(), src.end()) != key.second) return;
            OpId xi1_dst = k1.at(sigma, std::vector<Colour>(dst.begin(), dst.end()));
            OpId xi2_dst = k2.at(sigma, std::vector<Colour>(dst.begin(), dst.end()));
            auto h_dst = detail::unique_vertical_fill(p, xi1_dst, xi2_dst);
            if (!h_dst) {
                ok = false;
                return;
            }
            MorId lhs = x.compose(*h_dst, {a.algebra.act_mor(sigma, ms)});
            MorId rhs = x.compose(b.algebra.act_mor(sigma, ms), {*h});
            if (lhs != rhs) ok = false;
        });
        if (!ok) return bad("naturality of the comparison fails at " + sigma);
    }
    return true;
}

// groupoid restriction: F valued in groupoids iff every operation of the
// Grothendieck construction is coCartesian
inline Verdict groupoid_restriction_check(const FiniteOperad& s, const CatAlgebra& f) {
    Grothendieck g(s, f);
    OperadMorphism proj = g.projection();
    bool groupoids = f.groupoid_valued();
    bool all_cc = true;
    OpId witness_op;
    for (const auto& op : g.total().all_ops())
        if (!cocart_pullback_criterion(proj, op).ok) {
            all_cc = false;
            witness_op = op;
            break;
        }
    if (groupoids == all_cc) return {};
    std::string msg = groupoids
                          ? "operation " + witness_op + " is not coCartesian over groupoid fibers"
                          : "non-groupoid fibers but every operation is coCartesian";
    return {false, Witness{msg, eta("w"), witness_op, {}}, ""};
}

}  // namespace dendro

#endif  // DENDRO_GROTH_HPP_
