/* straighten.hpp -- the Set-level straightening St_S(p) and the adjunction
 * against the Grothendieck construction.
 *
 * Objects of p/s are Sigma-orbits of (tuple of X-colours, operation of S into
 * s).  A morphism is an equivalence class of (tuple of X-operations, one per
 * target position, and an assignment of source positions to input slots),
 * taken up to re-presentation of either endpoint and twists of the individual
 * operations; classes are handled through canonical minimal representatives.
 */

#ifndef DENDRO_STRAIGHTEN_HPP_
#define DENDRO_STRAIGHTEN_HPP_

#include "dendro/groth.hpp"

namespace dendro {

class SetStraightening {
public:
    explicit SetStraightening(const OperadMorphism& p) : p_(p) {
        if (p_.source->arity_truncation() || p_.target->arity_truncation())
            throw AlgebraError("straightening needs untruncated operads");
        build();
    }

    const CatAlgebra& algebra() const { return alg_; }
    const OperadMorphism& map() const { return p_; }

    // the canonical object key of a Sigma-orbit
    std::string object_key(const std::vector<Colour>& xs, const OpId& sigma) const {
        auto [cxs, csigma] = object_rep(xs, sigma);
        std::string key = "[";
        for (const auto& x : cxs) key += x + ",";
        return key + "|" + csigma + "]";
    }
    std::pair<std::vector<Colour>, OpId> object_rep(const std::vector<Colour>& xs,
                                                    const OpId& sigma) const {
        std::pair<OpId, std::vector<Colour>> best{sigma, xs};
        for (const auto& perm : all_perms(xs.size()))
            best = std::min(best, {p_.target->sigma(sigma, perm), apply_perm(perm, xs)});
        return {best.second, best.first};
    }

    // the morphism of p/s classifying an operation xi of X, from the orbit of
    // (inputs(xi), p(xi)) to the orbit of ((output(xi)), unit)
    MorId classify_operation(const OpId& xi) const {
        const FiniteOperad& x = *p_.source;
        const auto& sig = x.signature(xi);
        auto [cxs, csigma] = object_rep(sig.inputs, p_.at(xi));
        // assignment: canonical source position j holds colour cxs[j]; it must
        // feed the slot of xi's input with the same original position.  Recover
        // a permutation realizing (cxs, csigma) -> (inputs, p(xi)).
        for (const auto& perm : all_perms(sig.arity())) {
            if (apply_perm(perm, sig.inputs) != cxs ||
                p_.target->sigma(p_.at(xi), perm) != csigma)
                continue;
            // canonical position j corresponds to original position perm[j]
            Raw raw;
            raw.xi = {xi};
            raw.assign.resize(sig.arity());
            for (std::size_t j = 0; j < sig.arity(); ++j) raw.assign[j] = perm[j];
            const Colour& s = p_(sig.output);
            return canonical_key(raw, object_rep(sig.inputs, p_.at(xi)),
                                 object_rep({sig.output}, p_.target->unit(s)));
        }
        throw AlgebraError("could not classify operation " + xi);
    }

private:
    struct Raw {
        std::vector<OpId> xi;             // one X-operation per target position
        std::vector<std::size_t> assign;  // source position -> global input slot
    };

    std::string encode(const Raw& r) const {
        std::string out;
        for (const auto& o : r.xi) out += o + ";";
        out += "|";
        for (auto a : r.assign) out += std::to_string(a) + ",";
        return out;
    }

    static std::string rep_key(const std::pair<std::vector<Colour>, OpId>& rep) {
        std::string key = "[";
        for (const auto& x : rep.first) key += x + ",";
        return key + "|" + rep.second + "]";
    }

    // the canonical key of a raw morphism between canonical representatives;
    // the endpoints are part of the key
    std::string canonical_key(const Raw& raw, const std::pair<std::vector<Colour>, OpId>& src,
                              const std::pair<std::vector<Colour>, OpId>& dst) const {
        const FiniteOperad& x = *p_.source;
        const FiniteOperad& s = *p_.target;
        const auto& [xs, sigma] = src;
        const auto& [ys, tau] = dst;
        std::vector<Perm> stab_src, stab_dst;
        for (const auto& perm : all_perms(xs.size()))
            if (s.sigma(sigma, perm) == sigma && apply_perm(perm, xs) == xs)
                stab_src.push_back(perm);
        for (const auto& perm : all_perms(ys.size()))
            if (s.sigma(tau, perm) == tau && apply_perm(perm, ys) == ys) stab_dst.push_back(perm);

        std::string best;
        auto consider = [&](const Raw& r) {
            std::string e = encode(r);
            if (best.empty() || e < best) best = e;
        };
        for (const auto& rho : stab_dst) {
            // new position i holds the operation previously at rho[i]
            Raw a;
            a.xi.resize(raw.xi.size());
            std::vector<std::size_t> old_off(raw.xi.size(), 0), new_off(raw.xi.size(), 0);
            for (std::size_t i = 1; i < raw.xi.size(); ++i)
                old_off[i] = old_off[i - 1] + x.arity(raw.xi[i - 1]);
            for (std::size_t i = 0; i < raw.xi.size(); ++i) a.xi[i] = raw.xi[rho[i]];
            for (std::size_t i = 1; i < a.xi.size(); ++i)
                new_off[i] = new_off[i - 1] + x.arity(a.xi[i - 1]);
            std::vector<std::size_t> slot_map(total_arity(raw), 0);
            for (std::size_t i = 0; i < a.xi.size(); ++i)
                for (std::size_t c = 0; c < x.arity(a.xi[i]); ++c)
                    slot_map[old_off[rho[i]] + c] = new_off[i] + c;
            a.assign.resize(raw.assign.size());
            for (std::size_t j = 0; j < raw.assign.size(); ++j)
                a.assign[j] = slot_map[raw.assign[j]];
            // per-operation twists
            std::vector<std::vector<Perm>> twists;
            for (const auto& o : a.xi) twists.push_back(all_perms(x.arity(o)));
            std::vector<std::size_t> idx(a.xi.size(), 0);
            for (;;) {
                Raw b;
                b.xi.resize(a.xi.size());
                std::vector<std::size_t> inv_slot(total_arity(a), 0);
                for (std::size_t i = 0; i < a.xi.size(); ++i) {
                    const Perm& al = twists[i][idx[i]];
                    b.xi[i] = x.sigma(a.xi[i], al);
                    // new slot c holds old slot al[c]
                    for (std::size_t c = 0; c < al.size(); ++c)
                        inv_slot[new_off[i] + al[c]] = new_off[i] + c;
                }
                b.assign.resize(a.assign.size());
                for (std::size_t j = 0; j < a.assign.size(); ++j)
                    b.assign[j] = inv_slot[a.assign[j]];
                for (const auto& pi : stab_src) {
                    Raw c = b;
                    for (std::size_t j = 0; j < b.assign.size(); ++j) c.assign[j] = b.assign[pi[j]];
                    consider(c);
                }
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == twists[k].size()) idx[k++] = 0;
                if (idx.empty() || k == idx.size()) break;
            }
        }
        if (raw.xi.empty()) consider(raw);  // nullary target tuple
        return rep_key(src) + ">" + rep_key(dst) + ":" + best;
    }

    std::size_t total_arity(const Raw& r) const {
        std::size_t n = 0;
        for (const auto& o : r.xi) n += p_.source->arity(o);
        return n;
    }

    // composite of r1 : A -> B then r2 : B -> C as a raw morphism A -> C
    Raw compose_raw(const Raw& r1, const Raw& r2) const {
        const FiniteOperad& x = *p_.source;
        std::vector<std::size_t> off1(r1.xi.size(), 0), off2(r2.xi.size(), 0);
        for (std::size_t i = 1; i < r1.xi.size(); ++i) off1[i] = off1[i - 1] + x.arity(r1.xi[i - 1]);
        for (std::size_t i = 1; i < r2.xi.size(); ++i) off2[i] = off2[i - 1] + x.arity(r2.xi[i - 1]);
        std::vector<std::size_t> feeder(total_arity(r2), 0);
        for (std::size_t m = 0; m < r2.assign.size(); ++m) feeder[r2.assign[m]] = m;
        Raw out;
        std::vector<std::size_t> slot_map(total_arity(r1), 0);
        std::size_t new_off = 0;
        for (std::size_t k = 0; k < r2.xi.size(); ++k) {
            std::vector<OpId> children;
            std::size_t inner = 0;
            for (std::size_t c = 0; c < x.arity(r2.xi[k]); ++c)
                children.push_back(r1.xi[feeder[off2[k] + c]]);
            for (std::size_t c = 0; c < children.size(); ++c) {
                std::size_t m = feeder[off2[k] + c];
                for (std::size_t t = 0; t < x.arity(r1.xi[m]); ++t)
                    slot_map[off1[m] + t] = new_off + inner + t;
                inner += x.arity(children[c]);
            }
            new_off += inner;
            out.xi.push_back(x.compose(r2.xi[k], children));
        }
        out.assign.resize(r1.assign.size());
        for (std::size_t j = 0; j < r1.assign.size(); ++j) out.assign[j] = slot_map[r1.assign[j]];
        return out;
    }

    // re-express a raw morphism stated against arbitrary presentations of its
    // endpoints so that it refers to the canonical representatives
    Raw align_raw(const Raw& raw, const std::vector<Colour>& src_xs, const OpId& src_sigma,
                  const std::vector<Colour>& dst_ys, const OpId& dst_tau) const {
        const FiniteOperad& x = *p_.source;
        const FiniteOperad& s = *p_.target;
        auto argmin = [&](const std::vector<Colour>& xs, const OpId& sigma) {
            Perm best_p = identity_perm(xs.size());
            std::pair<OpId, std::vector<Colour>> best{sigma, xs};
            for (const auto& perm : all_perms(xs.size())) {
                std::pair<OpId, std::vector<Colour>> cand{s.sigma(sigma, perm),
                                                          apply_perm(perm, xs)};
                if (cand < best) {
                    best = cand;
                    best_p = perm;
                }
            }
            return best_p;
        };
        Perm pi0 = argmin(src_xs, src_sigma);
        Perm rho0 = argmin(dst_ys, dst_tau);
        Raw a;
        a.xi.resize(raw.xi.size());
        std::vector<std::size_t> old_off(raw.xi.size(), 0);
        for (std::size_t i = 1; i < raw.xi.size(); ++i)
            old_off[i] = old_off[i - 1] + x.arity(raw.xi[i - 1]);
        for (std::size_t i = 0; i < raw.xi.size(); ++i) a.xi[i] = raw.xi[rho0[i]];
        std::vector<std::size_t> new_off(a.xi.size(), 0);
        for (std::size_t i = 1; i < a.xi.size(); ++i) new_off[i] = new_off[i - 1] + x.arity(a.xi[i - 1]);
        std::vector<std::size_t> slot_map(total_arity(raw), 0);
        for (std::size_t i = 0; i < a.xi.size(); ++i)
            for (std::size_t c = 0; c < x.arity(a.xi[i]); ++c)
                slot_map[old_off[rho0[i]] + c] = new_off[i] + c;
        a.assign.resize(raw.assign.size());
        for (std::size_t j = 0; j < raw.assign.size(); ++j)
            a.assign[j] = slot_map[raw.assign[pi0[j]]];
        return a;
    }

    void build();

    const OperadMorphism& p_;
    CatAlgebra alg_;
    // per colour: object key -> representative; morphism key -> raw representative
    std::map<Colour, std::map<std::string, std::pair<std::vector<Colour>, OpId>>> objects_;
    std::map<Colour, std::map<std::string, std::pair<Raw, std::pair<std::string, std::string>>>>
        raws_;  // key -> (raw, (src key, dst key))
};

inline void SetStraightening::build() {
    const FiniteOperad& x = *p_.source;
    const FiniteOperad& s = *p_.target;
    alg_ = CatAlgebra(&s);

    for (const auto& sc : s.colours()) {
        FiniteCategory cat;
        auto& obj = objects_[sc];
        for (const auto& [sig, ops] : s.op_table()) {
            if (sig.output != sc) continue;
            // all tuples of X-colours over the inputs
            std::vector<std::vector<std::string>> pools;
            for (const auto& si : sig.inputs) {
                std::vector<Colour> pool;
                for (const auto& c : x.colours())
                    if (p_(c) == si) pool.push_back(c);
                pools.push_back(std::move(pool));
            }
            for (const auto& sigma : ops)
                detail::for_tuples_of(pools, [&](const std::vector<Colour>& xs) {
                    std::string key = object_key(xs, sigma);
                    if (!obj.count(key)) {
                        obj[key] = object_rep(xs, sigma);
                        cat.add_object(key);
                    }
                });
        }
        auto& raw_store = raws_[sc];
        for (const auto& [skey, sdat] : obj)
            for (const auto& [dkey, ddat] : obj) {
                const auto& [xs, sigma] = sdat;
                const auto& [ys, tau] = ddat;
                std::vector<std::vector<OpId>> pools;
                for (const auto& y : ys) {
                    std::vector<OpId> pool;
                    for (const auto& [xsig, xops] : x.op_table())
                        if (xsig.output == y)
                            for (const auto& o : xops) pool.push_back(o);
                    pools.push_back(std::move(pool));
                }
                std::vector<OpId> xi(ys.size());
                std::function<void(std::size_t)> pick = [&](std::size_t i) {
                    if (i == ys.size()) {
                        std::vector<Colour> concat;
                        std::vector<OpId> pxi;
                        for (const auto& o : xi) {
                            const auto& os = x.signature(o);
                            concat.insert(concat.end(), os.inputs.begin(), os.inputs.end());
                            pxi.push_back(p_.at(o));
                        }
                        if (concat.size() != xs.size()) return;
                        std::vector<std::size_t> assign(xs.size());
                        std::vector<bool> used(xs.size(), false);
                        std::function<void(std::size_t)> match = [&](std::size_t j) {
                            if (j == xs.size()) {
                                OpId comp = s.compose(tau, pxi);
                                Perm q(assign.begin(), assign.end());
                                if (s.sigma(comp, q) != sigma) return;
                                Raw raw{xi, assign};
                                std::string key = canonical_key(raw, sdat, ddat);
                                if (!raw_store.count(key)) {
                                    raw_store[key] = {raw, {skey, dkey}};
                                    cat.add_morphism(key, skey, dkey);
                                }
                                return;
                            }
                            for (std::size_t slot = 0; slot < concat.size(); ++slot) {
                                if (used[slot] || concat[slot] != xs[j]) continue;
                                used[slot] = true;
                                assign[j] = slot;
                                match(j + 1);
                                used[slot] = false;
                            }
                        };
                        match(0);
                        return;
                    }
                    for (const auto& o : pools[i]) {
                        xi[i] = o;
                        pick(i + 1);
                    }
                };
                pick(0);
            }
        // identities
        for (const auto& [key, dat] : obj) {
            const auto& [xs, sigma] = dat;
            Raw raw;
            for (const auto& xc : xs) raw.xi.push_back(x.unit(xc));
            raw.assign = identity_perm(xs.size());
            cat.set_identity(key, canonical_key(raw, dat, dat));
        }
        // composition
        for (const auto& [k1, r1dat] : raw_store)
            for (const auto& [k2, r2dat] : raw_store) {
                const auto& [r1, ends1] = r1dat;
                const auto& [r2, ends2] = r2dat;
                if (ends2.first != ends1.second) continue;
                Raw comp = compose_raw(r1, r2);
                std::string ckey =
                    canonical_key(comp, objects_[sc].at(ends1.first), objects_[sc].at(ends2.second));
                if (!raw_store.count(ckey))
                    throw AlgebraError("straightening composition left the category");
                cat.set_composite(k2, k1, ckey);
            }
        alg_.set_category(sc, std::move(cat));
    }

    // the S-action: compose the classifying operations and concatenate tuples
    for (const auto& rho : s.all_ops()) {
        const auto& sig = s.signature(rho);
        std::vector<std::vector<std::string>> obpools;
        for (const auto& c : sig.inputs) obpools.push_back(alg_.category(c).objects());
        detail::for_tuples_of(obpools, [&](const std::vector<std::string>& objs) {
            std::vector<Colour> xs;
            std::vector<OpId> sigmas;
            for (std::size_t i = 0; i < objs.size(); ++i) {
                const auto& [t, sg] = objects_.at(sig.inputs[i]).at(objs[i]);
                xs.insert(xs.end(), t.begin(), t.end());
                sigmas.push_back(sg);
            }
            alg_.set_object_action(rho, objs, object_key(xs, s.compose(rho, sigmas)));
        });
        std::vector<std::vector<std::string>> mpools;
        for (const auto& c : sig.inputs) {
            std::vector<std::string> pool = alg_.category(c).morphisms();
            mpools.push_back(std::move(pool));
        }
        detail::for_tuples_of(mpools, [&](const std::vector<std::string>& ms) {
            // concatenate the tuples and shift the assignments block-wise
            Raw raw;
            std::vector<Colour> src_xs, dst_ys;
            std::vector<OpId> src_sigmas, dst_taus;
            std::vector<std::size_t> global_assign;
            std::size_t slot_off = 0, src_off = 0;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const auto& [r, ends] = raws_.at(sig.inputs[i]).at(ms[i]);
                const auto& [sx, ssigma] = objects_.at(sig.inputs[i]).at(ends.first);
                const auto& [dy, dtau] = objects_.at(sig.inputs[i]).at(ends.second);
                raw.xi.insert(raw.xi.end(), r.xi.begin(), r.xi.end());
                for (std::size_t j = 0; j < r.assign.size(); ++j)
                    global_assign.push_back(slot_off + r.assign[j]);
                std::size_t block = 0;
                for (const auto& o : r.xi) block += p_.source->arity(o);
                slot_off += block;
                src_off += sx.size();
                src_xs.insert(src_xs.end(), sx.begin(), sx.end());
                dst_ys.insert(dst_ys.end(), dy.begin(), dy.end());
                src_sigmas.push_back(ssigma);
                dst_taus.push_back(dtau);
            }
            raw.assign = global_assign;
            auto src_rep = object_rep(src_xs, s.compose(rho, src_sigmas));
            auto dst_rep = object_rep(dst_ys, s.compose(rho, dst_taus));
            // re-express the raw morphism against the canonical representatives
            Raw adjusted = align_raw(raw, src_xs, s.compose(rho, src_sigmas), dst_ys,
                                     s.compose(rho, dst_taus));
            alg_.set_morphism_action(rho, ms, canonical_key(adjusted, src_rep, dst_rep));
        });
    }
}

// ---------------------------------------------------------------------------
// the adjunction: algebra maps St(p) -> F correspond to operad maps p -> int F
// over S, by exhaustive double enumeration

// a strict map of Cat-valued algebras: a functor per colour commuting with
// every action on the nose
struct AlgebraMap {
    std::map<Colour, std::map<Ob, Ob>> on_objects;
    std::map<Colour, std::map<MorId, MorId>> on_morphisms;

    friend bool operator<(const AlgebraMap& a, const AlgebraMap& b) {
        if (a.on_objects != b.on_objects) return a.on_objects < b.on_objects;
        return a.on_morphisms < b.on_morphisms;
    }
    friend bool operator==(const AlgebraMap&, const AlgebraMap&) = default;
};

inline bool algebra_map_valid(const CatAlgebra& from, const CatAlgebra& to, const AlgebraMap& h) {
    const FiniteOperad& s = from.base();
    for (const auto& c : s.colours()) {
        const FiniteCategory& a = from.category(c);
        const FiniteCategory& b = to.category(c);
        for (const auto& m : a.morphisms()) {
            const MorId& im = h.on_morphisms.at(c).at(m);
            if (b.source(im) != h.on_objects.at(c).at(a.source(m))) return false;
            if (b.target(im) != h.on_objects.at(c).at(a.target(m))) return false;
        }
        for (const auto& o : a.objects())
            if (h.on_morphisms.at(c).at(a.identity(o)) != b.identity(h.on_objects.at(c).at(o)))
                return false;
        for (const auto& m : a.morphisms())
            for (const auto& n : a.morphisms()) {
                if (a.source(n) != a.target(m)) continue;
                if (h.on_morphisms.at(c).at(a.compose(n, m)) !=
                    b.compose(h.on_morphisms.at(c).at(n), h.on_morphisms.at(c).at(m)))
                    return false;
            }
    }
    for (const auto& rho : s.all_ops()) {
        const auto& sig = s.signature(rho);
        bool ok = true;
        from.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
            std::vector<Ob> mapped;
            for (std::size_t i = 0; i < objs.size(); ++i)
                mapped.push_back(h.on_objects.at(sig.inputs[i]).at(objs[i]));
            if (h.on_objects.at(sig.output).at(from.act_ob(rho, objs)) != to.act_ob(rho, mapped))
                ok = false;
        });
        if (!ok) return false;
        from.for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            std::vector<MorId> mapped;
            for (std::size_t i = 0; i < ms.size(); ++i)
                mapped.push_back(h.on_morphisms.at(sig.inputs[i]).at(ms[i]));
            if (h.on_morphisms.at(sig.output).at(from.act_mor(rho, ms)) != to.act_mor(rho, mapped))
                ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

inline std::vector<AlgebraMap> enumerate_algebra_maps(const CatAlgebra& from, const CatAlgebra& to) {
    const FiniteOperad& s = from.base();
    std::vector<std::pair<Colour, Ob>> obj_domain;
    std::vector<std::pair<Colour, MorId>> mor_domain;
    for (const auto& c : s.colours()) {
        for (const auto& o : from.category(c).objects()) obj_domain.push_back({c, o});
        for (const auto& m : from.category(c).morphisms()) mor_domain.push_back({c, m});
    }
    std::vector<AlgebraMap> out;
    AlgebraMap h;
    std::function<void(std::size_t)> pick_mor = [&](std::size_t i) {
        if (i == mor_domain.size()) {
            if (algebra_map_valid(from, to, h)) out.push_back(h);
            return;
        }
        const auto& [c, m] = mor_domain[i];
        const FiniteCategory& a = from.category(c);
        const FiniteCategory& b = to.category(c);
        Ob src = h.on_objects.at(c).at(a.source(m));
        Ob dst = h.on_objects.at(c).at(a.target(m));
        for (const auto& im : b.hom(src, dst)) {
            h.on_morphisms[c][m] = im;
            pick_mor(i + 1);
        }
        h.on_morphisms[c].erase(m);
    };
    std::function<void(std::size_t)> pick_obj = [&](std::size_t i) {
        if (i == obj_domain.size()) {
            for (const auto& c : s.colours()) h.on_morphisms[c];
            pick_mor(0);
            return;
        }
        const auto& [c, o] = obj_domain[i];
        for (const auto& im : to.category(c).objects()) {
            h.on_objects[c][o] = im;
            pick_obj(i + 1);
        }
        h.on_objects[c].erase(o);
    };
    for (const auto& c : s.colours()) h.on_objects[c];
    pick_obj(0);
    return out;
}

// all operad maps X -> int F over S
inline std::vector<OperadMorphism> enumerate_maps_over_base(const OperadMorphism& p,
                                                            const Grothendieck& g) {
    const FiniteOperad& x = *p.source;
    std::vector<OperadMorphism> out;
    std::vector<Colour> xcols = x.colours();
    std::vector<OpId> xops = x.all_ops();
    OperadMorphism q{&x, &g.total(), {}, {}};
    std::function<void(std::size_t)> pick_op = [&](std::size_t i) {
        if (i == xops.size()) {
            if (q.valid()) out.push_back(q);
            return;
        }
        const OpId& xi = xops[i];
        const auto& sig = x.signature(xi);
        Signature want{{}, q.colour_map.at(sig.output)};
        for (const auto& c : sig.inputs) want.inputs.push_back(q.colour_map.at(c));
        for (const auto& cand : g.total().ops(want)) {
            if (g.decode(cand).sigma != p.at(xi)) continue;
            q.op_map[xi] = cand;
            pick_op(i + 1);
        }
        q.op_map.erase(xi);
    };
    std::function<void(std::size_t)> pick_col = [&](std::size_t i) {
        if (i == xcols.size()) {
            pick_op(0);
            return;
        }
        const Colour& xc = xcols[i];
        for (const auto& gc : g.total().colours()) {
            if (g.projection().colour_map.at(gc) != p(xc)) continue;
            q.colour_map[xc] = gc;
            pick_col(i + 1);
        }
        q.colour_map.erase(xc);
    };
    pick_col(0);
    return out;
}

struct AdjunctionCheck {
    bool ok = true;
    std::string why;
    std::size_t algebra_maps = 0;
    std::size_t operad_maps = 0;
};

// verifies that the unit-style correspondence is a bijection between
// Hom(St(p), F) and Hom_{/S}(p, int F)
inline AdjunctionCheck adjunction_check(const OperadMorphism& p, const CatAlgebra& f) {
    AdjunctionCheck out;
    const FiniteOperad& s = *p.target;
    const FiniteOperad& x = *p.source;
    SetStraightening st(p);
    Grothendieck g(s, f);
    auto lhs = enumerate_algebra_maps(st.algebra(), f);
    auto rhs = enumerate_maps_over_base(p, g);
    out.algebra_maps = lhs.size();
    out.operad_maps = rhs.size();
    if (lhs.size() != rhs.size()) {
        out.ok = false;
        out.why = "cardinalities differ";
        return out;
    }
    // gamma: colours through the unit objects, operations through the
    // classifying morphisms of p/s
    std::set<std::string> images;
    for (const auto& h : lhs) {
        OperadMorphism q{&x, &g.total(), {}, {}};
        for (const auto& xc : x.colours()) {
            const Colour& sc = p(xc);
            Ob b = h.on_objects.at(sc).at(st.object_key({xc}, s.unit(sc)));
            q.colour_map[xc] = groth_colour(sc, b);
        }
        bool welldef = true;
        for (const auto& xi : x.all_ops()) {
            const auto& sig = x.signature(xi);
            const Colour& sc = p(sig.output);
            MorId arrow = h.on_morphisms.at(sc).at(st.classify_operation(xi));
            std::vector<Ob> bs;
            for (const auto& c : sig.inputs) bs.push_back(g.object_of_colour(q.colour_map.at(c)));
            OpId image = groth_op(p.at(xi), bs, arrow);
            bool known = false;
            for (const auto& cand : g.total().all_ops()) known |= cand == image;
            if (!known) {
                welldef = false;
                break;
            }
            q.op_map[xi] = image;
        }
        std::string err;
        if (!welldef || !q.valid(&err)) {
            out.ok = false;
            out.why = "the correspondence is not well defined: " + err;
            return out;
        }
        std::string fingerprint;
        for (const auto& [a, b] : q.colour_map) fingerprint += a + ">" + b + ";";
        for (const auto& [a, b] : q.op_map) fingerprint += a + ">" + b + ";";
        if (!images.insert(fingerprint).second) {
            out.ok = false;
            out.why = "the correspondence is not injective";
            return out;
        }
    }
    // injective with equal cardinalities: bijective
    return out;
}

}  // namespace dendro

#endif  // DENDRO_STRAIGHTEN_HPP_
