/* algebra.hpp -- algebras over a finite operad valued in finite sets or
 * finite categories, with strictness checks and natural-transformation
 * enumeration.
 */

#ifndef DENDRO_ALGEBRA_HPP_
#define DENDRO_ALGEBRA_HPP_

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dendro/category.hpp"
#include "dendro/operad.hpp"

namespace dendro {

struct AlgebraError : std::runtime_error {
    explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Set-valued algebras

class SetAlgebra {
public:
    SetAlgebra() = default;
    explicit SetAlgebra(const FiniteOperad* base) : base_(base) {}

    const FiniteOperad& base() const { return *base_; }

    void set_value(const Colour& c, std::vector<std::string> elems) { values_[c] = std::move(elems); }
    void set_action(const OpId& op, const std::vector<std::string>& args, const std::string& result) {
        action_[{op, args}] = result;
    }

    const std::vector<std::string>& value(const Colour& c) const {
        auto it = values_.find(c);
        if (it == values_.end()) throw AlgebraError("algebra has no value at colour " + c);
        return it->second;
    }
    std::string act(const OpId& op, const std::vector<std::string>& args) const {
        auto it = action_.find({op, args});
        if (it == action_.end()) throw AlgebraError("algebra action missing on " + op);
        return it->second;
    }

    bool check_algebra(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        const FiniteOperad& s = *base_;
        for (const auto& c : s.colours())
            if (!values_.count(c)) return bad("no value at colour " + c);
        // totality, unit, equivariance, composition
        for (const auto& op : s.all_ops()) {
            const auto& sig = s.signature(op);
            std::vector<std::vector<std::string>> pools;
            for (const auto& c : sig.inputs) pools.push_back(value(c));
            std::vector<std::size_t> idx(sig.arity(), 0);
            bool done = std::any_of(pools.begin(), pools.end(),
                                    [](const auto& v) { return v.empty(); });
            while (!done) {
                std::vector<std::string> args;
                for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(pools[i][idx[i]]);
                auto it = action_.find({op, args});
                if (it == action_.end()) return bad("action missing on " + op);
                const auto& out = value(sig.output);
                if (std::find(out.begin(), out.end(), it->second) == out.end())
                    return bad("action of " + op + " leaves the carrier");
                if (s.is_unit(op) && it->second != args[0]) return bad("unit acts nontrivially");
                for (const auto& perm : all_perms(sig.arity()))
                    if (act(s.sigma(op, perm), apply_perm(perm, args)) != it->second)
                        return bad("equivariance fails on " + op);
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
                if (idx.empty() || k == idx.size()) done = true;
            }
        }
        // composition: gamma(f; g...) acts as the composite of actions
        for (const auto& f : s.all_ops()) {
            const auto& sig = s.signature(f);
            std::vector<OpId> cur;
            bool ok = true;
            std::string msg;
            detail::composable_tuples(s, sig.inputs, 0, cur, [&](const std::vector<OpId>& gs) {
                if (!ok) return;
                std::size_t total = 0;
                for (const auto& g : gs) total += s.arity(g);
                if (!s.within_truncation(total)) return;
                OpId fg = s.compose(f, gs);
                // one spot check per argument tuple is exhaustive at our sizes
                std::vector<std::vector<std::string>> pools;
                for (const auto& c : s.signature(fg).inputs) pools.push_back(value(c));
                std::vector<std::size_t> idx(pools.size(), 0);
                bool done = std::any_of(pools.begin(), pools.end(),
                                        [](const auto& v) { return v.empty(); });
                while (!done && ok) {
                    std::vector<std::string> args;
                    for (std::size_t i = 0; i < idx.size(); ++i) args.push_back(pools[i][idx[i]]);
                    std::vector<std::string> mids;
                    std::size_t off = 0;
                    for (const auto& g : gs) {
                        std::vector<std::string> part(args.begin() + off,
                                                      args.begin() + off + s.arity(g));
                        mids.push_back(act(g, part));
                        off += s.arity(g);
                    }
                    if (act(fg, args) != act(f, mids)) {
                        ok = false;
                        msg = "composition action fails on " + f;
                    }
                    std::size_t k = 0;
                    while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
                    if (idx.empty() || k == idx.size()) done = true;
                }
            });
            if (!ok) return bad(msg);
        }
        return true;
    }

private:
    const FiniteOperad* base_ = nullptr;
    std::map<Colour, std::vector<std::string>> values_;
    std::map<std::pair<OpId, std::vector<std::string>>, std::string> action_;
};

// a natural transformation of Set-valued algebras: one function per colour,
// commuting with every action
using SetNat = std::map<Colour, std::map<std::string, std::string>>;

inline bool set_nat_natural(const SetAlgebra& from, const SetAlgebra& to, const SetNat& eta) {
    const FiniteOperad& s = from.base();
    for (const auto& op : s.all_ops()) {
        const auto& sig = s.signature(op);
        std::vector<std::vector<std::string>> pools;
        for (const auto& c : sig.inputs) pools.push_back(from.value(c));
        std::vector<std::size_t> idx(sig.arity(), 0);
        bool done = std::any_of(pools.begin(), pools.end(), [](const auto& v) { return v.empty(); });
        while (!done) {
            std::vector<std::string> args, mapped;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                args.push_back(pools[i][idx[i]]);
                mapped.push_back(eta.at(sig.inputs[i]).at(args.back()));
            }
            if (eta.at(sig.output).at(from.act(op, args)) != to.act(op, mapped)) return false;
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
            if (idx.empty() || k == idx.size()) done = true;
        }
    }
    return true;
}

// exhaustive enumeration of natural transformations
inline std::vector<SetNat> enumerate_set_nats(const SetAlgebra& from, const SetAlgebra& to) {
    const FiniteOperad& s = from.base();
    std::vector<SetNat> out;
    std::vector<std::pair<Colour, std::string>> domain;
    for (const auto& c : s.colours())
        for (const auto& e : from.value(c)) domain.push_back({c, e});
    SetNat eta;
    for (const auto& c : s.colours()) eta[c];
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == domain.size()) {
            if (set_nat_natural(from, to, eta)) out.push_back(eta);
            return;
        }
        const auto& [c, e] = domain[i];
        for (const auto& v : to.value(c)) {
            eta[c][e] = v;
            go(i + 1);
        }
        eta[c].erase(e);
    };
    go(0);
    return out;
}

// ---------------------------------------------------------------------------
// Cat-valued algebras (strict, possibly with comparison isomorphisms)

class CatAlgebra {
public:
    CatAlgebra() = default;
    explicit CatAlgebra(const FiniteOperad* base) : base_(base) {}

    const FiniteOperad& base() const { return *base_; }

    void set_category(const Colour& c, FiniteCategory cat) { cats_[c] = std::move(cat); }
    const FiniteCategory& category(const Colour& c) const {
        auto it = cats_.find(c);
        if (it == cats_.end()) throw AlgebraError("algebra has no category at " + c);
        return it->second;
    }

    void set_object_action(const OpId& op, const std::vector<Ob>& objs, const Ob& result) {
        ob_action_[{op, objs}] = result;
    }
    void set_morphism_action(const OpId& op, const std::vector<MorId>& ms, const MorId& result) {
        mor_action_[{op, ms}] = result;
    }

    Ob act_ob(const OpId& op, const std::vector<Ob>& objs) const {
        auto it = ob_action_.find({op, objs});
        if (it == ob_action_.end()) throw AlgebraError("object action missing on " + op);
        return it->second;
    }
    MorId act_mor(const OpId& op, const std::vector<MorId>& ms) const {
        auto it = mor_action_.find({op, ms});
        if (it == mor_action_.end()) throw AlgebraError("morphism action missing on " + op);
        return it->second;
    }

    // comparison isomorphism for a composite pattern, at an object tuple;
    // strict algebras have none recorded and all comparisons are identities
    void set_comparison(const OpId& parent, const std::vector<OpId>& children,
                        const std::vector<Ob>& objs, const MorId& iso) {
        comparison_[{parent, children, objs}] = iso;
    }
    MorId comparison(const OpId& parent, const std::vector<OpId>& children,
                     const std::vector<Ob>& objs) const {
        auto it = comparison_.find({parent, children, objs});
        if (it != comparison_.end()) return it->second;
        // default: identity at the strict composite
        std::vector<Ob> mids;
        std::size_t off = 0;
        for (const auto& g : children) {
            std::vector<Ob> part(objs.begin() + off, objs.begin() + off + base_->arity(g));
            mids.push_back(act_ob(g, part));
            off += base_->arity(g);
        }
        return category(base_->signature(parent).output).identity(act_ob(parent, mids));
    }
    bool has_comparisons() const { return !comparison_.empty(); }

    // strict functoriality on the nose
    bool check_strict(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        const FiniteOperad& s = *base_;
        for (const auto& c : s.colours()) {
            if (!cats_.count(c)) return bad("no category at " + c);
            std::string cwhy;
            if (!cats_.at(c).check_axioms(&cwhy)) return bad("category at " + c + ": " + cwhy);
        }
        for (const auto& op : s.all_ops()) {
            ProductFunctor f = functor_of(op);
            std::string fwhy;
            if (!f.check_functor(&fwhy)) return bad("action of " + op + ": " + fwhy);
            // units act as the identity functor
            if (s.is_unit(op))
                for (const auto& a : category(s.signature(op).output).objects())
                    if (act_ob(op, {a}) != a) return bad("unit action is not the identity");
            // equivariance
            const auto& sig = s.signature(op);
            for (const auto& perm : all_perms(sig.arity())) {
                OpId im = s.sigma(op, perm);
                for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
                    if (act_ob(im, apply_perm(perm, objs)) != act_ob(op, objs))
                        fwhy = "equivariance fails on " + op;
                });
                if (!fwhy.empty()) return bad(fwhy);
            }
        }
        // strict composition
        for (const auto& f : s.all_ops()) {
            const auto& sig = s.signature(f);
            std::vector<OpId> cur;
            bool ok = true;
            detail::composable_tuples(s, sig.inputs, 0, cur, [&](const std::vector<OpId>& gs) {
                if (!ok) return;
                std::size_t total = 0;
                for (const auto& g : gs) total += s.arity(g);
                if (!s.within_truncation(total)) return;
                OpId fg = s.compose(f, gs);
                for_object_tuples(s.signature(fg).inputs, [&](const std::vector<Ob>& objs) {
                    std::vector<Ob> mids;
                    std::size_t off = 0;
                    for (const auto& g : gs) {
                        std::vector<Ob> part(objs.begin() + off, objs.begin() + off + s.arity(g));
                        mids.push_back(act_ob(g, part));
                        off += s.arity(g);
                    }
                    if (act_ob(fg, objs) != act_ob(f, mids)) ok = false;
                });
                if (!ok) return;
                for_morphism_tuples(s.signature(fg).inputs, [&](const std::vector<MorId>& ms) {
                    std::vector<MorId> mids;
                    std::size_t off = 0;
                    for (const auto& g : gs) {
                        std::vector<MorId> part(ms.begin() + off, ms.begin() + off + s.arity(g));
                        mids.push_back(act_mor(g, part));
                        off += s.arity(g);
                    }
                    if (act_mor(fg, ms) != act_mor(f, mids)) ok = false;
                });
            });
            if (!ok) return bad("strict composition fails on " + f);
        }
        return true;
    }

    ProductFunctor functor_of(const OpId& op) const {
        ProductFunctor f;
        const auto& sig = base_->signature(op);
        for (const auto& c : sig.inputs) f.sources.push_back(&category(c));
        f.target = &category(sig.output);
        for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
            f.on_objects[objs] = act_ob(op, objs);
        });
        for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            f.on_morphisms[ms] = act_mor(op, ms);
        });
        return f;
    }

    bool groupoid_valued() const {
        for (const auto& [c, cat] : cats_)
            if (!cat.is_groupoid()) return false;
        return true;
    }

    template <typename Fn>
    void for_object_tuples(const std::vector<Colour>& colours, Fn&& fn) const {
        std::vector<Ob> cur;
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (i == colours.size()) {
                fn(cur);
                return;
            }
            for (const auto& a : category(colours[i]).objects()) {
                cur.push_back(a);
                go(i + 1);
                cur.pop_back();
            }
        };
        go(0);
    }
    template <typename Fn>
    void for_morphism_tuples(const std::vector<Colour>& colours, Fn&& fn) const {
        std::vector<MorId> cur;
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (i == colours.size()) {
                fn(cur);
                return;
            }
            for (const auto& m : category(colours[i]).morphisms()) {
                cur.push_back(m);
                go(i + 1);
                cur.pop_back();
            }
        };
        go(0);
    }

private:
    const FiniteOperad* base_ = nullptr;
    std::map<Colour, FiniteCategory> cats_;
    std::map<std::pair<OpId, std::vector<Ob>>, Ob> ob_action_;
    std::map<std::pair<OpId, std::vector<MorId>>, MorId> mor_action_;
    std::map<std::tuple<OpId, std::vector<OpId>, std::vector<Ob>>, MorId> comparison_;
};

// The constant algebra at a single category, acting by projection onto the
// first argument.  This is a strict algebra when the category is terminal or
// the operad has only unary operations; check_strict rejects other uses.
inline CatAlgebra constant_cat_algebra(const FiniteOperad& s, const FiniteCategory& c) {
    CatAlgebra f(&s);
    for (const auto& col : s.colours()) f.set_category(col, c);
    for (const auto& op : s.all_ops()) {
        const auto& sig = s.signature(op);
        f.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
            f.set_object_action(op, objs, objs.empty() ? c.objects().front() : objs.front());
        });
        f.for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            f.set_morphism_action(op, ms,
                                  ms.empty() ? c.identity(c.objects().front()) : ms.front());
        });
    }
    return f;
}

}  // namespace dendro

#endif  // DENDRO_ALGEBRA_HPP_
