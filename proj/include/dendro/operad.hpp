/* operad.hpp -- finite coloured symmetric operads in Sets.
 *
 * Operations are stored per ordered signature with an explicit symmetric
 * group action; orbits are derived.  Composition is the simultaneous one,
 *   compose(f, (g_1..g_n)) : P(c...;c) x prod P(d_i...;c_i) -> P(d...;c).
 * An operad may carry an arity truncation (used e.g. for the terminal operad,
 * which has one operation in every arity); compositions whose result would
 * exceed the truncation are absent by design and the axiom checker skips the
 * tuples that would need them.
 */

#ifndef DENDRO_OPERAD_HPP_
#define DENDRO_OPERAD_HPP_

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

using Colour = std::string;
using OpId = std::string;
using Perm = std::vector<std::size_t>;  // p[i] = sigma(i); images of positions

struct OperadError : std::runtime_error {
    explicit OperadError(const std::string& what) : std::runtime_error(what) {}
};

struct Signature {
    std::vector<Colour> inputs;
    Colour output;

    std::size_t arity() const { return inputs.size(); }
    friend bool operator==(const Signature&, const Signature&) = default;
    friend bool operator<(const Signature& a, const Signature& b) {
        if (a.output != b.output) return a.output < b.output;
        return a.inputs < b.inputs;
    }
};

inline Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline std::vector<Perm> all_perms(std::size_t n) {
    Perm p = identity_perm(n);
    std::vector<Perm> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline Perm compose_perms(const Perm& s, const Perm& t) {  // (s . t)(i) = s(t(i))
    Perm out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = s[t[i]];
    return out;
}

// permutation of concatenated blocks: block j of the result is block s(j) of
// the original, where sizes[i] is the length of original block i
inline Perm block_perm(const Perm& s, const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> start(sizes.size(), 0);
    for (std::size_t i = 1; i < sizes.size(); ++i) start[i] = start[i - 1] + sizes[i - 1];
    Perm out;
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t o = 0; o < sizes[s[j]]; ++o) out.push_back(start[s[j]] + o);
    return out;
}

inline Perm direct_sum_perms(const std::vector<Perm>& ps) {
    Perm out;
    std::size_t off = 0;
    for (const auto& p : ps) {
        for (std::size_t i = 0; i < p.size(); ++i) out.push_back(off + p[i]);
        off += p.size();
    }
    return out;
}

template <typename T>
inline std::vector<T> apply_perm(const Perm& p, const std::vector<T>& xs) {
    std::vector<T> out(xs.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = xs[p[i]];
    return out;
}

class FiniteOperad {
public:
    FiniteOperad() = default;

    // -- construction -------------------------------------------------------
    void add_colour(const Colour& c) {
        if (colour_set_.insert(c).second) colours_.push_back(c);
    }
    void add_op(const OpId& op, Signature sig) {
        for (const auto& c : sig.inputs) add_colour(c);
        add_colour(sig.output);
        if (sig_of_.count(op)) throw OperadError("operation " + op + " declared twice");
        table_[sig].push_back(op);
        sig_of_.emplace(op, std::move(sig));
    }
    void set_unit(const Colour& c, const OpId& op) { units_[c] = op; }
    void set_composite(const OpId& parent, const std::vector<OpId>& children, const OpId& result) {
        comp_[{parent, children}] = result;
    }
    void set_sigma(const OpId& op, const Perm& p, const OpId& result) { sigma_[{op, p}] = result; }
    void set_arity_truncation(std::size_t n) { trunc_ = n; }

    // -- access --------------------------------------------------------------
    const std::vector<Colour>& colours() const { return colours_; }
    bool has_colour(const Colour& c) const { return colour_set_.count(c) > 0; }

    const std::vector<OpId>& ops(const Signature& sig) const {
        static const std::vector<OpId> none;
        auto it = table_.find(sig);
        return it == table_.end() ? none : it->second;
    }
    const std::map<Signature, std::vector<OpId>>& op_table() const { return table_; }

    std::vector<OpId> all_ops() const {
        std::vector<OpId> out;
        for (const auto& [sig, ops] : table_) out.insert(out.end(), ops.begin(), ops.end());
        return out;
    }
    std::size_t op_count() const {
        std::size_t n = 0;
        for (const auto& [sig, ops] : table_) n += ops.size();
        return n;
    }

    const Signature& signature(const OpId& op) const {
        auto it = sig_of_.find(op);
        if (it == sig_of_.end()) throw OperadError("unknown operation " + op);
        return it->second;
    }
    std::size_t arity(const OpId& op) const { return signature(op).arity(); }

    OpId unit(const Colour& c) const {
        auto it = units_.find(c);
        if (it == units_.end()) throw OperadError("no unit at colour " + c);
        return it->second;
    }
    bool is_unit(const OpId& op) const {
        const auto& s = signature(op);
        return s.arity() == 1 && units_.count(s.output) && units_.at(s.output) == op;
    }

    bool has_composite(const OpId& parent, const std::vector<OpId>& children) const {
        return comp_.count({parent, children}) > 0;
    }
    OpId compose(const OpId& parent, const std::vector<OpId>& children) const {
        auto it = comp_.find({parent, children});
        if (it == comp_.end())
            throw OperadError("composite not defined for " + parent +
                              (trunc_ ? " (operad is arity-truncated)" : ""));
        return it->second;
    }

    OpId sigma(const OpId& op, const Perm& p) const {
        if (p == identity_perm(p.size())) return op;
        auto it = sigma_.find({op, p});
        if (it == sigma_.end()) throw OperadError("sigma action missing on " + op);
        return it->second;
    }

    // compose along a single input position, padding with units
    OpId compose_at(const OpId& parent, std::size_t position, const OpId& child) const {
        const auto& sig = signature(parent);
        std::vector<OpId> children;
        for (std::size_t i = 0; i < sig.arity(); ++i)
            children.push_back(i == position ? child : unit(sig.inputs[i]));
        return compose(parent, children);
    }

    std::optional<std::size_t> arity_truncation() const { return trunc_; }

    std::size_t max_arity() const {
        std::size_t m = 0;
        for (const auto& [sig, ops] : table_)
            if (!ops.empty()) m = std::max(m, sig.arity());
        return m;
    }

    // is the composite of these arities inside the carrier?
    bool within_truncation(std::size_t total_arity) const {
        return !trunc_ || total_arity <= *trunc_;
    }

    friend bool operator==(const FiniteOperad& a, const FiniteOperad& b) {
        return a.colours_ == b.colours_ && a.table_ == b.table_ && a.units_ == b.units_ &&
               a.comp_ == b.comp_ && a.sigma_ == b.sigma_;
    }

private:
    std::vector<Colour> colours_;
    std::set<Colour> colour_set_;
    std::map<Signature, std::vector<OpId>> table_;
    std::map<OpId, Signature> sig_of_;
    std::map<Colour, OpId> units_;
    std::map<std::pair<OpId, std::vector<OpId>>, OpId> comp_;
    std::map<std::pair<OpId, Perm>, OpId> sigma_;
    std::optional<std::size_t> trunc_;
};

// fill in the symmetric actions of an operad whose table already contains all
// the permuted operations, identified by a callback producing the image op
template <typename F>
inline void generate_sigma_table(FiniteOperad& p, F&& image_of) {
    for (const auto& op : p.all_ops()) {
        std::size_t n = p.arity(op);
        for (const auto& perm : all_perms(n))
            p.set_sigma(op, perm, image_of(op, perm));
    }
}

// ---------------------------------------------------------------------------
// axiom checking

struct AxiomReport {
    bool ok = true;
    std::string violation;  // description of the first failure

    explicit operator bool() const { return ok; }
};

namespace detail {
inline AxiomReport fail(std::string what) { return {false, std::move(what)}; }

// enumerate all tuples of ops matching the given input colours
inline void composable_tuples(const FiniteOperad& p, const std::vector<Colour>& inputs,
                              std::size_t slot, std::vector<OpId>& cur,
                              const std::function<void(const std::vector<OpId>&)>& fn) {
    if (slot == inputs.size()) {
        fn(cur);
        return;
    }
    for (const auto& [sig, ops] : p.op_table()) {
        if (sig.output != inputs[slot]) continue;
        for (const auto& op : ops) {
            cur.push_back(op);
            composable_tuples(p, inputs, slot + 1, cur, fn);
            cur.pop_back();
        }
    }
}
}  // namespace detail

struct AxiomCheckOptions {
    // number of inner tuples tried per (f, g-tuple) pair in the associativity
    // sweep; the default is fully exhaustive
    std::size_t assoc_tuples_per_pair = static_cast<std::size_t>(-1);
};

inline AxiomReport check_axioms(const FiniteOperad& p, AxiomCheckOptions opt = {}) {
    using detail::fail;
    // units present with the right signatures
    for (const auto& c : p.colours()) {
        OpId u;
        try {
            u = p.unit(c);
        } catch (const OperadError&) {
            return fail("missing unit at colour " + c);
        }
        if (!(p.signature(u) == Signature{{c}, c}))
            return fail("unit at " + c + " has the wrong signature");
    }
    // sigma is a right action
    for (const auto& op : p.all_ops()) {
        std::size_t n = p.arity(op);
        if (n > 5) continue;
        const auto& sig = p.signature(op);
        for (const auto& s : all_perms(n)) {
            OpId im;
            try {
                im = p.sigma(op, s);
            } catch (const OperadError&) {
                return fail("sigma action missing on " + op);
            }
            if (!(p.signature(im) == Signature{apply_perm(s, sig.inputs), sig.output}))
                return fail("sigma image of " + op + " has the wrong signature");
            for (const auto& t : all_perms(n))
                if (p.sigma(op, compose_perms(s, t)) != p.sigma(p.sigma(op, s), t))
                    return fail("sigma is not a right action on " + op);
        }
    }
    AxiomReport report;
    auto for_tuples = [&](const std::vector<Colour>& inputs, auto&& fn) {
        std::vector<OpId> cur;
        detail::composable_tuples(p, inputs, 0, cur, fn);
    };
    // unit laws and totality of composition
    for (const auto& f : p.all_ops()) {
        const auto& sig = p.signature(f);
        std::vector<OpId> units;
        for (const auto& c : sig.inputs) units.push_back(p.unit(c));
        if (!p.has_composite(f, units)) return fail("composite of " + f + " with units missing");
        if (p.compose(f, units) != f) return fail("right unit law fails on " + f);
        if (!p.has_composite(p.unit(sig.output), {f}) || p.compose(p.unit(sig.output), {f}) != f)
            return fail("left unit law fails on " + f);
    }
    if (!report.ok) return report;
    // composition closure, signatures, associativity, equivariance
    for (const auto& f : p.all_ops()) {
        if (!report.ok) break;
        const auto& sig = p.signature(f);
        for_tuples(sig.inputs, [&](const std::vector<OpId>& gs) {
            if (!report.ok) return;
            std::vector<Colour> mid_inputs;
            std::vector<std::size_t> sizes;
            for (const auto& g : gs) {
                const auto& gsig = p.signature(g);
                mid_inputs.insert(mid_inputs.end(), gsig.inputs.begin(), gsig.inputs.end());
                sizes.push_back(gsig.arity());
            }
            if (!p.within_truncation(mid_inputs.size())) return;
            if (!p.has_composite(f, gs)) {
                report = fail("composition not closed on " + f);
                return;
            }
            OpId fg = p.compose(f, gs);
            if (!(p.signature(fg) == Signature{mid_inputs, sig.output})) {
                report = fail("composite of " + f + " has the wrong signature");
                return;
            }
            // equivariance in the parent
            for (const auto& s : all_perms(sig.arity())) {
                std::vector<OpId> gs_s = apply_perm(s, gs);
                if (!p.has_composite(p.sigma(f, s), gs_s)) {
                    report = fail("composition not closed under sigma on " + f);
                    return;
                }
                if (p.compose(p.sigma(f, s), gs_s) != p.sigma(fg, block_perm(s, sizes))) {
                    report = fail("parent equivariance fails on " + f);
                    return;
                }
            }
            // equivariance in the children (one child at a time is enough to
            // generate, but check the simultaneous form as stated)
            std::vector<std::vector<Perm>> child_perms;
            bool small = mid_inputs.size() <= 6;
            if (small) {
                for (const auto& g : gs) {
                    auto ps = all_perms(p.arity(g));
                    child_perms.push_back(ps);
                }
                std::vector<std::size_t> idx(gs.size(), 0);
                for (;;) {
                    std::vector<OpId> tg;
                    std::vector<Perm> ts;
                    for (std::size_t i = 0; i < gs.size(); ++i) {
                        ts.push_back(child_perms[i][idx[i]]);
                        tg.push_back(p.sigma(gs[i], ts.back()));
                    }
                    if (p.compose(f, tg) != p.sigma(fg, direct_sum_perms(ts))) {
                        report = fail("child equivariance fails on " + f);
                        return;
                    }
                    std::size_t k = 0;
                    while (k < idx.size() && ++idx[k] == child_perms[k].size()) idx[k++] = 0;
                    if (k == idx.size()) break;
                }
            }
            // associativity: compose with one more layer
            std::size_t budget = opt.assoc_tuples_per_pair;
            for_tuples(mid_inputs, [&](const std::vector<OpId>& hs) {
                if (!report.ok || budget == 0) return;
                --budget;
                std::size_t total = 0;
                for (const auto& h : hs) total += p.arity(h);
                if (!p.within_truncation(total)) return;
                OpId lhs = p.compose(fg, hs);
                std::vector<OpId> inner;
                std::size_t off = 0;
                for (std::size_t i = 0; i < gs.size(); ++i) {
                    std::vector<OpId> part(hs.begin() + off, hs.begin() + off + sizes[i]);
                    inner.push_back(p.compose(gs[i], part));
                    off += sizes[i];
                }
                OpId rhs = p.compose(f, inner);
                if (lhs != rhs) report = fail("associativity fails on " + f);
            });
        });
    }
    return report;
}

// ---------------------------------------------------------------------------
// standard operads

// free operad on a tree: colours are the edges of T, and there is exactly one
// operation for every subtree of T and ordering of its leaves
inline OpId free_op_name(const Edge& root, const std::vector<Edge>& leaves) {
    std::string s = root + "<-(";
    for (std::size_t i = 0; i < leaves.size(); ++i) s += (i ? "," : "") + leaves[i];
    return s + ")";
}

inline FiniteOperad free_operad(const Tree& t) {
    FiniteOperad p;
    for (const auto& e : t.edges()) p.add_colour(e);
    for (const auto& c : t.edges()) {
        for (const auto& frontier : subtree_frontiers(t, c)) {
            std::vector<Edge> fr(frontier.begin(), frontier.end());
            std::sort(fr.begin(), fr.end());
            do p.add_op(free_op_name(c, fr), {fr, c});
            while (std::next_permutation(fr.begin(), fr.end()));
        }
    }
    for (const auto& e : t.edges()) p.set_unit(e, free_op_name(e, {e}));
    // composition grafts subtrees; sigma permutes the recorded leaf order
    for (const auto& op : p.all_ops()) {
        const auto& sig = p.signature(op);
        for (const auto& perm : all_perms(sig.arity()))
            p.set_sigma(op, perm, free_op_name(sig.output, apply_perm(perm, sig.inputs)));
    }
    auto close = [&](const OpId& parent, const std::vector<OpId>& children) {
        const auto& psig = p.signature(parent);
        std::vector<Edge> leaves;
        for (const auto& ch : children) {
            const auto& csig = p.signature(ch);
            leaves.insert(leaves.end(), csig.inputs.begin(), csig.inputs.end());
        }
        p.set_composite(parent, children, free_op_name(psig.output, leaves));
    };
    for (const auto& f : p.all_ops()) {
        const auto& sig = p.signature(f);
        std::vector<OpId> cur;
        detail::composable_tuples(p, sig.inputs, 0, cur,
                                  [&](const std::vector<OpId>& gs) { close(f, gs); });
    }
    return p;
}

// terminal operad truncated at the given arity: one colour, one operation in
// every arity up to the bound
inline FiniteOperad terminal_operad(std::size_t max_arity) {
    FiniteOperad p;
    p.add_colour("*");
    for (std::size_t n = 0; n <= max_arity; ++n)
        p.add_op("u" + std::to_string(n), {std::vector<Colour>(n, "*"), "*"});
    p.set_unit("*", "u1");
    p.set_arity_truncation(max_arity);
    for (std::size_t n = 0; n <= max_arity; ++n)
        for (const auto& perm : all_perms(n)) p.set_sigma("u" + std::to_string(n), perm, "u" + std::to_string(n));
    for (const auto& f : p.all_ops()) {
        std::vector<OpId> cur;
        detail::composable_tuples(p, p.signature(f).inputs, 0, cur, [&](const std::vector<OpId>& gs) {
            std::size_t total = 0;
            for (const auto& g : gs) total += p.arity(g);
            if (total <= max_arity) p.set_composite(f, gs, "u" + std::to_string(total));
        });
    }
    return p;
}

// ---------------------------------------------------------------------------
// morphisms of operads

struct OperadMorphism {
    const FiniteOperad* source = nullptr;
    const FiniteOperad* target = nullptr;
    std::map<Colour, Colour> colour_map;
    std::map<OpId, OpId> op_map;

    const Colour& operator()(const Colour& c) const { return colour_map.at(c); }
    const OpId& at(const OpId& op) const { return op_map.at(op); }

    static OperadMorphism identity(const FiniteOperad& p) {
        OperadMorphism m{&p, &p, {}, {}};
        for (const auto& c : p.colours()) m.colour_map[c] = c;
        for (const auto& op : p.all_ops()) m.op_map[op] = op;
        return m;
    }

    bool valid(std::string* why = nullptr) const {
        auto bad = [&](const std::string& msg) {
            if (why) *why = msg;
            return false;
        };
        for (const auto& c : source->colours())
            if (!colour_map.count(c) || !target->has_colour(colour_map.at(c)))
                return bad("colour " + c + " not mapped");
        for (const auto& op : source->all_ops()) {
            if (!op_map.count(op)) return bad("operation " + op + " not mapped");
            const auto& s = source->signature(op);
            Signature mapped{{}, colour_map.at(s.output)};
            for (const auto& c : s.inputs) mapped.inputs.push_back(colour_map.at(c));
            if (!(target->signature(op_map.at(op)) == mapped))
                return bad("operation " + op + " maps with the wrong signature");
        }
        for (const auto& c : source->colours())
            if (op_map.at(source->unit(c)) != target->unit(colour_map.at(c)))
                return bad("unit at " + c + " not preserved");
        for (const auto& op : source->all_ops())
            for (const auto& perm : all_perms(source->arity(op)))
                if (op_map.at(source->sigma(op, perm)) != target->sigma(op_map.at(op), perm))
                    return bad("sigma not preserved on " + op);
        for (const auto& f : source->all_ops()) {
            std::vector<OpId> cur;
            bool ok = true;
            detail::composable_tuples(*source, source->signature(f).inputs, 0, cur,
                                      [&](const std::vector<OpId>& gs) {
                                          if (!ok) return;
                                          std::size_t total = 0;
                                          for (const auto& g : gs) total += source->arity(g);
                                          if (!source->within_truncation(total)) return;
                                          if (!source->has_composite(f, gs)) return;
                                          std::vector<OpId> mgs;
                                          for (const auto& g : gs) mgs.push_back(op_map.at(g));
                                          ok = target->has_composite(op_map.at(f), mgs) &&
                                               op_map.at(source->compose(f, gs)) ==
                                                   target->compose(op_map.at(f), mgs);
                                      });
            if (!ok) return bad("composition not preserved on " + f);
        }
        return true;
    }

    OperadMorphism then(const OperadMorphism& g) const {
        OperadMorphism out{source, g.target, {}, {}};
        for (const auto& [a, b] : colour_map) out.colour_map[a] = g.colour_map.at(b);
        for (const auto& [a, b] : op_map) out.op_map[a] = g.op_map.at(b);
        return out;
    }
};

// exhaustive isomorphism search between small operads
inline std::optional<OperadMorphism> find_operad_isomorphism(const FiniteOperad& a,
                                                             const FiniteOperad& b) {
    if (a.colours().size() != b.colours().size() || a.op_count() != b.op_count()) return std::nullopt;
    std::vector<Colour> ca = a.colours(), cb = b.colours();
    std::sort(cb.begin(), cb.end());
    do {
        std::map<Colour, Colour> cmap;
        for (std::size_t i = 0; i < ca.size(); ++i) cmap[ca[i]] = cb[i];
        // group b-ops by mapped signature and try bijections signature-wise
        bool sig_ok = true;
        std::vector<std::pair<std::vector<OpId>, std::vector<OpId>>> groups;
        for (const auto& [sig, ops] : a.op_table()) {
            Signature mapped{{}, cmap.at(sig.output)};
            for (const auto& c : sig.inputs) mapped.inputs.push_back(cmap.at(c));
            const auto& bops = b.ops(mapped);
            if (bops.size() != ops.size()) {
                sig_ok = false;
                break;
            }
            if (!ops.empty()) groups.push_back({ops, bops});
        }
        if (!sig_ok) continue;
        // backtrack over per-group bijections
        std::function<bool(std::size_t, std::map<OpId, OpId>&)> go =
            [&](std::size_t gi, std::map<OpId, OpId>& omap) -> bool {
            if (gi == groups.size()) {
                OperadMorphism m{&a, &b, cmap, omap};
                return m.valid();
            }
            const auto& [aops, bops] = groups[gi];
            Perm p = identity_perm(aops.size());
            std::sort(p.begin(), p.end());
            do {
                for (std::size_t i = 0; i < aops.size(); ++i) omap[aops[i]] = bops[p[i]];
                if (go(gi + 1, omap)) return true;
            } while (std::next_permutation(p.begin(), p.end()));
            for (const auto& op : aops) omap.erase(op);
            return false;
        };
        std::map<OpId, OpId> omap;
        if (go(0, omap)) return OperadMorphism{&a, &b, cmap, omap};
    } while (std::next_permutation(cb.begin(), cb.end()));
    return std::nullopt;
}

}  // namespace dendro

#endif  // DENDRO_OPERAD_HPP_
