/* category.hpp -- finite categories, functors out of finite products, and
 * natural transformations, with explicit composition tables.
 */

#ifndef DENDRO_CATEGORY_HPP_
#define DENDRO_CATEGORY_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/simpset.hpp"

namespace dendro {

struct CategoryError : std::runtime_error {
    explicit CategoryError(const std::string& what) : std::runtime_error(what) {}
};

using Ob = std::string;
using MorId = std::string;

class FiniteCategory {
public:
    void add_object(const Ob& a) {
        if (ob_set_.insert(a).second) objects_.push_back(a);
    }
    void add_morphism(const MorId& f, const Ob& src, const Ob& dst) {
        add_object(src);
        add_object(dst);
        if (mor_.count(f)) throw CategoryError("morphism " + f + " declared twice");
        mor_[f] = {src, dst};
        mor_order_.push_back(f);
    }
    void set_identity(const Ob& a, const MorId& f) { id_[a] = f; }
    void set_composite(const MorId& g, const MorId& f, const MorId& gf) { comp_[{g, f}] = gf; }

    const std::vector<Ob>& objects() const { return objects_; }
    const std::vector<MorId>& morphisms() const { return mor_order_; }
    bool has_object(const Ob& a) const { return ob_set_.count(a) > 0; }

    const Ob& source(const MorId& f) const { return mor_.at(f).first; }
    const Ob& target(const MorId& f) const { return mor_.at(f).second; }
    MorId identity(const Ob& a) const {
        auto it = id_.find(a);
        if (it == id_.end()) throw CategoryError("no identity at " + a);
        return it->second;
    }
    bool is_identity(const MorId& f) const { return id_.count(source(f)) && id_.at(source(f)) == f; }

    // g after f
    MorId compose(const MorId& g, const MorId& f) const {
        auto it = comp_.find({g, f});
        if (it == comp_.end()) throw CategoryError("composite " + g + " o " + f + " missing");
        return it->second;
    }

    std::vector<MorId> hom(const Ob& a, const Ob& b) const {
        std::vector<MorId> out;
        for (const auto& f : mor_order_)
            if (source(f) == a && target(f) == b) out.push_back(f);
        return out;
    }

    bool check_axioms(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        for (const auto& a : objects_) {
            if (!id_.count(a)) return bad("no identity at " + a);
            const MorId& i = id_.at(a);
            if (source(i) != a || target(i) != a) return bad("identity at " + a + " is not an endomorphism");
        }
        for (const auto& f : mor_order_) {
            if (compose(identity(target(f)), f) != f) return bad("left unit fails on " + f);
            if (compose(f, identity(source(f))) != f) return bad("right unit fails on " + f);
            for (const auto& g : mor_order_) {
                if (source(g) != target(f)) continue;
                MorId gf = compose(g, f);
                if (source(gf) != source(f) || target(gf) != target(g))
                    return bad("composite " + g + " o " + f + " has wrong endpoints");
                for (const auto& h : mor_order_) {
                    if (source(h) != target(g)) continue;
                    if (compose(h, gf) != compose(compose(h, g), f))
                        return bad("associativity fails at " + h + ", " + g + ", " + f);
                }
            }
        }
        return true;
    }

    std::optional<MorId> inverse(const MorId& f) const {
        for (const auto& g : hom(target(f), source(f)))
            if (compose(g, f) == identity(source(f)) && compose(f, g) == identity(target(f)))
                return g;
        return std::nullopt;
    }

    bool is_groupoid() const {
        for (const auto& f : mor_order_)
            if (!inverse(f)) return false;
        return true;
    }

    friend bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
        return a.objects_ == b.objects_ && a.mor_ == b.mor_ && a.id_ == b.id_ && a.comp_ == b.comp_;
    }

    static FiniteCategory terminal() {
        FiniteCategory c;
        c.add_morphism("1", "*", "*");
        c.set_identity("*", "1");
        c.set_composite("1", "1", "1");
        return c;
    }

    static FiniteCategory discrete(const std::vector<Ob>& obs) {
        FiniteCategory c;
        for (const auto& a : obs) {
            c.add_morphism("1" + a, a, a);
            c.set_identity(a, "1" + a);
            c.set_composite("1" + a, "1" + a, "1" + a);
        }
        return c;
    }

private:
    std::vector<Ob> objects_;
    std::set<Ob> ob_set_;
    std::map<MorId, std::pair<Ob, Ob>> mor_;
    std::vector<MorId> mor_order_;
    std::map<Ob, MorId> id_;
    std::map<std::pair<MorId, MorId>, MorId> comp_;
};

// a functor from a finite product of finite categories
struct ProductFunctor {
    std::vector<const FiniteCategory*> sources;
    const FiniteCategory* target = nullptr;
    std::map<std::vector<Ob>, Ob> on_objects;
    std::map<std::vector<MorId>, MorId> on_morphisms;

    Ob operator()(const std::vector<Ob>& obs) const { return on_objects.at(obs); }
    MorId apply(const std::vector<MorId>& ms) const { return on_morphisms.at(ms); }

    bool check_functor(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        // totality on objects and identities
        std::vector<std::vector<Ob>> tuples{{}};
        for (const auto* c : sources) {
            std::vector<std::vector<Ob>> nxt;
            for (const auto& base : tuples)
                for (const auto& a : c->objects()) {
                    auto t = base;
                    t.push_back(a);
                    nxt.push_back(std::move(t));
                }
            tuples = std::move(nxt);
        }
        for (const auto& t : tuples) {
            if (!on_objects.count(t)) return bad("functor undefined on an object tuple");
            std::vector<MorId> ids;
            for (std::size_t i = 0; i < t.size(); ++i) ids.push_back(sources[i]->identity(t[i]));
            if (!on_morphisms.count(ids) || on_morphisms.at(ids) != target->identity(on_objects.at(t)))
                return bad("functor does not preserve an identity");
        }
        // morphism tuples: endpoints and composition
        std::vector<std::vector<MorId>> mtuples{{}};
        for (const auto* c : sources) {
            std::vector<std::vector<MorId>> nxt;
            for (const auto& base : mtuples)
                for (const auto& f : c->morphisms()) {
                    auto t = base;
                    t.push_back(f);
                    nxt.push_back(std::move(t));
                }
            mtuples = std::move(nxt);
        }
        for (const auto& ms : mtuples) {
            if (!on_morphisms.count(ms)) return bad("functor undefined on a morphism tuple");
            std::vector<Ob> srcs, dsts;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                srcs.push_back(sources[i]->source(ms[i]));
                dsts.push_back(sources[i]->target(ms[i]));
            }
            const MorId& im = on_morphisms.at(ms);
            if (target->source(im) != on_objects.at(srcs) || target->target(im) != on_objects.at(dsts))
                return bad("functor image has wrong endpoints");
            for (const auto& ns : mtuples) {
                bool composable = true;
                for (std::size_t i = 0; i < ms.size(); ++i)
                    composable &= sources[i]->source(ns[i]) == sources[i]->target(ms[i]);
                if (!composable) continue;
                std::vector<MorId> comp;
                for (std::size_t i = 0; i < ms.size(); ++i)
                    comp.push_back(sources[i]->compose(ns[i], ms[i]));
                if (on_morphisms.at(comp) != target->compose(on_morphisms.at(ns), on_morphisms.at(ms)))
                    return bad("functor does not preserve composition");
            }
        }
        return true;
    }
};

// the nerve of a finite category, up to the given simplicial dimension
inline SimpSet nerve_simpset(const FiniteCategory& c, std::size_t dim_bound) {
    SimpSet s(dim_bound);
    auto encode = [&](const std::vector<MorId>& chain, const Ob& start) {
        std::string out = start;
        for (const auto& f : chain) out += "|" + f;
        return out;
    };
    // n-simplices: composable chains of n morphisms (with the start object for n=0)
    std::vector<std::vector<std::pair<std::vector<MorId>, Ob>>> chains(dim_bound + 1);
    for (const auto& a : c.objects()) chains[0].push_back({{}, a});
    for (std::size_t n = 1; n <= dim_bound; ++n)
        for (const auto& [chain, start] : chains[n - 1])
            for (const auto& f : c.morphisms()) {
                Ob at = chain.empty() ? start : c.target(chain.back());
                if (c.source(f) != at) continue;
                auto longer = chain;
                longer.push_back(f);
                chains[n].push_back({longer, start});
            }
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& [chain, start] : chains[n]) s.add_simplex(n, encode(chain, start));
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& [chain, start] : chains[n]) {
            SimplexId id = encode(chain, start);
            if (n > 0)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<MorId> f;
                    Ob st = start;
                    if (i == 0) {
                        f.assign(chain.begin() + 1, chain.end());
                        st = c.target(chain[0]);
                    } else if (i == n) {
                        f.assign(chain.begin(), chain.end() - 1);
                    } else {
                        f.assign(chain.begin(), chain.end());
                        f[i - 1] = c.compose(chain[i], chain[i - 1]);
                        f.erase(f.begin() + i);
                    }
                    s.set_face(n, id, i, encode(f, st));
                }
            if (n + 1 <= dim_bound)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<MorId> f = chain;
                    Ob at = start;
                    for (std::size_t j = 0; j < i; ++j) at = c.target(chain[j]);
                    f.insert(f.begin() + i, c.identity(at));
                    s.set_degeneracy(n, id, i, encode(f, start));
                }
        }
    return s;
}

}  // namespace dendro

#endif  // DENDRO_CATEGORY_HPP_
