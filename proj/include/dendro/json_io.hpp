/* json_io.hpp -- JSON schemas for operads, maps, algebras, and bounded
 * dendroidal sets.
 */

#ifndef DENDRO_JSON_IO_HPP_
#define DENDRO_JSON_IO_HPP_

#include <json.hpp>

#include "dendro/algebra.hpp"
#include "dendro/dendset.hpp"
#include "dendro/groth.hpp"
#include "dendro/maptree.hpp"
#include "dendro/marked.hpp"
#include "dendro/tree_io.hpp"

namespace dendro {

using nlohmann::json;

// ---------------------------------------------------------------------------
// operads

inline json operad_to_json(const FiniteOperad& p) {
    json j;
    j["colours"] = p.colours();
    j["operations"] = json::array();
    for (const auto& [sig, ops] : p.op_table())
        for (const auto& op : ops)
            j["operations"].push_back({{"name", op}, {"inputs", sig.inputs}, {"output", sig.output}});
    j["units"] = json::object();
    for (const auto& c : p.colours()) j["units"][c] = p.unit(c);
    j["symmetry"] = json::array();
    for (const auto& op : p.all_ops())
        for (const auto& perm : all_perms(p.arity(op))) {
            if (perm == identity_perm(perm.size())) continue;
            j["symmetry"].push_back({{"op", op}, {"perm", perm}, {"result", p.sigma(op, perm)}});
        }
    j["composition"] = json::array();
    for (const auto& f : p.all_ops()) {
        std::vector<OpId> cur;
        detail::composable_tuples(p, p.signature(f).inputs, 0, cur,
                                  [&](const std::vector<OpId>& gs) {
                                      if (!p.has_composite(f, gs)) return;
                                      j["composition"].push_back({{"parent", f},
                                                                  {"children", gs},
                                                                  {"result", p.compose(f, gs)}});
                                  });
    }
    if (p.arity_truncation()) j["arity_truncation"] = *p.arity_truncation();
    return j;
}

inline FiniteOperad operad_from_json(const json& j, bool validate = true) {
    FiniteOperad p;
    for (const auto& c : j.at("colours")) p.add_colour(c.get<std::string>());
    for (const auto& o : j.at("operations"))
        p.add_op(o.at("name").get<std::string>(),
                 {o.at("inputs").get<std::vector<Colour>>(), o.at("output").get<Colour>()});
    for (const auto& [c, u] : j.at("units").items()) p.set_unit(c, u.get<std::string>());
    for (const auto& op : p.all_ops()) p.set_sigma(op, identity_perm(p.arity(op)), op);
    if (j.contains("symmetry"))
        for (const auto& s : j.at("symmetry"))
            p.set_sigma(s.at("op").get<std::string>(), s.at("perm").get<Perm>(),
                        s.at("result").get<std::string>());
    if (j.contains("composition"))
        for (const auto& c : j.at("composition"))
            p.set_composite(c.at("parent").get<std::string>(),
                            c.at("children").get<std::vector<OpId>>(),
                            c.at("result").get<std::string>());
    if (j.contains("arity_truncation")) p.set_arity_truncation(j.at("arity_truncation"));
    if (validate) {
        AxiomReport report = check_axioms(p);
        if (!report.ok) throw OperadError("operad failed validation: " + report.violation);
    }
    return p;
}

// ---------------------------------------------------------------------------
// operad maps with optional markings (the input format of `check`)

struct MapDescription {
    FiniteOperad source, target;
    OperadMorphism morphism;  // pointers into source/target
    json marking;             // "flat" | "sharp" | "natural" | {"corollas": [...]}
};

inline json operad_map_to_json(const OperadMorphism& m, const std::string& marking = "natural") {
    json j;
    j["source"] = operad_to_json(*m.source);
    j["target"] = operad_to_json(*m.target);
    j["colour_map"] = m.colour_map;
    j["op_map"] = m.op_map;
    j["marking"] = marking;
    return j;
}

// note: the morphism holds pointers to the operads inside the description, so
// the description must stay alive (and in place) while the morphism is used
inline std::unique_ptr<MapDescription> operad_map_from_json(const json& j, bool validate = true) {
    auto d = std::make_unique<MapDescription>();
    d->source = operad_from_json(j.at("source"), validate);
    d->target = operad_from_json(j.at("target"), validate);
    d->morphism.source = &d->source;
    d->morphism.target = &d->target;
    for (const auto& [a, b] : j.at("colour_map").items()) d->morphism.colour_map[a] = b;
    for (const auto& [a, b] : j.at("op_map").items()) d->morphism.op_map[a] = b;
    d->marking = j.contains("marking") ? j.at("marking") : json("natural");
    if (validate) {
        std::string why;
        if (!d->morphism.valid(&why)) throw OperadError("map failed validation: " + why);
    }
    return d;
}

// ---------------------------------------------------------------------------
// algebras

inline json set_algebra_to_json(const SetAlgebra& f) {
    json j;
    j["values"] = json::object();
    for (const auto& c : f.base().colours()) j["values"][c] = f.value(c);
    j["actions"] = json::array();
    for (const auto& op : f.base().all_ops()) {
        const auto& sig = f.base().signature(op);
        std::vector<std::vector<std::string>> pools;
        for (const auto& c : sig.inputs) pools.push_back(f.value(c));
        detail::for_tuples_of(pools, [&](const std::vector<std::string>& args) {
            j["actions"].push_back({{"op", op}, {"args", args}, {"result", f.act(op, args)}});
        });
    }
    return j;
}

inline SetAlgebra set_algebra_from_json(const FiniteOperad& base, const json& j,
                                        bool validate = true) {
    SetAlgebra f(&base);
    for (const auto& [c, v] : j.at("values").items())
        f.set_value(c, v.get<std::vector<std::string>>());
    for (const auto& a : j.at("actions"))
        f.set_action(a.at("op").get<std::string>(), a.at("args").get<std::vector<std::string>>(),
                     a.at("result").get<std::string>());
    if (validate) {
        std::string why;
        if (!f.check_algebra(&why)) throw AlgebraError("algebra failed validation: " + why);
    }
    return f;
}

inline json category_to_json(const FiniteCategory& c) {
    json j;
    j["objects"] = c.objects();
    j["morphisms"] = json::array();
    for (const auto& m : c.morphisms())
        j["morphisms"].push_back({{"name", m}, {"src", c.source(m)}, {"dst", c.target(m)}});
    j["identities"] = json::object();
    for (const auto& o : c.objects()) j["identities"][o] = c.identity(o);
    j["composition"] = json::array();
    for (const auto& f : c.morphisms())
        for (const auto& g : c.morphisms()) {
            if (c.source(g) != c.target(f)) continue;
            j["composition"].push_back({{"g", g}, {"f", f}, {"result", c.compose(g, f)}});
        }
    return j;
}

inline FiniteCategory category_from_json(const json& j) {
    FiniteCategory c;
    for (const auto& m : j.at("morphisms"))
        c.add_morphism(m.at("name").get<std::string>(), m.at("src").get<std::string>(),
                       m.at("dst").get<std::string>());
    for (const auto& o : j.at("objects")) c.add_object(o.get<std::string>());
    for (const auto& [o, i] : j.at("identities").items()) c.set_identity(o, i.get<std::string>());
    for (const auto& comp : j.at("composition"))
        c.set_composite(comp.at("g").get<std::string>(), comp.at("f").get<std::string>(),
                        comp.at("result").get<std::string>());
    return c;
}

inline json cat_algebra_to_json(const CatAlgebra& f) {
    json j;
    j["categories"] = json::object();
    for (const auto& c : f.base().colours()) j["categories"][c] = category_to_json(f.category(c));
    j["object_actions"] = json::array();
    j["morphism_actions"] = json::array();
    for (const auto& op : f.base().all_ops()) {
        const auto& sig = f.base().signature(op);
        f.for_object_tuples(sig.inputs, [&](const std::vector<Ob>& objs) {
            j["object_actions"].push_back(
                {{"op", op}, {"args", objs}, {"result", f.act_ob(op, objs)}});
        });
        f.for_morphism_tuples(sig.inputs, [&](const std::vector<MorId>& ms) {
            j["morphism_actions"].push_back(
                {{"op", op}, {"args", ms}, {"result", f.act_mor(op, ms)}});
        });
    }
    return j;
}

inline CatAlgebra cat_algebra_from_json(const FiniteOperad& base, const json& j,
                                        bool validate = true) {
    CatAlgebra f(&base);
    for (const auto& [c, cj] : j.at("categories").items()) f.set_category(c, category_from_json(cj));
    for (const auto& a : j.at("object_actions"))
        f.set_object_action(a.at("op").get<std::string>(),
                            a.at("args").get<std::vector<std::string>>(),
                            a.at("result").get<std::string>());
    for (const auto& a : j.at("morphism_actions"))
        f.set_morphism_action(a.at("op").get<std::string>(),
                              a.at("args").get<std::vector<std::string>>(),
                              a.at("result").get<std::string>());
    if (validate) {
        std::string why;
        if (!f.check_strict(&why)) throw AlgebraError("algebra failed validation: " + why);
    }
    return f;
}

inline json cleavage_to_json(const Cleavage& k) {
    json j = json::array();
    for (const auto& [key, xi] : k.table())
        j.push_back({{"op", key.first}, {"lifts", key.second}, {"lift", xi}});
    return j;
}

// ---------------------------------------------------------------------------
// bounded dendroidal sets: levels and restriction tables along the faces

inline json dendset_to_json(const DendSet& x) {
    json j;
    j["bounds"] = {{"vertices", x.bounds().vertices}, {"arity", x.bounds().arity}};
    j["levels"] = json::object();
    j["restrictions"] = json::array();
    for (const auto& shape : x.shapes()) {
        auto key = tree_key(shape);
        j["levels"][key] = x.level(shape);
        for (const auto& f : faces(shape)) {
            for (const auto& id : x.level(shape))
                j["restrictions"].push_back({{"shape", key},
                                             {"face_kind", static_cast<int>(f.label.kind)},
                                             {"face_edge", f.label.edge},
                                             {"dendrex", id},
                                             {"result", x.restrict(f.inclusion, id)}});
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// simplicial sets and tree algebras

inline json simpset_to_json(const SimpSet& s) {
    json j;
    j["dim"] = s.dim_bound();
    j["simplices"] = json::object();
    j["faces"] = json::array();
    j["degeneracies"] = json::array();
    for (std::size_t n = 0; n <= s.dim_bound(); ++n) {
        j["simplices"][std::to_string(n)] = s.simplices(n);
        for (const auto& id : s.simplices(n)) {
            if (n > 0)
                for (std::size_t i = 0; i <= n; ++i)
                    j["faces"].push_back({{"n", n}, {"id", id}, {"i", i}, {"result", s.face(n, id, i)}});
            if (n + 1 <= s.dim_bound())
                for (std::size_t i = 0; i <= n; ++i)
                    j["degeneracies"].push_back(
                        {{"n", n}, {"id", id}, {"i", i}, {"result", s.degeneracy(n, id, i)}});
        }
    }
    return j;
}

inline SimpSet simpset_from_json(const json& j, bool validate = true) {
    SimpSet s(j.at("dim").get<std::size_t>());
    for (const auto& [n, ids] : j.at("simplices").items())
        for (const auto& id : ids) s.add_simplex(std::stoul(n), id.get<std::string>());
    for (const auto& f : j.at("faces"))
        s.set_face(f.at("n").get<std::size_t>(), f.at("id").get<std::string>(),
                   f.at("i").get<std::size_t>(), f.at("result").get<std::string>());
    for (const auto& d : j.at("degeneracies"))
        s.set_degeneracy(d.at("n").get<std::size_t>(), d.at("id").get<std::string>(),
                         d.at("i").get<std::size_t>(), d.at("result").get<std::string>());
    if (validate) {
        std::string why;
        if (!s.check_identities(&why)) throw SimpError("simplicial set failed validation: " + why);
    }
    return s;
}

// tree algebra: {"tree": s-expression, "dim": n, "point": true} or full data
inline TreeAlgebra tree_algebra_from_json(const json& j, bool validate = true) {
    Tree t = parse_tree(j.at("tree").get<std::string>());
    std::size_t dim = j.at("dim").get<std::size_t>();
    if (j.value("point", false)) return point_algebra(t, dim);
    TreeAlgebra a(t, dim);
    for (const auto& [e, sj] : j.at("spaces").items()) a.set_space(e, simpset_from_json(sj, false));
    for (const auto& act : j.at("actions"))
        a.set_action(act.at("vertex").get<std::string>(), act.at("degree").get<std::size_t>(),
                     act.at("args").get<std::vector<SimplexId>>(),
                     act.at("result").get<std::string>());
    if (validate) {
        std::string why;
        if (!a.check_algebra(&why)) throw SimpError("tree algebra failed validation: " + why);
    }
    return a;
}

}  // namespace dendro

#endif  // DENDRO_JSON_IO_HPP_
