// make_fixtures -- writes sample JSON inputs for the command line interface.

#include <fstream>
#include <iostream>

#include "dendro/json_io.hpp"

using namespace dendro;
using nlohmann::json;

namespace {

FiniteCategory walking_iso() {
    FiniteCategory c;
    c.add_morphism("1A", "A", "A");
    c.add_morphism("1B", "B", "B");
    c.add_morphism("u", "A", "B");
    c.add_morphism("v", "B", "A");
    c.set_identity("A", "1A");
    c.set_identity("B", "1B");
    c.set_composite("1A", "1A", "1A");
    c.set_composite("1B", "1B", "1B");
    c.set_composite("u", "1A", "u");
    c.set_composite("1B", "u", "u");
    c.set_composite("v", "1B", "v");
    c.set_composite("1A", "v", "v");
    c.set_composite("v", "u", "1A");
    c.set_composite("u", "v", "1B");
    return c;
}

CatAlgebra xor_algebra(const FiniteOperad& s, const FiniteCategory& cat) {
    CatAlgebra f(&s);
    for (const auto& c : s.colours()) f.set_category(c, cat);
    OpId tw = free_op_name("r", {"l2", "l1"});
    auto obj = [](const Ob& a, const Ob& b) -> Ob { return a == b ? "A" : "B"; };
    auto mor = [&](const MorId& m, const MorId& n) -> MorId {
        Ob src = cat.source(m) == cat.source(n) ? "A" : "B";
        Ob dst = cat.target(m) == cat.target(n) ? "A" : "B";
        return cat.hom(src, dst).front();
    };
    for (const auto& op : s.all_ops()) {
        const auto& sig = s.signature(op);
        if (sig.arity() == 1) {
            for (const auto& o : cat.objects()) f.set_object_action(op, {o}, o);
            for (const auto& m : cat.morphisms()) f.set_morphism_action(op, {m}, m);
            continue;
        }
        bool twisted = op == tw;
        for (const auto& a : cat.objects())
            for (const auto& b : cat.objects())
                f.set_object_action(op, {a, b}, twisted ? obj(b, a) : obj(a, b));
        for (const auto& m : cat.morphisms())
            for (const auto& n : cat.morphisms())
                f.set_morphism_action(op, {m, n}, twisted ? mor(n, m) : mor(m, n));
    }
    return f;
}

void write(const std::string& dir, const std::string& name, const json& j) {
    std::ofstream out(dir + "/" + name);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << dir + "/" + name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : ".";

    FiniteOperad free_c2 = free_operad(corolla(2));
    write(dir, "free_c2.json", operad_to_json(free_c2));

    // a left fibration: the xor double cover of the free binary operad
    FiniteCategory wi = walking_iso();
    CatAlgebra xa = xor_algebra(free_c2, wi);
    Grothendieck g(free_c2, xa);
    write(dir, "xor_cover_map.json", operad_map_to_json(g.projection(), "natural"));
    json alg;
    alg["operad"] = operad_to_json(free_c2);
    alg["algebra"] = cat_algebra_to_json(xa);
    write(dir, "xor_cover_algebra.json", alg);

    // a planted failure: a map over the idempotent monoid with a missing lift
    FiniteOperad sm;
    sm.add_op("1s", {{"s"}, "s"});
    sm.add_op("m", {{"s"}, "s"});
    sm.set_unit("s", "1s");
    sm.set_sigma("1s", {0}, "1s");
    sm.set_sigma("m", {0}, "m");
    sm.set_composite("1s", {"1s"}, "1s");
    sm.set_composite("1s", {"m"}, "m");
    sm.set_composite("m", {"1s"}, "m");
    sm.set_composite("m", {"m"}, "m");
    FiniteOperad x;
    x.add_op("1A", {{"A"}, "A"});
    x.add_op("1B", {{"B"}, "B"});
    x.add_op("u", {{"A"}, "B"});
    x.set_unit("A", "1A");
    x.set_unit("B", "1B");
    for (const auto& f : x.all_ops()) x.set_sigma(f, {0}, f);
    x.set_composite("1A", {"1A"}, "1A");
    x.set_composite("1B", {"1B"}, "1B");
    x.set_composite("u", {"1A"}, "u");
    x.set_composite("1B", {"u"}, "u");
    // the operads must live inside the description file
    json planted;
    planted["source"] = operad_to_json(x);
    planted["target"] = operad_to_json(sm);
    planted["colour_map"] = {{"A", "s"}, {"B", "s"}};
    planted["op_map"] = {{"1A", "1s"}, {"1B", "1s"}, {"u", "m"}};
    planted["marking"] = "natural";
    write(dir, "planted_gap_map.json", planted);

    // a point tree algebra over the two-vertex tree
    json ta;
    ta["tree"] = "(node r (edge b) (node e (edge a1) (edge a2)))";
    ta["dim"] = 3;
    ta["point"] = true;
    write(dir, "point_algebra.json", ta);

    return 0;
}
