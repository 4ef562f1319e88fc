#include <doctest.h>

#include "dendro/anodyne.hpp"
#include "dendro/lifting.hpp"
#include "test_helpers.hpp"

using namespace dendro;
using namespace dendro_test;

// a finite category as an operad with unary operations only
static FiniteOperad category_operad(const FiniteCategory& c) {
    FiniteOperad p;
    for (const auto& a : c.objects()) p.add_colour(a);
    for (const auto& f : c.morphisms()) p.add_op(f, {{c.source(f)}, c.target(f)});
    for (const auto& a : c.objects()) p.set_unit(a, c.identity(a));
    for (const auto& f : c.morphisms()) {
        p.set_sigma(f, {0}, f);
        for (const auto& g : c.morphisms())
            if (c.source(g) == c.target(f)) p.set_composite(g, {f}, c.compose(g, f));
    }
    return p;
}

// the walking isomorphism: two objects with mutually inverse arrows
static FiniteCategory walking_iso() {
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

// the walking arrow: a non-invertible morphism
static FiniteCategory walking_arrow() {
    FiniteCategory c;
    c.add_morphism("1A", "A", "A");
    c.add_morphism("1B", "B", "B");
    c.add_morphism("u", "A", "B");
    c.set_identity("A", "1A");
    c.set_identity("B", "1B");
    c.set_composite("1A", "1A", "1A");
    c.set_composite("1B", "1B", "1B");
    c.set_composite("u", "1A", "u");
    c.set_composite("1B", "u", "u");
    return c;
}

// terminal-category operad (one colour, the unit only)
static FiniteOperad point_operad() { return category_operad(FiniteCategory::terminal()); }

// X over the free operad on C_2: two fibers over each colour, every operation
// coCartesian (a groupoid-style double cover)
struct BinaryCover {
    FiniteOperad base = free_operad(corolla(2));
    FiniteOperad total;
    OperadMorphism proj;

    BinaryCover() {
        // colours r0, r1 over r; a0, a1 over l1; b0, b1 over l2
        for (const auto& c : {"r0", "r1", "a0", "a1", "b0", "b1"}) total.add_colour(c);
        auto unit_of = [&](const std::string& c) { return "1" + c; };
        for (const auto& c : total.colours()) total.add_op(unit_of(c), {{c}, c});
        for (const auto& c : total.colours()) {
            total.set_unit(c, unit_of(c));
            total.set_composite(unit_of(c), {unit_of(c)}, unit_of(c));
        }
        // binary operations: one for each pair of input lifts, output = xor
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j <= 1; ++j) {
                std::string name = "f" + std::to_string(i) + std::to_string(j);
                total.add_op(name, {{"a" + std::to_string(i), "b" + std::to_string(j)},
                                    "r" + std::to_string((i + j) % 2)});
                std::string tw = "g" + std::to_string(j) + std::to_string(i);
                total.add_op(tw, {{"b" + std::to_string(j), "a" + std::to_string(i)},
                                  "r" + std::to_string((i + j) % 2)});
            }
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j <= 1; ++j) {
                std::string f = "f" + std::to_string(i) + std::to_string(j);
                std::string g = "g" + std::to_string(j) + std::to_string(i);
                total.set_sigma(f, {0, 1}, f);
                total.set_sigma(g, {0, 1}, g);
                total.set_sigma(f, {1, 0}, g);
                total.set_sigma(g, {1, 0}, f);
                total.set_composite(f, {"1a" + std::to_string(i), "1b" + std::to_string(j)}, f);
                total.set_composite(g, {"1b" + std::to_string(j), "1a" + std::to_string(i)}, g);
                std::string out = "1r" + std::to_string((i + j) % 2);
                total.set_composite(out.substr(1) == "r0" ? "1r0" : "1r1", {f}, f);
                total.set_composite((i + j) % 2 == 0 ? "1r0" : "1r1", {g}, g);
            }
        proj.source = &total;
        proj.target = &base;
        for (const auto& c : {"r0", "r1"}) proj.colour_map[c] = "r";
        for (const auto& c : {"a0", "a1"}) proj.colour_map[c] = "l1";
        for (const auto& c : {"b0", "b1"}) proj.colour_map[c] = "l2";
        OpId gen = free_op_name("r", {"l1", "l2"});
        OpId tw = free_op_name("r", {"l2", "l1"});
        for (const auto& c : total.colours()) proj.op_map["1" + c] = free_op_name(proj(c), {proj(c)});
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j <= 1; ++j) {
                proj.op_map["f" + std::to_string(i) + std::to_string(j)] = gen;
                proj.op_map["g" + std::to_string(j) + std::to_string(i)] = tw;
            }
    }
};

TEST_SUITE("lifting") {
    TEST_CASE("identity inclusion has exactly one filler") {
        DendSet n = nerve(point_operad(), 3);
        DendMap p = DendMap::identity(n);
        Tree c1 = corolla_shape(1);
        // lift the identity square on the representable of C_1
        DendSet rep = representable(c1, n.bounds());
        CellAssignment bottom = classify_cells(rep, c1, n, n.level(c1).front());
        LiftingProblem prob{rep, rep, p, bottom, bottom};
        CHECK(fillers(prob).size() == 1);
    }

    TEST_CASE("inner horns into a nerve have exactly one filler") {
        FiniteOperad g = category_operad(walking_iso());
        DendSet n = nerve(g, 3);
        DendMap to_point(n, nerve(point_operad(), 3),
                         [](const Tree& shape, const DendrexId&) -> DendrexId {
                             FiniteOperad pt = point_operad();
                             DendSet np = nerve(pt, 3);
                             return np.level(shape).front();
                         });
        int horns = 0;
        for (std::size_t vc = 2; vc <= 3; ++vc)
            for (const auto& t : trees_with_vertices(vc, 1))
                for (const auto& e : t.inner_edges()) {
                    DendSet h = inner_horn(t, e, n.bounds());
                    DendSet rep = representable(t, n.bounds());
                    for (const auto& top : enumerate_maps(h, n)) {
                        CellAssignment bottom;
                        for (const auto& shape : rep.shapes())
                            for (const auto& id : rep.level(shape))
                                bottom[{tree_key(shape), id}] =
                                    to_point(shape, DendrexId{});
                        LiftingProblem prob{h, rep, to_point, top.table(), bottom};
                        CHECK(fillers(prob).size() == 1);
                        ++horns;
                    }
                }
        CHECK(horns > 4);
    }

    TEST_CASE("nerve maps are inner fibrations") {
        BinaryCover cover;
        REQUIRE(cover.proj.valid());
        REQUIRE(check_axioms(cover.total));
        DendMap p = nerve_map(cover.proj, 3);
        CHECK(is_inner_fibration(p, 3).ok);
    }

    TEST_CASE("a boundary inclusion fails inner-horn lifting") {
        Tree v("r", {{{"e", "b"}, "r"}, {{"a1", "a2"}, "e"}});
        DendSet full = representable(v, Bounds{3, 2});
        DendSet bd = boundary(v, Bounds{3, 2});
        DendMap inc = subobject_inclusion(bd, full);
        Verdict verdict = is_inner_fibration(inc, 3);
        CHECK(!verdict.ok);
        CHECK(verdict.witness.has_value());
    }

    TEST_CASE("left fibrations: groupoid covers pass, non-invertible maps fail") {
        SUBCASE("identity is a left fibration") {
            DendSet n = nerve(category_operad(walking_iso()), 3);
            CHECK(is_left_fibration(DendMap::identity(n), 3).ok);
        }
        SUBCASE("the walking iso over the point is a left fibration") {
            FiniteOperad g = category_operad(walking_iso());
            FiniteOperad pt = point_operad();
            OperadMorphism to_pt{&g, &pt, {}, {}};
            for (const auto& c : g.colours()) to_pt.colour_map[c] = "*";
            for (const auto& f : g.all_ops()) to_pt.op_map[f] = "1";
            REQUIRE(to_pt.valid());
            CHECK(is_left_fibration(nerve_map(to_pt, 3), 3).ok);
            CHECK(is_opfibered_in_groupoids(to_pt).ok);
        }
        SUBCASE("the walking arrow over the point is not") {
            FiniteOperad a = category_operad(walking_arrow());
            FiniteOperad pt = point_operad();
            OperadMorphism to_pt{&a, &pt, {}, {}};
            for (const auto& c : a.colours()) to_pt.colour_map[c] = "*";
            for (const auto& f : a.all_ops()) to_pt.op_map[f] = "1";
            REQUIRE(to_pt.valid());
            Verdict lf = is_left_fibration(nerve_map(to_pt, 3), 3);
            CHECK(!lf.ok);
            CHECK(!is_opfibered_in_groupoids(to_pt).ok);
            // agreement between the two routes
            CHECK(lf.ok == is_opfibered_in_groupoids(to_pt).ok);
        }
    }

    TEST_CASE("binary cover is a left fibration and opfibered in groupoids") {
        BinaryCover cover;
        DendMap p = nerve_map(cover.proj, 3);
        Verdict lf = is_left_fibration(p, 3);
        Verdict gf = is_opfibered_in_groupoids(cover.proj);
        CHECK(lf.ok);
        CHECK(gf.ok);
        CHECK(lf.ok == gf.ok);
    }

    TEST_CASE("coCartesian corolla detection agrees with the pullback criterion") {
        BinaryCover cover;
        DendMap p = nerve_map(cover.proj, 3);
        DendSet nx = p.source();
        int checked = 0;
        for (std::size_t n = 0; n <= 2; ++n) {
            const Tree& cn = corolla_shape(n);
            for (const auto& xi : nx.level(cn)) {
                if (is_degenerate(nx, cn, xi)) continue;
                // recover the operation named by this corolla dendrex
                auto [colours, ops] = NerveImpl::decode(xi);
                OpId op = ops.begin()->second;
                bool via_lifting = is_cocartesian_corolla(p, n, xi, 3).ok;
                bool via_pullback = cocart_pullback_criterion(cover.proj, op).ok;
                CHECK(via_lifting == via_pullback);
                ++checked;
            }
        }
        CHECK(checked >= 8);
    }

    TEST_CASE("pullback criterion catches a planted failure") {
        // the walking arrow over the point: u is not coCartesian because
        // precomposition with u is not bijective on hom-sets
        FiniteOperad a = category_operad(walking_arrow());
        FiniteOperad pt = point_operad();
        OperadMorphism to_pt{&a, &pt, {}, {}};
        for (const auto& c : a.colours()) to_pt.colour_map[c] = "*";
        for (const auto& f : a.all_ops()) to_pt.op_map[f] = "1";
        CHECK(cocart_pullback_criterion(to_pt, "1A").ok);
        CHECK(!cocart_pullback_criterion(to_pt, "u").ok);
        // identity operations are always coCartesian
        for (const auto& f : {"1A", "1B"}) CHECK(cocart_pullback_criterion(to_pt, f).ok);
    }

    TEST_CASE("coCartesian fibration verdicts") {
        SUBCASE("left fibrations are coCartesian fibrations") {
            BinaryCover cover;
            DendMap p = nerve_map(cover.proj, 3);
            CHECK(is_cocartesian_fibration(p, 3).ok);
        }
        SUBCASE("the walking arrow over the point is a coCartesian fibration") {
            FiniteOperad a = category_operad(walking_arrow());
            FiniteOperad pt = point_operad();
            OperadMorphism to_pt{&a, &pt, {}, {}};
            for (const auto& c : a.colours()) to_pt.colour_map[c] = "*";
            for (const auto& f : a.all_ops()) to_pt.op_map[f] = "1";
            CHECK(is_cocartesian_fibration(nerve_map(to_pt, 3), 3).ok);
            CHECK(is_opfibered(to_pt).ok);
        }
        SUBCASE("a missing lift is detected and named") {
            // colours A, B over the walking idempotent-free monoid on one
            // generator with sigma = sigma^2 (so composition closes)
            FiniteOperad s;
            s.add_op("1s", {{"s"}, "s"});
            s.add_op("m", {{"s"}, "s"});
            s.set_unit("s", "1s");
            s.set_sigma("1s", {0}, "1s");
            s.set_sigma("m", {0}, "m");
            s.set_composite("1s", {"1s"}, "1s");
            s.set_composite("1s", {"m"}, "m");
            s.set_composite("m", {"1s"}, "m");
            s.set_composite("m", {"m"}, "m");
            REQUIRE(check_axioms(s));
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
            REQUIRE(check_axioms(x));
            OperadMorphism p{&x, &s, {}, {}};
            p.colour_map["A"] = "s";
            p.colour_map["B"] = "s";
            p.op_map["1A"] = "1s";
            p.op_map["1B"] = "1s";
            p.op_map["u"] = "m";
            REQUIRE(p.valid());
            std::vector<std::string> missing;
            Verdict v = is_opfibered(p, &missing);
            CHECK(!v.ok);
            REQUIRE(!missing.empty());
            // u is not coCartesian, so both lifts of m are missing, by name
            CHECK(missing.size() == 2);
            for (const auto& m : missing) CHECK(m.find("no coCartesian lift of m") == 0);
        }
    }

    TEST_CASE("coCartesian space") {
        BinaryCover cover;
        DendMap p = nerve_map(cover.proj, 3);
        DendSet ny = p.target();
        const Tree& c2 = corolla_shape(2);
        // sigma: the generating binary operation of the base
        DendrexId sigma;
        OpId gen = free_op_name("r", {"l1", "l2"});
        for (const auto& id : ny.level(c2)) {
            auto [colours, ops] = NerveImpl::decode(id);
            if (!ops.empty() && ops.begin()->second == gen) {
                sigma = id;
                break;
            }
        }
        REQUIRE(!sigma.empty());
        // lift inputs: colours a0, b1 over l1, l2
        DendSet nx = p.source();
        DendrexId a0, b1;
        for (const auto& id : nx.level(eta("c"))) {
            auto [colours, ops] = NerveImpl::decode(id);
            if (colours.begin()->second == "a0") a0 = id;
            if (colours.begin()->second == "b1") b1 = id;
        }
        auto inputs = corolla_inputs(ny, 2, sigma);
        // order the lifts to match sigma's leaf order (l1 then l2)
        SimpSet q = cocart_space(p, 2, sigma, {a0, b1}, 2);
        CHECK(q.simplices(0).size() == 1);  // the strict nerve has a unique lift
        CHECK(q.nondegenerate_count(1) == 0);
        CHECK(q.connected_components() == 1);
        CHECK(q.check_identities());
        // empty when no lift exists: ask for mismatched fibers
        SimpSet empty_q = cocart_space(p, 2, sigma, {a0, a0}, 1);
        CHECK(empty_q.simplices(0).empty());
        (void)inputs;
    }

    TEST_CASE("marked lifting report for a natural marking") {
        BinaryCover cover;
        DendMap p = nerve_map(cover.proj, 2);
        MarkedDendSet target = sharp(p.target());
        MarkedDendSet source = natural_marking(p, target, 3);
        MarkedMap mp{source, target, p};
        MarkedAnodyneOptions opt;
        opt.vertex_bound = 2;
        opt.kan_probes.push_back(walking_iso());
        MarkedRlpReport report = marked_rlp_report(mp, opt);
        CHECK(report.generators_ok);
        CHECK(report.abc.ok());
        CHECK(report.agreement);
        CHECK(report.ok());
    }

    TEST_CASE("over-marking breaks predicate (b) and a generator class") {
        // the walking arrow over the point: u is not coCartesian, so marking it
        // must break the report
        FiniteOperad a = category_operad(walking_arrow());
        FiniteOperad pt = point_operad();
        OperadMorphism to_pt{&a, &pt, {}, {}};
        for (const auto& c : a.colours()) to_pt.colour_map[c] = "*";
        for (const auto& f : a.all_ops()) to_pt.op_map[f] = "1";
        DendMap p = nerve_map(to_pt, 2);
        MarkedDendSet target = sharp(p.target());
        // find the corolla dendrex for u and mark it on top of the natural marking
        DendrexId u_cell;
        const Tree& c1 = corolla_shape(1);
        for (const auto& id : p.source().level(c1)) {
            auto [colours, ops] = NerveImpl::decode(id);
            if (ops.begin()->second == "u") u_cell = id;
        }
        REQUIRE(!u_cell.empty());
        auto base = natural_marking(p, target, 3).marked_set();
        base.insert({1, u_cell});
        MarkedMap mp{MarkedDendSet(p.source(), base), target, p};
        MarkedAnodyneOptions opt;
        opt.vertex_bound = 2;
        MarkedRlpReport report = marked_rlp_report(mp, opt);
        CHECK(!report.abc.b.ok);
        CHECK(report.abc.b.witness->description.find("over-marked") == 0);
        CHECK(!report.generators_ok);
        CHECK(report.agreement);  // both routes detect the fault
    }

    TEST_CASE("under-marking breaks predicate (b)") {
        BinaryCover cover;
        DendMap p = nerve_map(cover.proj, 2);
        MarkedDendSet target = sharp(p.target());
        auto marks = natural_marking(p, target, 3).marked_set();
        // remove a coCartesian binary corolla (and its twist, to stay valid)
        std::vector<std::pair<std::size_t, DendrexId>> victims;
        for (const auto& [n, id] : marks)
            if (n == 2) victims.push_back({n, id});
        REQUIRE(!victims.empty());
        auto orbit = aut_orbit(p.source(), corolla_shape(2), victims.front().second);
        for (const auto& o : orbit) marks.erase({2, o});
        MarkedMap mp{MarkedDendSet(p.source(), marks), target, p};
        MarkedAnodyneOptions opt;
        opt.vertex_bound = 2;
        MarkedRlpReport report = marked_rlp_report(mp, opt);
        CHECK(!report.abc.b.ok);
        CHECK(report.abc.b.witness->description.find("under-marked") == 0);
        CHECK(report.agreement);
    }
}
