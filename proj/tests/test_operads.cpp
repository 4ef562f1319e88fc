#include <doctest.h>

#include <random>

#include "dendro/omega.hpp"
#include "dendro/operad.hpp"
#include "test_helpers.hpp"

using namespace dendro;
using namespace dendro_test;

TEST_SUITE("operads") {
    TEST_CASE("permutation helpers") {
        Perm s{1, 0, 2};
        Perm t{2, 0, 1};
        Perm st = compose_perms(s, t);
        CHECK(st == Perm{2, 1, 0});
        CHECK(block_perm(Perm{1, 0}, {2, 1}) == Perm{2, 0, 1});
        CHECK(direct_sum_perms({{1, 0}, {0}}) == Perm{1, 0, 2});
        CHECK(apply_perm(Perm{1, 0}, std::vector<std::string>{"a", "b"}) ==
              std::vector<std::string>{"b", "a"});
    }

    TEST_CASE("free operad on eta has one colour and only the unit") {
        FiniteOperad p = free_operad(eta("a"));
        CHECK(p.colours().size() == 1);
        CHECK(p.op_count() == 1);
        CHECK(p.is_unit(p.unit("a")));
        CHECK(check_axioms(p));
    }

    TEST_CASE("free operad on a corolla") {
        Tree c3 = corolla(3);
        FiniteOperad p = free_operad(c3);
        CHECK(p.colours().size() == 4);
        // one Sigma_3-orbit of ternary operations: 6 ordered ops, each set a singleton
        int nary = 0;
        for (const auto& [sig, ops] : p.op_table())
            if (sig.arity() == 3) {
                CHECK(ops.size() == 1);
                nary += static_cast<int>(ops.size());
            }
        CHECK(nary == 6);
        CHECK(check_axioms(p));
    }

    TEST_CASE("free operad op-sets match independent subtree enumeration") {
        std::mt19937 rng(61);
        for (int i = 0; i < 10; ++i) {
            Tree t = random_tree(rng, 1 + i % 4, 3);
            FiniteOperad p = free_operad(t);
            // oracle: enumerate subtrees from vertex subsets, count ordered tuples
            std::size_t expected = 0;
            for (const auto& c : t.edges())
                for (const auto& f : oracle_subtree_frontiers(t, c)) {
                    std::size_t fact = 1;
                    for (std::size_t k = 2; k <= f.size(); ++k) fact *= k;
                    expected += fact;
                }
            CHECK(p.op_count() == expected);
            // each ordered signature carries at most one operation
            for (const auto& [sig, ops] : p.op_table()) CHECK(ops.size() <= 1);
        }
    }

    TEST_CASE("free operad on the two-vertex tree includes the composite") {
        Tree v("r", {{{"e", "b"}, "r"}, {{"a1", "a2"}, "e"}});
        FiniteOperad p = free_operad(v);
        // generator at the root vertex, generator above, and their graft
        OpId w = free_op_name("r", {"e", "b"});
        OpId u = free_op_name("e", {"a1", "a2"});
        OpId composite = p.compose(w, {u, p.unit("b")});
        CHECK(composite == free_op_name("r", {"a1", "a2", "b"}));
        CHECK(check_axioms(p));
    }

    TEST_CASE("free operads on trees up to 5 vertices satisfy the axioms") {
        std::mt19937 rng(67);
        for (int i = 0; i < 6; ++i) {
            Tree t = random_tree(rng, 5, 2);
            AxiomCheckOptions opt;
            opt.assoc_tuples_per_pair = 60;  // sampled associativity on the largest instances
            CHECK(check_axioms(free_operad(t), opt));
        }
        for (const auto& t : tree_universe(3, 2)) CHECK(check_axioms(free_operad(t)));
    }

    TEST_CASE("terminal operad passes the axiom check") {
        FiniteOperad p = terminal_operad(4);
        CHECK(check_axioms(p));
        CHECK(p.op_count() == 5);
        CHECK(p.arity_truncation() == 4);
    }

    TEST_CASE("corrupted composition table is reported") {
        Tree v("r", {{{"e", "b"}, "r"}, {{"a1", "a2"}, "e"}});
        FiniteOperad p = free_operad(v);
        OpId w = free_op_name("r", {"e", "b"});
        OpId u = free_op_name("e", {"a1", "a2"});
        // plant a wrong composite: redirect to a sigma-twisted op
        p.set_composite(w, {u, p.unit("b")}, free_op_name("r", {"a2", "a1", "b"}));
        auto report = check_axioms(p);
        CHECK(!report.ok);
        CHECK(!report.violation.empty());
    }

    TEST_CASE("free_operad is functorial on tree morphisms") {
        Tree v("r", {{{"e", "b"}, "r"}, {{"a1", "a2"}, "e"}});
        Tree c2 = corolla(2);
        for (const auto& f : hom_set(c2, v)) {
            FiniteOperad ps = free_operad(c2);
            FiniteOperad pt = free_operad(v);
            // induced morphism: map each subtree-op along the edge map
            OperadMorphism m{&ps, &pt, {}, {}};
            for (const auto& e : c2.edges()) m.colour_map[e] = f(e);
            bool total = true;
            for (const auto& op : ps.all_ops()) {
                const auto& sig = ps.signature(op);
                std::vector<Edge> leaves;
                for (const auto& l : sig.inputs) leaves.push_back(f(l));
                m.op_map[op] = free_op_name(f(sig.output), leaves);
                std::set<Edge> fr(leaves.begin(), leaves.end());
                total &= find_subtree(v, f(sig.output), fr).has_value();
            }
            CHECK(total);
            CHECK(m.valid());
        }
    }

    TEST_CASE("operad isomorphism search") {
        Tree c2 = corolla(2);
        FiniteOperad p = free_operad(c2);
        FiniteOperad q = free_operad(Tree("out", {{{"w1", "w2"}, "out"}}));
        auto iso = find_operad_isomorphism(p, q);
        REQUIRE(iso.has_value());
        CHECK(iso->valid());
        // not isomorphic to the free operad on C_3
        CHECK(!find_operad_isomorphism(p, free_operad(corolla(3))).has_value());
        // nor to a same-size operad with different symmetry: terminal truncations
        CHECK(!find_operad_isomorphism(p, terminal_operad(4)).has_value());
    }
}

