/* test_helpers.hpp -- shared oracles and generators for the test suite.
 *
 * Everything here is deliberately independent of the library's own search
 * routines: isomorphism is checked by exhaustive bijection, subtrees are
 * enumerated from vertex subsets, and random trees come from a seeded
 * generator so failures reproduce.
 */

#ifndef DENDRO_TEST_HELPERS_HPP_
#define DENDRO_TEST_HELPERS_HPP_

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro_test {

using dendro::Edge;
using dendro::Tree;
using dendro::TreeVertex;

// exhaustive bijection search; only usable for small edge counts
inline bool brute_force_isomorphic(const Tree& a, const Tree& b) {
    if (a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count()) return false;
    std::vector<Edge> ea = a.edges(), eb = b.edges();
    std::sort(eb.begin(), eb.end());
    do {
        std::map<Edge, Edge> m;
        for (std::size_t i = 0; i < ea.size(); ++i) m[ea[i]] = eb[i];
        if (m.at(a.root()) != b.root()) continue;
        std::set<TreeVertex> va, vb;
        for (const auto& v : a.vertices()) {
            TreeVertex w;
            w.output = m.at(v.output);
            for (const auto& in : v.inputs) w.inputs.push_back(m.at(in));
            std::sort(w.inputs.begin(), w.inputs.end());
            va.insert(std::move(w));
        }
        for (const auto& v : b.vertices()) vb.insert(v);
        if (va == vb) return true;
    } while (std::next_permutation(eb.begin(), eb.end()));
    return false;
}

// exhaustive count of edge bijections T -> T preserving root and vertices
inline std::size_t brute_force_automorphism_count(const Tree& t) {
    std::size_t n = 0;
    std::vector<Edge> ea = t.edges(), eb = t.edges();
    do {
        std::map<Edge, Edge> m;
        for (std::size_t i = 0; i < ea.size(); ++i) m[ea[i]] = eb[i];
        if (m.at(t.root()) != t.root()) continue;
        std::set<TreeVertex> va, vb;
        for (const auto& v : t.vertices()) {
            TreeVertex w;
            w.output = m.at(v.output);
            for (const auto& in : v.inputs) w.inputs.push_back(m.at(in));
            std::sort(w.inputs.begin(), w.inputs.end());
            va.insert(std::move(w));
            vb.insert(v);
        }
        if (va == vb) ++n;
    } while (std::next_permutation(eb.begin(), eb.end()));
    return n;
}

// seeded random tree with at most n vertices (growth stops when every branch
// has been closed off by a nullary vertex)
inline Tree random_tree(std::mt19937& rng, std::size_t n, std::size_t max_arity) {
    std::vector<TreeVertex> vertices;
    std::vector<Edge> open{"g0"};
    std::size_t next_edge = 1;
    for (std::size_t i = 0; i < n && !open.empty(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        std::size_t at = pick(rng);
        Edge out = open[at];
        open.erase(open.begin() + at);
        std::uniform_int_distribution<std::size_t> ar(0, max_arity);
        std::size_t k = ar(rng);
        TreeVertex v;
        v.output = out;
        for (std::size_t j = 0; j < k; ++j) {
            Edge e = "g" + std::to_string(next_edge++);
            v.inputs.push_back(e);
            open.push_back(e);
        }
        vertices.push_back(std::move(v));
    }
    return Tree("g0", std::move(vertices));
}

// Subtree enumeration from vertex subsets: a subtree rooted at c is a set W of
// vertices lying above c such that the path from each member down to c passes
// only through members.  Reported as frontier (leaf-edge) sets.
inline std::set<std::set<Edge>> oracle_subtree_frontiers(const Tree& t, const Edge& c) {
    std::vector<const TreeVertex*> above;
    auto up_edges = t.edges_above(c);
    for (const auto& v : t.vertices())
        if (std::binary_search(up_edges.begin(), up_edges.end(), v.output)) above.push_back(&v);

    std::set<std::set<Edge>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << above.size()); ++mask) {
        std::set<Edge> outputs;
        for (std::size_t i = 0; i < above.size(); ++i)
            if (mask & (std::size_t{1} << i)) outputs.insert(above[i]->output);
        // one-step closure: a member not sitting directly above c must have a
        // member directly below it
        bool ok = true;
        for (const auto& o : outputs) {
            if (o == c) continue;
            const TreeVertex* below = t.vertex_below(o);
            ok = below && outputs.count(below->output);
            if (!ok) break;
        }
        if (!ok) continue;
        std::set<Edge> edges{c};
        for (const auto& o : outputs) {
            edges.insert(o);
            for (const auto* v : above)
                if (v->output == o)
                    for (const auto& in : v->inputs) edges.insert(in);
        }
        std::set<Edge> frontier;
        for (const auto& e : edges)
            if (!outputs.count(e)) frontier.insert(e);
        out.insert(frontier);
    }
    return out;
}

}  // namespace dendro_test

#endif
