/* shuffle.hpp -- shuffles of two trees and the percolation poset.
 *
 * A shuffle of S and T is a tree whose edges are labelled by pairs (edge of
 * S, edge of T); the vertex over an edge (s,t) is either a copy of the
 * S-vertex over s (black, inputs share t) or of the T-vertex over t (white,
 * inputs share s).  The root carries (root_S, root_T) and every leaf a pair
 * of leaves.  Edges are named "s,t", so equal label sets mean equal trees and
 * no separate canonicalization is needed.
 *
 * Enumeration starts from the minimal shuffle (all S-vertices below) and
 * percolates black vertices upwards through white ones.  Percolating through
 * a nullary white vertex shrinks the tree (the result is a composite of faces
 * of its predecessor, as it must be); such moves are flagged.
 */

#ifndef DENDRO_SHUFFLE_HPP_
#define DENDRO_SHUFFLE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

inline Edge pair_edge(const Edge& s, const Edge& t) { return s + "," + t; }

inline std::pair<Edge, Edge> split_pair_edge(const Edge& e) {
    auto comma = e.find(',');
    if (comma == std::string::npos) throw TreeError("not a labelled shuffle edge: " + e);
    return {e.substr(0, comma), e.substr(comma + 1)};
}

struct Shuffle {
    Tree tree;  // edges named "s,t"

    Edge s_part(const Edge& e) const { return split_pair_edge(e).first; }
    Edge t_part(const Edge& e) const { return split_pair_edge(e).second; }

    friend bool operator==(const Shuffle& a, const Shuffle& b) { return a.tree == b.tree; }
    friend bool operator<(const Shuffle& a, const Shuffle& b) { return a.tree < b.tree; }
};

namespace detail {
inline void check_shuffle_factor(const Tree& t) {
    for (const auto& e : t.edges())
        if (e.find(',') != std::string::npos)
            throw TreeError("shuffle factors must not contain ',' in edge names: " + e);
}

// realize the shuffle determined by a black/white preference at each pair
// where both choices are available (true = black, i.e. use the S-vertex)
template <typename Choice>
inline Tree realize_shuffle(const Tree& s, const Tree& t, Choice&& choose_black) {
    std::vector<TreeVertex> vertices;
    std::vector<std::pair<Edge, Edge>> stack{{s.root(), t.root()}};
    while (!stack.empty()) {
        auto [es, et] = stack.back();
        stack.pop_back();
        const TreeVertex* vs = s.vertex_above(es);
        const TreeVertex* vt = t.vertex_above(et);
        bool black;
        if (vs && vt)
            black = choose_black(es, et);
        else if (vs)
            black = true;
        else if (vt)
            black = false;
        else
            continue;  // leaf pair
        TreeVertex v;
        v.output = pair_edge(es, et);
        if (black) {
            for (const auto& i : vs->inputs) {
                v.inputs.push_back(pair_edge(i, et));
                stack.push_back({i, et});
            }
        } else {
            for (const auto& m : vt->inputs) {
                v.inputs.push_back(pair_edge(es, m));
                stack.push_back({es, m});
            }
        }
        vertices.push_back(std::move(v));
    }
    return Tree(pair_edge(s.root(), t.root()), std::move(vertices));
}
}  // namespace detail

inline Shuffle minimal_shuffle(const Tree& s, const Tree& t) {
    detail::check_shuffle_factor(s);
    detail::check_shuffle_factor(t);
    return {detail::realize_shuffle(s, t, [](const Edge&, const Edge&) { return true; })};
}

inline Shuffle maximal_shuffle(const Tree& s, const Tree& t) {
    detail::check_shuffle_factor(s);
    detail::check_shuffle_factor(t);
    return {detail::realize_shuffle(s, t, [](const Edge&, const Edge&) { return false; })};
}

struct PercolationMove {
    Edge at;        // output edge of the black vertex that moves up
    bool shrinking;  // the percolation passed a nullary white vertex
    Shuffle result;
};

// all single percolation moves out of a shuffle
inline std::vector<PercolationMove> percolation_moves(const Tree& s, const Tree& t,
                                                      const Shuffle& sh) {
    std::vector<PercolationMove> out;
    for (const auto& w : sh.tree.vertices()) {
        auto [os, ot] = split_pair_edge(w.output);
        const TreeVertex* vs = s.vertex_above(os);
        if (!vs) continue;
        {
            // readable as the black copy of vs at ot?
            std::set<Edge> expect;
            for (const auto& i : vs->inputs) expect.insert(pair_edge(i, ot));
            std::set<Edge> got(w.inputs.begin(), w.inputs.end());
            if (expect != got) continue;
        }
        const TreeVertex* vt = t.vertex_above(ot);
        if (!vt) continue;  // nothing to percolate through
        // every input must carry the white copy of vt
        bool ok = true;
        for (const auto& in : w.inputs) {
            const TreeVertex* u = sh.tree.vertex_above(in);
            if (!u) {
                ok = false;
                break;
            }
            std::set<Edge> expect;
            auto is2 = split_pair_edge(in).first;
            for (const auto& m : vt->inputs) expect.insert(pair_edge(is2, m));
            std::set<Edge> got(u->inputs.begin(), u->inputs.end());
            if (expect != got) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // rebuild the tree with the configuration flipped
        std::set<Edge> removed_outputs{w.output};
        for (const auto& in : w.inputs) removed_outputs.insert(in);
        std::vector<TreeVertex> vertices;
        for (const auto& v : sh.tree.vertices())
            if (!removed_outputs.count(v.output)) vertices.push_back(v);
        TreeVertex white;
        white.output = w.output;
        for (const auto& m : vt->inputs) {
            white.inputs.push_back(pair_edge(os, m));
            TreeVertex black;
            black.output = pair_edge(os, m);
            for (const auto& i : vs->inputs) black.inputs.push_back(pair_edge(i, m));
            vertices.push_back(std::move(black));
        }
        vertices.push_back(std::move(white));
        Shuffle next{Tree(sh.tree.root(), std::move(vertices))};
        if (next.tree == sh.tree) continue;  // nullary-on-nullary: no new shuffle
        out.push_back({w.output, vt->inputs.empty(), std::move(next)});
    }
    return out;
}

// breadth-first percolation from the minimal shuffle, deduplicated
inline std::vector<Shuffle> shuffles(const Tree& s, const Tree& t) {
    Shuffle start = minimal_shuffle(s, t);
    std::set<Tree> seen{start.tree};
    std::vector<Shuffle> order{start};
    std::vector<Shuffle> frontier{start};
    while (!frontier.empty()) {
        std::vector<Shuffle> next;
        for (const auto& sh : frontier)
            for (auto& mv : percolation_moves(s, t, sh))
                if (seen.insert(mv.result.tree).second) {
                    order.push_back(mv.result);
                    next.push_back(mv.result);
                }
        frontier = std::move(next);
    }
    return order;
}

struct PercolationPoset {
    std::vector<Shuffle> nodes;
    struct Arrow {
        std::size_t from, to;
        Edge at;
        bool shrinking;
    };
    std::vector<Arrow> moves;
    std::size_t source = 0, sink = 0;
    bool has_flagged_moves = false;  // some move percolated past a nullary white vertex
};

inline PercolationPoset percolation_poset(const Tree& s, const Tree& t) {
    PercolationPoset poset;
    poset.nodes = shuffles(s, t);
    std::map<Tree, std::size_t> index;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) index[poset.nodes[i].tree] = i;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i)
        for (auto& mv : percolation_moves(s, t, poset.nodes[i])) {
            std::size_t j = index.at(mv.result.tree);
            poset.moves.push_back({i, j, mv.at, mv.shrinking});
            poset.has_flagged_moves |= mv.shrinking;
        }
    poset.source = index.at(minimal_shuffle(s, t).tree);
    poset.sink = index.at(maximal_shuffle(s, t).tree);
    return poset;
}

}  // namespace dendro

#endif  // DENDRO_SHUFFLE_HPP_
