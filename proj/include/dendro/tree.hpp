/* tree.hpp -- finite rooted trees (the objects of the category Omega).
 *
 * A tree is a finite set of named edges together with vertices; every vertex
 * has a finite set of input edges and a single output edge.  Edges are
 * oriented towards a distinguished root edge.  The tree with a single edge
 * and no vertices is eta.  Trees are unordered: the inputs of a vertex form a
 * set, and isomorphism is decided through a canonical relabelling.
 */

#ifndef DENDRO_TREE_HPP_
#define DENDRO_TREE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dendro {

using Edge = std::string;

struct TreeError : std::runtime_error {
    explicit TreeError(const std::string& what) : std::runtime_error(what) {}
};

struct TreeVertex {
    std::vector<Edge> inputs;  // kept sorted, duplicates rejected
    Edge output;

    friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
    friend bool operator<(const TreeVertex& a, const TreeVertex& b) {
        if (a.output != b.output) return a.output < b.output;
        return a.inputs < b.inputs;
    }
};

class Tree {
public:
    // eta on the given edge name
    explicit Tree(Edge root_edge) : root_(std::move(root_edge)) {
        edges_.push_back(root_);
        index();
    }

    Tree(Edge root_edge, std::vector<TreeVertex> vertices)
        : root_(std::move(root_edge)), vertices_(std::move(vertices)) {
        std::set<Edge> es;
        es.insert(root_);
        for (auto& v : vertices_) {
            std::sort(v.inputs.begin(), v.inputs.end());
            es.insert(v.output);
            es.insert(v.inputs.begin(), v.inputs.end());
        }
        edges_.assign(es.begin(), es.end());
        std::sort(vertices_.begin(), vertices_.end(),
                  [](const TreeVertex& a, const TreeVertex& b) { return a.output < b.output; });
        index();
        validate();
    }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& root() const { return root_; }
    const std::vector<TreeVertex>& vertices() const { return vertices_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    // vertex whose output is e, i.e. the vertex directly above e (towards the leaves)
    const TreeVertex* vertex_above(const Edge& e) const {
        auto it = above_.find(e);
        return it == above_.end() ? nullptr : &vertices_[it->second];
    }
    // vertex having e among its inputs, i.e. the vertex directly below e (towards the root)
    const TreeVertex* vertex_below(const Edge& e) const {
        auto it = below_.find(e);
        return it == below_.end() ? nullptr : &vertices_[it->second];
    }

    bool is_leaf(const Edge& e) const { return vertex_above(e) == nullptr; }
    bool is_inner_edge(const Edge& e) const { return vertex_above(e) != nullptr && vertex_below(e) != nullptr; }

    std::vector<Edge> leaves() const {
        std::vector<Edge> out;
        for (const auto& e : edges_)
            if (is_leaf(e)) out.push_back(e);
        return out;
    }

    std::vector<Edge> inner_edges() const {
        std::vector<Edge> out;
        for (const auto& e : edges_)
            if (is_inner_edge(e)) out.push_back(e);
        return out;
    }

    std::size_t max_arity() const {
        std::size_t m = 0;
        for (const auto& v : vertices_) m = std::max(m, v.inputs.size());
        return m;
    }

    // edges of the maximal subtree rooted at e, in sorted order
    std::vector<Edge> edges_above(const Edge& e) const {
        if (!has_edge(e)) throw TreeError("edges_above: unknown edge " + e);
        std::vector<Edge> acc;
        collect_above(e, acc);
        std::sort(acc.begin(), acc.end());
        return acc;
    }

    friend bool operator==(const Tree& a, const Tree& b) {
        return a.root_ == b.root_ && a.edges_ == b.edges_ && a.vertices_ == b.vertices_;
    }
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
    friend bool operator<(const Tree& a, const Tree& b) {
        if (a.root_ != b.root_) return a.root_ < b.root_;
        if (a.edges_ != b.edges_) return a.edges_ < b.edges_;
        return a.vertices_ < b.vertices_;
    }

private:
    Edge root_;
    std::vector<Edge> edges_;           // sorted
    std::vector<TreeVertex> vertices_;  // sorted by output edge
    std::map<Edge, std::size_t> above_, below_;

    void index() {
        above_.clear();
        below_.clear();
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            const auto& v = vertices_[i];
            if (!above_.emplace(v.output, i).second)
                throw TreeError("edge " + v.output + " is the output of two vertices");
            for (const auto& in : v.inputs)
                if (!below_.emplace(in, i).second)
                    throw TreeError("edge " + in + " is the input of two vertices");
        }
    }

    void collect_above(const Edge& e, std::vector<Edge>& acc) const {
        acc.push_back(e);
        if (const TreeVertex* v = vertex_above(e))
            for (const auto& in : v->inputs) collect_above(in, acc);
    }

    void validate() const {
        if (below_.count(root_)) throw TreeError("root edge " + root_ + " is the input of a vertex");
        for (const auto& v : vertices_) {
            for (std::size_t i = 0; i + 1 < v.inputs.size(); ++i)
                if (v.inputs[i] == v.inputs[i + 1])
                    throw TreeError("vertex at " + v.output + " has a repeated input");
            if (std::binary_search(v.inputs.begin(), v.inputs.end(), v.output))
                throw TreeError("vertex at " + v.output + " lists its output as an input");
        }
        for (const auto& e : edges_)
            if (e != root_ && !below_.count(e) && vertices_.size() > 0 && !reaches_root(e))
                throw TreeError("edge " + e + " is disconnected from the root");
        // connectivity and acyclicity: everything must be reachable from the root
        std::vector<Edge> seen;
        collect_above(root_, seen);
        if (seen.size() != edges_.size()) throw TreeError("tree is not connected");
        std::set<Edge> uniq(seen.begin(), seen.end());
        if (uniq.size() != seen.size()) throw TreeError("tree contains a cycle");
    }

    bool reaches_root(const Edge& e) const {
        Edge cur = e;
        std::set<Edge> visited;
        while (cur != root_) {
            if (!visited.insert(cur).second) return false;
            auto it = below_.find(cur);
            if (it == below_.end()) return false;
            cur = vertices_[it->second].output;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// standard trees

inline Tree eta(const Edge& e = "e") { return Tree(e); }

// corolla with n leaves; edges r, l1..ln
inline Tree corolla(std::size_t n, const std::string& prefix = "") {
    TreeVertex v;
    v.output = prefix + "r";
    for (std::size_t i = 1; i <= n; ++i) v.inputs.push_back(prefix + "l" + std::to_string(i));
    return Tree(prefix + "r", {v});
}

// linear tree with n vertices and n+1 edges x0 (root) .. xn (leaf)
inline Tree linear_tree(std::size_t n, const std::string& prefix = "x") {
    std::vector<TreeVertex> vs;
    for (std::size_t i = 0; i < n; ++i)
        vs.push_back({{prefix + std::to_string(i + 1)}, prefix + std::to_string(i)});
    return Tree(prefix + "0", std::move(vs));
}

// C_k * [n-1]: the corolla C_k with a chain of n unary vertices grafted below
// its root.  C_k * [-1] (n = 0) is C_k itself.
inline Tree join_corolla(std::size_t k, std::size_t n) {
    TreeVertex top;
    top.output = "j0";
    for (std::size_t i = 1; i <= k; ++i) top.inputs.push_back("l" + std::to_string(i));
    std::vector<TreeVertex> vs{top};
    for (std::size_t i = 0; i < n; ++i)
        vs.push_back({{"j" + std::to_string(i)}, "j" + std::to_string(i + 1)});
    return Tree("j" + std::to_string(n), std::move(vs));
}

// ---------------------------------------------------------------------------
// canonical form

namespace detail {
inline std::string shape_code(const Tree& t, const Edge& e) {
    const TreeVertex* v = t.vertex_above(e);
    if (!v) return "l";
    std::vector<std::string> parts;
    parts.reserve(v->inputs.size());
    for (const auto& in : v->inputs) parts.push_back(shape_code(t, in));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
}
}  // namespace detail

// isomorphism-invariant encoding of the shape of a tree
inline std::string tree_key(const Tree& t) { return detail::shape_code(t, t.root()); }

struct CanonicalForm {
    Tree tree;
    std::map<Edge, Edge> relabelling;  // old edge -> new edge
};

// Deterministic relabelling: isomorphic trees yield identical canonical trees.
// Edge names are assigned depth-first, children ordered by shape code (ties by
// the original edge name, which only affects the witness, not the result).
inline CanonicalForm canonical_form(const Tree& t) {
    std::map<Edge, Edge> rel;
    std::size_t next = 0;
    std::vector<TreeVertex> new_vertices;

    auto name_of = [&](const Edge& e) -> Edge {
        auto it = rel.find(e);
        if (it != rel.end()) return it->second;
        Edge n = "e" + std::to_string(next++);
        rel.emplace(e, n);
        return n;
    };

    std::vector<Edge> stack{t.root()};
    while (!stack.empty()) {
        Edge e = stack.back();
        stack.pop_back();
        Edge ne = name_of(e);
        const TreeVertex* v = t.vertex_above(e);
        if (!v) continue;
        std::vector<std::pair<std::string, Edge>> kids;
        for (const auto& in : v->inputs) kids.push_back({detail::shape_code(t, in), in});
        std::sort(kids.begin(), kids.end());
        TreeVertex nv;
        nv.output = ne;
        for (const auto& [code, in] : kids) nv.inputs.push_back(name_of(in));
        std::sort(nv.inputs.begin(), nv.inputs.end());
        new_vertices.push_back(nv);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(it->second);
    }
    return {Tree(rel.at(t.root()), std::move(new_vertices)), std::move(rel)};
}

inline bool isomorphic(const Tree& a, const Tree& b) { return tree_key(a) == tree_key(b); }

// ---------------------------------------------------------------------------
// isomorphisms and automorphisms

namespace detail {
// all structure-preserving edge bijections subtree(a in s) -> subtree(b in t)
inline void subtree_isos(const Tree& s, const Tree& t, const Edge& a, const Edge& b,
                         std::map<Edge, Edge>& cur, std::vector<std::map<Edge, Edge>>& out) {
    const TreeVertex* va = s.vertex_above(a);
    const TreeVertex* vb = t.vertex_above(b);
    cur[a] = b;
    if (!va && !vb) {
        out.push_back(cur);
        cur.erase(a);
        return;
    }
    if (!va || !vb || va->inputs.size() != vb->inputs.size()) {
        cur.erase(a);
        return;
    }
    const auto& as = va->inputs;
    const auto& bs = vb->inputs;
    std::vector<std::size_t> perm(bs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;

    // recurse over one matching at a time
    std::vector<std::map<Edge, Edge>> partials{cur};
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < as.size() && ok; ++i)
            ok = shape_code(s, as[i]) == shape_code(t, bs[perm[i]]);
        if (!ok) continue;
        std::vector<std::map<Edge, Edge>> layers{cur};
        for (std::size_t i = 0; i < as.size(); ++i) {
            std::vector<std::map<Edge, Edge>> nxt;
            for (auto& m : layers) {
                std::vector<std::map<Edge, Edge>> sub;
                std::map<Edge, Edge> tmp = m;
                subtree_isos(s, t, as[i], bs[perm[i]], tmp, sub);
                for (auto& x : sub) nxt.push_back(std::move(x));
            }
            layers = std::move(nxt);
            if (layers.empty()) break;
        }
        for (auto& m : layers) out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    cur.erase(a);
}
}  // namespace detail

// all isomorphisms a -> b as edge bijections (empty when not isomorphic)
inline std::vector<std::map<Edge, Edge>> tree_isomorphisms(const Tree& a, const Tree& b) {
    if (a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count()) return {};
    std::vector<std::map<Edge, Edge>> out;
    std::map<Edge, Edge> cur;
    detail::subtree_isos(a, b, a.root(), b.root(), cur, out);
    return out;
}

// the automorphism group of T as edge permutations; always contains the identity
inline std::vector<std::map<Edge, Edge>> automorphisms(const Tree& t) {
    return tree_isomorphisms(t, t);
}

// ---------------------------------------------------------------------------
// grafting and subtrees

// T o_l S: graft S onto the leaf l of T, identifying l with the root of S.
// Edges of S other than its root are renamed when they clash with edges of T.
inline Tree graft(const Tree& t, const Edge& l, const Tree& s) {
    if (!t.has_edge(l) || !t.is_leaf(l)) throw TreeError("graft: " + l + " is not a leaf");
    std::map<Edge, Edge> ren;
    ren[s.root()] = l;
    for (const auto& e : s.edges()) {
        if (e == s.root()) continue;
        Edge name = e;
        while (t.has_edge(name) || ren.count(name) ||
               std::any_of(ren.begin(), ren.end(), [&](const auto& kv) { return kv.second == name; }))
            name += "'";
        ren[e] = name;
    }
    std::vector<TreeVertex> vs = t.vertices();
    for (const auto& v : s.vertices()) {
        TreeVertex nv;
        nv.output = ren.at(v.output);
        for (const auto& in : v.inputs) nv.inputs.push_back(ren.at(in));
        vs.push_back(std::move(nv));
    }
    return Tree(t.root(), std::move(vs));
}

// T/c: the maximal subtree rooted at c ("c and everything above c")
inline Tree subtree_above(const Tree& t, const Edge& c) {
    if (!t.has_edge(c)) throw TreeError("subtree_above: unknown edge " + c);
    std::set<Edge> keep;
    for (const auto& e : t.edges_above(c)) keep.insert(e);
    std::vector<TreeVertex> vs;
    for (const auto& v : t.vertices())
        if (keep.count(v.output)) vs.push_back(v);
    return Tree(c, std::move(vs));
}

// the subtree of t with root `c` and the given leaf set, when it exists;
// such a subtree is unique.  Returns its edge set.
inline std::optional<std::vector<Edge>> find_subtree(const Tree& t, const Edge& c,
                                                     const std::set<Edge>& frontier) {
    if (!t.has_edge(c)) return std::nullopt;
    for (const auto& f : frontier)
        if (!t.has_edge(f)) return std::nullopt;
    std::vector<Edge> acc;
    std::set<Edge> met;
    std::vector<Edge> stack{c};
    bool root_in_frontier_only = frontier.size() == 1 && frontier.count(c);
    if (root_in_frontier_only) return std::vector<Edge>{c};
    while (!stack.empty()) {
        Edge e = stack.back();
        stack.pop_back();
        acc.push_back(e);
        if (frontier.count(e)) {
            if (e != c || acc.size() > 1) {
                met.insert(e);
                continue;
            }
        }
        const TreeVertex* v = t.vertex_above(e);
        if (!v) return std::nullopt;  // hit a leaf of t that is not in the frontier
        for (const auto& in : v->inputs) stack.push_back(in);
    }
    if (met.size() != frontier.size()) return std::nullopt;
    std::sort(acc.begin(), acc.end());
    return acc;
}

// all subtrees rooted at c, reported as their leaf-edge sets
inline std::vector<std::set<Edge>> subtree_frontiers(const Tree& t, const Edge& c) {
    std::vector<std::set<Edge>> out{{{c}}};
    const TreeVertex* v = t.vertex_above(c);
    if (!v) return out;
    std::vector<std::vector<std::set<Edge>>> per_input;
    for (const auto& in : v->inputs) per_input.push_back(subtree_frontiers(t, in));
    std::vector<std::set<Edge>> combos{{}};
    for (const auto& options : per_input) {
        std::vector<std::set<Edge>> nxt;
        for (const auto& base : combos)
            for (const auto& opt : options) {
                std::set<Edge> u = base;
                u.insert(opt.begin(), opt.end());
                nxt.push_back(std::move(u));
            }
        combos = std::move(nxt);
    }
    for (auto& c2 : combos) out.push_back(std::move(c2));
    return out;
}

// ---------------------------------------------------------------------------
// enumeration of tree shapes

namespace detail {
inline void tree_combinations(const std::vector<std::vector<Tree>>& pools, std::size_t slot,
                              std::vector<const Tree*>& picked,
                              std::vector<std::vector<const Tree*>>& out) {
    if (slot == pools.size()) {
        out.push_back(picked);
        return;
    }
    for (const auto& t : pools[slot]) {
        picked.push_back(&t);
        tree_combinations(pools, slot + 1, picked, out);
        picked.pop_back();
    }
}
}  // namespace detail

// all canonical tree shapes with exactly n vertices and arity at most max_arity
inline const std::vector<Tree>& trees_with_vertices(std::size_t n, std::size_t max_arity);

namespace detail {
inline std::vector<Tree> build_trees_with_vertices(std::size_t n, std::size_t max_arity) {
    if (n == 0) return {canonical_form(eta()).tree};
    std::map<std::string, Tree> found;
    for (std::size_t k = 0; k <= max_arity; ++k) {
        // distribute n-1 vertices among k child slots
        std::vector<std::vector<std::size_t>> splits;
        std::vector<std::size_t> cur(k, 0);
        std::function<void(std::size_t, std::size_t)> go = [&](std::size_t slot, std::size_t left) {
            if (slot == k) {
                if (left == 0) splits.push_back(cur);
                return;
            }
            for (std::size_t c = 0; c <= left; ++c) {
                cur[slot] = c;
                go(slot + 1, left - c);
            }
        };
        go(0, n - 1);
        for (const auto& split : splits) {
            std::vector<std::vector<Tree>> pools;
            for (std::size_t i = 0; i < k; ++i)
                pools.push_back(trees_with_vertices(split[i], max_arity));
            std::vector<const Tree*> picked;
            std::vector<std::vector<const Tree*>> combos;
            tree_combinations(pools, 0, picked, combos);
            for (const auto& combo : combos) {
                Tree t = corolla(k);
                auto ls = t.leaves();
                for (std::size_t i = 0; i < k; ++i)
                    if (combo[i]->vertex_count() > 0) t = graft(t, "l" + std::to_string(i + 1), *combo[i]);
                Tree c = canonical_form(t).tree;
                found.emplace(tree_key(c), c);
            }
        }
    }
    std::vector<Tree> out;
    for (auto& [k, t] : found) out.push_back(std::move(t));
    return out;
}
}  // namespace detail

inline const std::vector<Tree>& trees_with_vertices(std::size_t n, std::size_t max_arity) {
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<Tree>> cache;
    auto key = std::make_pair(n, max_arity);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto built = detail::build_trees_with_vertices(n, max_arity);
    return cache.emplace(key, std::move(built)).first->second;
}

// all canonical shapes with at most max_vertices vertices, smaller trees first
inline std::vector<Tree> tree_universe(std::size_t max_vertices, std::size_t max_arity) {
    std::vector<Tree> out;
    for (std::size_t n = 0; n <= max_vertices; ++n)
        for (const auto& t : trees_with_vertices(n, max_arity)) out.push_back(t);
    return out;
}

}  // namespace dendro

#endif  // DENDRO_TREE_HPP_
