/* anodyne.hpp -- the marked anodyne generator families and the lifting report.
 *
 * Families: (1) flat inner horns, (2) leaf horns with the leaf corolla
 * marked, (2*) leaf inclusions into a sharp corolla, (3) two-vertex
 * saturation, (4) flat-to-sharp on nerves of finite groupoids.  Class (4)
 * quantifies over all Kan complexes in the paper-level definition; here it is
 * instantiated only at the finite groupoids supplied by the caller.
 *
 * The report runs every generator instance against a marked map and, in
 * parallel, evaluates the three predicates that characterize maps with the
 * right lifting property against marked anodynes; the two verdicts must
 * agree, and disagreement is reported as a bug-level failure.
 */

#ifndef DENDRO_ANODYNE_HPP_
#define DENDRO_ANODYNE_HPP_

#include "dendro/category.hpp"
#include "dendro/lifting.hpp"
#include "dendro/marked.hpp"
#include "dendro/parallel.hpp"
#include "dendro/simplicial.hpp"
#include "dendro/tensor.hpp"

namespace dendro {

struct MarkedMap {
    MarkedDendSet source, target;
    DendMap map;

    bool marking_preserved(std::string* why = nullptr) const {
        for (const auto& [n, id] : source.marked_set())
            if (!target.marked(n, map(corolla_shape(n), id))) {
                if (why) *why = "marked corolla " + id + " maps to an unmarked corolla";
                return false;
            }
        return true;
    }
};

namespace detail {

// is the underlying-assignment a marked map from (b, marked_b) into x?
inline bool assignment_preserves_marks(const MarkedDendSet& b, const MarkedDendSet& x,
                                       const CellAssignment& table) {
    for (const auto& [n, id] : b.marked_set())
        if (!x.marked(n, table.at({tree_key(corolla_shape(n)), id}))) return false;
    return true;
}

}  // namespace detail

struct GeneratorVerdict {
    std::string family;
    std::string instance;
    bool ok = true;
    std::string detail;
};

// helper: recover a canonical tree from its shape key (cached)
inline const Tree& parse_tree_key_cached(const std::string& key);

namespace detail {
inline Tree tree_of_key(const std::string& key) {
    // keys are shape codes: rebuild by parsing the parenthesis structure
    std::size_t next = 0;
    std::vector<TreeVertex> vertices;
    std::function<Edge(std::size_t&, std::size_t)> go = [&](std::size_t& pos, std::size_t) -> Edge {
        Edge e = "e" + std::to_string(next++);
        if (key[pos] == 'l') {
            ++pos;
            return e;
        }
        // '('
        ++pos;
        TreeVertex v;
        v.output = e;
        while (key[pos] != ')') v.inputs.push_back(go(pos, 0));
        ++pos;
        vertices.push_back(std::move(v));
        return e;
    };
    std::size_t pos = 0;
    Edge root = go(pos, 0);
    return Tree(root, std::move(vertices));
}
}  // namespace detail

inline const Tree& parse_tree_key_cached(const std::string& key) {
    static std::map<std::string, Tree> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, canonical_shape(detail::tree_of_key(key))).first->second;
}

// RLP of a marked map against one generator where A and B share their
// underlying dendroidal set and differ only in markings
inline GeneratorVerdict marked_rlp_same_underlying(const MarkedMap& p, const MarkedDendSet& a,
                                                   const MarkedDendSet& b,
                                                   const std::string& family,
                                                   const std::string& instance) {
    for (const auto& f : enumerate_maps(b.underlying(), p.source.underlying())) {
        if (!detail::assignment_preserves_marks(a, p.source, f.table())) continue;
        // the bottom of the square: p o f must be a marked map out of b
        CellAssignment proj;
        for (const auto& [key, v] : f.table())
            proj[key] = p.map(parse_tree_key_cached(key.first), v);
        if (!detail::assignment_preserves_marks(b, p.target, proj)) continue;
        if (!detail::assignment_preserves_marks(b, p.source, f.table()))
            return {family, instance, false, "lift fails to preserve the extra markings"};
    }
    return {family, instance, true, ""};
}

// RLP of a marked map against a generator inclusion a subset b, where b is a
// marked subobject of the representable on t
inline GeneratorVerdict marked_rlp_subobject(const MarkedMap& p, const MarkedDendSet& a,
                                             const MarkedDendSet& b, const Tree& t,
                                             const std::string& family,
                                             const std::string& instance) {
    const DendSet& x = p.source.underlying();
    const DendSet& y = p.target.underlying();
    (void)x;
    for (const auto& y_cell : y.level(t)) {
        CellAssignment required = classify_cells(b.underlying(), t, y, y_cell);
        // the bottom must be a marked map
        if (!detail::assignment_preserves_marks(b, p.target, required)) continue;
        for (const auto& top : enumerate_maps_over(a.underlying(), p.map, required)) {
            if (!detail::assignment_preserves_marks(a, p.source, top.table())) continue;
            bool found = false;
            LiftingProblem prob{a.underlying(), b.underlying(), p.map, top.table(), required};
            for (const auto& fill : fillers(prob)) {
                if (detail::assignment_preserves_marks(b, p.source, fill.table())) {
                    found = true;
                    break;
                }
            }
            if (!found)
                return {family, instance, false,
                        "no marked lift against " + instance + " over " + y_cell};
        }
    }
    return {family, instance, true, ""};
}

// ---------------------------------------------------------------------------
// generator families, instantiated per tree within the bound

struct MarkedAnodyneOptions {
    std::size_t vertex_bound = 3;
    std::vector<FiniteCategory> kan_probes;  // finite groupoids for family (4)
    std::size_t jobs = 1;
};

inline std::vector<GeneratorVerdict> run_generator_families(const MarkedMap& p,
                                                            const MarkedAnodyneOptions& opt) {
    Bounds bounds = common_bounds(p.map);
    bounds.vertices = std::min(bounds.vertices, opt.vertex_bound);
    std::vector<GeneratorVerdict> out;
    struct Task {
        std::function<GeneratorVerdict()> run;
    };
    std::vector<Task> tasks;

    // (1) flat inner horns
    for (std::size_t vc = 2; vc <= bounds.vertices; ++vc)
        for (const auto& t : trees_with_vertices(vc, bounds.arity))
            for (const auto& e : t.inner_edges())
                tasks.push_back({[=, &p]() {
                    DendSet horn_d = inner_horn(t, e, rep_bounds(t));
                    DendSet rep = representable_cached(t, rep_bounds(t));
                    return marked_rlp_subobject(p, flat(horn_d), flat(rep), t, "inner_horn(1)",
                                                "inner horn at " + e + " of " + tree_key(t));
                }});

    // (2) leaf horns with the leaf corolla marked
    for (std::size_t vc = 2; vc <= bounds.vertices; ++vc)
        for (const auto& t : trees_with_vertices(vc, bounds.arity))
            for (const auto& v : t.vertices()) {
                bool leaf_vertex = true;
                for (const auto& in : v.inputs) leaf_vertex &= t.is_leaf(in);
                if (!leaf_vertex) continue;
                TreeVertex cv{v.inputs, v.output};
                tasks.push_back({[=, &p]() {
                    DendSet horn_d = leaf_horn(t, v.output, rep_bounds(t));
                    DendSet rep = representable_cached(t, rep_bounds(t));
                    Tree csub(v.output, {cv});
                    std::map<Edge, Edge> em;
                    for (const auto& e2 : csub.edges()) em[e2] = e2;
                    auto [shape, id] = dendrex_of_morphism(TreeMorphism(csub, t, em, false));
                    MarkedDendSet mb = with_marks(rep, {{cv.inputs.size(), id}});
                    // restrict the marking to the horn
                    std::set<std::pair<std::size_t, DendrexId>> am;
                    for (const auto& [n, mid] : mb.marked_set())
                        if (horn_d.contains(corolla_shape(n), mid)) am.insert({n, mid});
                    MarkedDendSet ma(horn_d, std::move(am));
                    return marked_rlp_subobject(p, ma, mb, t, "leaf_horn(2)",
                                                "leaf horn at " + v.output + " of " + tree_key(t));
                }});
            }

    // (2*) leaf inclusions into a sharp corolla
    for (std::size_t n = 0; n <= bounds.arity; ++n)
        tasks.push_back({[=, &p]() {
            Tree cn = corolla(n);
            DendSet rep = representable_cached(cn, rep_bounds(cn));
            std::vector<Cell> gens;
            for (const auto& l : cn.leaves()) {
                TreeMorphism inc(eta(l), cn, {{l, l}}, false);
                auto [shape, id] = dendrex_of_morphism(inc);
                gens.push_back({shape, id});
            }
            DendSet leaves_sub = subpresheaf(rep, gens);
            return marked_rlp_subobject(p, flat(leaves_sub), sharp(rep), cn, "corolla_leaves(2*)",
                                        "leaves of the sharp " + std::to_string(n) + "-corolla");
        }});

    // (3) two-vertex saturation
    for (const auto& t : trees_with_vertices(2, bounds.arity))
        tasks.push_back({[=, &p]() {
            DendSet rep = representable_cached(t, rep_bounds(t));
            std::vector<std::pair<std::size_t, DendrexId>> marks;
            for (const auto& v : t.vertices()) {
                TreeVertex cv{v.inputs, v.output};
                Tree csub(v.output, {cv});
                std::map<Edge, Edge> em;
                for (const auto& e2 : csub.edges()) em[e2] = e2;
                auto [shape, id] = dendrex_of_morphism(TreeMorphism(csub, t, em, false));
                marks.push_back({v.inputs.size(), id});
            }
            MarkedDendSet ma = with_marks(rep, marks);
            return marked_rlp_same_underlying(p, ma, sharp(rep), "two_vertex(3)",
                                              "two-vertex tree " + tree_key(t));
        }});

    // (4) flat-to-sharp on nerves of finite groupoids
    for (std::size_t gi = 0; gi < opt.kan_probes.size(); ++gi) {
        const FiniteCategory& g = opt.kan_probes[gi];
        if (!g.is_groupoid())
            throw DendError("family (4) probes must be finite groupoids");
        tasks.push_back({[=, &p, &g]() {
            std::size_t dim = std::min<std::size_t>(p.source.underlying().bounds().vertices, 3);
            SimpSet k = nerve_simpset(g, dim);
            DendSet jk = simplicial_extension(k, dim, p.source.underlying().bounds().arity);
            return marked_rlp_same_underlying(
                p, flat(jk), sharp(jk), "kan_sharpening(4)",
                "groupoid probe " + std::to_string(gi));
        }});
    }

    out.resize(tasks.size());
    parallel_for(tasks.size(), opt.jobs, [&](std::size_t i) { out[i] = tasks[i].run(); });
    return out;
}

// ---------------------------------------------------------------------------
// the predicate characterization and the combined report

struct AbcVerdict {
    Verdict a;  // inner fibration
    Verdict b;  // marked iff projection marked and coCartesian
    Verdict c;  // marked corollas lift with prescribed inputs
    bool ok() const { return a.ok && b.ok && c.ok; }
};

inline AbcVerdict abc_predicates(const MarkedMap& p, std::size_t vertex_bound) {
    AbcVerdict out;
    out.a = is_inner_fibration(p.map, vertex_bound);
    Bounds bo = common_bounds(p.map);
    for (std::size_t n = 0; n <= bo.arity && out.b.ok; ++n) {
        const Tree& cn = corolla_shape(n);
        for (const auto& alpha : p.source.underlying().level(cn)) {
            bool marked = p.source.marked(n, alpha);
            bool proj_marked = p.target.marked(n, p.map(cn, alpha));
            bool cocart = is_cocartesian_corolla(p.map, n, alpha, std::min<std::size_t>(vertex_bound, 3)).ok;
            if (marked != (proj_marked && cocart)) {
                std::string reason = marked ? "over-marked corolla " + alpha
                                            : "under-marked corolla " + alpha;
                out.b = {false, Witness{reason, cn, alpha, {}}, ""};
                break;
            }
        }
    }
    out.c = has_corolla_lifts(
        p.map, [&](std::size_t n, const DendrexId& beta) { return p.target.marked(n, beta); },
        [&](std::size_t n, const DendrexId& alpha) { return p.source.marked(n, alpha); });
    return out;
}

struct MarkedRlpReport {
    std::vector<GeneratorVerdict> generators;
    AbcVerdict abc;
    bool generators_ok = true;
    bool agreement = true;  // generator RLP iff (a)(b)(c); disagreement is a bug

    bool ok() const { return generators_ok && abc.ok() && agreement; }
};

inline MarkedRlpReport marked_rlp_report(const MarkedMap& p, const MarkedAnodyneOptions& opt) {
    MarkedRlpReport report;
    report.generators = run_generator_families(p, opt);
    for (const auto& g : report.generators) report.generators_ok &= g.ok;
    report.abc = abc_predicates(p, opt.vertex_bound);
    report.agreement = report.generators_ok == report.abc.ok();
    return report;
}

// the natural marking: corollas whose projection is marked and which are
// p-coCartesian
inline MarkedDendSet natural_marking(const DendMap& p, const MarkedDendSet& target,
                                     std::size_t corolla_bound = 3) {
    std::set<std::pair<std::size_t, DendrexId>> marked;
    Bounds b = common_bounds(p);
    for (std::size_t n = 0; n <= b.arity; ++n) {
        const Tree& cn = corolla_shape(n);
        for (const auto& alpha : p.source().level(cn)) {
            if (!target.marked(n, p(cn, alpha))) continue;
            if (is_cocartesian_corolla(p, n, alpha, corolla_bound).ok) marked.insert({n, alpha});
        }
    }
    return MarkedDendSet(p.source(), std::move(marked));
}

}  // namespace dendro

#endif  // DENDRO_ANODYNE_HPP_
