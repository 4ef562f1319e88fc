// dendro -- command line interface to the dendroidal sets toolkit.
//
// Exit codes: 0 success (or a true verdict), 1 a false verdict with a witness
// emitted, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dendro/anodyne.hpp"
#include "dendro/json_io.hpp"
#include "dendro/lifting.hpp"
#include "dendro/shuffle.hpp"
#include "dendro/simplicial.hpp"
#include "dendro/straighten.hpp"
#include "dendro/tau.hpp"
#include "dendro/tensor.hpp"
#include "dendro/tree_io.hpp"
#include "dendro/wspace.hpp"

using namespace dendro;
using nlohmann::json;

namespace {

struct Options {
    std::string format = "text";
    std::size_t bound = 3;
    std::size_t jobs = 1;
};

// a tree argument is an inline s-expression or a path to a file holding one
Tree load_tree(const std::string& arg) {
    if (!arg.empty() && arg[0] == '(') return parse_tree(arg);
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open tree file " + arg, 0, 0);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_tree(text);
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const Options& opt) {
    if (opt.format == "json")
        std::cout << j.dump(2) << "\n";
    else if (j.is_string())
        std::cout << j.get<std::string>() << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

std::string shuffle_sexp(const Shuffle& sh) {
    // s-expression with (pair s-edge t-edge) labels
    std::function<std::string(const Edge&)> go = [&](const Edge& e) -> std::string {
        auto [s, t] = split_pair_edge(e);
        std::string label = "(pair " + s + " " + t + ")";
        const TreeVertex* v = sh.tree.vertex_above(e);
        if (!v) return "(edge " + label + ")";
        std::string out = "(node " + label;
        for (const auto& in : v->inputs) out += " " + go(in);
        return out + ")";
    };
    return go(sh.tree.root());
}

json witness_json(const Verdict& v) {
    json w;
    w["ok"] = v.ok;
    if (!v.note.empty()) w["note"] = v.note;
    if (v.witness) {
        w["witness"]["description"] = v.witness->description;
        w["witness"]["shape"] = tree_key(v.witness->shape);
        w["witness"]["bottom"] = v.witness->bottom_cell;
        json top = json::object();
        for (const auto& [key, val] : v.witness->top) top[key.first + "#" + key.second] = val;
        w["witness"]["top"] = top;
    }
    return w;
}

MarkedDendSet marking_of(const json& spec, const DendSet& x, const DendMap& p,
                         const MarkedDendSet& target, std::size_t bound) {
    if (spec.is_string()) {
        std::string kind = spec.get<std::string>();
        if (kind == "flat") return flat(x);
        if (kind == "sharp") return sharp(x);
        if (kind == "natural") return natural_marking(p, target, std::min<std::size_t>(bound, 3));
        throw std::runtime_error("unknown marking kind " + kind);
    }
    std::vector<std::pair<std::size_t, DendrexId>> extra;
    for (const auto& c : spec.at("corollas"))
        extra.push_back({c.at("arity").get<std::size_t>(), c.at("id").get<std::string>()});
    return with_marks(x, extra);
}

int run_tree(const std::string& action, const std::string& arg, const std::string& arg2,
             const std::string& leaf, const Options& opt) {
    Tree t = load_tree(arg);
    if (action == "parse" || action == "show") {
        if (opt.format == "dot") {
            std::cout << to_dot(t);
        } else if (opt.format == "json") {
            json j;
            j["sexp"] = to_sexp(t);
            j["edges"] = t.edges();
            j["root"] = t.root();
            j["vertices"] = t.vertex_count();
            j["leaves"] = t.leaves();
            j["inner_edges"] = t.inner_edges();
            j["canonical"] = tree_key(t);
            emit(j, opt);
        } else {
            std::cout << to_sexp(t) << "\n";
        }
        return 0;
    }
    if (action == "faces") {
        json out = json::array();
        for (const auto& f : faces(t)) {
            static const char* kinds[] = {"inner", "leaf_vertex", "root_vertex", "edge_inclusion"};
            out.push_back({{"kind", kinds[static_cast<int>(f.label.kind)]},
                           {"edge", f.label.edge},
                           {"source", to_sexp(f.inclusion.source())}});
        }
        emit(out, opt);
        return 0;
    }
    if (action == "graft") {
        Tree s = load_tree(arg2);
        std::cout << to_sexp(graft(t, leaf, s)) << "\n";
        return 0;
    }
    if (action == "spine") {
        auto sp = spine_presentation(t);
        json out;
        out["corollas"] = json::array();
        for (const auto& c : sp.corollas) out["corollas"].push_back(to_sexp(c.source()));
        out["gluings"] = json::array();
        for (const auto& g : sp.gluings)
            out["gluings"].push_back({{"edge", g.inner_edge}, {"lower", g.lower}, {"upper", g.upper}});
        emit(out, opt);
        return 0;
    }
    if (action == "auto") {
        auto auts = automorphisms(t);
        json out;
        out["order"] = auts.size();
        out["elements"] = json::array();
        for (const auto& a : auts) out["elements"].push_back(a);
        emit(out, opt);
        return 0;
    }
    std::cerr << "unknown tree action " << action << "\n";
    return 2;
}

int run_shuffle(const std::string& action, const std::string& s_arg, const std::string& t_arg,
                const Options& opt) {
    Tree s = load_tree(s_arg);
    Tree t = load_tree(t_arg);
    if (action == "count") {
        std::cout << shuffles(s, t).size() << "\n";
        return 0;
    }
    if (action == "list") {
        for (const auto& sh : shuffles(s, t)) std::cout << shuffle_sexp(sh) << "\n";
        return 0;
    }
    if (action == "poset") {
        auto poset = percolation_poset(s, t);
        if (opt.format == "dot") {
            std::cout << "digraph shuffles {\n";
            for (std::size_t i = 0; i < poset.nodes.size(); ++i)
                std::cout << "  n" << i << " [label=\"" << i << "\"];\n";
            for (const auto& m : poset.moves)
                std::cout << "  n" << m.from << " -> n" << m.to << " [label=\"" << m.at
                          << (m.shrinking ? " (shrinking)" : "") << "\"];\n";
            std::cout << "}\n";
        } else {
            json out;
            out["count"] = poset.nodes.size();
            out["source"] = poset.source;
            out["sink"] = poset.sink;
            out["has_flagged_moves"] = poset.has_flagged_moves;
            out["nodes"] = json::array();
            for (const auto& n : poset.nodes) out["nodes"].push_back(shuffle_sexp(n));
            out["moves"] = json::array();
            for (const auto& m : poset.moves)
                out["moves"].push_back(
                    {{"from", m.from}, {"to", m.to}, {"at", m.at}, {"shrinking", m.shrinking}});
            emit(out, opt);
        }
        return 0;
    }
    std::cerr << "unknown shuffle action " << action << "\n";
    return 2;
}

int run_tensor(const std::string& s_arg, const std::string& t_arg, const Options& opt) {
    Tree s = load_tree(s_arg);
    Tree t = load_tree(t_arg);
    Bounds bs = rep_bounds(s), bt = rep_bounds(t);
    Bounds b{std::min(opt.bound, bs.vertices + bt.vertices * std::max<std::size_t>(bs.arity, 1)),
             std::max<std::size_t>(bs.arity * std::max<std::size_t>(bt.arity, 1), 1)};
    DendSet prod = tensor(representable(s, Bounds{b.vertices, bs.arity}),
                          representable(t, Bounds{b.vertices, bt.arity}), b);
    json out;
    out["bounds"] = {{"vertices", b.vertices}, {"arity", b.arity}};
    out["levels"] = json::object();
    out["nondegenerate"] = json::object();
    for (const auto& shape : prod.shapes()) {
        auto lv = prod.level(shape);
        if (lv.empty()) continue;
        std::size_t nd = 0;
        for (const auto& id : lv) nd += !is_degenerate(prod, shape, id);
        out["levels"][tree_key(shape)] = lv.size();
        out["nondegenerate"][tree_key(shape)] = nd;
    }
    emit(out, opt);
    return 0;
}

int run_nerve(const std::string& path, bool dump, const Options& opt) {
    FiniteOperad p = operad_from_json(load_json(path));
    DendSet n = nerve(p, opt.bound);
    if (dump) {
        emit(dendset_to_json(n), opt);
        return 0;
    }
    json out;
    out["levels"] = json::object();
    for (const auto& shape : n.shapes()) {
        auto lv = n.level(shape);
        if (!lv.empty()) out["levels"][tree_key(shape)] = lv.size();
    }
    emit(out, opt);
    return 0;
}

int run_check(const std::string& kind, const std::string& path, const Options& opt) {
    auto d = operad_map_from_json(load_json(path));
    DendMap p = nerve_map(d->morphism, opt.bound);
    if (kind == "inner") {
        Verdict v = is_inner_fibration(p, opt.bound);
        emit(witness_json(v), opt);
        return v.ok ? 0 : 1;
    }
    if (kind == "left") {
        Verdict v = is_left_fibration(p, opt.bound);
        json out = witness_json(v);
        Verdict direct = is_opfibered_in_groupoids(d->morphism);
        out["opfibered_in_groupoids"] = direct.ok;
        out["agreement"] = v.ok == direct.ok;
        emit(out, opt);
        return v.ok ? 0 : 1;
    }
    if (kind == "cocart") {
        Verdict v = is_cocartesian_fibration(p, opt.bound);
        json out = witness_json(v);
        Verdict direct = is_opfibered(d->morphism);
        out["opfibered"] = direct.ok;
        out["agreement"] = v.ok == direct.ok;
        emit(out, opt);
        return v.ok ? 0 : 1;
    }
    if (kind == "marked") {
        MarkedDendSet target = sharp(p.target());
        MarkedDendSet source = marking_of(d->marking, p.source(), p, target, opt.bound);
        MarkedMap mp{source, target, p};
        MarkedAnodyneOptions mopt;
        mopt.vertex_bound = opt.bound;
        mopt.jobs = opt.jobs;
        MarkedRlpReport report = marked_rlp_report(mp, mopt);
        json out;
        out["ok"] = report.ok();
        out["generators_ok"] = report.generators_ok;
        out["abc"] = {{"a", report.abc.a.ok}, {"b", report.abc.b.ok}, {"c", report.abc.c.ok}};
        out["agreement"] = report.agreement;
        out["generators"] = json::array();
        for (const auto& g : report.generators)
            if (!g.ok)
                out["generators"].push_back(
                    {{"family", g.family}, {"instance", g.instance}, {"detail", g.detail}});
        if (!report.abc.b.ok && report.abc.b.witness)
            out["abc_witness"] = report.abc.b.witness->description;
        emit(out, opt);
        return report.ok() ? 0 : 1;
    }
    std::cerr << "unknown check kind " << kind << "\n";
    return 2;
}

int run_groth(const std::string& action, const std::string& path, const std::string& at,
              const Options& opt) {
    if (action == "build" || action == "roundtrip") {
        json j = load_json(path);
        FiniteOperad s = operad_from_json(j.at("operad"));
        CatAlgebra f = cat_algebra_from_json(s, j.at("algebra"));
        Grothendieck g(s, f);
        if (action == "build") {
            json out;
            out["total"] = operad_to_json(g.total());
            out["projection"] = {{"colour_map", json::object()}, {"op_map", json::object()}};
            OperadMorphism proj = g.projection();
            for (const auto& [a, b] : proj.colour_map) out["projection"]["colour_map"][a] = b;
            for (const auto& [a, b] : proj.op_map) out["projection"]["op_map"][a] = b;
            emit(out, opt);
            return 0;
        }
        UnitCheck u = unit_check(s, f);
        OperadMorphism proj = g.projection();
        std::string err;
        Cleavage k = choose_cleavage(proj, &err);
        json out;
        out["unit"] = u.ok;
        if (!u.ok) out["unit_why"] = u.why;
        if (!err.empty()) {
            out["counit"] = false;
            out["counit_why"] = err;
        } else {
            CounitCheck c = counit_check(proj, k, phi(proj, k));
            out["counit"] = c.ok;
            if (!c.ok) out["counit_why"] = c.why;
        }
        emit(out, opt);
        return out["unit"].get<bool>() && out["counit"].get<bool>() ? 0 : 1;
    }
    if (action == "straighten") {
        auto d = operad_map_from_json(load_json(path));
        SetStraightening st(d->morphism);
        emit(cat_algebra_to_json(st.algebra()), opt);
        return 0;
    }
    if (action == "phi") {
        auto d = operad_map_from_json(load_json(path));
        std::string err;
        Cleavage k = choose_cleavage(d->morphism, &err);
        if (!err.empty()) {
            json out;
            out["ok"] = false;
            out["why"] = err;
            emit(out, opt);
            return 1;
        }
        PhiResult ph = phi(d->morphism, k);
        json out;
        out["cleavage"] = cleavage_to_json(k);
        out["algebra"] = cat_algebra_to_json(ph.algebra);
        emit(out, opt);
        return 0;
    }
    if (action == "coyoneda") {
        FiniteOperad s = operad_from_json(load_json(path));
        json out = json::array();
        bool all_ok = true;
        for (const auto& c : s.colours()) {
            SetAlgebra co = corepresentable(s, at.empty() ? c : at);
            SetAlgebra probe = corepresentable(s, c);
            auto nats = enumerate_set_nats(co, probe);
            const Colour& base_at = at.empty() ? c : at;
            bool ok = nats.size() == probe.value(base_at).size();
            all_ok &= ok;
            out.push_back({{"at", base_at},
                           {"probe", c},
                           {"nat_count", nats.size()},
                           {"value_count", probe.value(base_at).size()},
                           {"ok", ok}});
        }
        emit(out, opt);
        return all_ok ? 0 : 1;
    }
    std::cerr << "unknown groth action " << action << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dendroidal sets toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    if (const char* env = std::getenv("DENDRO_BOUND")) opt.bound = std::stoul(env);
    app.add_option("--format", opt.format, "output format: text, json, or dot");
    app.add_option("--bound", opt.bound, "vertex bound for bounded constructions");
    app.add_option("--jobs", opt.jobs, "worker count for lifting searches");

    std::string action, arg1, arg2, leaf, at;
    bool dump = false;

    auto* tree = app.add_subcommand("tree", "parse, inspect, and transform trees");
    tree->add_option("action", action, "parse|show|faces|graft|spine|auto")->required();
    tree->add_option("tree", arg1, "tree (s-expression or file)")->required();
    tree->add_option("tree2", arg2, "second tree for graft");
    tree->add_option("--leaf", leaf, "leaf to graft onto");

    auto* shuffle = app.add_subcommand("shuffle", "shuffles of two trees");
    shuffle->add_option("action", action, "list|count|poset")->required();
    shuffle->add_option("S", arg1)->required();
    shuffle->add_option("T", arg2)->required();

    auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two representables");
    tensor_cmd->add_option("S", arg1)->required();
    tensor_cmd->add_option("T", arg2)->required();

    auto* nerve_cmd = app.add_subcommand("nerve", "dendroidal nerve of an operad");
    nerve_cmd->add_option("operad", arg1, "operad JSON file")->required();
    nerve_cmd->add_flag("--dump", dump, "emit the full bounded dendroidal set");

    auto* check = app.add_subcommand("check", "fibration checks on a nerve map");
    check->add_option("kind", action, "inner|left|cocart|marked")->required();
    check->add_option("map", arg1, "map JSON file")->required();

    auto* groth = app.add_subcommand("groth", "Grothendieck constructions");
    groth->add_option("action", action, "build|straighten|phi|roundtrip|coyoneda")->required();
    groth->add_option("input", arg1, "JSON input file")->required();
    groth->add_option("--at", at, "colour for coyoneda");

    auto* wspace_cmd = app.add_subcommand("wspace", "W-construction operation space");
    wspace_cmd->add_option("tree", arg1)->required();
    wspace_cmd->add_option("--root", at, "root edge")->required();
    wspace_cmd->add_option("--leaves", leaf, "comma-separated leaf edges");

    auto* stcube = app.add_subcommand("stcube", "straightening cube at an edge");
    stcube->add_option("tree", arg1)->required();
    stcube->add_option("--edge", at, "edge")->required();

    auto* maptree_cmd = app.add_subcommand("maptree", "mapping tree of a tree algebra");
    maptree_cmd->add_option("algebra", arg1, "tree algebra JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tree->parsed()) return run_tree(action, arg1, arg2, leaf, opt);
        if (shuffle->parsed()) return run_shuffle(action, arg1, arg2, opt);
        if (tensor_cmd->parsed()) return run_tensor(arg1, arg2, opt);
        if (nerve_cmd->parsed()) return run_nerve(arg1, dump, opt);
        if (check->parsed()) return run_check(action, arg1, opt);
        if (groth->parsed()) return run_groth(action, arg1, at, opt);
        if (wspace_cmd->parsed()) {
            Tree t = load_tree(arg1);
            std::vector<Edge> leaves;
            std::string cur;
            for (char c : leaf + ",") {
                if (c == ',') {
                    if (!cur.empty()) leaves.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            auto cube = w_space(t, leaves, at);
            json out;
            out["exists"] = cube.has_value();
            if (cube) {
                out["dimension"] = cube->dimension();
                out["coordinates"] = cube->coords;
            }
            emit(out, opt);
            return cube ? 0 : 1;
        }
        if (stcube->parsed()) {
            Tree t = load_tree(arg1);
            Cube c = straightening_cube(t, at);
            json out;
            out["dimension"] = c.dimension();
            out["coordinates"] = c.coords;
            emit(out, opt);
            return 0;
        }
        if (maptree_cmd->parsed()) {
            TreeAlgebra a = tree_algebra_from_json(load_json(arg1));
            DendSet m = mapping_tree(a, opt.bound);
            MarkedDendSet mm = marked_mapping_tree(m);
            json out;
            out["levels"] = json::object();
            for (const auto& shape : m.shapes()) {
                auto lv = m.level(shape);
                if (!lv.empty()) out["levels"][tree_key(shape)] = lv.size();
            }
            out["marked"] = mm.marked_count();
            json fibers = json::object();
            for (const auto& e : a.tree().edges()) {
                SimpSet fib = mapping_tree_fiber(m, e, std::min<std::size_t>(m.bounds().vertices, 2));
                json sizes = json::array();
                for (std::size_t n = 0; n <= fib.dim_bound(); ++n)
                    sizes.push_back(fib.simplices(n).size());
                fibers[e] = sizes;
            }
            out["fibers"] = fibers;
            emit(out, opt);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
