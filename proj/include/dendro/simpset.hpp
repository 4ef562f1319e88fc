/* simpset.hpp -- bounded simplicial sets and cubes.
 *
 * Simplicial sets are tables of simplices per degree with explicit face and
 * degeneracy maps.  Cubes (Delta^1)^C are generated from their coordinate
 * set; an n-simplex of a cube is a threshold function C -> {0..n+1} (the
 * monotone-path encoding), where coordinate c takes value 1 at vertex i
 * exactly when i >= t(c).
 */

#ifndef DENDRO_SIMPSET_HPP_
#define DENDRO_SIMPSET_HPP_

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dendro/tree.hpp"  // for TreeError-style exceptions and naming conventions

namespace dendro {

struct SimpError : std::runtime_error {
    explicit SimpError(const std::string& what) : std::runtime_error(what) {}
};

using SimplexId = std::string;

class SimpSet {
public:
    SimpSet() = default;
    explicit SimpSet(std::size_t dim_bound)
        : dim_bound_(dim_bound), levels_(dim_bound + 1), index_(dim_bound + 1) {}

    std::size_t dim_bound() const { return dim_bound_; }

    void add_simplex(std::size_t n, const SimplexId& id) {
        check_degree(n);
        if (!index_[n].insert(id).second) throw SimpError("simplex " + id + " declared twice");
        levels_[n].push_back(id);
    }
    void set_face(std::size_t n, const SimplexId& id, std::size_t i, const SimplexId& to) {
        faces_[{n, id, i}] = to;
    }
    void set_degeneracy(std::size_t n, const SimplexId& id, std::size_t i, const SimplexId& to) {
        degens_[{n, id, i}] = to;
    }

    const std::vector<SimplexId>& simplices(std::size_t n) const {
        check_degree(n);
        return levels_[n];
    }
    bool contains(std::size_t n, const SimplexId& id) const {
        return n <= dim_bound_ && index_[n].count(id) > 0;
    }

    SimplexId face(std::size_t n, const SimplexId& id, std::size_t i) const {
        auto it = faces_.find({n, id, i});
        if (it == faces_.end()) throw SimpError("missing face d" + std::to_string(i) + " of " + id);
        return it->second;
    }
    SimplexId degeneracy(std::size_t n, const SimplexId& id, std::size_t i) const {
        auto it = degens_.find({n, id, i});
        if (it == degens_.end())
            throw SimpError("missing degeneracy s" + std::to_string(i) + " of " + id);
        return it->second;
    }

    bool is_degenerate(std::size_t n, const SimplexId& id) const {
        if (n == 0) return false;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& y : simplices(n - 1))
                if (degeneracy(n - 1, y, i) == id) return true;
        return false;
    }

    std::size_t nondegenerate_count(std::size_t n) const {
        std::size_t k = 0;
        for (const auto& id : simplices(n))
            if (!is_degenerate(n, id)) ++k;
        return k;
    }

    // apply a simplicial operator given by its vertex images: alpha : [m] -> [n]
    SimplexId apply(const std::vector<std::size_t>& alpha, std::size_t n, const SimplexId& id) const {
        // peel degeneracies off repeats, then delete missing vertices from the top
        for (std::size_t i = 0; i + 1 < alpha.size(); ++i)
            if (alpha[i] == alpha[i + 1]) {
                auto shorter = alpha;
                shorter.erase(shorter.begin() + i + 1);
                return degeneracy(alpha.size() - 2, apply(shorter, n, id), i);
            }
        SimplexId cur = id;
        std::size_t cn = n;
        for (std::size_t v = n + 1; v-- > 0;) {
            bool present = false;
            for (auto h : alpha) present |= h == v;
            if (!present) {
                cur = face(cn, cur, v);
                --cn;
            }
        }
        return cur;
    }

    bool check_identities(std::string* why = nullptr) const {
        auto bad = [&](const std::string& m) {
            if (why) *why = m;
            return false;
        };
        for (std::size_t n = 2; n <= dim_bound_; ++n)
            for (const auto& x : simplices(n))
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j <= n; ++j)
                        if (face(n - 1, face(n, x, j), i) != face(n - 1, face(n, x, i), j - 1))
                            return bad("d_i d_j fails on " + x);
        for (std::size_t n = 0; n + 1 <= dim_bound_; ++n)
            for (const auto& x : simplices(n)) {
                for (std::size_t j = 0; j <= n; ++j) {
                    SimplexId s = degeneracy(n, x, j);
                    for (std::size_t i = 0; i <= n + 1; ++i) {
                        SimplexId got = face(n + 1, s, i);
                        SimplexId want;
                        if (i == j || i == j + 1)
                            want = x;
                        else if (i < j)
                            want = degeneracy(n - 1, face(n, x, i), j - 1);
                        else
                            want = degeneracy(n - 1, face(n, x, i - 1), j);
                        if (got != want) return bad("d_i s_j fails on " + x);
                    }
                }
            }
        for (std::size_t n = 0; n + 2 <= dim_bound_; ++n)
            for (const auto& x : simplices(n))
                for (std::size_t i = 0; i <= n; ++i)
                    for (std::size_t j = i; j <= n; ++j)
                        if (degeneracy(n + 1, degeneracy(n, x, j), i) !=
                            degeneracy(n + 1, degeneracy(n, x, i), j + 1))
                            return bad("s_i s_j fails on " + x);
        return true;
    }

    // vertices connected by 1-simplices in either direction
    std::size_t connected_components() const {
        const auto& vs = simplices(0);
        std::map<SimplexId, SimplexId> parent;
        for (const auto& v : vs) parent[v] = v;
        std::function<SimplexId(SimplexId)> find = [&](SimplexId a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        if (dim_bound_ >= 1)
            for (const auto& e : simplices(1)) parent[find(face(1, e, 0))] = find(face(1, e, 1));
        std::set<SimplexId> roots;
        for (const auto& v : vs) roots.insert(find(v));
        return roots.size();
    }

private:
    void check_degree(std::size_t n) const {
        if (n > dim_bound_) throw SimpError("degree exceeds the bound of this simplicial set");
    }

    std::size_t dim_bound_ = 0;
    std::vector<std::vector<SimplexId>> levels_{1};
    mutable std::vector<std::set<SimplexId>> index_{1};
    std::map<std::tuple<std::size_t, SimplexId, std::size_t>, SimplexId> faces_;
    std::map<std::tuple<std::size_t, SimplexId, std::size_t>, SimplexId> degens_;
};

// the standard simplex Delta^m up to the given dimension
inline SimpSet standard_simplex(std::size_t m, std::size_t dim_bound) {
    SimpSet s(dim_bound);
    // an n-simplex is a monotone map [n] -> [m], encoded by its image list
    auto encode = [](const std::vector<std::size_t>& v) {
        std::string out;
        for (auto x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
        return out;
    };
    std::vector<std::vector<std::vector<std::size_t>>> by_degree(dim_bound + 1);
    std::function<void(std::vector<std::size_t>&)> gen = [&](std::vector<std::size_t>& cur) {
        if (!cur.empty()) {
            by_degree[cur.size() - 1].push_back(cur);
            s.add_simplex(cur.size() - 1, encode(cur));
        }
        if (cur.size() == dim_bound + 1) return;
        for (std::size_t next = cur.empty() ? 0 : cur.back(); next <= m; ++next) {
            cur.push_back(next);
            gen(cur);
            cur.pop_back();
        }
    };
    std::vector<std::size_t> cur;
    gen(cur);
    for (std::size_t n = 0; n <= dim_bound; ++n)
        for (const auto& v : by_degree[n]) {
            for (std::size_t i = 0; i <= n && n > 0; ++i) {
                auto w = v;
                w.erase(w.begin() + i);
                s.set_face(n, encode(v), i, encode(w));
            }
            if (n + 1 <= dim_bound)
                for (std::size_t i = 0; i <= n; ++i) {
                    auto w = v;
                    w.insert(w.begin() + i, v[i]);
                    s.set_degeneracy(n, encode(v), i, encode(w));
                }
        }
    return s;
}

// ---------------------------------------------------------------------------
// cubes

struct Cube {
    std::vector<std::string> coords;  // sorted coordinate names; empty means a point

    std::size_t dimension() const { return coords.size(); }
    friend bool operator==(const Cube&, const Cube&) = default;
};

using CubePoint = std::map<std::string, int>;  // coordinate -> {0,1}

namespace detail {
inline std::string encode_thresholds(const std::map<std::string, std::size_t>& t) {
    std::string out;
    for (const auto& [k, v] : t) {
        if (!out.empty()) out += ";";
        out += k + "=" + std::to_string(v);
    }
    return out.empty() ? "*" : out;
}
inline std::map<std::string, std::size_t> decode_thresholds(const std::string& s) {
    std::map<std::string, std::size_t> out;
    if (s == "*") return out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto eq = s.find('=', pos);
        auto semi = s.find(';', eq);
        if (semi == std::string::npos) semi = s.size();
        out[s.substr(pos, eq - pos)] = std::stoul(s.substr(eq + 1, semi - eq - 1));
        pos = semi + 1;
    }
    return out;
}
}  // namespace detail

// the simplicial set (Delta^1)^coords up to the given dimension
inline SimpSet cube_simpset(const Cube& cube, std::size_t dim_bound) {
    SimpSet s(dim_bound);
    std::vector<std::map<std::string, std::size_t>> level_elems;
    for (std::size_t n = 0; n <= dim_bound; ++n) {
        // all threshold functions coords -> {0..n+1}
        std::vector<std::map<std::string, std::size_t>> elems{{}};
        for (const auto& c : cube.coords) {
            std::vector<std::map<std::string, std::size_t>> nxt;
            for (const auto& base : elems)
                for (std::size_t t = 0; t <= n + 1; ++t) {
                    auto e = base;
                    e[c] = t;
                    nxt.push_back(std::move(e));
                }
            elems = std::move(nxt);
        }
        for (const auto& e : elems) {
            s.add_simplex(n, detail::encode_thresholds(e));
            // faces: delete vertex i
            if (n > 0)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::map<std::string, std::size_t> f;
                    for (const auto& [c, t] : e) f[c] = t <= i ? t : t - 1;
                    s.set_face(n, detail::encode_thresholds(e), i, detail::encode_thresholds(f));
                }
            if (n + 1 <= dim_bound)
                for (std::size_t i = 0; i <= n; ++i) {
                    std::map<std::string, std::size_t> d;
                    for (const auto& [c, t] : e) d[c] = t <= i ? t : t + 1;
                    s.set_degeneracy(n, detail::encode_thresholds(e), i,
                                     detail::encode_thresholds(d));
                }
        }
    }
    return s;
}

// vertex of the cube as a 0-simplex id
inline SimplexId cube_vertex(const Cube& cube, const CubePoint& p) {
    std::map<std::string, std::size_t> t;
    for (const auto& c : cube.coords) t[c] = p.at(c) == 1 ? 0 : 1;
    return detail::encode_thresholds(t);
}

inline CubePoint cube_point_of_vertex(const Cube& cube, const SimplexId& id) {
    auto t = detail::decode_thresholds(id);
    CubePoint p;
    for (const auto& c : cube.coords) p[c] = t.at(c) == 0 ? 1 : 0;
    return p;
}

}  // namespace dendro

#endif  // DENDRO_SIMPSET_HPP_
