#pragma once

// Vertex-splitting cubic structure on multigraphs: canonical certificates,
// split cubes, counting statistics and exhaustive degree scans.

#include <cubix/complex.hpp>
#include <cubix/finite_type.hpp>
#include <cubix/scan.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cubix {

inline constexpr int kMaxCertificateVertices = 10;

/// Undirected multigraph with loops. Edges are stored as (u, w) with u <= w,
/// sorted; the vertex set is 0..vertices-1.
struct MultiGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;

    MultiGraph() = default;
    MultiGraph(int n, std::vector<std::pair<int, int>> es) : vertices(n), edges(std::move(es)) {
        if (n < 0) throw ContractViolation("negative vertex count");
        for (auto& [u, w] : edges) {
            if (u < 0 || w < 0 || u >= n || w >= n)
                throw ContractViolation("edge endpoint out of range 0.." + std::to_string(n - 1));
            if (u > w) std::swap(u, w);
        }
        std::sort(edges.begin(), edges.end());
    }

    std::size_t edge_count() const { return edges.size(); }
    std::size_t loop_count() const {
        return std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; });
    }
    /// Edge-ends at each vertex; a loop contributes two.
    std::vector<int> valences() const {
        std::vector<int> val(vertices, 0);
        for (const auto& [u, w] : edges) ++val[u], ++val[w];
        return val;
    }
    bool connected() const {
        if (vertices == 0) return true;
        std::vector<int> parent(vertices);
        for (int v = 0; v < vertices; ++v) parent[v] = v;
        std::function<int(int)> root = [&](int v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
        int comps = vertices;
        for (const auto& [u, w] : edges) {
            const int a = root(u), b = root(w);
            if (a != b) parent[a] = b, --comps;
        }
        return comps == 1;
    }

    auto operator<=>(const MultiGraph&) const = default;
};

namespace detail {

inline std::vector<std::vector<int>> adjacency(const MultiGraph& g) {
    std::vector<std::vector<int>> a(g.vertices, std::vector<int>(g.vertices, 0));
    for (const auto& [u, w] : g.edges) {
        if (u == w) ++a[u][u];
        else ++a[u][w], ++a[w][u];
    }
    return a;
}

// Colour refinement with canonical (signature-ranked) colours.
inline std::vector<int> refine_colours(const std::vector<std::vector<int>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> colour(n);
    {
        std::vector<std::pair<int, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            int val = 0;
            for (int u = 0; u < n; ++u) val += u == v ? 2 * a[v][u] : a[v][u];
            sig[v] = {val, a[v][v]};
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    }
    std::size_t classes = std::set<int>(colour.begin(), colour.end()).size();
    for (;;) {
        using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
        std::vector<Sig> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].first = colour[v];
            for (int u = 0; u < n; ++u)
                if (u != v && a[v][u]) sig[v].second.emplace_back(colour[u], a[v][u]);
            std::sort(sig[v].second.begin(), sig[v].second.end());
        }
        auto sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        if (sorted.size() == classes) return colour;
        classes = sorted.size();
    }
}

}  // namespace detail

/// Isomorphism certificate: the lexicographically least upper-triangular
/// adjacency (loops on the diagonal) over all colour-respecting orderings.
/// Brute force inside colour classes; supported up to 10 vertices.
inline std::vector<int> certificate(const MultiGraph& g) {
    if (g.vertices > kMaxCertificateVertices)
        throw DomainError("certificate supports at most " + std::to_string(kMaxCertificateVertices) +
                          " vertices, got " + std::to_string(g.vertices));
    const auto a = detail::adjacency(g);
    const auto colour = detail::refine_colours(a);
    const int n = g.vertices;
    std::map<int, std::vector<int>> by_colour;
    for (int v = 0; v < n; ++v) by_colour[colour[v]].push_back(v);
    std::vector<std::vector<int>> classes;
    for (auto& [c, vs] : by_colour) classes.push_back(vs);

    std::vector<int> order, best, cur;
    auto emit = [&] {
        cur.assign(1, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) cur.push_back(a[order[i]][order[j]]);
        if (best.empty() || cur < best) best = cur;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == classes.size()) return emit();
        auto members = classes[c];
        do {
            order.insert(order.end(), members.begin(), members.end());
            rec(c + 1);
            order.resize(order.size() - members.size());
        } while (std::next_permutation(members.begin(), members.end()));
    };
    rec(0);
    if (best.empty()) best.assign(1, n);
    return best;
}

inline bool isomorphic(const MultiGraph& a, const MultiGraph& b) {
    return a.vertices == b.vertices && a.edges.size() == b.edges.size() && certificate(a) == certificate(b);
}

inline MultiGraph multigraph_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("vertices").get<int>();
        std::vector<std::pair<int, int>> es;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw EncodingError("edge must be a pair [u,v]");
            es.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return MultiGraph(n, std::move(es));
    } catch (const nlohmann::json::exception& ex) {
        throw EncodingError(std::string("bad multigraph JSON: ") + ex.what());
    } catch (const ContractViolation& ex) {
        throw EncodingError(std::string("bad multigraph JSON: ") + ex.what());
    }
}

inline nlohmann::json to_json(const MultiGraph& g) {
    nlohmann::json es = nlohmann::json::array();
    for (const auto& [u, w] : g.edges) es.push_back({u, w});
    return {{"vertices", g.vertices}, {"edges", es}};
}

// ---------------------------------------------------------------------------
// Split cubes

/// Edge with per-end side bits for the plus and minus partitions at a marked
/// endpoint (1 = the end moves to the new vertex). Bits of unmarked ends are 0.
struct SplitEdge {
    int u = 0, w = 0;
    std::array<std::uint8_t, 2> plus{0, 0}, minus{0, 0};
    auto operator<=>(const SplitEdge&) const = default;
};

/// A graph with n marked vertices and two bipartitions of the edge-ends at
/// each. Splitting vertex v inserts the new vertex as v + 1 and shifts later
/// vertices, so faces at different marks commute on the nose.
struct SplitCube {
    int vertices = 0;
    std::vector<SplitEdge> edges;  // sorted
    std::vector<int> marks;        // cube coordinates 1..n

    int dim() const { return static_cast<int>(marks.size()); }
    MultiGraph graph() const {
        std::vector<std::pair<int, int>> es;
        for (const auto& e : edges) es.emplace_back(e.u, e.w);
        return MultiGraph(vertices, std::move(es));
    }
    auto operator<=>(const SplitCube&) const = default;
};

/// Edge-ends at v as (edge index, end) in edge order; loops give two.
inline std::vector<std::pair<int, int>> incident_ends(const MultiGraph& g, int v) {
    std::vector<std::pair<int, int>> out;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (g.edges[e].first == v) out.emplace_back(e, 0);
        if (g.edges[e].second == v) out.emplace_back(e, 1);
    }
    return out;
}

/// `plus[i]` and `minus[i]` give a side (0 or 1) for each end of
/// incident_ends(g, marks[i]).
inline SplitCube make_split_cube(const MultiGraph& g, const std::vector<int>& marks,
                                 const std::vector<std::vector<int>>& plus,
                                 const std::vector<std::vector<int>>& minus) {
    if (plus.size() != marks.size() || minus.size() != marks.size())
        throw ContractViolation("one plus and one minus partition per mark required");
    SplitCube x;
    x.vertices = g.vertices;
    for (const auto& [u, w] : g.edges) x.edges.push_back({u, w});
    std::set<int> seen;
    for (std::size_t i = 0; i < marks.size(); ++i) {
        const int v = marks[i];
        if (v < 0 || v >= g.vertices) throw ContractViolation("mark out of range");
        if (!seen.insert(v).second) throw ContractViolation("marks must be distinct vertices");
        const auto ends = incident_ends(g, v);
        if (plus[i].size() != ends.size() || minus[i].size() != ends.size())
            throw ContractViolation("partition at mark " + std::to_string(i + 1) + " must cover all " +
                                    std::to_string(ends.size()) + " edge-ends");
        for (std::size_t k = 0; k < ends.size(); ++k) {
            const auto [e, end] = ends[k];
            if ((plus[i][k] | minus[i][k]) & ~1) throw ContractViolation("partition sides are 0 or 1");
            x.edges[e].plus[end] = static_cast<std::uint8_t>(plus[i][k]);
            x.edges[e].minus[end] = static_cast<std::uint8_t>(minus[i][k]);
        }
    }
    x.marks = marks;
    std::sort(x.edges.begin(), x.edges.end());
    return x;
}

inline SplitCube face_graph(const SplitCube& x, int i, Sign s) {
    if (i < 1 || i > x.dim())
        throw ContractViolation("face index " + std::to_string(i) + " out of range 1.." +
                                std::to_string(x.dim()));
    const int v = x.marks[i - 1];
    auto shift = [v](int p) { return p > v ? p + 1 : p; };
    SplitCube y;
    y.vertices = x.vertices + 1;
    y.edges.reserve(x.edges.size() + 1);
    for (auto e : x.edges) {
        const auto& side = s == Sign::plus ? e.plus : e.minus;
        int ends[2] = {e.u, e.w};
        for (int k = 0; k < 2; ++k) {
            if (ends[k] == v) {
                ends[k] = v + side[k];
                e.plus[k] = e.minus[k] = 0;
            } else {
                ends[k] = shift(ends[k]);
            }
        }
        e.u = ends[0], e.w = ends[1];
        if (e.u > e.w) {
            std::swap(e.u, e.w);
            std::swap(e.plus[0], e.plus[1]);
            std::swap(e.minus[0], e.minus[1]);
        }
        y.edges.push_back(e);
    }
    y.edges.push_back({v, v + 1});
    std::sort(y.edges.begin(), y.edges.end());
    for (int k = 0; k < x.dim(); ++k)
        if (k != i - 1) y.marks.push_back(shift(x.marks[k]));
    return y;
}

struct GraphComplex {
    using cube_type = SplitCube;
    int dim(const SplitCube& x) const { return x.dim(); }
    SplitCube face(const SplitCube& x, int i, Sign s) const { return face_graph(x, i, s); }
};

inline nlohmann::json to_json(const SplitCube& x) {
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : x.edges)
        es.push_back({{"ends", {e.u, e.w}},
                      {"plus", {e.plus[0], e.plus[1]}},
                      {"minus", {e.minus[0], e.minus[1]}}});
    return {{"vertices", x.vertices}, {"edges", es}, {"marks", x.marks}};
}

inline SplitCube split_cube_from_json(const nlohmann::json& j) {
    try {
        SplitCube x;
        x.vertices = j.at("vertices").get<int>();
        for (const auto& e : j.at("edges")) {
            SplitEdge se;
            se.u = e.at("ends").at(0).get<int>();
            se.w = e.at("ends").at(1).get<int>();
            for (int k = 0; k < 2; ++k) {
                se.plus[k] = e.at("plus").at(k).get<std::uint8_t>();
                se.minus[k] = e.at("minus").at(k).get<std::uint8_t>();
            }
            if (se.u > se.w || se.u < 0 || se.w >= x.vertices) throw EncodingError("bad edge ends");
            x.edges.push_back(se);
        }
        x.marks = j.at("marks").get<std::vector<int>>();
        std::sort(x.edges.begin(), x.edges.end());
        return x;
    } catch (const nlohmann::json::exception& ex) {
        throw EncodingError(std::string("bad split cube JSON: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Statistics

enum class GraphStatKind { edges, vertices, loops, valence, edge_valences, subgraph };

/// Number of pairs (S, F) with S a vertex subset, F a subset of the edges
/// inside S, and (S, F) isomorphic to h.
inline std::int64_t subgraph_count(const MultiGraph& g, const MultiGraph& h) {
    if (h.vertices > 6) throw ContractViolation("subgraph pattern limited to 6 vertices");
    const int k = h.vertices, m = static_cast<int>(h.edges.size());
    if (k > g.vertices) return 0;
    const auto target = certificate(h);
    std::int64_t count = 0;
    std::vector<int> subset(k);
    std::function<void(int, int)> choose_vertices = [&](int start, int depth) {
        if (depth == k) {
            std::vector<int> pos(g.vertices, -1);
            for (int t = 0; t < k; ++t) pos[subset[t]] = t;
            std::vector<std::pair<int, int>> inside;
            for (const auto& [u, w] : g.edges)
                if (pos[u] >= 0 && pos[w] >= 0) inside.emplace_back(pos[u], pos[w]);
            if (static_cast<int>(inside.size()) < m) return;
            std::vector<int> pick(m);
            std::function<void(int, int)> choose_edges = [&](int from, int d) {
                if (d == m) {
                    std::vector<std::pair<int, int>> es;
                    for (int t : pick) es.push_back(inside[t]);
                    if (certificate(MultiGraph(k, std::move(es))) == target) ++count;
                    return;
                }
                for (int t = from; t < static_cast<int>(inside.size()); ++t) {
                    pick[d] = t;
                    choose_edges(t + 1, d + 1);
                }
            };
            choose_edges(0, 0);
            return;
        }
        for (int v = start; v < g.vertices; ++v) {
            subset[depth] = v;
            choose_vertices(v + 1, depth + 1);
        }
    };
    choose_vertices(0, 0);
    return count;
}

struct GraphStatistic {
    GraphStatKind kind = GraphStatKind::edges;
    int k = 0, l = 0;
    MultiGraph pattern;

    static GraphStatistic edges() { return {GraphStatKind::edges, 0, 0, {}}; }
    static GraphStatistic vertices() { return {GraphStatKind::vertices, 0, 0, {}}; }
    static GraphStatistic loops() { return {GraphStatKind::loops, 0, 0, {}}; }
    static GraphStatistic valence(int k) { return {GraphStatKind::valence, k, 0, {}}; }
    static GraphStatistic edge_valences(int k, int l) {
        return {GraphStatKind::edge_valences, std::min(k, l), std::max(k, l), {}};
    }
    static GraphStatistic subgraph(MultiGraph h) { return {GraphStatKind::subgraph, 0, 0, std::move(h)}; }

    std::string name() const {
        switch (kind) {
            case GraphStatKind::edges: return "edges";
            case GraphStatKind::vertices: return "vertices";
            case GraphStatKind::loops: return "loops";
            case GraphStatKind::valence: return "valence:" + std::to_string(k);
            case GraphStatKind::edge_valences:
                return "edge_valences:" + std::to_string(k) + "," + std::to_string(l);
            case GraphStatKind::subgraph: return "subgraph:" + to_json(pattern).dump();
        }
        return "?";
    }

    std::int64_t value(const MultiGraph& g) const {
        switch (kind) {
            case GraphStatKind::edges: return static_cast<std::int64_t>(g.edge_count());
            case GraphStatKind::vertices: return g.vertices;
            case GraphStatKind::loops: return static_cast<std::int64_t>(g.loop_count());
            case GraphStatKind::valence: {
                const auto val = g.valences();
                return std::count(val.begin(), val.end(), k);
            }
            case GraphStatKind::edge_valences: {
                const auto val = g.valences();
                std::int64_t c = 0;
                for (const auto& [u, w] : g.edges) {
                    const int a = std::min(val[u], val[w]), b = std::max(val[u], val[w]);
                    c += a == k && b == l;
                }
                return c;
            }
            case GraphStatKind::subgraph: return subgraph_count(g, pattern);
        }
        return 0;
    }

    Rational operator()(const SplitCube& x) const {
        if (x.dim() != 0) throw ContractViolation("graph statistic evaluated on a cube of positive dimension");
        return Rational(static_cast<long>(value(x.graph())));
    }
};

inline std::int64_t statistic(const MultiGraph& g, const GraphStatistic& s) { return s.value(g); }

/// Parses "edges", "vertices", "loops", "valence:K", "edge_valences:K,L".
/// Subgraph patterns come from JSON and are built with GraphStatistic::subgraph.
inline GraphStatistic parse_graph_statistic(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || v < 0) throw EncodingError("bad statistic argument in '" + text + "'");
        return v;
    };
    if (head == "edges" && arg.empty()) return GraphStatistic::edges();
    if (head == "vertices" && arg.empty()) return GraphStatistic::vertices();
    if (head == "loops" && arg.empty()) return GraphStatistic::loops();
    if (head == "valence") return GraphStatistic::valence(to_int(arg));
    if (head == "edge_valences") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) throw EncodingError("edge_valences needs K,L");
        return GraphStatistic::edge_valences(to_int(arg.substr(0, comma)), to_int(arg.substr(comma + 1)));
    }
    throw EncodingError("unknown graph statistic '" + text + "'");
}

// ---------------------------------------------------------------------------
// Enumeration and scans

/// Connected multigraphs (loops allowed) with at most `max_edges` edges, one
/// per isomorphism class, ordered by (vertex count, edge count, certificate).
inline std::vector<MultiGraph> connected_multigraphs(int max_edges) {
    if (max_edges < 0) throw ContractViolation("max_edges must be >= 0");
    std::vector<std::pair<std::vector<int>, MultiGraph>> all;
    std::map<std::vector<int>, MultiGraph> level{{certificate(MultiGraph(1, {})), MultiGraph(1, {})}};
    for (int e = 0;; ++e) {
        for (const auto& [c, g] : level) all.emplace_back(c, g);
        if (e == max_edges) break;
        std::map<std::vector<int>, MultiGraph> next;
        auto add = [&](MultiGraph h) {
            auto c = certificate(h);
            next.try_emplace(std::move(c), std::move(h));
        };
        for (const auto& [c, g] : level) {
            for (int u = 0; u < g.vertices; ++u) {
                for (int w = u; w < g.vertices; ++w) {
                    auto es = g.edges;
                    es.emplace_back(u, w);
                    add(MultiGraph(g.vertices, std::move(es)));
                }
                auto es = g.edges;
                es.emplace_back(u, g.vertices);
                add(MultiGraph(g.vertices + 1, std::move(es)));
            }
        }
        level = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.second.vertices, a.second.edges.size(), a.first) <
               std::tuple(b.second.vertices, b.second.edges.size(), b.first);
    });
    std::vector<MultiGraph> out;
    for (auto& [c, g] : all) out.push_back(std::move(g));
    return out;
}

/// Cube enumeration over one graph. In `based` mode every minus partition is
/// the trivial one (all ends stay); this loses nothing for degree tests since
/// the alternating sum is a difference in each coordinate separately.
/// Bipartitions are taken up to swapping sides (the first end stays). Unless
/// `split_loops`, both ends of a loop go to the same side, so partitions are
/// really partitions of edges.
struct SplitEnumeration {
    int cube_dim = 1;
    bool based = true;
    bool split_loops = false;

    // Side choices are made per group of ends; a kept-together loop is one group.
    std::vector<int> end_groups(const MultiGraph& g, int v) const {
        std::vector<int> group;
        int next = 0;
        const auto ends = incident_ends(g, v);
        for (std::size_t k = 0; k < ends.size(); ++k) {
            const bool second_of_loop = !split_loops && ends[k].second == 1 && g.edges[ends[k].first].first == v;
            group.push_back(second_of_loop ? group.back() : next++);
        }
        return group;
    }
    std::size_t sides(const MultiGraph& g, int v) const {
        const auto grp = end_groups(g, v);
        const int groups = grp.empty() ? 0 : grp.back() + 1;
        return groups == 0 ? 1 : std::size_t{1} << (groups - 1);
    }

    template <class Visit>
    void for_each_mark_set(const MultiGraph& g, Visit visit) const {
        std::vector<int> marks(cube_dim);
        std::function<void(int, int)> rec = [&](int start, int d) {
            if (d == cube_dim) return visit(marks);
            for (int v = start; v < g.vertices; ++v) {
                marks[d] = v;
                rec(v + 1, d + 1);
            }
        };
        rec(0, 0);
    }

    std::size_t count(const MultiGraph& g) const {
        std::size_t total = 0;
        for_each_mark_set(g, [&](const std::vector<int>& marks) {
            std::size_t c = 1;
            for (int v : marks) c *= based ? sides(g, v) : sides(g, v) * sides(g, v);
            total += c;
        });
        return total;
    }

    template <class Visit>
    void for_each(const MultiGraph& g, Visit visit) const {
        for_each_mark_set(g, [&](const std::vector<int>& marks) {
            const int n = cube_dim;
            std::vector<std::vector<int>> groups(n);
            std::vector<std::size_t> limit(2 * n), digit(2 * n, 0);
            for (int i = 0; i < n; ++i) {
                groups[i] = end_groups(g, marks[i]);
                limit[i] = sides(g, marks[i]);
                limit[n + i] = based ? 1 : limit[i];
            }
            auto bits = [](std::size_t mask, const std::vector<int>& grp) {
                std::vector<int> s(grp.size());
                for (std::size_t t = 0; t < grp.size(); ++t)
                    s[t] = grp[t] == 0 ? 0 : static_cast<int>((mask >> (grp[t] - 1)) & 1);
                return s;
            };
            for (;;) {
                std::vector<std::vector<int>> plus(n), minus(n);
                for (int i = 0; i < n; ++i) {
                    plus[i] = bits(digit[i], groups[i]);
                    minus[i] = bits(digit[n + i], groups[i]);
                }
                visit(make_split_cube(g, marks, plus, minus));
                int p = 0;
                while (p < 2 * n && ++digit[p] == limit[p]) digit[p++] = 0;
                if (p == 2 * n) break;
            }
        });
    }
};

struct GraphScanOptions {
    int cube_dim = 1;
    int max_edges = 4;
    bool based = true;
    std::size_t max_cubes = 0;  // 0 = unlimited
    unsigned jobs = 1;
    bool split_loops = false;
};

/// Checks f(∂ⁿ x) = 0 on every enumerated cube of dimension cube_dim, i.e.
/// that the statistic has degree < cube_dim.
inline ScanReport<SplitCube> scan_graph_degree(const GraphStatistic& stat, const GraphScanOptions& opt) {
    if (opt.cube_dim < 1) throw ContractViolation("cube dimension must be >= 1");
    const auto graphs = connected_multigraphs(opt.max_edges);
    const SplitEnumeration en{opt.cube_dim, opt.based, opt.split_loops};
    std::vector<std::size_t> cost;
    for (const auto& g : graphs) cost.push_back(en.count(g));
    const GraphComplex k;
    return run_scan<SplitCube>(cost, opt.max_cubes, opt.jobs,
                               [&](std::size_t i, std::size_t& checked) -> std::optional<Counterexample<SplitCube>> {
                                   std::optional<Counterexample<SplitCube>> bad;
                                   en.for_each(graphs[i], [&](const SplitCube& x) {
                                       if (bad) return;
                                       ++checked;
                                       const Rational v = evaluate<SplitCube>(stat, vertex_expansion(k, x));
                                       if (v != 0) bad = Counterexample<SplitCube>{x, v};
                                   });
                                   return bad;
                               });
}

/// Degree bound n means vanishing on (n+1)-cubes.
inline ScanReport<SplitCube> verify_degree_bound(const GraphStatistic& stat, int n, int max_edges,
                                                 std::size_t max_cubes = 0, unsigned jobs = 1) {
    return scan_graph_degree(stat, {n + 1, max_edges, true, max_cubes, jobs});
}

}  // namespace cubix
