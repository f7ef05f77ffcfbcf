#pragma once

// The descending method: a function on n-cubes is extended to the (n−1)-cubes
// by integrating jump prices along the jump graph, and the space of functions
// of degree <= n is obtained by descending the zero function from level n+1.

#include <cubix/finite_type.hpp>
#include <cubix/linalg.hpp>
#include <cubix/presentation.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace cubix {

/// Jump through `cube` across its i-th pair of faces, from ∂⁻ᵢ to ∂⁺ᵢ.
struct JumpEdge {
    PresCube cube;
    int face_index = 0;
    std::size_t from = 0;  // node of ∂⁻ᵢ cube
    std::size_t to = 0;    // node of ∂⁺ᵢ cube
    Rational price;
};

struct JumpGraph {
    int level = 0;  // dimension of the nodes
    std::vector<PresCube> nodes;
    std::map<PresCube, std::size_t> node_index;
    std::vector<JumpEdge> edges;
};

template <class F>
JumpGraph build_jump_graph(const ComplexPresentation& k, int n, const F& f) {
    if (n < 1 || n > k.top_dim())
        throw DomainError("jump graph needs 1 <= n <= top_dim, got n = " + std::to_string(n));
    JumpGraph g;
    g.level = n - 1;
    g.nodes = k.cubes(n - 1);
    for (std::size_t v = 0; v < g.nodes.size(); ++v) g.node_index.emplace(g.nodes[v], v);
    for (PresCube x : k.cubes(n)) {
        const Rational price = f(x);
        for (int i = 1; i <= n; ++i)
            g.edges.push_back({x, i, g.node_index.at(k.face(x, i, Sign::minus)),
                               g.node_index.at(k.face(x, i, Sign::plus)), price});
    }
    return g;
}

/// One step of a closed walk; `forward` means from ∂⁻ to ∂⁺ (gain the price).
struct CycleStep {
    std::size_t edge = 0;
    bool forward = true;
};

struct CycleObstruction {
    std::vector<CycleStep> cycle;
    Rational net_price;
};

/// A solution of every edge equation value(to) − value(from) = price. The
/// general solution adds an arbitrary constant on each parallel class.
struct Extension {
    std::vector<PresCube> nodes;
    std::vector<Rational> base;
    std::vector<std::size_t> class_of;
    std::vector<PresCube> representatives;  // base = 0 here, one per class

    std::size_t free_constants() const { return representatives.size(); }
};

using ExtensionResult = std::variant<CycleObstruction, Extension>;

/// Net price of a closed walk; nullopt if consecutive steps do not meet.
inline std::optional<Rational> closed_walk_price(const JumpGraph& g, const std::vector<CycleStep>& walk) {
    if (walk.empty()) return Rational(0);
    auto tail = [&](const CycleStep& s) { return s.forward ? g.edges[s.edge].from : g.edges[s.edge].to; };
    auto head = [&](const CycleStep& s) { return s.forward ? g.edges[s.edge].to : g.edges[s.edge].from; };
    Rational total = 0;
    for (std::size_t s = 0; s < walk.size(); ++s) {
        if (walk[s].edge >= g.edges.size()) return std::nullopt;
        if (head(walk[s]) != tail(walk[(s + 1) % walk.size()])) return std::nullopt;
        total += walk[s].forward ? g.edges[walk[s].edge].price : -g.edges[walk[s].edge].price;
    }
    return total;
}

/// Spanning-forest potentials in breadth-first order over node ids, then
/// every non-tree edge is checked; a failing edge closes a fundamental cycle.
inline ExtensionResult extend_down(const JumpGraph& g) {
    const std::size_t n = g.nodes.size();
    struct Incidence {
        std::size_t edge;
        std::size_t other;
        bool forward;
    };
    std::vector<std::vector<Incidence>> adj(n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        adj[ed.from].push_back({e, ed.to, true});
        if (ed.from != ed.to) adj[ed.to].push_back({e, ed.from, false});
    }

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    Extension ext;
    ext.nodes = g.nodes;
    ext.base.assign(n, 0);
    ext.class_of.assign(n, kNone);
    std::vector<std::size_t> parent_edge(n, kNone), parent(n, kNone), depth(n, 0);
    std::vector<bool> tree_edge(g.edges.size(), false);

    for (std::size_t root = 0; root < n; ++root) {
        if (ext.class_of[root] != kNone) continue;
        const std::size_t cls = ext.representatives.size();
        ext.representatives.push_back(g.nodes[root]);
        ext.class_of[root] = cls;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (const auto& inc : adj[u]) {
                if (ext.class_of[inc.other] != kNone) continue;
                const auto& ed = g.edges[inc.edge];
                ext.class_of[inc.other] = cls;
                ext.base[inc.other] = inc.forward ? Rational(ext.base[u] + ed.price) : Rational(ext.base[u] - ed.price);
                parent_edge[inc.other] = inc.edge;
                parent[inc.other] = u;
                depth[inc.other] = depth[u] + 1;
                tree_edge[inc.edge] = true;
                queue.push_back(inc.other);
            }
        }
    }

    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (tree_edge[e]) continue;
        const auto& ed = g.edges[e];
        if (ext.base[ed.to] - ext.base[ed.from] == ed.price) continue;

        // edge from → to, then the tree path to → from
        CycleObstruction obs;
        obs.cycle.push_back({e, true});
        // climbing v -> parent[v] is forward iff the tree edge starts at v;
        // descending parent[v] -> v is forward iff it ends at v
        auto climb = [&](std::size_t v) { return CycleStep{parent_edge[v], g.edges[parent_edge[v]].from == v}; };
        auto descend = [&](std::size_t v) { return CycleStep{parent_edge[v], g.edges[parent_edge[v]].to == v}; };
        std::vector<CycleStep> up, down;
        std::size_t a = ed.to, b = ed.from;
        while (depth[a] > depth[b]) {
            up.push_back(climb(a));
            a = parent[a];
        }
        while (depth[b] > depth[a]) {
            down.push_back(descend(b));
            b = parent[b];
        }
        while (a != b) {
            up.push_back(climb(a));
            a = parent[a];
            down.push_back(descend(b));
            b = parent[b];
        }
        obs.cycle.insert(obs.cycle.end(), up.begin(), up.end());
        obs.cycle.insert(obs.cycle.end(), down.rbegin(), down.rend());
        obs.net_price = *closed_walk_price(g, obs.cycle);
        return obs;
    }
    return ext;
}

template <class F>
ExtensionResult extend_down(const ComplexPresentation& k, int n, const F& f) {
    return extend_down(build_jump_graph(k, n, f));
}

/// Functions on the 0-cubes of degree <= n: particular + span(basis), each
/// vector indexed like `vertices`.
struct FunctionFamily {
    std::vector<PresCube> vertices;
    Vector particular;
    std::vector<Vector> basis;
    std::optional<NoSolutionCertificate> obstruction;  // anchors inconsistent

    std::size_t dimension() const { return basis.size(); }
};

/// Descends the zero function from X_{n+1} to X_0 as one linear system whose
/// unknowns are the values on X_0..X_n and whose equations are the jump
/// relations g(∂⁺ᵢx) − g(∂⁻ᵢx) = g(x). Anchors pin values at given 0-cubes.
inline FunctionFamily descend_space(const ComplexPresentation& k, int n,
                                    const std::map<PresCube, Rational>& anchors = {}) {
    if (n < 0) throw DomainError("descend_space: n must be >= 0");
    std::map<PresCube, std::size_t> var;
    for (int m = 0; m <= std::min(n, k.top_dim()); ++m)
        for (PresCube c : k.cubes(m)) var.emplace(c, var.size());

    SparseMatrix a(0, var.size());
    Vector rhs;
    for (int m = 1; m <= std::min(n + 1, k.top_dim()); ++m) {
        for (PresCube x : k.cubes(m)) {
            for (int i = 1; i <= m; ++i) {
                const std::size_t r = a.add_row();
                a.add_to(r, var.at(k.face(x, i, Sign::plus)), 1);
                a.add_to(r, var.at(k.face(x, i, Sign::minus)), -1);
                if (m <= n) a.add_to(r, var.at(x), -1);
                rhs.push_back(0);
            }
        }
    }
    for (const auto& [v, value] : anchors) {
        if (k.dim(v) != 0) throw ContractViolation("anchor '" + k.name(v) + "' is not a 0-cube");
        const std::size_t r = a.add_row();
        a.add_to(r, var.at(v), 1);
        rhs.push_back(value);
    }

    FunctionFamily family;
    family.vertices = k.cubes(0);
    const std::size_t nv = family.vertices.size();
    const auto solved = solve(a, rhs);
    if (const auto* cert = std::get_if<NoSolutionCertificate>(&solved)) {
        family.obstruction = *cert;
        return family;
    }
    const auto& sol = std::get<SolutionFamily>(solved);
    family.particular.assign(sol.particular.begin(), sol.particular.begin() + nv);

    // X_0 comes first among the unknowns; the restriction to X_0 is injective
    // on solutions, but an echelon basis keeps the output canonical.
    SparseMatrix proj(sol.nullspace.size(), nv);
    for (std::size_t r = 0; r < sol.nullspace.size(); ++r)
        for (std::size_t c = 0; c < nv; ++c) proj.set(r, c, sol.nullspace[r][c]);
    const auto e = detail::reduce(proj, nullptr, false);
    for (auto [c, r] : e.pivots) {
        Vector v(nv);
        for (const auto& [col, value] : e.rows[r]) v[col] = value;
        family.basis.push_back(std::move(v));
    }
    return family;
}

}  // namespace cubix
