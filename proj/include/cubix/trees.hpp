#pragma once

// Grafting cubic structure on plane rooted trees. Trees are balanced
// parenthesis words: a node is "(" followed by its children and ")", so a
// leaf is "()". Leaves are numbered 1.. in left-to-right order.

#include <cubix/complex.hpp>
#include <cubix/finite_type.hpp>
#include <cubix/scan.hpp>

#include <json.hpp>

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cubix {

class RootedTree {
public:
    RootedTree() : code_("()") {}
    explicit RootedTree(std::string code) : code_(std::move(code)) {
        int depth = 0;
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const char c = code_[i];
            if (c != '(' && c != ')') throw EncodingError("tree code may only contain parentheses: '" + code_ + "'");
            depth += c == '(' ? 1 : -1;
            if (depth < 0 || (depth == 0 && i + 1 != code_.size()))
                throw EncodingError("tree code is not a single balanced tree: '" + code_ + "'");
        }
        if (code_.empty() || depth != 0) throw EncodingError("tree code is not a single balanced tree: '" + code_ + "'");
    }

    const std::string& code() const { return code_; }
    int nodes() const { return static_cast<int>(std::count(code_.begin(), code_.end(), '(')); }
    int edges() const { return nodes() - 1; }
    int leaves() const {
        int c = 0;
        for (std::size_t i = 0; i + 1 < code_.size(); ++i) c += code_[i] == '(' && code_[i + 1] == ')';
        return c;
    }
    /// Offset of the j-th leaf's "()" in the code, 1-based j.
    std::size_t leaf_offset(int j) const {
        int c = 0;
        for (std::size_t i = 0; i + 1 < code_.size(); ++i)
            if (code_[i] == '(' && code_[i + 1] == ')' && ++c == j) return i;
        throw ContractViolation("leaf " + std::to_string(j) + " out of range 1.." + std::to_string(leaves()));
    }

    /// Number of children of every node, in preorder.
    std::vector<int> child_counts() const {
        std::vector<int> out, stack;
        for (char c : code_) {
            if (c == '(') {
                if (!stack.empty()) ++out[stack.back()];
                stack.push_back(static_cast<int>(out.size()));
                out.push_back(0);
            } else {
                stack.pop_back();
            }
        }
        return out;
    }
    /// Undirected degrees in preorder (the root has no parent edge).
    std::vector<int> valences() const {
        auto v = child_counts();
        for (std::size_t i = 1; i < v.size(); ++i) ++v[i];
        return v;
    }
    bool reduced() const {
        const auto cc = child_counts();
        return std::none_of(cc.begin(), cc.end(), [](int c) { return c == 1; });
    }

    /// Code of the underlying unordered tree (children sorted).
    std::string unordered_code() const {
        std::size_t pos = 0;
        std::function<std::string()> rec = [&]() -> std::string {
            ++pos;  // '('
            std::vector<std::string> kids;
            while (code_[pos] == '(') kids.push_back(rec());
            ++pos;  // ')'
            std::sort(kids.begin(), kids.end());
            std::string s = "(";
            for (const auto& k : kids) s += k;
            return s + ")";
        };
        return rec();
    }

    auto operator<=>(const RootedTree&) const = default;

private:
    std::string code_;
};

/// Identifies the root of s with leaf j of t.
inline RootedTree graft(const RootedTree& t, int j, const RootedTree& s) {
    std::string code = t.code();
    code.replace(t.leaf_offset(j), 2, s.code());
    return RootedTree(std::move(code));
}

struct Attachment {
    int leaf = 1;  // leaf index in the base tree
    RootedTree minus, plus;
    auto operator<=>(const Attachment&) const = default;
};

struct TreeCube {
    RootedTree base;
    std::vector<Attachment> attachments;

    TreeCube() = default;
    TreeCube(RootedTree t, std::vector<Attachment> att) : base(std::move(t)), attachments(std::move(att)) {
        std::set<int> seen;
        for (const auto& a : attachments) {
            base.leaf_offset(a.leaf);
            if (!seen.insert(a.leaf).second) throw ContractViolation("attachment leaves must be distinct");
        }
    }
    int dim() const { return static_cast<int>(attachments.size()); }
    auto operator<=>(const TreeCube&) const = default;
};

inline TreeCube face_tree(const TreeCube& x, int i, Sign s) {
    if (i < 1 || i > x.dim())
        throw ContractViolation("face index " + std::to_string(i) + " out of range 1.." +
                                std::to_string(x.dim()));
    const auto& a = x.attachments[i - 1];
    const RootedTree& sub = s == Sign::plus ? a.plus : a.minus;
    const int shift = sub.leaves() - 1;
    std::vector<Attachment> rest;
    for (int k = 0; k < x.dim(); ++k) {
        if (k == i - 1) continue;
        Attachment b = x.attachments[k];
        if (b.leaf > a.leaf) b.leaf += shift;
        rest.push_back(std::move(b));
    }
    return TreeCube(graft(x.base, a.leaf, sub), std::move(rest));
}

struct TreeComplex {
    using cube_type = TreeCube;
    int dim(const TreeCube& x) const { return x.dim(); }
    TreeCube face(const TreeCube& x, int i, Sign s) const { return face_tree(x, i, s); }
};

inline RootedTree tree_from_json(const nlohmann::json& j) {
    try {
        return RootedTree(j.at("tree").get<std::string>());
    } catch (const nlohmann::json::exception& ex) {
        throw EncodingError(std::string("bad tree JSON: ") + ex.what());
    }
}

inline nlohmann::json to_json(const RootedTree& t) { return {{"tree", t.code()}}; }

inline nlohmann::json to_json(const TreeCube& x) {
    nlohmann::json att = nlohmann::json::array();
    for (const auto& a : x.attachments)
        att.push_back({{"leaf", a.leaf}, {"minus", a.minus.code()}, {"plus", a.plus.code()}});
    return {{"tree", x.base.code()}, {"attachments", att}};
}

inline TreeCube tree_cube_from_json(const nlohmann::json& j) {
    try {
        std::vector<Attachment> att;
        for (const auto& a : j.at("attachments"))
            att.push_back({a.at("leaf").get<int>(), RootedTree(a.at("minus").get<std::string>()),
                           RootedTree(a.at("plus").get<std::string>())});
        return TreeCube(RootedTree(j.at("tree").get<std::string>()), std::move(att));
    } catch (const nlohmann::json::exception& ex) {
        throw EncodingError(std::string("bad tree cube JSON: ") + ex.what());
    } catch (const ContractViolation& ex) {
        throw EncodingError(std::string("bad tree cube JSON: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Statistics

enum class TreeStatKind { edges, vertices, leaves, valence, leaftype };

struct TreeStatistic {
    TreeStatKind kind = TreeStatKind::edges;
    int k = 0;
    RootedTree type;  // for leaftype

    static TreeStatistic edges() { return {TreeStatKind::edges, 0, {}}; }
    static TreeStatistic vertices() { return {TreeStatKind::vertices, 0, {}}; }
    static TreeStatistic leaves() { return {TreeStatKind::leaves, 0, {}}; }
    static TreeStatistic valence(int k) { return {TreeStatKind::valence, k, {}}; }
    /// 1 on trees of the given unordered shape, 0 elsewhere.
    static TreeStatistic leaftype(RootedTree t) { return {TreeStatKind::leaftype, 0, std::move(t)}; }

    std::string name() const {
        switch (kind) {
            case TreeStatKind::edges: return "edges";
            case TreeStatKind::vertices: return "vertices";
            case TreeStatKind::leaves: return "leaves";
            case TreeStatKind::valence: return "valence:" + std::to_string(k);
            case TreeStatKind::leaftype: return "leaftype:" + type.code();
        }
        return "?";
    }

    long value(const RootedTree& t) const {
        switch (kind) {
            case TreeStatKind::edges: return t.edges();
            case TreeStatKind::vertices: return t.nodes();
            case TreeStatKind::leaves: return t.leaves();
            case TreeStatKind::valence: {
                const auto v = t.valences();
                return std::count(v.begin(), v.end(), k);
            }
            case TreeStatKind::leaftype: return t.unordered_code() == type.unordered_code();
        }
        return 0;
    }

    Rational operator()(const TreeCube& x) const {
        if (x.dim() != 0) throw ContractViolation("tree statistic evaluated on a cube of positive dimension");
        return Rational(value(x.base));
    }
};

/// Parses "edges", "vertices", "leaves", "valence:K".
inline TreeStatistic parse_tree_statistic(const std::string& text) {
    if (text == "edges") return TreeStatistic::edges();
    if (text == "vertices") return TreeStatistic::vertices();
    if (text == "leaves") return TreeStatistic::leaves();
    if (text.rfind("valence:", 0) == 0) {
        const std::string arg = text.substr(8);
        if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
            throw EncodingError("bad statistic argument in '" + text + "'");
        return TreeStatistic::valence(std::stoi(arg));
    }
    throw EncodingError("unknown tree statistic '" + text + "'");
}

// ---------------------------------------------------------------------------
// Enumeration and scans

/// All plane trees with exactly n nodes, in lexicographic code order.
inline std::vector<RootedTree> plane_trees(int n) {
    if (n < 1) return {};
    // forests[k]: codes of ordered forests with k nodes
    std::vector<std::vector<std::string>> forests(n);
    forests[0] = {""};
    for (int k = 1; k < n; ++k) {
        for (int first = 1; first <= k; ++first)
            for (const auto& inner : forests[first - 1])
                for (const auto& rest : forests[k - first]) forests[k].push_back("(" + inner + ")" + rest);
    }
    std::vector<RootedTree> out;
    for (const auto& f : forests[n - 1]) out.emplace_back("(" + f + ")");
    std::sort(out.begin(), out.end());
    return out;
}

/// Plane trees with at most max_nodes nodes, ordered by (nodes, code);
/// `reduced` keeps only trees without single-child nodes.
inline std::vector<RootedTree> plane_trees_up_to(int max_nodes, bool reduced) {
    std::vector<RootedTree> out;
    for (int n = 1; n <= max_nodes; ++n)
        for (auto& t : plane_trees(n))
            if (!reduced || t.reduced()) out.push_back(std::move(t));
    return out;
}

struct TreeScanOptions {
    int cube_dim = 1;
    int max_nodes = 5;    // base trees
    int graft_nodes = 4;  // grafted trees
    // Reduced trees only, and grafts with at least two leaves. Off: all plane
    // trees, including the one-node graft (the operad unit).
    bool reduced = true;
    bool based = true;    // minus graft fixed to the first pool tree
    std::size_t max_cubes = 0;
    unsigned jobs = 1;
};

inline std::vector<RootedTree> graft_pool(const TreeScanOptions& opt) {
    std::vector<RootedTree> pool;
    for (auto& t : plane_trees_up_to(opt.graft_nodes, opt.reduced))
        if (!opt.reduced || t.leaves() >= 2) pool.push_back(std::move(t));
    if (pool.empty()) throw ContractViolation("graft pool is empty; raise graft_nodes");
    return pool;
}

template <class Visit>
void for_each_tree_cube(const RootedTree& t, const std::vector<RootedTree>& pool, int n, bool based,
                        Visit visit) {
    const int leaves = t.leaves();
    std::vector<int> chosen(n);
    const std::size_t p = pool.size();
    std::function<void(int, int)> rec = [&](int start, int d) {
        if (d == n) {
            std::vector<std::size_t> digit(2 * n, 0);
            for (;;) {
                std::vector<Attachment> att;
                for (int i = 0; i < n; ++i)
                    att.push_back({chosen[i], pool[digit[n + i]], pool[digit[i]]});
                visit(TreeCube(t, std::move(att)));
                int q = 0;
                while (q < 2 * n && ++digit[q] == (q < n || !based ? p : 1)) digit[q++] = 0;
                if (q == 2 * n) return;
            }
        }
        for (int j = start; j <= leaves; ++j) {
            chosen[d] = j;
            rec(j + 1, d + 1);
        }
    };
    rec(1, 0);
}

inline std::size_t tree_cube_count(const RootedTree& t, std::size_t pool, int n, bool based) {
    std::size_t choose = 1;
    const int l = t.leaves();
    if (n > l) return 0;
    for (int i = 0; i < n; ++i) choose = choose * (l - i) / (i + 1);
    std::size_t per = 1;
    for (int i = 0; i < n; ++i) per *= based ? pool : pool * pool;
    return choose * per;
}

inline ScanReport<TreeCube> scan_tree_degree(const TreeStatistic& stat, const TreeScanOptions& opt) {
    if (opt.cube_dim < 1) throw ContractViolation("cube dimension must be >= 1");
    const auto trees = plane_trees_up_to(opt.max_nodes, opt.reduced);
    const auto pool = graft_pool(opt);
    std::vector<std::size_t> cost;
    for (const auto& t : trees) cost.push_back(tree_cube_count(t, pool.size(), opt.cube_dim, opt.based));
    const TreeComplex k;
    return run_scan<TreeCube>(cost, opt.max_cubes, opt.jobs,
                              [&](std::size_t i, std::size_t& checked) -> std::optional<Counterexample<TreeCube>> {
                                  std::optional<Counterexample<TreeCube>> bad;
                                  for_each_tree_cube(trees[i], pool, opt.cube_dim, opt.based, [&](const TreeCube& x) {
                                      if (bad) return;
                                      ++checked;
                                      const Rational v = evaluate<TreeCube>(stat, vertex_expansion(k, x));
                                      if (v != 0) bad = Counterexample<TreeCube>{x, v};
                                  });
                                  return bad;
                              });
}

}  // namespace cubix
