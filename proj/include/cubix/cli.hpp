#pragma once

// The `cubix` command line: argument parsing, subcommand handlers and the
// shared run report. Handlers are reachable in-process through cli::run.

#include <cubix/affine.hpp>
#include <cubix/descent.hpp>
#include <cubix/finite_type.hpp>
#include <cubix/graphs.hpp>
#include <cubix/group.hpp>
#include <cubix/knot.hpp>
#include <cubix/presentation.hpp>
#include <cubix/scan.hpp>
#include <cubix/trees.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace cubix::cli {

using nlohmann::json;

/// Bad usage, unreadable input or malformed JSON; exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunReport {
    std::vector<std::string> command;
    std::uint64_t seed = 0;
    json counts = json::object();
    std::string verdict = "pass";  // pass | fail | partial
    json artifacts = json::object();
    double elapsed_ms = 0;

    int exit_code() const { return verdict == "fail" ? 1 : 0; }

    json to_json(bool with_timing = true) const {
        json j{{"command", command}, {"seed", seed}, {"counts", counts}, {"verdict", verdict},
               {"artifacts", artifacts}};
        j["timing"] = with_timing ? json{{"elapsed_ms", elapsed_ms}} : json::object();
        return j;
    }

    std::string to_text() const {
        std::ostringstream out;
        out << "command:";
        for (const auto& a : command) {
            if (a.empty() || a.find_first_of(" \t\"") != std::string::npos)
                out << ' ' << std::quoted(a);
            else
                out << ' ' << a;
        }
        out << "\nverdict: " << verdict << "\nseed: " << seed << '\n';
        for (const auto& [k, v] : counts.items()) out << k << ": " << v.dump() << '\n';
        for (const auto& [k, v] : artifacts.items()) {
            if (v.is_primitive())
                out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            else
                out << k << ":\n" << v.dump(2) << '\n';
        }
        out << std::fixed << std::setprecision(1) << "elapsed_ms: " << elapsed_ms << '\n';
        return out.str();
    }
};

namespace detail {

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// Decodes a file, prefixing decoder errors with the path.
template <class Decode>
auto load(const std::string& path, Decode decode) {
    const json j = read_json(path);
    try {
        return decode(j);
    } catch (const EncodingError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const ContractViolation& e) {
        throw InputError(path + ": " + e.what());
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline std::string q(const Rational& r) { return to_string(r); }

inline json chain_json(const ComplexPresentation& k, const Chain<PresCube>& c) {
    json out = json::object();
    for (const auto& [x, v] : c) out[k.name(x)] = q(v);
    return out;
}

inline json vector_json(const ComplexPresentation& k, const std::vector<PresCube>& cubes, const Vector& v) {
    json out = json::object();
    for (std::size_t i = 0; i < cubes.size(); ++i) out[k.name(cubes[i])] = q(v[i]);
    return out;
}

template <class Cube>
void scan_counts(RunReport& r, const ScanReport<Cube>& s) {
    r.counts = {{"items_total", s.items_total},
                {"items_scanned", s.items_scanned},
                {"cubes_checked", s.cubes_checked},
                {"violations", s.counterexample ? 1 : 0}};
    r.verdict = s.verdict();
}

}  // namespace detail

// ------------------------------------------------------------- subcommands

struct Globals {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

inline void run_validate(RunReport& r, const std::string& file) {
    const auto k = detail::load(file, presentation_from_json);
    const auto structural = k.structural_errors();
    r.counts["cubes"] = k.size();
    if (!structural.empty()) {
        r.verdict = "fail";
        r.counts["violations"] = structural.size();
        r.artifacts["structural_errors"] = structural;
        return;
    }
    const auto rep = k.validate_commutation();
    r.counts["cubes_checked"] = rep.cubes_checked;
    r.counts["identities_checked"] = rep.identities_checked;
    r.counts["violations"] = rep.violations.size();
    json vs = json::array();
    for (const auto& v : rep.violations)
        vs.push_back({{"cube", k.name(v.cube)},
                      {"i", v.i},
                      {"j", v.j},
                      {"eps1", std::string(1, to_char(v.eps1))},
                      {"eps2", std::string(1, to_char(v.eps2))},
                      {"lhs", k.name(v.lhs)},
                      {"rhs", k.name(v.rhs)}});
    r.artifacts["violations"] = vs;
    r.verdict = rep.passed() ? "pass" : "fail";
}

inline void run_degree(RunReport& r, const std::string& file, const std::string& fn_file, int bound) {
    const auto k = detail::load(file, presentation_from_json);
    const auto f = detail::load(fn_file, function_from_json);
    if (f.dim != 0) throw InputError(fn_file + ": degree tests take a function on 0-cubes");
    for (PresCube v : k.cubes(0))
        if (!f.values.count(k.name(v))) throw InputError(fn_file + ": no value for 0-cube '" + k.name(v) + "'");
    const auto res = is_degree_less_than(k, f.on(k), bound);
    r.artifacts["degree_bound"] = bound;
    if (const auto* ce = std::get_if<Counterexample<PresCube>>(&res)) {
        r.verdict = "fail";
        r.counts = {{"violations", 1}};
        r.artifacts["counterexample"] = {{"cube", k.name(ce->cube)},
                                         {"value", detail::q(ce->value)},
                                         {"vertex_expansion", detail::chain_json(k, vertex_expansion(k, ce->cube))}};
    } else {
        r.counts = {{"cubes_checked", std::get<Pass>(res).cubes_checked}, {"violations", 0}};
    }
}

inline void run_descend(RunReport& r, const std::string& file, int top, const std::vector<std::string>& anchors,
                        const std::string& fn_file) {
    const auto k = detail::load(file, presentation_from_json);
    if (!fn_file.empty()) {
        const auto f = detail::load(fn_file, function_from_json);
        if (f.dim != top) throw InputError(fn_file + ": function is on " + std::to_string(f.dim) + "-cubes, --top is " + std::to_string(top));
        for (PresCube x : k.cubes(top))
            if (!f.values.count(k.name(x))) throw InputError(fn_file + ": no value for cube '" + k.name(x) + "'");
        const auto g = build_jump_graph(k, top, f.on(k));
        const auto res = extend_down(g);
        r.counts = {{"nodes", g.nodes.size()}, {"edges", g.edges.size()}};
        if (const auto* obs = std::get_if<CycleObstruction>(&res)) {
            json cycle = json::array();
            for (const auto& s : obs->cycle)
                cycle.push_back({{"cube", k.name(g.edges[s.edge].cube)},
                                 {"i", g.edges[s.edge].face_index},
                                 {"direction", s.forward ? "forward" : "backward"}});
            r.verdict = "fail";
            r.counts["violations"] = 1;
            r.artifacts["obstructions"] = json::array({{{"cycle", cycle}, {"net_price", detail::q(obs->net_price)}}});
            return;
        }
        const auto& ext = std::get<Extension>(res);
        json classes = json::array();
        for (std::size_t c = 0; c < ext.representatives.size(); ++c) {
            json members = json::array();
            for (std::size_t v = 0; v < ext.nodes.size(); ++v)
                if (ext.class_of[v] == c) members.push_back(k.name(ext.nodes[v]));
            classes.push_back({{"representative", k.name(ext.representatives[c])}, {"members", members}});
        }
        r.counts["violations"] = 0;
        r.artifacts["level"] = top - 1;
        r.artifacts["values"] = detail::vector_json(k, ext.nodes, ext.base);
        r.artifacts["parallel_classes"] = classes;
        r.artifacts["dimension"] = ext.free_constants();
        r.artifacts["obstructions"] = json::array();
        return;
    }

    std::map<PresCube, Rational> pins;
    for (const auto& a : anchors) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) throw InputError("--anchor expects id=value, got '" + a + "'");
        const auto c = k.find(a.substr(0, eq));
        if (!c) throw InputError("--anchor: unknown cube '" + a.substr(0, eq) + "'");
        if (k.dim(*c) != 0) throw InputError("--anchor: '" + a.substr(0, eq) + "' is not a 0-cube");
        try {
            pins[*c] = parse_rational(a.substr(eq + 1));
        } catch (const EncodingError& e) {
            throw InputError("--anchor: " + std::string(e.what()));
        }
    }
    const auto fam = descend_space(k, top, pins);
    r.counts = {{"vertices", fam.vertices.size()}, {"violations", fam.obstruction ? 1 : 0}};
    if (fam.obstruction) {
        r.verdict = "fail";
        json pinned = json::object();
        for (const auto& [c, v] : pins) pinned[k.name(c)] = detail::q(v);
        r.artifacts["obstructions"] = json::array({{{"kind", "anchors"}, {"anchors", pinned}}});
        return;
    }
    json basis = json::array();
    for (const auto& b : fam.basis) basis.push_back(detail::vector_json(k, fam.vertices, b));
    r.artifacts["dimension"] = fam.dimension();
    r.artifacts["particular"] = detail::vector_json(k, fam.vertices, fam.particular);
    r.artifacts["basis"] = basis;
    r.artifacts["obstructions"] = json::array();
}

inline void run_poly(RunReport& r, const Globals& g, const std::string& file, int bound, bool symbolic,
                     std::size_t trials) {
    const auto f = detail::load(file, polynomial_from_json);
    r.artifacts["degree"] = f.degree();
    r.artifacts["degree_bound"] = bound;
    auto witness = [&](const Counterexample<AffineCube>& ce) {
        r.verdict = "fail";
        r.counts["violations"] = 1;
        r.artifacts["witness"] = {{"cube", to_json(ce.cube)}, {"value", detail::q(ce.value)}};
    };
    r.counts["violations"] = 0;
    if (symbolic) {
        if (bound < 1) throw InputError("--symbolic needs --degree-bound >= 1");
        const auto s = symbolic_alternation(f, bound);
        r.artifacts["alternation"] = s.to_string();
        r.counts["terms"] = s.poly.terms().size();
        if (!s.is_zero()) {
            const auto ce = symbolic_witness(s, g.seed);
            if (!ce) throw std::runtime_error("no witness found for a nonzero alternation");
            witness(*ce);
        }
        return;
    }
    if (trials < 1) throw InputError("--trials must be >= 1");
    const auto res = polynomial_degree_test(f, bound, trials, g.seed);
    r.counts["trials"] = trials;
    if (const auto* ce = std::get_if<Counterexample<AffineCube>>(&res))
        witness(*ce);
    else
        r.counts["cubes_checked"] = std::get<Pass>(res).cubes_checked;
}

inline void run_group_demo(RunReport& r, int rank, int depth, const std::string& x_text, const std::string& c_text) {
    if (rank < 1 || rank > 26) throw InputError("--rank must be in 1..26");
    Word x;
    Commutator c;
    try {
        x = parse_word(x_text, rank);
        if (c_text.empty()) {
            if (depth < 2) throw InputError("--depth must be >= 2");
            std::vector<Word> entries;
            for (int k = 0; k < depth; ++k) entries.push_back(generator(k % rank));
            c = left_normed(entries);
        } else {
            c = parse_commutator(c_text, rank);
        }
    } catch (const EncodingError& e) {
        throw InputError(e.what());
    } catch (const ContractViolation& e) {
        throw InputError(e.what());
    }
    const int weight = c.weight();
    if (weight > 12) throw InputError("commutator weight above 12 is too large for the vertex check");
    const GroupComplex k{rank};
    const Word cv = evaluate(c);
    const TaggedWord z = build_commutator_witness(x, c);
    const Word y = x * cv;
    const bool goussarov = is_goussarov_witness(k, z, x, y);
    const bool equiv = verify_n_equivalence_witness(k, x, y, Chain<TaggedWord>(weight, z), weight - 1);
    const bool lcs = lcs_membership(cv, weight - 1);
    const int depth_found = lcs_depth(cv, weight + 1);
    r.counts = {{"vertices", std::size_t{1} << weight}, {"letters", z.letters().size()},
                {"violations", (goussarov ? 0 : 1) + (equiv ? 0 : 1) + (lcs ? 0 : 1)}};
    r.artifacts = {{"x", to_text(x, rank, false)},
                   {"commutator", to_text(cv, rank, false)},
                   {"y", to_text(y, rank, false)},
                   {"witness", to_json(z, rank)},
                   {"weight", weight},
                   {"goussarov_witness", goussarov},
                   {"n_equivalence", equiv},
                   {"lcs_membership", {{"n", weight - 1}, {"member", lcs}, {"depth", depth_found}}},
                   {"magnus_leading", MagnusSeries::of(cv, depth_found + 1).degree_part(depth_found + 1, rank)}};
    r.verdict = goussarov && equiv && lcs ? "pass" : "fail";
}

inline GraphStatistic graph_statistic_arg(const std::string& text) {
    try {
        if (text.rfind("subgraph:", 0) == 0) {
            const std::string file = text.substr(9);
            return GraphStatistic::subgraph(detail::load(file, multigraph_from_json));
        }
        return parse_graph_statistic(text);
    } catch (const EncodingError& e) {
        throw InputError(std::string("--statistic: ") + e.what());
    }
}

inline void run_graph_scan(RunReport& r, const Globals& g, const std::string& stat_text, int cube_dim, int max_edges,
                           bool full, bool split_loops, std::size_t max_cubes) {
    const auto stat = graph_statistic_arg(stat_text);
    if (cube_dim < 1) throw InputError("--cube-dim must be >= 1");
    if (max_edges < 0 || max_edges > 8) throw InputError("--max-edges must be in 0..8");
    const auto s = scan_graph_degree(stat, {cube_dim, max_edges, !full, max_cubes, g.jobs, split_loops});
    detail::scan_counts(r, s);
    r.artifacts["statistic"] = stat.name();
    if (s.counterexample)
        r.artifacts["counterexample"] = {{"cube", to_json(s.counterexample->cube)},
                                         {"graph", to_json(s.counterexample->cube.graph())},
                                         {"value", detail::q(s.counterexample->value)}};
}

inline TreeStatistic tree_statistic_arg(const std::string& text) {
    try {
        if (text.rfind("leaftype:", 0) == 0) {
            const std::string arg = text.substr(9);
            if (!arg.empty() && arg.front() == '(') return TreeStatistic::leaftype(RootedTree(arg));
            return TreeStatistic::leaftype(detail::load(arg, tree_from_json));
        }
        return parse_tree_statistic(text);
    } catch (const EncodingError& e) {
        throw InputError(std::string("--statistic: ") + e.what());
    }
}

inline void run_tree_scan(RunReport& r, const Globals& g, const std::string& stat_text, int cube_dim, int max_nodes,
                          int graft_nodes, bool unit_grafts, bool full, std::size_t max_cubes) {
    const auto stat = tree_statistic_arg(stat_text);
    if (cube_dim < 1) throw InputError("--cube-dim must be >= 1");
    if (max_nodes < 1 || max_nodes > 9) throw InputError("--max-nodes must be in 1..9");
    if (graft_nodes < 1 || graft_nodes > 7) throw InputError("--graft-nodes must be in 1..7");
    TreeScanOptions opt{cube_dim, max_nodes, graft_nodes, !unit_grafts, !full, max_cubes, g.jobs};
    std::vector<RootedTree> pool;
    try {
        pool = graft_pool(opt);
    } catch (const ContractViolation& e) {
        throw InputError(e.what());
    }
    const auto s = scan_tree_degree(stat, opt);
    detail::scan_counts(r, s);
    r.counts["graft_pool"] = pool.size();
    r.artifacts["statistic"] = stat.name();
    if (s.counterexample)
        r.artifacts["counterexample"] = {{"cube", to_json(s.counterexample->cube)},
                                         {"value", detail::q(s.counterexample->value)}};
}

inline std::function<Rational(const SingularDiagram&)> knot_invariant(const std::string& name) {
    if (name == "a2") return [](const SingularDiagram& d) { return conway_a2(d); };
    if (name == "a4") return [](const SingularDiagram& d) { return conway_coefficient(d, 4); };
    throw InputError("--invariant must be a2 or a4, got '" + name + "'");
}

inline SingularDiagram load_diagram(const std::string& file) { return detail::load(file, diagram_from_json); }

inline void run_knot_a2(RunReport& r, const std::string& file) {
    const auto d = load_diagram(file);
    if (d.singular_count() != 0) throw InputError(file + ": a2 needs a diagram without singular crossings");
    AlexanderPolynomial a;
    try {
        a = alexander_polynomial(d);
    } catch (const EncodingError& e) {
        throw InputError(file + ": " + e.what());
    }
    const auto z = conway_polynomial(a);
    json alex = json::array(), conway = json::array();
    for (const auto& c : a.coef) alex.push_back(detail::q(c));
    for (const auto& c : z) conway.push_back(detail::q(c));
    r.counts = {{"crossings", d.crossing_count()}, {"writhe", d.writhe()}};
    r.artifacts = {{"alexander", alex}, {"conway", conway}, {"a2", detail::q(z.size() > 2 ? z[2] : Rational(0))}};
}

inline void run_knot_resolution(RunReport& r, const Globals& g, const std::string& file, int degree,
                                const std::string& inv, bool symbol_mode) {
    const auto d = load_diagram(file);
    const auto f = knot_invariant(inv);
    const int n = d.singular_count();
    if (n > 20) throw InputError(file + ": more than 20 singular crossings");
    if (symbol_mode ? n != degree : n < degree + 1)
        throw InputError(file + ": has " + std::to_string(n) + " singular crossings; " +
                         (symbol_mode ? "symbol needs exactly --degree" : "ftcheck needs at least --degree + 1"));
    std::vector<int> chords = chord_diagram(d);
    r.counts = {{"singular", n}, {"resolutions", std::size_t{1} << n}};
    r.artifacts = {{"invariant", inv}, {"degree", degree}, {"chord_diagram", chords}};
    try {
        if (symbol_mode) {
            r.artifacts["value"] = detail::q(symbol(d, f, degree, g.jobs));
            return;
        }
        const auto res = finite_type_check(d, f, degree, g.jobs);
        if (const auto* ce = std::get_if<Counterexample<SingularDiagram>>(&res)) {
            r.verdict = "fail";
            r.counts["violations"] = 1;
            r.artifacts["value"] = detail::q(ce->value);
            r.artifacts["counterexample"] = {{"diagram", to_json(ce->cube)}, {"value", detail::q(ce->value)}};
        } else {
            r.counts["violations"] = 0;
            r.artifacts["value"] = "0";
        }
    } catch (const EncodingError& e) {
        throw InputError(file + ": " + e.what());
    }
}

inline void run_knot_braid(RunReport& r, const std::string& word, int strands, const std::string& output) {
    SingularDiagram d;
    try {
        d = diagram_from_braid(word, strands);
    } catch (const EncodingError& e) {
        throw InputError(std::string("braid: ") + e.what());
    } catch (const ContractViolation& e) {
        throw InputError(std::string("braid: ") + e.what());
    }
    const json dj = to_json(d);
    r.counts = {{"crossings", d.crossing_count()}, {"singular", d.singular_count()}};
    r.artifacts["diagram"] = dj;
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw InputError(output + ": cannot write file");
        out << dj.dump(1) << '\n';
        r.artifacts["written"] = output;
    }
}

// ------------------------------------------------------------- dispatch

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to `out`. Returns 0 pass/partial, 1 fail, 2 usage or input error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cubic complexes and finite-type checks.", "cubix"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    std::string format = "json";
    int jobs = 0;
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", jobs, "Worker threads (default: $CUBIX_JOBS or all cores)")->check(CLI::Range(1, 1024));
    app.add_option("--seed", g.seed, "Random seed, echoed in the report");

    std::function<void(RunReport&)> action;

    auto* validate = app.add_subcommand("validate", "Check a complex presentation");
    std::string k_file;
    validate->add_option("complex", k_file, "Presentation JSON")->required();
    validate->callback([&] { action = [&](RunReport& r) { run_validate(r, k_file); }; });

    auto* degree = app.add_subcommand("degree", "Test f(∂ⁿx) = 0 on every n-cube of a presentation");
    std::string f_file;
    int bound = 0;
    degree->add_option("complex", k_file, "Presentation JSON")->required();
    degree->add_option("--function", f_file, "Function on 0-cubes")->required();
    degree->add_option("--degree-bound", bound, "n: check degree < n")->required()->check(CLI::NonNegativeNumber);
    degree->callback([&] { action = [&](RunReport& r) { run_degree(r, k_file, f_file, bound); }; });

    auto* descend = app.add_subcommand("descend", "Descending method on a presentation");
    int top = 0;
    std::vector<std::string> anchors;
    descend->add_option("--complex", k_file, "Presentation JSON")->required();
    descend->add_option("--top", top, "Degree bound, or the level of --function")->required()->check(CLI::NonNegativeNumber);
    descend->add_option("--anchor", anchors, "Pin a 0-cube value, id=p/q");
    descend->add_option("--function", f_file, "Extend this function on --top cubes one level down");
    descend->callback([&] {
        if (!f_file.empty() && !anchors.empty()) throw CLI::ValidationError("--anchor", "not used with --function");
        if (!f_file.empty() && top < 1) throw CLI::ValidationError("--top", "must be >= 1 with --function");
        action = [&](RunReport& r) { run_descend(r, k_file, top, anchors, f_file); };
    });

    auto* poly = app.add_subcommand("poly", "Degree test for a polynomial on affine cubes");
    bool symbolic = false;
    std::size_t trials = 100;
    poly->add_option("--coeffs", f_file, "Polynomial JSON")->required();
    poly->add_option("--degree-bound", bound, "n: check degree < n")->required()->check(CLI::NonNegativeNumber);
    poly->add_flag("--symbolic", symbolic, "Expand the alternating sum exactly");
    poly->add_option("--trials", trials, "Sampled cubes");
    poly->callback([&] { action = [&](RunReport& r) { run_poly(r, g, f_file, bound, symbolic, trials); }; });

    auto* group = app.add_subcommand("group-demo", "Commutator witness in a free group");
    int rank = 2, depth = 2;
    std::string x_text = "1", c_text;
    group->add_option("--rank", rank, "Free group rank");
    group->add_option("--depth", depth, "Entries of the left-normed commutator of generators");
    group->add_option("--x", x_text, "Base element, e.g. \"x y^-1\"");
    group->add_option("--commutator", c_text, "Explicit commutator, e.g. \"[x,[y,x]]\"");
    group->callback([&] { action = [&](RunReport& r) { run_group_demo(r, rank, depth, x_text, c_text); }; });

    auto* gscan = app.add_subcommand("graph-scan", "Exhaustive degree scan over split graph cubes");
    std::string stat_text;
    int cube_dim = 1, max_edges = 4;
    bool full = false, split_loops = false;
    std::size_t max_cubes = 0;
    gscan->add_option("--statistic", stat_text, "edges | vertices | loops | valence:K | edge_valences:K,L | subgraph:H.json")->required();
    gscan->add_option("--cube-dim", cube_dim, "Cube dimension n (checks degree < n)")->required();
    gscan->add_option("--max-edges", max_edges, "Largest graph size")->required();
    gscan->add_flag("--full", full, "Enumerate both sides of every split, not only based cubes");
    gscan->add_flag("--split-loops", split_loops, "Let the two ends of a loop go to different sides");
    gscan->add_option("--max-cubes", max_cubes, "Budget; 0 = unlimited");
    gscan->callback([&] {
        action = [&](RunReport& r) { run_graph_scan(r, g, stat_text, cube_dim, max_edges, full, split_loops, max_cubes); };
    });

    auto* tscan = app.add_subcommand("tree-scan", "Exhaustive degree scan over grafted tree cubes");
    int max_nodes = 5, graft_nodes = 4;
    bool unit_grafts = false;
    tscan->add_option("--statistic", stat_text, "edges | vertices | leaves | valence:K | leaftype:T.json | leaftype:CODE")->required();
    tscan->add_option("--cube-dim", cube_dim, "Cube dimension n (checks degree < n)")->required();
    tscan->add_option("--max-nodes", max_nodes, "Largest base tree");
    tscan->add_option("--graft-nodes", graft_nodes, "Largest grafted tree");
    tscan->add_flag("--unit-grafts", unit_grafts, "All plane trees, including one-node grafts");
    tscan->add_flag("--full", full, "Vary the minus graft too");
    tscan->add_option("--max-cubes", max_cubes, "Budget; 0 = unlimited");
    tscan->callback([&] {
        action = [&](RunReport& r) {
            run_tree_scan(r, g, stat_text, cube_dim, max_nodes, graft_nodes, unit_grafts, full, max_cubes);
        };
    });

    auto* knot = app.add_subcommand("knot", "Singular knot diagrams");
    knot->require_subcommand(1, 1);
    std::string d_file, inv = "a2", word, output;
    int strands = 2;
    auto* a2 = knot->add_subcommand("a2", "Alexander and Conway polynomials of a knot diagram");
    a2->add_option("diagram", d_file, "Diagram JSON")->required();
    a2->callback([&] { action = [&](RunReport& r) { run_knot_a2(r, d_file); }; });
    auto* ft = knot->add_subcommand("ftcheck", "Alternating sum over all resolutions must vanish");
    ft->add_option("--degree", depth, "Claimed degree")->required()->check(CLI::NonNegativeNumber);
    ft->add_option("--invariant", inv, "a2 | a4");
    ft->add_option("diagram", d_file, "Diagram JSON")->required();
    ft->callback([&] { action = [&](RunReport& r) { run_knot_resolution(r, g, d_file, depth, inv, false); }; });
    auto* sym = knot->add_subcommand("symbol", "Value on an n-singular diagram of a degree-n invariant");
    sym->add_option("--degree", depth, "Degree n")->required()->check(CLI::NonNegativeNumber);
    sym->add_option("--invariant", inv, "a2 | a4");
    sym->add_option("diagram", d_file, "Diagram JSON")->required();
    sym->callback([&] { action = [&](RunReport& r) { run_knot_resolution(r, g, d_file, depth, inv, true); }; });
    auto* braid = knot->add_subcommand("braid", "Diagram of a braid closure");
    braid->add_option("word", word, "e.g. \"s1 S2 t1\"")->required();
    braid->add_option("--strands", strands, "Braid index")->required();
    braid->add_option("--output", output, "Also write the diagram to this file");
    braid->callback([&] { action = [&](RunReport& r) { run_knot_braid(r, word, strands, output); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "cubix: " << e.what() << '\n';
        return 2;
    }

    g.jobs = jobs > 0 ? static_cast<unsigned>(jobs) : default_jobs();
    RunReport report;
    report.command = args;
    report.seed = g.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        action(report);
    } catch (const InputError& e) {
        err << "cubix: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "cubix: " << e.what() << '\n';
        return 2;
    } catch (const EncodingError& e) {
        err << "cubix: " << e.what() << '\n';
        return 2;
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (format == "text")
        out << report.to_text();
    else
        out << report.to_json().dump(2) << '\n';
    return report.exit_code();
}

}  // namespace cubix::cli
