// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cubix/affine.hpp>
#include <cubix/descent.hpp>
#include <cubix/finite_type.hpp>
#include <cubix/graphs.hpp>
#include <cubix/group.hpp>
#include <cubix/knot.hpp>
#include <cubix/trees.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cubix;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what() << "; ";
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > limit_s) {
        c.ok = false;
        c.detail << "over time budget " << limit_s << " s; ";
    }
    std::printf("criterion %2d %s (%.2f s) %s: %s\n", id, c.ok ? "PASS" : "FAIL", s, title.c_str(),
                c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
}

// ------------------------------------------------------------ polynomials

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t d, int degree) {
    Polynomial p(d);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4), coord(0, static_cast<int>(d) - 1);
    auto nonzero = [&] {
        int a = 0;
        while (a == 0) a = num(rng);
        return make_rational(a, den(rng));
    };
    auto monomial = [&](int deg) {
        Polynomial::Exponents e(d, 0);
        for (int k = 0; k < deg; ++k) ++e[coord(rng)];
        return e;
    };
    // extra terms may cancel the leading one; draw again until the degree is exact
    while (p.degree() != degree) {
        p = Polynomial(d);
        p.add_term(monomial(degree), nonzero());
        const int extra = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int t = 0; t < extra; ++t)
            p.add_term(monomial(std::uniform_int_distribution<int>(0, degree)(rng)), nonzero());
    }
    return p;
}

// Σ_{S ⊆ {1..n}} (−1)^{n−|S|} f(x₀ + Σ_{i∈S} xᵢ), built by substitution.
Polynomial forward_identity(const Polynomial& f, int n) {
    const std::size_t d = f.nvars(), nv = d * (n + 1);
    Polynomial total(nv);
    for (unsigned s = 0; s < (1u << n); ++s) {
        std::vector<Polynomial> images;
        for (std::size_t j = 0; j < d; ++j) {
            Polynomial l = Polynomial::variable(nv, j);
            for (int i = 1; i <= n; ++i)
                if (s >> (i - 1) & 1) l += Polynomial::variable(nv, i * d + j);
            images.push_back(std::move(l));
        }
        Polynomial term = f.substitute(images);
        if ((n - __builtin_popcount(s)) % 2) term *= Rational(-1);
        total += term;
    }
    return total;
}

Polynomial generic(std::size_t d, int degree) {
    Polynomial p(d);
    int c = 1;
    std::function<void(std::size_t, int, Polynomial::Exponents&)> rec = [&](std::size_t v, int left,
                                                                           Polynomial::Exponents& e) {
        if (v == d) {
            p.add_term(e, make_rational(c * c + 1, c + 2));
            ++c;
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[v] = static_cast<std::uint16_t>(k);
            rec(v + 1, left - k, e);
        }
        e[v] = 0;
    };
    Polynomial::Exponents e(d, 0);
    rec(0, degree, e);
    return p;
}

// ------------------------------------------------------------ groups

Rational exponent_sum(const TaggedWord& w, std::uint8_t g) {
    Rational s = 0;
    for (const auto& l : w.letters())
        if (l.gen == g) s += l.inv ? -1 : 1;
    return s;
}

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), gen(0, rank - 1), coin(0, 1);
    Word w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) w = w * generator(gen(rng), coin(rng));
    return w;
}

TaggedWord random_tagged(std::mt19937_64& rng, int dim, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), gen(0, 1), coin(0, 1), tag(0, dim);
    Letters ls;
    const int n = len(rng);
    for (int k = 0; k < n; ++k)
        ls.push_back({static_cast<std::uint8_t>(gen(rng)), coin(rng) == 1, static_cast<std::uint8_t>(tag(rng))});
    return TaggedWord(dim, ls);
}

nlohmann::json knot_fixtures() { return cubix::testing::load_json(cubix::testing::data_dir() / "knots" / "fixtures.json"); }

SingularDiagram braid_of(const nlohmann::json& e) { return diagram_from_braid(e.at("braid"), e.at("strands")); }

template <SemicubicComplex K>
bool coherent(const K& k, const typename K::cube_type& x) {
    const int n = k.dim(x);
    using Cube = typename K::cube_type;
    return iterated_boundary(k, Chain<Cube>(n, x), n) == vertex_expansion(k, x);
}

}  // namespace

int main() {
    std::cout << "cubix acceptance\n";

    criterion(1, "polynomial characterization, 50 random polynomials", 10, [](Check& c) {
        std::mt19937_64 rng(1);
        int witnesses = 0;
        for (int t = 0; t < 50; ++t) {
            const std::size_t d = 1 + t % 3;
            const int deg = 1 + (t / 3) % 5;
            const auto f = random_polynomial(rng, d, deg);
            c.require(f.degree() == deg, "generator degree");
            c.require(symbolic_alternation(f, deg + 1).is_zero(), "vanishing at n = deg + 1");
            const auto s = symbolic_alternation(f, deg);
            c.require(!s.is_zero(), "nonzero at n = deg");
            const auto w = symbolic_witness(s, t);
            c.require(w.has_value(), "witness found");
            if (w) {
                const Rational v = alternating_sum(f, w->cube);
                c.require(v == w->value && v != 0, "witness replays");
                witnesses += v != 0;
            }
        }
        c.detail << witnesses << "/50 witnesses replayed";
    });

    criterion(2, "explicit 4-term and 8-term identities, x^2 example", 1, [](Check& c) {
        const auto lin = generic(3, 1), quad = generic(3, 2), cub = generic(3, 3);
        c.require(forward_identity(lin, 2).is_zero(), "4-term identity for linear f");
        c.require(forward_identity(quad, 3).is_zero(), "8-term identity for quadratic f");
        c.require(!forward_identity(quad, 2).is_zero(), "4-term identity rejects quadratic f");
        c.require(!forward_identity(cub, 3).is_zero(), "8-term identity rejects cubic f");
        c.require(symbolic_alternation(lin, 2, DifferenceForm::forward).is_zero(), "forward form, linear");
        c.require(symbolic_alternation(quad, 3, DifferenceForm::forward).is_zero(), "forward form, quadratic");
        c.require(symbolic_alternation(quad, 3).is_zero(), "central form, quadratic");
        Polynomial xsq(1);
        xsq.add_term({2}, 1);
        const Rational v = alternating_sum(xsq, AffineCube{{0}, {{1}, {1}}});
        c.require(v == 8, "x^2 on (0,1,1)");
        c.detail << "x^2 on (0,1,1) = " << to_string(v);
    });

    criterion(3, "vertex expansion equals n-fold boundary, 200 cubes", 30, [](Check& c) {
        std::mt19937_64 rng(3);
        std::size_t counts[4] = {0, 0, 0, 0};
        for (int t = 0; t < 50; ++t) {
            const std::size_t d = 1 + t % 3;
            const int n = 1 + t % 4;
            const AffineComplex k{d};
            const auto cube = sample_cubes(d, n, 1, 100 + t).front();
            c.require(coherent(k, cube), "affine");
            ++counts[0];
        }
        const GroupComplex gk{2};
        for (int t = 0; t < 50; ++t) {
            c.require(coherent(gk, random_tagged(rng, 1 + t % 4, 8)), "group");
            ++counts[1];
        }
        // combinatorial: every 97th split cube and every 13th tree cube
        const GraphComplex grk;
        std::size_t seen = 0;
        for (int n = 1; n <= 4 && counts[2] < 25; ++n)
            for (const auto& g : connected_multigraphs(4)) {
                SplitEnumeration{n, false, true}.for_each(g, [&](const SplitCube& x) {
                    if (counts[2] >= 25 || seen++ % 97) return;
                    c.require(coherent(grk, x), "graph");
                    ++counts[2];
                });
                if (counts[2] >= 25) break;
            }
        const TreeComplex tk;
        seen = 0;
        const auto pool = graft_pool({1, 5, 3, false});
        for (int n = 1; n <= 4; ++n) {
            std::size_t here = 0;
            for (const auto& t : plane_trees_up_to(5, false))
                for_each_tree_cube(t, pool, n, false, [&](const TreeCube& x) {
                    if (here >= 7 || counts[2] >= 50 || seen++ % 13) return;
                    c.require(coherent(tk, x), "tree");
                    ++counts[2];
                    ++here;
                });
        }
        const KnotComplex kk;
        std::vector<SingularDiagram> cubes;
        const auto fx = knot_fixtures();
        for (const auto& e : fx["singular"]) {
            const auto d = braid_of(e);
            if (d.singular_count() <= 4) cubes.push_back(d);
            for (int i = 1; i <= d.singular_count() && d.singular_count() >= 2; ++i)
                for (Sign s : kSigns) cubes.push_back(resolve(d, i, s));
        }
        for (std::size_t i = 0; i < cubes.size() && counts[3] < 50; ++i) {
            c.require(coherent(kk, cubes[i]), "knot");
            ++counts[3];
        }
        const std::size_t total = counts[0] + counts[1] + counts[2] + counts[3];
        c.require(total >= 200, "at least 200 cubes");
        c.detail << "affine " << counts[0] << ", group " << counts[1] << ", graph/tree " << counts[2] << ", knot "
                 << counts[3];
    });

    criterion(4, "commutation: tagged words, graph cubes, knot fixtures", 120, [](Check& c) {
        const GroupComplex gk{2};
        ValidationReport<TaggedWord> gr;
        for (int dim = 2; dim <= 3; ++dim) {
            std::vector<Letter> alphabet;
            for (int t = 0; t <= dim; ++t)
                for (std::uint8_t g = 0; g < 2; ++g)
                    for (bool inv : {false, true}) alphabet.push_back({g, inv, static_cast<std::uint8_t>(t)});
            Letters cur;
            std::function<void()> rec = [&] {
                check_commutation(gk, TaggedWord(dim, cur), gr);
                if (cur.size() == 6) return;
                for (const auto& l : alphabet) {
                    if (!cur.empty() && cur.back().cancels(l)) continue;
                    cur.push_back(l);
                    rec();
                    cur.pop_back();
                }
            };
            rec();
        }
        c.require(gr.passed(), "tagged words");

        const GraphComplex grk;
        ValidationReport<SplitCube> sr;
        const auto graphs = connected_multigraphs(5);
        for (int n = 2; n <= 3; ++n)
            for (const auto& g : graphs)
                SplitEnumeration{n, false, true}.for_each(g, [&](const SplitCube& x) { check_commutation(grk, x, sr); });
        c.require(sr.passed(), "graph split cubes");

        const KnotComplex kk;
        ValidationReport<SingularDiagram> kr;
        const auto fx = knot_fixtures();
        std::size_t diagrams = 0;
        for (const auto& list : {"knots", "singular"})
            for (const auto& e : fx[list]) {
                const auto d = braid_of(e);
                ++diagrams;
                if (d.singular_count() >= 2) check_commutation(kk, d, kr);
            }
        c.require(kr.passed(), "knot fixtures");
        c.detail << gr.cubes_checked << " words, " << sr.cubes_checked << " split cubes, " << kr.cubes_checked
                 << " of " << diagrams << " knot fixtures (those with >= 2 double points); violations "
                 << gr.violations.size() + sr.violations.size() + kr.violations.size();
    });

    criterion(5, "commutator witnesses at depth 2, 3, 4", 30, [](Check& c) {
        std::mt19937_64 rng(5);
        const GroupComplex gk{2};
        int built = 0;
        for (int depth = 2; depth <= 4; ++depth) {
            std::vector<Commutator> cs;
            std::vector<Word> gens;
            for (int k = 0; k < depth; ++k) gens.push_back(generator(k % 2));
            cs.push_back(left_normed(gens));
            for (int t = 0; t < 10; ++t) {
                std::vector<Word> entries;
                for (int k = 0; k < depth; ++k) entries.push_back(random_word(rng, 2, 3));
                cs.push_back(left_normed(entries));
            }
            // right-normed [x,[y,[x,y]]] shape
            Commutator r = Commutator::leaf(generator((depth - 1) % 2));
            for (int k = depth - 2; k >= 0; --k) r = Commutator::bracket(Commutator::leaf(generator(k % 2)), r);
            cs.push_back(r);
            for (const auto& cm : cs) {
                const Word x = random_word(rng, 2, 4);
                const Word cv = evaluate(cm);
                const auto z = build_commutator_witness(x, cm);
                const Word y = x * cv;
                c.require(z.dim() == depth, "witness dimension");
                c.require(is_goussarov_witness(gk, z, x, y), "Goussarov witness");
                c.require(verify_n_equivalence_witness(gk, x, y, Chain<TaggedWord>(depth, z), depth - 1), "n-equivalence");
                c.require(lcs_membership(cv, depth - 1), "lower central series membership");
                ++built;
            }
            c.require(!lcs_membership(evaluate(cs.front()), depth), "generator commutator not one level deeper");
        }
        c.detail << built << " witnesses";
    });

    criterion(6, "linear functions are homomorphisms", 5, [](Check& c) {
        std::mt19937_64 rng(6);
        int nonzero_sq = 0;
        auto ex = [](const TaggedWord& w) { return exponent_sum(w, 0); };
        auto ey = [](const TaggedWord& w) { return exponent_sum(w, 1); };
        auto mix = [](const TaggedWord& w) -> Rational { return 2 * exponent_sum(w, 0) - make_rational(3, 2) * exponent_sum(w, 1); };
        auto sq = [](const TaggedWord& w) -> Rational { return exponent_sum(w, 0) * exponent_sum(w, 0); };
        for (int t = 0; t < 100; ++t) {
            const auto a = random_word(rng, 2, 7), b = random_word(rng, 2, 7);
            c.require(linearity_residual(ex, a, b) == 0, "exponent sum of x");
            c.require(linearity_residual(ey, a, b) == 0, "exponent sum of y");
            c.require(linearity_residual(mix, a, b) == 0, "mixed exponent sum");
            nonzero_sq += linearity_residual(sq, a, b) != 0;
        }
        c.require(nonzero_sq > 0, "squared exponent sum is not linear");
        c.detail << "squared exponent sum nonzero on " << nonzero_sq << "/100 pairs";
    });

    criterion(7, "graph degree theorems, exhaustive over all split cubes", 600, [](Check& c) {
        const unsigned jobs = default_jobs();
        std::size_t cubes = 0;
        auto scan = [&](const GraphStatistic& s, int n, int max_edges) {
            const auto r = scan_graph_degree(s, {n, max_edges, false, 0, jobs, false});
            c.require(r.verdict() == "pass", s.name() + " on " + std::to_string(n) + "-cubes");
            cubes += r.cubes_checked;
        };
        for (const auto& s : {GraphStatistic::edges(), GraphStatistic::vertices(), GraphStatistic::loops()}) scan(s, 1, 6);
        for (int k = 0; k <= 4; ++k) scan(GraphStatistic::valence(k), 2, 6);
        for (int k = 1; k <= 4; ++k)
            for (int l = k; l <= 4; ++l) scan(GraphStatistic::edge_valences(k, l), 3, 5);
        // the bounds are sharp
        c.require(scan_graph_degree(GraphStatistic::edges(), {1, 2, false}).verdict() == "pass", "sanity");
        c.require(scan_graph_degree(GraphStatistic::valence(3), {1, 4, false}).verdict() == "fail", "valence is not constant");
        c.require(scan_graph_degree(GraphStatistic::edge_valences(2, 3), {2, 4, false}).verdict() == "fail",
                  "edge valences are not of degree 1");
        c.detail << cubes << " cubes checked, " << jobs << " jobs";
    });

    criterion(8, "descent agrees with the linear-system oracle on bundled fixtures", 60, [](Check& c) {
        const auto fixtures = cubix::testing::descent_fixtures();
        std::size_t blocked = 0, agreed = 0;
        for (const auto& fx : fixtures) {
            const auto f = fx.function.on(fx.complex);
            const auto oracle = cubix::testing::edge_system(fx.complex, fx.n, f);
            const auto g = build_jump_graph(fx.complex, fx.n, f);
            const auto r = extend_down(g);
            bool ok = true;
            if (const auto* obs = std::get_if<CycleObstruction>(&r)) {
                ++blocked;
                ok = !oracle.consistent && !fx.extends && obs->net_price != 0 &&
                     closed_walk_price(g, obs->cycle) == obs->net_price;
            } else {
                const auto& ext = std::get<Extension>(r);
                ok = oracle.consistent && fx.extends && ext.free_constants() == oracle.solution_dim &&
                     ext.free_constants() == fx.solution_dim;
                for (const auto& e : g.edges) ok = ok && ext.base[e.to] - ext.base[e.from] == e.price;
            }
            c.require(ok, fx.name);
            agreed += ok;
        }
        c.require(fixtures.size() >= 20, "at least 20 fixtures");
        c.require(blocked >= 5, "at least 5 obstructions");
        c.detail << agreed << "/" << fixtures.size() << " fixtures agree, " << blocked << " with a cycle obstruction";
    });

    criterion(9, "knot a2 values, degree-2 finite type, symbol on chord diagrams", 120, [](Check& c) {
        const auto fx = knot_fixtures();
        const unsigned jobs = default_jobs();
        auto a2 = [](const SingularDiagram& d) -> Rational { return conway_a2(d); };
        std::map<std::string, SingularDiagram> named;
        for (const auto& list : {"knots", "singular"})
            for (const auto& e : fx[list]) named.emplace(e["name"].get<std::string>(), braid_of(e));
        c.require(conway_a2(named.at("unknot")) == 0, "unknot a2 = 0");
        c.require(conway_a2(named.at("trefoil")) == 1, "trefoil a2 = 1");
        c.require(conway_a2(named.at("figure_eight")) == -1, "figure-eight a2 = -1");
        const std::vector<Rational> fig8 = {Rational(-1), Rational(3), Rational(-1)};
        c.require(alexander_polynomial(named.at("figure_eight")).coef == fig8, "figure-eight Alexander -t + 3 - 1/t");
        int three = 0;
        for (const auto& e : fx["singular"]) {
            const auto& d = named.at(e["name"].get<std::string>());
            if (d.singular_count() != 3) continue;
            ++three;
            c.require(passed(finite_type_check(d, a2, 2, jobs)), e["name"].get<std::string>());
            c.require(d.crossing_count() <= 9, "fixture size");
        }
        c.require(three >= 10, "at least 10 three-singular fixtures");
        int crossed = 0, parallel = 0;
        for (const auto& [name, d] : named) {
            if (d.singular_count() != 2) continue;
            const auto cd = chord_diagram(d);
            const Rational v = symbol(d, a2, 2, jobs);
            if (cd == std::vector<int>{0, 1, 0, 1}) {
                c.require(v != 0, name + " crossed symbol nonzero");
                ++crossed;
            } else {
                c.require(v == 0, name + " parallel symbol zero");
                ++parallel;
            }
        }
        c.require(crossed > 0 && parallel > 0, "both chord diagrams present");
        c.detail << three << " three-singular fixtures pass, symbol nonzero on " << crossed << " crossed and zero on "
                 << parallel << " parallel";
    });

    criterion(10, "weight system unchanged by boundaries", 60, [](Check& c) {
        std::mt19937_64 rng(10);
        cubix::testing::GridComplex grid;
        cubix::testing::GridComplex torus{3};
        std::vector<ComplexPresentation> ks = {
            present(grid, cubix::testing::grid_cubes(3, 2, 3)).presentation,
            present(torus, cubix::testing::grid_cubes(2, 3, 2)).presentation,
            cubix::testing::grid_presentation(3, 2, {{0, 0}, {1, 0}, {2, 1}, {0, 1}}, true),
        };
        int trials = 0, nonzero = 0;
        while (trials < 50) {
            const auto& k = ks[trials % ks.size()];
            const int n = 1 + (trials / static_cast<int>(ks.size())) % (k.top_dim() - 1 > 0 ? k.top_dim() - 1 : 1);
            const auto fam = descend_space(k, n);
            c.require(!fam.obstruction && fam.dimension() > 0, "descent family");
            Vector coeffs(k.cubes(0).size(), 0);
            for (const auto& b : fam.basis) {
                const Rational w = cubix::testing::random_rational(rng);
                for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += w * b[i];
            }
            auto f = [&](PresCube v) { return coeffs[v.index]; };
            c.require(passed(is_degree_less_than(k, f, n + 1)), "descended function has degree <= n");
            Chain<PresCube> z(n), zp(n + 1);
            for (PresCube x : k.cubes(n))
                if (rng() % 3 == 0) z.add(x, cubix::testing::random_rational(rng));
            for (PresCube y : k.cubes(n + 1))
                if (rng() % 2 == 0) zp.add(y, cubix::testing::random_rational(rng));
            const Rational before = weight_system_value(k, f, z, n);
            const Rational after = weight_system_value(k, f, z + boundary(k, zp), n);
            c.require(before == after, "invariance under adding a boundary");
            nonzero += before != 0;
            ++trials;
        }
        c.require(nonzero > 0, "some weight values are nonzero");
        c.detail << trials << " chains, " << nonzero << " with nonzero weight";
    });

    std::cout << (failures ? "acceptance FAILED: " + std::to_string(failures) + " criteria" : "acceptance PASSED") << '\n';
    return failures ? 1 : 0;
}
