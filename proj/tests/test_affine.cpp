#include <cubix/affine.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace cubix;

namespace {

Point pt(std::initializer_list<int> xs) {
    Point p;
    for (int x : xs) p.push_back(x);
    return p;
}

Polynomial monomial(std::size_t d, std::initializer_list<int> exp, const Rational& c) {
    Polynomial p(d);
    Polynomial::Exponents e;
    for (int x : exp) e.push_back(static_cast<std::uint16_t>(x));
    return p.add_term(e, c);
}

// Random polynomial in d variables of total degree exactly `deg`.
Polynomial random_polynomial(std::mt19937_64& rng, std::size_t d, int deg) {
    Polynomial p(d);
    std::uniform_int_distribution<int> expo(0, deg);
    for (int t = 0; t < 6; ++t) {
        Polynomial::Exponents e(d, 0);
        int left = expo(rng);
        for (std::size_t k = 0; k + 1 < d && left > 0; ++k) {
            e[k] = std::uniform_int_distribution<int>(0, left)(rng);
            left -= e[k];
        }
        e[d - 1] += left;
        p.add_term(e, cubix::testing::random_rational(rng));
    }
    Polynomial::Exponents top(d, 0);
    top[rng() % d] = deg;
    p.add_term(top, 1 + p.coefficient(top) * p.coefficient(top));  // nonzero leading term
    return p;
}

AffineCube random_cube(std::mt19937_64& rng, std::size_t d, int n) {
    AffineCube c{Point(d), std::vector<Point>(n, Point(d))};
    for (auto& x : c.base) x = cubix::testing::random_rational(rng);
    for (auto& e : c.edges)
        for (auto& x : e) x = cubix::testing::random_rational(rng);
    return c;
}

// Forward sum Σ_{σ∈{0,1}ⁿ} (−1)^|σ| f(x₀ + Σσᵢyᵢ), written out independently.
Rational forward_sum(const Polynomial& f, const Point& x0, const std::vector<Point>& y) {
    const std::size_t n = y.size();
    Rational total = 0;
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
        Point p = x0;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1)
                for (std::size_t j = 0; j < p.size(); ++j) p[j] += y[i][j];
        total += (__builtin_popcountll(m) % 2 ? -1 : 1) * f.evaluate(p);
    }
    return total;
}

}  // namespace

TEST(AffineFace, Examples) {
    AffineComplex k{1};
    const AffineCube seg{pt({0}), {pt({1})}};
    EXPECT_EQ(k.face(seg, 1, Sign::plus), (AffineCube{pt({1}), {}}));
    EXPECT_EQ(k.face(seg, 1, Sign::minus), (AffineCube{pt({-1}), {}}));
    const AffineCube flat{pt({3}), {pt({0})}};
    EXPECT_EQ(k.face(flat, 1, Sign::plus), k.face(flat, 1, Sign::minus));
    EXPECT_THROW(k.face(seg, 2, Sign::plus), ContractViolation);

    AffineComplex k2{2};
    const AffineCube sq{pt({0, 0}), {pt({1, 0}), pt({0, 1})}};
    EXPECT_EQ(vertex(k2, sq, {Sign::plus, Sign::plus}), (AffineCube{pt({1, 1}), {}}));
}

TEST(AffineFace, Commutation) {
    std::mt19937_64 rng(5);
    for (std::size_t d = 1; d <= 3; ++d) {
        AffineComplex k{d};
        std::vector<AffineCube> sample;
        for (int t = 0; t < 20; ++t) sample.push_back(random_cube(rng, d, 2 + t % 3));
        EXPECT_TRUE(validate_commutation(k, sample).passed());
    }
}

TEST(AlternatingSum, Examples) {
    const auto x2 = monomial(1, {2}, 1);
    EXPECT_EQ(alternating_sum(x2, AffineCube{pt({0}), {pt({1}), pt({1})}}), 8);
    EXPECT_EQ(alternating_sum(x2, AffineCube{pt({2}), {pt({1}), pt({3}), pt({-5})}}), 0);
    const auto cubic = monomial(1, {3}, 1) + monomial(1, {1}, 2);
    EXPECT_EQ(alternating_sum(cubic, AffineCube{pt({7}), {pt({1}), pt({0})}}), 0);
    EXPECT_THROW(alternating_sum(x2, AffineCube{pt({0, 0}), {}}), ContractViolation);
}

TEST(DegreeTest, Examples) {
    const auto f = monomial(2, {3, 0}, 1) + monomial(2, {0, 1}, 1);  // x³ + y
    EXPECT_TRUE(passed(polynomial_degree_test(f, 4, 20, 0)));
    const auto r = polynomial_degree_test(f, 3, 20, 0);
    ASSERT_FALSE(passed(r));
    const auto& w = std::get<Counterexample<AffineCube>>(r);
    EXPECT_EQ(alternating_sum(f, w.cube), w.value);
    // the x-axis cube comes first: 2³·3!·(product of edge lengths)
    ASSERT_EQ(w.cube.edges.size(), 3u);
    Rational prod = 48;
    for (const auto& e : w.cube.edges) {
        EXPECT_EQ(e[1], 0);
        prod *= e[0];
    }
    EXPECT_EQ(w.value, prod);

    EXPECT_TRUE(passed(polynomial_degree_test(Polynomial::constant(2, 5), 1, 5, 1)));
    EXPECT_THROW(polynomial_degree_test(f, 3, 0, 0), ContractViolation);
}

TEST(DegreeTest, Deterministic) {
    const auto f = monomial(3, {1, 1, 1}, 2);
    const auto a = polynomial_degree_test(f, 3, 10, 42), b = polynomial_degree_test(f, 3, 10, 42);
    ASSERT_FALSE(passed(a));
    EXPECT_EQ(std::get<1>(a).cube, std::get<1>(b).cube);
}

TEST(Symbolic, Examples) {
    const auto x2 = monomial(1, {2}, 1);
    EXPECT_TRUE(symbolic_alternation(x2, 3).is_zero());
    const auto s2 = symbolic_alternation(x2, 2);
    EXPECT_EQ(s2.poly, monomial(3, {0, 1, 1}, 8));
    EXPECT_EQ(s2.to_string(), "8*x1*x2");
    EXPECT_TRUE(symbolic_alternation(monomial(2, {1, 1}, 1), 3).is_zero());
    EXPECT_THROW(symbolic_alternation(x2, 0), ContractViolation);
}

// Generic linear and quadratic f with symbolic coefficients: the 4-term and
// 8-term forward identities vanish as polynomials.
TEST(Symbolic, ForwardIdentitiesWithGenericCoefficients) {
    // variables: coefficients c (1 + 2 linear + 3 quadratic), then x0, x1, x2, x3 in R²
    const std::size_t nc = 6, nv = nc + 8;
    auto var = [&](std::size_t k) { return Polynomial::variable(nv, k); };
    auto point = [&](std::initializer_list<int> which) {
        std::vector<Polynomial> p{Polynomial(nv), Polynomial(nv)};
        for (int w : which)
            for (int j = 0; j < 2; ++j) p[j] += var(nc + 2 * w + j);
        return p;
    };
    auto linear = [&](const std::vector<Polynomial>& p) { return var(0) + var(1) * p[0] + var(2) * p[1]; };
    auto quadratic = [&](const std::vector<Polynomial>& p) {
        return linear(p) + var(3) * p[0] * p[0] + var(4) * p[0] * p[1] + var(5) * p[1] * p[1];
    };
    const Polynomial four = linear(point({0, 1, 2})) - linear(point({0, 1})) - linear(point({0, 2})) + linear(point({0}));
    EXPECT_TRUE(four.is_zero());
    const Polynomial eight = quadratic(point({0, 1, 2, 3})) - quadratic(point({0, 1, 2})) -
                             quadratic(point({0, 1, 3})) - quadratic(point({0, 2, 3})) + quadratic(point({0, 1})) +
                             quadratic(point({0, 2})) + quadratic(point({0, 3})) - quadratic(point({0}));
    EXPECT_TRUE(eight.is_zero());
    // one level lower the same sums do not vanish
    const Polynomial four_q = quadratic(point({0, 1, 2})) - quadratic(point({0, 1})) - quadratic(point({0, 2})) +
                              quadratic(point({0}));
    EXPECT_FALSE(four_q.is_zero());
}

// Symbolic expansion agrees with direct evaluation, in both forms.
TEST(Symbolic, MatchesNumericSums) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const int deg = 1 + trial % 4, n = 1 + (trial / 3) % 4;
        const auto f = random_polynomial(rng, d, deg);
        const auto c = symbolic_alternation(f, n);
        const auto fw = symbolic_alternation(f, n, DifferenceForm::forward);
        for (int t = 0; t < 3; ++t) {
            const auto cube = random_cube(rng, d, n);
            std::vector<Rational> params = cube.base;
            for (const auto& e : cube.edges) params.insert(params.end(), e.begin(), e.end());
            ASSERT_EQ(c.poly.evaluate(params), alternating_sum(f, cube));
            ASSERT_EQ(fw.poly.evaluate(params), forward_sum(f, cube.base, cube.edges));
        }
        EXPECT_EQ(c.is_zero(), fw.is_zero());
        EXPECT_EQ(c.is_zero(), deg < n);
    }
}

TEST(Symbolic, WitnessesForExactDegree) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const int deg = 1 + trial % 5;
        const auto f = random_polynomial(rng, d, deg);
        ASSERT_EQ(f.degree(), deg);
        EXPECT_TRUE(symbolic_alternation(f, deg + 1).is_zero());
        for (auto form : {DifferenceForm::central, DifferenceForm::forward}) {
            const auto s = symbolic_alternation(f, deg, form);
            ASSERT_FALSE(s.is_zero());
            const auto w = symbolic_witness(s, trial);
            ASSERT_TRUE(w);
            EXPECT_NE(w->value, 0);
            EXPECT_EQ(alternating_sum(f, w->cube), w->value);
        }
    }
}

TEST(GoodAxioms, Involution) {
    std::mt19937_64 rng(31);
    AffineComplex k{2};
    const auto f = random_polynomial(rng, 2, 3);
    for (int t = 0; t < 20; ++t) {
        const int n = 1 + t % 4;
        const auto c = random_cube(rng, 2, n);
        for (int i = 1; i <= n; ++i) {
            const auto j = involution(c, i);
            EXPECT_EQ(involution(j, i), c);
            for (Sign s : kSigns) {
                EXPECT_EQ(k.face(j, i, s), k.face(c, i, -s));
                for (int m = 1; m < i; ++m) EXPECT_EQ(k.face(j, m, s), involution(k.face(c, m, s), i - 1));
                for (int m = i + 1; m <= n; ++m) EXPECT_EQ(k.face(j, m, s), involution(k.face(c, m, s), i));
            }
            EXPECT_EQ(alternating_sum(f, j), -alternating_sum(f, c));
        }
    }
    EXPECT_THROW(involution(AffineCube{pt({0}), {}}, 1), ContractViolation);
}

TEST(GoodAxioms, Composition) {
    AffineComplex k{1};
    const AffineCube x{{Rational(1, 2)}, {{Rational(1, 2)}}}, y{{Rational(3, 2)}, {{Rational(1, 2)}}};
    const auto xy = compose(x, y, 1);
    EXPECT_EQ(xy, (AffineCube{pt({1}), {pt({1})}}));
    EXPECT_EQ(k.face(xy, 1, Sign::minus), k.face(x, 1, Sign::minus));
    EXPECT_EQ(k.face(xy, 1, Sign::plus), k.face(y, 1, Sign::plus));
    EXPECT_THROW(compose(y, x, 1), ContractViolation);

    // 2-cubes stacked along direction 2; linear f is additive under composition
    std::mt19937_64 rng(37);
    AffineComplex k2{2};
    for (int t = 0; t < 20; ++t) {
        const auto a = random_cube(rng, 2, 2);
        AffineCube b = a;
        b.edges[1] = random_cube(rng, 2, 1).edges[0];
        b.base = detail::axpy(detail::axpy(a.base, 1, a.edges[1]), 1, b.edges[1]);
        const int i = 2;
        ASSERT_EQ(k2.face(a, i, Sign::plus), k2.face(b, i, Sign::minus));
        const auto ab = compose(a, b, i);
        EXPECT_EQ(k2.face(ab, i, Sign::minus), k2.face(a, i, Sign::minus));
        EXPECT_EQ(k2.face(ab, i, Sign::plus), k2.face(b, i, Sign::plus));
        const auto lin = random_polynomial(rng, 2, 1);
        EXPECT_EQ(alternating_sum(lin, ab), alternating_sum(lin, a) + alternating_sum(lin, b));
        // along a 1-cube the sums telescope for any f
        const auto f = random_polynomial(rng, 2, 4);
        const AffineCube s = k2.face(a, 1, Sign::plus), u = k2.face(b, 1, Sign::plus);
        EXPECT_EQ(alternating_sum(f, compose(s, u, 1)), alternating_sum(f, s) + alternating_sum(f, u));
    }
}

TEST(GoodAxioms, Product) {
    AffineComplex k{2};
    const AffineCube x{pt({1, 1}), {pt({1, 0})}};            // corner (0, 1)
    const AffineCube y{pt({1, 3}), {pt({1, 1}), pt({0, 1})}};  // corner (0, 1)
    const auto xy = product(x, y);
    EXPECT_EQ(k.dim(xy), 3);
    EXPECT_EQ(k.face(xy, 1, Sign::minus), y);
    EXPECT_EQ(k.face(k.face(xy, 3, Sign::minus), 2, Sign::minus), x);
    EXPECT_EQ(corner(xy), corner(x));
    EXPECT_THROW(product(x, AffineCube{pt({0, 0}), {}}), ContractViolation);

    const auto all = good_axioms(x, y, 1);
    EXPECT_TRUE(all.product);
    EXPECT_FALSE(all.composition);
    EXPECT_EQ(all.involution, involution(x, 1));
}

TEST(AffineJson, RoundTrip) {
    const auto f = monomial(2, {3, 0}, make_rational(-1, 2)) + monomial(2, {0, 1}, 1);
    EXPECT_EQ(polynomial_from_json(to_json(f)), f);
    const auto j = nlohmann::json::parse(R"({"dim":1,"monomials":[{"exp":[2],"coef":"1/1"}]})");
    EXPECT_EQ(polynomial_from_json(j), monomial(1, {2}, 1));
    EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"dim":2,"monomials":[{"exp":[2],"coef":"1"}]})")),
                 EncodingError);
    EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"dim":1,"monomials":[{"exp":[2],"coef":0.5}]})")),
                 EncodingError);
    const AffineCube c{{make_rational(1, 3)}, {pt({2})}};
    EXPECT_EQ(affine_cube_from_json(to_json(c)), c);
}

TEST(Polynomial, Arithmetic) {
    const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    const auto p = (x + y).pow(3);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.evaluate({Rational(1), Rational(2)}), 27);
    EXPECT_EQ(Polynomial(2).degree(), -1);
    EXPECT_EQ((x - x).is_zero(), true);
    // substitution x -> y, y -> x + 1
    const auto q = (x * y).substitute({y, x + Polynomial::constant(2, 1)});
    EXPECT_EQ(q, y * x + y);
    EXPECT_THROW(x + Polynomial::variable(3, 0), ContractViolation);
}
