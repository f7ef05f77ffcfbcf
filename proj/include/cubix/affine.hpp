#pragma once

// The cubic structure on Q^d given by affine maps of [−1,1]ⁿ: a cube is a base
// point x₀ and edge vectors x₁..xₙ, with vertices x₀ + Σ σᵢxᵢ.

#include <cubix/complex.hpp>
#include <cubix/finite_type.hpp>
#include <cubix/polynomial.hpp>

#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cubix {

using Point = std::vector<Rational>;

struct AffineCube {
    Point base;
    std::vector<Point> edges;

    friend bool operator==(const AffineCube& a, const AffineCube& b) {
        return a.base == b.base && a.edges == b.edges;
    }
    friend std::weak_ordering operator<=>(const AffineCube& a, const AffineCube& b) {
        if (a.base != b.base) return a.base < b.base ? std::weak_ordering::less : std::weak_ordering::greater;
        if (a.edges == b.edges) return std::weak_ordering::equivalent;
        return a.edges < b.edges ? std::weak_ordering::less : std::weak_ordering::greater;
    }
};

namespace detail {
inline Point axpy(const Point& x, int s, const Point& y) {
    Point out = x;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += s * y[k];
    return out;
}
}  // namespace detail

/// Cubes in Q^d.
struct AffineComplex {
    using cube_type = AffineCube;
    std::size_t d = 1;

    int dim(const AffineCube& c) const { return static_cast<int>(c.edges.size()); }

    AffineCube face(const AffineCube& c, int i, Sign s) const {
        check_face_index(*this, c, i);
        AffineCube f;
        f.base = detail::axpy(c.base, to_int(s), c.edges[i - 1]);
        f.edges = c.edges;
        f.edges.erase(f.edges.begin() + (i - 1));
        return f;
    }

    void check(const AffineCube& c) const {
        if (c.base.size() != d) throw ContractViolation("cube base is not in Q^" + std::to_string(d));
        for (const auto& e : c.edges)
            if (e.size() != d) throw ContractViolation("cube edge is not in Q^" + std::to_string(d));
    }
};

/// Σ_σ σ₁…σₙ f(x₀ + Σ σᵢxᵢ), i.e. f on the vertex expansion of c.
inline Rational alternating_sum(const Polynomial& f, const AffineCube& c) {
    const AffineComplex k{f.nvars()};
    k.check(c);
    return evaluate<AffineCube>([&](const AffineCube& v) { return f.evaluate(v.base); }, vertex_expansion(k, c));
}

namespace detail {
inline Rational sample_coordinate(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-10, 10), den(1, 3);
    return make_rational(num(rng), den(rng));
}

inline Point sample_point(std::mt19937_64& rng, std::size_t d) {
    Point p(d);
    for (auto& x : p) x = sample_coordinate(rng);
    return p;
}
}  // namespace detail

/// The cubes tried by polynomial_degree_test: for each axis one cube with all
/// n edges along it, then `trials` cubes with coordinates in {−10..10}/{1,2,3}.
inline std::vector<AffineCube> sample_cubes(std::size_t d, int n, std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<AffineCube> out;
    for (std::size_t axis = 0; axis < d; ++axis) {
        AffineCube c{detail::sample_point(rng, d), {}};
        for (int i = 0; i < n; ++i) {
            Point e(d);
            std::uniform_int_distribution<int> step(1, 3);
            e[axis] = step(rng);
            c.edges.push_back(e);
        }
        out.push_back(std::move(c));
    }
    for (std::size_t t = 0; t < trials; ++t) {
        AffineCube c{detail::sample_point(rng, d), {}};
        for (int i = 0; i < n; ++i) c.edges.push_back(detail::sample_point(rng, d));
        out.push_back(std::move(c));
    }
    return out;
}

/// Pass if every sampled n-cube has alternating sum 0, else the first witness.
/// deg f < n always passes; a pass for deg f >= n is possible only through
/// unlucky sampling, see symbolic_alternation for the exact test.
inline DegreeResult<AffineCube> polynomial_degree_test(const Polynomial& f, int n, std::size_t trials,
                                                       std::uint64_t seed) {
    if (trials < 1) throw ContractViolation("polynomial degree test needs trials >= 1");
    if (n < 0) throw ContractViolation("degree bound must be >= 0");
    const AffineComplex k{f.nvars()};
    return is_degree_less_than(k, [&](const AffineCube& v) { return f.evaluate(v.base); }, n,
                               sample_cubes(f.nvars(), n, trials, seed));
}

enum class DifferenceForm { central, forward };

/// The alternating sum as a polynomial in the cube parameters. Variables are
/// ordered base coordinates first, then edge 1, ..., edge n, each in d
/// coordinates.
struct SymbolicAlternation {
    std::size_t d = 0;
    int n = 0;
    DifferenceForm form = DifferenceForm::central;
    Polynomial poly;
    std::vector<std::string> names;

    bool is_zero() const { return poly.is_zero(); }
    std::string to_string() const { return poly.to_string(names); }

    /// Cube with the given parameter values (variable order as above).
    AffineCube cube_at(const std::vector<Rational>& params) const {
        AffineCube c{Point(params.begin(), params.begin() + d), {}};
        for (int i = 1; i <= n; ++i) c.edges.emplace_back(params.begin() + i * d, params.begin() + (i + 1) * d);
        return c;
    }
};

inline std::vector<std::string> cube_parameter_names(std::size_t d, int n) {
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            names.push_back(d == 1 ? "x" + std::to_string(i) : "x" + std::to_string(i) + "_" + std::to_string(j + 1));
    return names;
}

/// Expands f(x₀ + Σ yᵢ) once. In the central form Σ_σ σ₁…σₙ f(x₀ + Σσᵢyᵢ) a
/// monomial survives iff its degree in every edge yᵢ is odd, and then with
/// weight 2ⁿ; in the forward form Σ_{σ∈{0,1}ⁿ} (−1)^|σ| f(x₀ + Σσᵢyᵢ) iff every
/// edge degree is positive, with weight (−1)ⁿ.
inline SymbolicAlternation symbolic_alternation(const Polynomial& f, int n,
                                                DifferenceForm form = DifferenceForm::central) {
    if (n < 1) throw ContractViolation("symbolic alternation needs n >= 1");
    const std::size_t d = f.nvars();
    const std::size_t nv = d * (n + 1);
    std::vector<Polynomial> images;
    for (std::size_t j = 0; j < d; ++j) {
        Polynomial l = Polynomial::variable(nv, j);
        for (int i = 1; i <= n; ++i) l += Polynomial::variable(nv, i * d + j);
        images.push_back(std::move(l));
    }
    const Polynomial full = f.substitute(images);
    auto group_degree = [&](const Polynomial::Exponents& e, int i) {
        int s = 0;
        for (std::size_t j = 0; j < d; ++j) s += e[i * d + j];
        return s;
    };
    SymbolicAlternation out{d, n, form, Polynomial(nv), cube_parameter_names(d, n)};
    if (form == DifferenceForm::central) {
        out.poly = full.filter([&](const auto& e) {
            for (int i = 1; i <= n; ++i)
                if (group_degree(e, i) % 2 == 0) return false;
            return true;
        });
        out.poly *= Rational(Integer(1) << n);
    } else {
        out.poly = full.filter([&](const auto& e) {
            for (int i = 1; i <= n; ++i)
                if (group_degree(e, i) == 0) return false;
            return true;
        });
        out.poly *= Rational(n % 2 ? -1 : 1);
    }
    return out;
}

/// A cube on which a nonzero symbolic alternation does not vanish, found by
/// seeded search over small integer parameters.
inline std::optional<Counterexample<AffineCube>> symbolic_witness(const SymbolicAlternation& s, std::uint64_t seed = 0,
                                                                  int attempts = 1000) {
    if (s.is_zero()) return std::nullopt;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-5, 5);
    for (int a = 0; a < attempts; ++a) {
        std::vector<Rational> p(s.poly.nvars());
        for (auto& x : p) x = coord(rng);
        Rational v = s.poly.evaluate(p);
        if (v != 0) {
            AffineCube c = s.cube_at(p);
            if (s.form == DifferenceForm::forward) {
                // forward parameters (x₀, yᵢ) as a central cube: base x₀ + Σyᵢ/2, edges yᵢ/2
                for (auto& e : c.edges)
                    for (std::size_t j = 0; j < s.d; ++j) {
                        e[j] /= 2;
                        c.base[j] += e[j];
                    }
                if (s.n % 2) v = -v;
            }
            return Counterexample<AffineCube>{c, v};
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------- good axioms

/// Jᵢ: reverses direction i.
inline AffineCube involution(const AffineCube& c, int i) {
    if (i < 1 || i > static_cast<int>(c.edges.size()))
        throw ContractViolation("involution index " + std::to_string(i) + " out of range");
    AffineCube out = c;
    for (auto& x : out.edges[i - 1]) x = -x;
    return out;
}

/// x ∘ y along direction i, defined when ∂⁺ᵢx = ∂⁻ᵢy; spans from ∂⁻ᵢx to ∂⁺ᵢy.
inline AffineCube compose(const AffineCube& x, const AffineCube& y, int i) {
    const AffineComplex k{x.base.size()};
    k.check(x);
    k.check(y);
    if (x.edges.size() != y.edges.size()) throw ContractViolation("compose: cubes differ in dimension");
    if (!(k.face(x, i, Sign::plus) == k.face(y, i, Sign::minus)))
        throw ContractViolation("compose: the + face of the first cube in direction " + std::to_string(i) +
                                " is not the − face of the second");
    AffineCube out = x;
    out.base = detail::axpy(x.base, 1, y.edges[i - 1]);
    out.edges[i - 1] = detail::axpy(x.edges[i - 1], 1, y.edges[i - 1]);
    return out;
}

/// All-minus vertex x₀ − Σ xᵢ.
inline Point corner(const AffineCube& c) {
    Point p = c.base;
    for (const auto& e : c.edges) p = detail::axpy(p, -1, e);
    return p;
}

/// xy with the edges of x first, defined when x and y share the all-minus
/// vertex; collapsing the x directions to − gives y and vice versa.
inline AffineCube product(const AffineCube& x, const AffineCube& y) {
    const AffineComplex k{x.base.size()};
    k.check(x);
    k.check(y);
    if (corner(x) != corner(y)) throw ContractViolation("product: cubes do not share their all-minus vertex");
    AffineCube out{y.base, x.edges};
    for (const auto& e : x.edges) out.base = detail::axpy(out.base, 1, e);
    out.edges.insert(out.edges.end(), y.edges.begin(), y.edges.end());
    return out;
}

struct GoodAxioms {
    AffineCube involution;
    std::optional<AffineCube> composition;  // empty when the faces do not match
    std::optional<AffineCube> product;      // empty when the corners differ
};

inline GoodAxioms good_axioms(const AffineCube& c1, const AffineCube& c2, int i) {
    GoodAxioms out{involution(c1, i), std::nullopt, std::nullopt};
    try {
        out.composition = compose(c1, c2, i);
    } catch (const ContractViolation&) {
    }
    if (corner(c1) == corner(c2)) out.product = product(c1, c2);
    return out;
}

// ------------------------------------------------------------- JSON

inline nlohmann::json to_json(const AffineCube& c) {
    auto pt = [](const Point& p) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : p) a.push_back(to_string(x));
        return a;
    };
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : c.edges) edges.push_back(pt(e));
    return {{"base", pt(c.base)}, {"edges", edges}};
}

inline AffineCube affine_cube_from_json(const nlohmann::json& j) {
    try {
        auto pt = [](const nlohmann::json& a) {
            Point p;
            for (const auto& x : a) p.push_back(detail::json_rational(x));
            return p;
        };
        AffineCube c{pt(j.at("base")), {}};
        for (const auto& e : j.at("edges")) c.edges.push_back(pt(e));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw EncodingError(std::string("affine cube JSON: ") + e.what());
    }
}

}  // namespace cubix
