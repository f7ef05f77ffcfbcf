#pragma once

// Finite-type functions on semicubic complexes: degree tests, n-equivalence
// witnesses, chord-diagram spaces and weight systems.

#include <cubix/complex.hpp>
#include <cubix/linalg.hpp>
#include <cubix/presentation.hpp>

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

namespace cubix {

struct Pass {
    std::size_t cubes_checked = 0;
};

template <class Cube>
struct Counterexample {
    Cube cube;
    Rational value;  // f(∂ⁿ cube), nonzero
};

template <class Cube>
using DegreeResult = std::variant<Pass, Counterexample<Cube>>;

template <class Cube>
bool passed(const DegreeResult<Cube>& r) {
    return std::holds_alternative<Pass>(r);
}

/// Pass iff f(∂ⁿ x) = 0 for every n-cube x in `cubes`; stops at the first
/// counterexample.
template <SemicubicComplex K, class Range, class F>
DegreeResult<typename K::cube_type> is_degree_less_than(const K& k, const F& f, int n,
                                                        const Range& cubes) {
    Pass pass;
    for (const auto& x : cubes) {
        if (k.dim(x) != n)
            throw ContractViolation("degree test: cube of dimension " + std::to_string(k.dim(x)) +
                                    " in a sample of " + std::to_string(n) + "-cubes");
        const Rational v = evaluate<typename K::cube_type>(f, vertex_expansion(k, x));
        ++pass.cubes_checked;
        if (v != 0) return Counterexample<typename K::cube_type>{x, v};
    }
    return pass;
}

template <class F>
DegreeResult<PresCube> is_degree_less_than(const ComplexPresentation& k, const F& f, int n) {
    if (n > k.top_dim())
        throw DomainError("cannot certify degree < " + std::to_string(n) +
                          ": presentation stops at dimension " + std::to_string(k.top_dim()));
    if (n < 0) throw DomainError("degree bound must be >= 0");
    return is_degree_less_than(k, f, n, k.cubes(n));
}

/// ∂ⁿ⁺¹(z) = y − x exactly, for x, y of equal dimension k and z of
/// dimension n + k + 1.
template <SemicubicComplex K>
bool verify_n_equivalence_witness(const K& k, const typename K::cube_type& x,
                                  const typename K::cube_type& y,
                                  const Chain<typename K::cube_type>& z, int n) {
    const int kx = k.dim(x);
    if (k.dim(y) != kx) throw ContractViolation("n-equivalence: x and y differ in dimension");
    if (n < 0) throw ContractViolation("n-equivalence: n must be >= 0");
    if (z.dim() != n + kx + 1)
        throw ContractViolation("n-equivalence: witness has dimension " + std::to_string(z.dim()) +
                                ", expected " + std::to_string(n + kx + 1));
    using Cube = typename K::cube_type;
    return iterated_boundary(k, z, n + 1) == Chain<Cube>(kx, y) - Chain<Cube>(kx, x);
}

/// All vertices of z equal x except the all-plus (sink) vertex, which is y.
template <SemicubicComplex K>
bool is_goussarov_witness(const K& k, const typename K::cube_type& z,
                          const typename K::cube_type& x, const typename K::cube_type& y) {
    const int n = k.dim(z);
    if (n < 1) return false;
    for (const auto& p : sign_patterns(n)) {
        const bool sink = std::all_of(p.begin(), p.end(), [](Sign s) { return s == Sign::plus; });
        if (!(vertex(k, z, p) == (sink ? y : x))) return false;
    }
    return true;
}

/// f(x) == f(y), given a valid n-equivalence witness z between 0-cubes and f
/// vanishing on ∂ⁿ⁺¹ of every cube in z.
template <SemicubicComplex K, class F>
bool constancy_check(const K& k, const F& f, const typename K::cube_type& x,
                     const typename K::cube_type& y, const Chain<typename K::cube_type>& z, int n) {
    if (k.dim(x) != 0 || k.dim(y) != 0)
        throw ContractViolation("constancy check is stated for 0-cubes");
    if (!verify_n_equivalence_witness(k, x, y, z, n))
        throw ContractViolation("constancy check: z is not an n-equivalence witness");
    for (const auto& [c, v] : z)
        if (evaluate<typename K::cube_type>(f, vertex_expansion(k, c)) != 0)
            throw ContractViolation("constancy check: f is not of degree <= n on the witness");
    return Rational(f(x)) == Rational(f(y));
}

/// Representatives of a basis of Cₙ / ∂(Cₙ₊₁), as singleton chains of
/// n-cubes not hit by a pivot of the reduced image of ∂.
inline std::vector<Chain<PresCube>> chord_space_basis(const ComplexPresentation& k, int n) {
    if (n < 0 || n > k.top_dim())
        throw DomainError("chord space H_" + std::to_string(n) + " needs X_" + std::to_string(n) +
                          " in the presentation");
    const auto& low = k.cubes(n);
    const auto& high = k.cubes(n + 1);
    std::map<PresCube, std::size_t> col;
    for (std::size_t c = 0; c < low.size(); ++c) col[low[c]] = c;
    SparseMatrix image(high.size(), low.size());
    for (std::size_t r = 0; r < high.size(); ++r) {
        const auto b = boundary(k, Chain<PresCube>(n + 1, high[r]));
        for (const auto& [c, v] : b) image.add_to(r, col.at(c), v);
    }
    const auto e = detail::reduce(image, nullptr, false);
    std::vector<bool> pivot(low.size(), false);
    for (auto [c, r] : e.pivots) pivot[c] = true;
    std::vector<Chain<PresCube>> basis;
    for (std::size_t c = 0; c < low.size(); ++c)
        if (!pivot[c]) basis.emplace_back(n, low[c]);
    return basis;
}

/// f(∂ⁿ z) for an n-chain z.
template <SemicubicComplex K, class F>
Rational weight_system_value(const K& k, const F& f, const Chain<typename K::cube_type>& z, int n) {
    if (z.dim() != n) throw ContractViolation("weight system: chain dimension != n");
    return evaluate<typename K::cube_type>(f, vertex_expansion(k, z));
}

}  // namespace cubix
