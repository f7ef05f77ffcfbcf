#pragma once

// Test-only reference computations, written independently of the library's
// elimination and face code paths.

#include <cubix/complex.hpp>
#include <cubix/presentation.hpp>
#include <cubix/rational.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cubix::testing {

using Dense = std::vector<std::vector<Rational>>;

/// Rank by textbook row reduction on a dense copy.
inline std::size_t dense_rank(Dense m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline Rational random_rational(std::mt19937_64& rng, int bound = 5, int max_den = 3) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, max_den);
    return make_rational(num(rng), den(rng));
}

/// Sparse-ish random matrix with entries in {−bound..bound}/{1..3}.
inline Dense random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.4) {
    std::bernoulli_distribution keep(density);
    Dense m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
        for (auto& v : row)
            if (keep(rng)) v = random_rational(rng);
    return m;
}

/// Square grid complex on {0..w}×{0..h}: unit squares [a,a+1]×[b,b+1] with
/// direction 1 = x, direction 2 = y. Only the squares listed in `squares`
/// (plus all grid edges and vertices) are included. With `wrap`, coordinates
/// are taken mod (w, h), giving a torus.
inline ComplexPresentation grid_presentation(int w, int h, const std::vector<std::pair<int, int>>& squares,
                                             bool wrap = false) {
    ComplexPresentation k(2);
    const int vx = wrap ? w : w + 1, vy = wrap ? h : h + 1;
    auto vid = [&](int a, int b) { return "v" + std::to_string(((a % vx) + vx) % vx) + "_" + std::to_string(((b % vy) + vy) % vy); };
    auto hid = [&](int a, int b) { return "h" + std::to_string(((a % vx) + vx) % vx) + "_" + std::to_string(((b % vy) + vy) % vy); };
    auto uid = [&](int a, int b) { return "u" + std::to_string(((a % vx) + vx) % vx) + "_" + std::to_string(((b % vy) + vy) % vy); };
    for (int a = 0; a < vx; ++a)
        for (int b = 0; b < vy; ++b) k.add_cube(vid(a, b), 0);
    // horizontal edge h(a,b): (a,b) -> (a+1,b); vertical u(a,b): (a,b) -> (a,b+1)
    for (int a = 0; a < (wrap ? w : w); ++a)
        for (int b = 0; b < vy; ++b) {
            auto e = k.add_cube(hid(a, b), 1);
            k.set_face(e, 1, Sign::minus, k.at(vid(a, b)));
            k.set_face(e, 1, Sign::plus, k.at(vid(a + 1, b)));
        }
    for (int a = 0; a < vx; ++a)
        for (int b = 0; b < (wrap ? h : h); ++b) {
            auto e = k.add_cube(uid(a, b), 1);
            k.set_face(e, 1, Sign::minus, k.at(vid(a, b)));
            k.set_face(e, 1, Sign::plus, k.at(vid(a, b + 1)));
        }
    for (auto [a, b] : squares) {
        auto s = k.add_cube("s" + std::to_string(a) + "_" + std::to_string(b), 2);
        // ∂ᵢ^ε fixes coordinate i at its ε end
        k.set_face(s, 1, Sign::minus, k.at(uid(a, b)));
        k.set_face(s, 1, Sign::plus, k.at(uid(a + 1, b)));
        k.set_face(s, 2, Sign::minus, k.at(hid(a, b)));
        k.set_face(s, 2, Sign::plus, k.at(hid(a, b + 1)));
    }
    return k;
}

/// Cubical lattice Z^d (optionally a torus with side `modulus`): a cube is a
/// corner plus an increasing list of directions; ∂ᵢ^ε drops the i-th direction,
/// moving the corner one step along it for ε = +.
struct GridCube {
    std::vector<int> corner;
    std::vector<int> dirs;
    auto operator<=>(const GridCube&) const = default;
};

struct GridComplex {
    using cube_type = GridCube;
    int modulus = 0;  // 0 = no wrap

    int dim(const GridCube& c) const { return static_cast<int>(c.dirs.size()); }

    GridCube face(const GridCube& c, int i, Sign s) const {
        if (i < 1 || i > dim(c)) throw ContractViolation("grid face index out of range");
        GridCube f = c;
        const int d = c.dirs[i - 1];
        f.dirs.erase(f.dirs.begin() + (i - 1));
        if (s == Sign::plus) {
            ++f.corner[d];
            if (modulus) f.corner[d] %= modulus;
        }
        return f;
    }
};

/// All cubes of the lattice box [0, side)^d with the given number of directions.
inline std::vector<GridCube> grid_cubes(int d, int side, int n) {
    std::vector<GridCube> out;
    std::vector<int> corner(d, 0);
    while (true) {
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            if (__builtin_popcount(mask) != n) continue;
            GridCube c{corner, {}};
            for (int k = 0; k < d; ++k)
                if (mask >> k & 1) c.dirs.push_back(k);
            out.push_back(c);
        }
        int k = 0;
        while (k < d && ++corner[k] == side) corner[k++] = 0;
        if (k == d) break;
    }
    return out;
}

}  // namespace cubix::testing

namespace cubix::testing {

struct EdgeSystemAnswer {
    bool consistent = false;
    std::size_t solution_dim = 0;
};

/// Solves g(∂⁺ᵢx) − g(∂⁻ᵢx) = f(x) over all n-cubes x by dense ranks of the
/// coefficient and augmented matrices.
template <class F>
EdgeSystemAnswer edge_system(const ComplexPresentation& k, int n, const F& f) {
    const auto& nodes = k.cubes(n - 1);
    std::map<PresCube, std::size_t> col;
    for (std::size_t c = 0; c < nodes.size(); ++c) col.emplace(nodes[c], c);
    Dense a, aug;
    for (PresCube x : k.cubes(n))
        for (int i = 1; i <= n; ++i) {
            std::vector<Rational> row(nodes.size() + 1);
            row[col.at(k.face(x, i, Sign::plus))] += 1;
            row[col.at(k.face(x, i, Sign::minus))] -= 1;
            row.back() = f(x);
            aug.push_back(row);
            row.pop_back();
            a.push_back(row);
        }
    const std::size_t r = a.empty() ? 0 : dense_rank(a);
    const std::size_t ra = aug.empty() ? 0 : dense_rank(aug);
    return {r == ra, nodes.size() - r};
}

}  // namespace cubix::testing
