#pragma once

// Semicubic complexes: the face-operator interface, chains with exact
// coefficients, the normalized boundary operator and vertex expansion.

#include <cubix/rational.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cubix {

enum class Sign : std::int8_t { minus = -1, plus = 1 };

constexpr Sign operator-(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign operator*(Sign a, Sign b) { return to_int(a) * to_int(b) > 0 ? Sign::plus : Sign::minus; }
inline constexpr Sign kSigns[2] = {Sign::plus, Sign::minus};

inline char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

inline Sign parse_sign(const std::string& s) {
    if (s == "+") return Sign::plus;
    if (s == "-") return Sign::minus;
    throw EncodingError("bad sign '" + s + "', expected \"+\" or \"-\"");
}

/// A complex supplies cube dimensions and the 2n face maps of every n-cube,
/// faces indexed 1..n. Cubes must be totally ordered by a canonical form so
/// that equal cubes merge in chains.
template <class K>
concept SemicubicComplex = requires(const K& k, const typename K::cube_type& x, int i, Sign s) {
    typename K::cube_type;
    { k.dim(x) } -> std::convertible_to<int>;
    { k.face(x, i, s) } -> std::convertible_to<typename K::cube_type>;
} && std::totally_ordered<typename K::cube_type>;

/// Formal finite linear combination of cubes of one dimension.
template <class Cube>
class Chain {
public:
    using Terms = std::map<Cube, Rational>;

    explicit Chain(int dim = 0) : dim_(dim) {}
    Chain(int dim, const Cube& c, const Rational& coef = 1) : dim_(dim) { add(c, coef); }

    int dim() const { return dim_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Rational coefficient(const Cube& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Chain& add(const Cube& c, const Rational& coef) {
        if (coef == 0) return *this;
        auto [it, inserted] = terms_.try_emplace(c, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    Chain& operator+=(const Chain& o) {
        require_same_dim(o);
        for (const auto& [c, v] : o.terms_) add(c, v);
        return *this;
    }
    Chain& operator-=(const Chain& o) {
        require_same_dim(o);
        for (const auto& [c, v] : o.terms_) add(c, -v);
        return *this;
    }
    Chain& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [c, v] : terms_) v *= s;
        return *this;
    }

    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator-(Chain a) { return a *= Rational(-1); }
    friend Chain operator*(const Rational& s, Chain a) { return a *= s; }
    friend Chain operator*(Chain a, const Rational& s) { return a *= s; }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    void require_same_dim(const Chain& o) const {
        if (o.dim_ != dim_)
            throw ContractViolation("chain dimension mismatch: " + std::to_string(dim_) + " vs " +
                                    std::to_string(o.dim_));
    }

    int dim_;
    Terms terms_;
};

template <class F, class Cube>
concept CubeFunction = requires(const F& f, const Cube& c) {
    { f(c) } -> std::convertible_to<Rational>;
};

/// Linear extension of a function on cubes to chains.
template <class Cube, CubeFunction<Cube> F>
Rational evaluate(const F& f, const Chain<Cube>& chain) {
    Rational total = 0;
    for (const auto& [c, v] : chain) total += v * Rational(f(c));
    return total;
}

template <SemicubicComplex K>
void check_face_index(const K& k, const typename K::cube_type& x, int i) {
    const int n = k.dim(x);
    if (i < 1 || i > n)
        throw ContractViolation("face index " + std::to_string(i) + " out of range 1.." +
                                std::to_string(n));
}

/// ∂c = (1/n) Σ_i (∂⁺_i − ∂⁻_i), extended linearly.
template <SemicubicComplex K>
Chain<typename K::cube_type> boundary(const K& k, const Chain<typename K::cube_type>& c) {
    const int n = c.dim();
    if (n < 1) throw DomainError("boundary of a 0-chain is undefined");
    Chain<typename K::cube_type> out(n - 1);
    const Rational scale(1, n);
    for (const auto& [x, v] : c) {
        for (int i = 1; i <= n; ++i) {
            out.add(k.face(x, i, Sign::plus), v * scale);
            out.add(k.face(x, i, Sign::minus), -v * scale);
        }
    }
    return out;
}

template <SemicubicComplex K>
Chain<typename K::cube_type> iterated_boundary(const K& k, Chain<typename K::cube_type> c, int times) {
    for (int t = 0; t < times; ++t) c = boundary(k, c);
    return c;
}

/// The vertex ∂^{ε₁}_1 ∂^{ε₂}_2 … ∂^{εₙ}_n x; pattern[0] is ε₁.
template <SemicubicComplex K>
typename K::cube_type vertex(const K& k, typename K::cube_type x, const std::vector<Sign>& pattern) {
    for (int i = static_cast<int>(pattern.size()); i >= 1; --i) x = k.face(x, i, pattern[i - 1]);
    return x;
}

/// Sign patterns of an n-cube in lexicographic order with + before −.
inline std::vector<std::vector<Sign>> sign_patterns(int n) {
    std::vector<std::vector<Sign>> out;
    const std::uint64_t count = std::uint64_t{1} << n;
    out.reserve(count);
    for (std::uint64_t m = 0; m < count; ++m) {
        std::vector<Sign> p(n);
        for (int i = 0; i < n; ++i) p[i] = (m >> (n - 1 - i)) & 1 ? Sign::minus : Sign::plus;
        out.push_back(std::move(p));
    }
    return out;
}

inline Sign pattern_sign(const std::vector<Sign>& p) {
    Sign s = Sign::plus;
    for (Sign e : p) s = s * e;
    return s;
}

/// Signs ε₁…εₙ of the 2ⁿ vertices of the standard n-cube.
struct VertexSignTable {
    int dim = 0;
    std::vector<std::pair<std::vector<Sign>, Sign>> entries;

    explicit VertexSignTable(int n) : dim(n) {
        for (auto& p : sign_patterns(n)) {
            Sign s = pattern_sign(p);
            entries.emplace_back(std::move(p), s);
        }
    }

    std::size_t count(Sign s) const {
        std::size_t c = 0;
        for (const auto& e : entries) c += e.second == s;
        return c;
    }
};

/// ∂ⁿ(x) = Σ ε₁…εₙ ∂^{ε₁}_1 … ∂^{εₙ}_n (x), coinciding vertices merged.
template <SemicubicComplex K>
Chain<typename K::cube_type> vertex_expansion(const K& k, const typename K::cube_type& x) {
    const int n = k.dim(x);
    Chain<typename K::cube_type> out(0);
    for (const auto& p : sign_patterns(n)) out.add(vertex(k, x, p), to_int(pattern_sign(p)));
    return out;
}

/// ∂ⁿ applied to an n-chain, cube by cube.
template <SemicubicComplex K>
Chain<typename K::cube_type> vertex_expansion(const K& k, const Chain<typename K::cube_type>& z) {
    Chain<typename K::cube_type> out(0);
    for (const auto& [x, v] : z) out += v * vertex_expansion(k, x);
    return out;
}

template <class Cube>
struct CommutationViolation {
    Cube cube;
    int i = 0;
    int j = 0;
    Sign eps1 = Sign::plus;
    Sign eps2 = Sign::plus;
    Cube lhs;  // ∂^{ε₁}_j ∂^{ε₂}_i x
    Cube rhs;  // ∂^{ε₂}_{i−1} ∂^{ε₁}_j x
};

template <class Cube>
struct ValidationReport {
    std::size_t cubes_checked = 0;
    std::size_t identities_checked = 0;
    std::vector<CommutationViolation<Cube>> violations;
    bool passed() const { return violations.empty(); }
};

/// Checks ∂^{ε₁}_j ∂^{ε₂}_i = ∂^{ε₂}_{i−1} ∂^{ε₁}_j for i > j on one cube.
template <SemicubicComplex K>
void check_commutation(const K& k, const typename K::cube_type& x,
                       ValidationReport<typename K::cube_type>& report) {
    const int n = k.dim(x);
    if (n < 2) throw ContractViolation("commutation check needs a cube of dimension >= 2");
    ++report.cubes_checked;
    for (int i = 2; i <= n; ++i) {
        for (Sign e2 : kSigns) {
            const auto fi = k.face(x, i, e2);
            for (int j = 1; j < i; ++j) {
                for (Sign e1 : kSigns) {
                    auto lhs = k.face(fi, j, e1);
                    auto rhs = k.face(k.face(x, j, e1), i - 1, e2);
                    ++report.identities_checked;
                    if (!(lhs == rhs))
                        report.violations.push_back({x, i, j, e1, e2, std::move(lhs), std::move(rhs)});
                }
            }
        }
    }
}

template <SemicubicComplex K, class Range>
ValidationReport<typename K::cube_type> validate_commutation(const K& k, const Range& sample) {
    ValidationReport<typename K::cube_type> report;
    for (const auto& x : sample) check_commutation(k, x, report);
    return report;
}

}  // namespace cubix
