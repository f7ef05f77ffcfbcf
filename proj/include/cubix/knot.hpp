#pragma once

// Singular knot diagrams as signed Gauss codes, their resolutions, and a
// Conway-coefficient oracle computed from the Wirtinger presentation.

#include <cubix/complex.hpp>
#include <cubix/finite_type.hpp>
#include <cubix/linalg.hpp>

#include <json.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace cubix {

enum class CrossingKind : std::int8_t { neg = -1, singular = 0, pos = 1 };

struct Crossing {
    std::string id;
    CrossingKind kind = CrossingKind::pos;
    int order = 0;                    // 1..n for singular crossings
    Sign first_over_sign = Sign::plus;  // sign when the first-traversed strand goes over
    auto operator<=>(const Crossing&) const = default;
};

enum class Strand : std::int8_t { under = 0, over = 1, singular = 2 };

struct Passage {
    int crossing = 0;  // index into crossings
    Strand strand = Strand::over;
    auto operator<=>(const Passage&) const = default;
};

/// Closed oriented knot diagram: a cyclic traversal meeting every crossing
/// twice. Ordinary crossings are passed once over and once under; singular
/// ones twice as `singular`.
class SingularDiagram {
public:
    SingularDiagram() = default;
    SingularDiagram(std::vector<Crossing> crossings, std::vector<Passage> traversal)
        : crossings_(std::move(crossings)), traversal_(std::move(traversal)) {
        validate();
    }

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<Passage>& traversal() const { return traversal_; }
    int singular_count() const {
        return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(),
                                              [](const Crossing& c) { return c.kind == CrossingKind::singular; }));
    }
    int crossing_count() const { return static_cast<int>(crossings_.size()); }
    int writhe() const {
        int w = 0;
        for (const auto& c : crossings_) w += static_cast<int>(c.kind);
        return w;
    }
    /// Index of the crossing with singular order i.
    int singular_index(int i) const {
        for (int c = 0; c < crossing_count(); ++c)
            if (crossings_[c].kind == CrossingKind::singular && crossings_[c].order == i) return c;
        throw ContractViolation("no singular crossing of order " + std::to_string(i));
    }

    auto operator<=>(const SingularDiagram&) const = default;

private:
    friend SingularDiagram resolve(const SingularDiagram&, int, Sign);

    void validate() const {
        const int n = crossing_count();
        std::vector<std::vector<int>> seen(n);
        for (int p = 0; p < static_cast<int>(traversal_.size()); ++p) {
            const auto& ps = traversal_[p];
            if (ps.crossing < 0 || ps.crossing >= n) throw EncodingError("traversal names an unknown crossing");
            seen[ps.crossing].push_back(p);
        }
        std::set<int> orders;
        std::set<std::string> ids;
        for (int c = 0; c < n; ++c) {
            const auto& cr = crossings_[c];
            if (!ids.insert(cr.id).second) throw EncodingError("duplicate crossing id '" + cr.id + "'");
            if (seen[c].size() != 2)
                throw EncodingError("crossing '" + cr.id + "' must appear exactly twice in the traversal");
            const Strand a = traversal_[seen[c][0]].strand, b = traversal_[seen[c][1]].strand;
            if (cr.kind == CrossingKind::singular) {
                if (a != Strand::singular || b != Strand::singular)
                    throw EncodingError("singular crossing '" + cr.id + "' must be passed as \"double\" twice");
                orders.insert(cr.order);
            } else if (!((a == Strand::over && b == Strand::under) || (a == Strand::under && b == Strand::over))) {
                throw EncodingError("crossing '" + cr.id + "' must be passed once over and once under");
            }
            // Gauss's parity condition for closed plane curves
            if ((seen[c][1] - seen[c][0] - 1) % 2 != 0)
                throw EncodingError("crossing '" + cr.id + "' violates the even-interlacing condition; not realizable");
        }
        const int s = singular_count();
        if (static_cast<int>(orders.size()) != s || (s && (*orders.begin() != 1 || *orders.rbegin() != s)))
            throw EncodingError("singular orders must be a bijection onto 1.." + std::to_string(s));
    }

    std::vector<Crossing> crossings_;
    std::vector<Passage> traversal_;
};

/// ∂^ε_i: singular crossing i becomes an ordinary crossing of sign ε. The
/// first-traversed strand goes over exactly when ε equals its first-over sign.
inline SingularDiagram resolve(const SingularDiagram& d, int i, Sign e) {
    const int n = d.singular_count();
    if (i < 1 || i > n)
        throw ContractViolation("resolution index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    SingularDiagram out = d;
    const int c = d.singular_index(i);
    auto& cr = out.crossings_[c];
    const bool first_over = e == cr.first_over_sign;
    cr.kind = e == Sign::plus ? CrossingKind::pos : CrossingKind::neg;
    cr.order = 0;
    cr.first_over_sign = Sign::plus;
    bool first = true;
    for (auto& p : out.traversal_) {
        if (p.crossing != c) continue;
        p.strand = (first == first_over) ? Strand::over : Strand::under;
        first = false;
    }
    for (auto& other : out.crossings_)
        if (other.kind == CrossingKind::singular && other.order > i) --other.order;
    return out;
}

struct KnotComplex {
    using cube_type = SingularDiagram;
    int dim(const SingularDiagram& d) const { return d.singular_count(); }
    SingularDiagram face(const SingularDiagram& d, int i, Sign s) const { return resolve(d, i, s); }
};

// ---------------------------------------------------------------------------
// JSON

inline std::string to_string(CrossingKind k) {
    return k == CrossingKind::pos ? "pos" : k == CrossingKind::neg ? "neg" : "singular";
}

inline nlohmann::json to_json(const SingularDiagram& d) {
    nlohmann::json cs = nlohmann::json::array(), tr = nlohmann::json::array();
    for (const auto& c : d.crossings()) {
        nlohmann::json j = {{"id", c.id}, {"kind", to_string(c.kind)}};
        if (c.kind == CrossingKind::singular) {
            j["order"] = c.order;
            j["first_over"] = c.first_over_sign == Sign::plus ? "pos" : "neg";
        }
        cs.push_back(j);
    }
    for (const auto& p : d.traversal())
        tr.push_back({{"id", d.crossings()[p.crossing].id},
                      {"pass", p.strand == Strand::over ? "over" : p.strand == Strand::under ? "under" : "double"}});
    return {{"crossings", cs}, {"traversal", tr}};
}

inline SingularDiagram diagram_from_json(const nlohmann::json& j) {
    try {
        std::vector<Crossing> cs;
        std::map<std::string, int> index;
        for (const auto& c : j.at("crossings")) {
            Crossing cr;
            cr.id = c.at("id").is_string() ? c.at("id").get<std::string>() : c.at("id").dump();
            const auto kind = c.at("kind").get<std::string>();
            if (kind == "pos") cr.kind = CrossingKind::pos;
            else if (kind == "neg") cr.kind = CrossingKind::neg;
            else if (kind == "singular") cr.kind = CrossingKind::singular;
            else throw EncodingError("crossing kind must be pos, neg or singular, got '" + kind + "'");
            if (cr.kind == CrossingKind::singular) {
                cr.order = c.at("order").get<int>();
                const auto fo = c.value("first_over", std::string("pos"));
                if (fo != "pos" && fo != "neg") throw EncodingError("first_over must be pos or neg");
                cr.first_over_sign = fo == "pos" ? Sign::plus : Sign::minus;
            }
            index[cr.id] = static_cast<int>(cs.size());
            cs.push_back(cr);
        }
        std::vector<Passage> tr;
        for (const auto& p : j.at("traversal")) {
            const auto id = p.at("id").is_string() ? p.at("id").get<std::string>() : p.at("id").dump();
            const auto it = index.find(id);
            if (it == index.end()) throw EncodingError("traversal names unknown crossing '" + id + "'");
            const auto pass = p.at("pass").get<std::string>();
            Strand s;
            if (pass == "over") s = Strand::over;
            else if (pass == "under") s = Strand::under;
            else if (pass == "double") s = Strand::singular;
            else throw EncodingError("pass must be over, under or double, got '" + pass + "'");
            tr.push_back({it->second, s});
        }
        return SingularDiagram(std::move(cs), std::move(tr));
    } catch (const nlohmann::json::exception& ex) {
        throw EncodingError(std::string("bad diagram JSON: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Braid closures

/// Closure of a braid word on `strands` strands. Tokens: "sK" (σ_K, the
/// strand from position K crosses over to K+1, positive), "SK" (σ_K⁻¹) and
/// "tK" (singular). Crossing ids are c1, c2, ... in word order; singular
/// crossings are ordered by their position in the word.
inline SingularDiagram diagram_from_braid(const std::string& word, int strands) {
    struct Gen {
        int pos;
        char kind;
    };
    std::vector<Gen> gens;
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S' && tok[0] != 't') ||
            tok.find_first_not_of("0123456789", 1) != std::string::npos)
            throw EncodingError("bad braid token '" + tok + "'");
        const int k = std::stoi(tok.substr(1));
        if (k < 1 || k >= strands)
            throw EncodingError("braid generator " + tok + " out of range for " + std::to_string(strands) + " strands");
        gens.push_back({k, tok[0]});
    }
    std::vector<Crossing> cs;
    int singular = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        Crossing c;
        c.id = "c" + std::to_string(g + 1);
        c.kind = gens[g].kind == 's' ? CrossingKind::pos : gens[g].kind == 'S' ? CrossingKind::neg : CrossingKind::singular;
        if (c.kind == CrossingKind::singular) c.order = ++singular;
        cs.push_back(c);
    }
    std::vector<Passage> tr;
    std::vector<int> visits(gens.size(), 0);
    int pos = 1;
    do {
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const int k = gens[g].pos;
            if (pos != k && pos != k + 1) continue;
            const bool rising = pos == k;  // moving from K to K+1
            Strand s;
            switch (gens[g].kind) {
                case 's': s = rising ? Strand::over : Strand::under; break;
                case 'S': s = rising ? Strand::under : Strand::over; break;
                default:
                    s = Strand::singular;
                    if (visits[g] == 0) cs[g].first_over_sign = rising ? Sign::plus : Sign::minus;
            }
            ++visits[g];
            tr.push_back({static_cast<int>(g), s});
            pos = rising ? k + 1 : k;
        }
    } while (pos != 1);
    if (std::any_of(visits.begin(), visits.end(), [](int v) { return v != 2; }) ||
        (gens.empty() && strands != 1)) {
        // strands the walk never reached form further components
        throw EncodingError("braid closure of '" + word + "' is a link, not a knot");
    }
    if (gens.empty()) return SingularDiagram();
    // a strand that no generator touches is a separate unknotted component
    std::set<int> touched;
    for (const auto& g : gens) touched.insert(g.pos), touched.insert(g.pos + 1);
    if (static_cast<int>(touched.size()) != strands)
        throw EncodingError("braid closure of '" + word + "' is a link, not a knot");
    return SingularDiagram(std::move(cs), std::move(tr));
}

// ---------------------------------------------------------------------------
// Alexander and Conway polynomials

/// Symmetric Alexander polynomial: coefficients of t^-m .. t^m, Δ(1) = 1.
struct AlexanderPolynomial {
    std::vector<Rational> coef;
    int half_degree() const { return static_cast<int>(coef.size() / 2); }
    Rational at(int k) const {
        const int m = half_degree();
        return (k < -m || k > m) ? Rational(0) : coef[k + m];
    }
    bool operator==(const AlexanderPolynomial&) const = default;
};

namespace detail {

// Newton interpolation through (x_i, y_i), returning monomial coefficients.
inline std::vector<Rational> interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    const std::size_t n = x.size();
    std::vector<Rational> dd = y;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - k]);
    std::vector<Rational> poly(n, 0);
    for (std::size_t k = n; k-- > 0;) {
        // poly = poly * (t - x_k) + dd_k
        std::vector<Rational> next(n, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] += poly[i];
        for (std::size_t i = 0; i < n; ++i) next[i] -= x[k] * poly[i];
        next[0] += dd[k];
        poly = std::move(next);
    }
    return poly;
}

}  // namespace detail

/// Raw Alexander polynomial (up to ±t^k) from the Fox-calculus matrix of
/// the Wirtinger presentation, as monomial coefficients.
inline std::vector<Rational> alexander_raw(const SingularDiagram& d) {
    if (d.singular_count() != 0) throw ContractViolation("Alexander polynomial needs a resolved diagram");
    const int n = d.crossing_count();
    if (n <= 1) return {Rational(1)};
    // arcs run between under-passages
    const auto& tr = d.traversal();
    std::vector<int> over_arc(n, -1), in_arc(n, -1), out_arc(n, -1);
    int arc = 0;
    for (const auto& p : tr) {
        if (p.strand == Strand::over) {
            over_arc[p.crossing] = arc;
        } else {
            in_arc[p.crossing] = arc;
            out_arc[p.crossing] = ++arc;
        }
    }
    for (int c = 0; c < n; ++c) {
        if (over_arc[c] == n) over_arc[c] = 0;
        if (out_arc[c] == n) out_arc[c] = 0;
        if (in_arc[c] == n) in_arc[c] = 0;
    }
    auto minor_at = [&](const Rational& t) {
        std::vector<Vector> m(n - 1, Vector(n - 1, Rational(0)));
        auto put = [&](int row, int col, const Rational& v) {
            if (row > 0 && col > 0) m[row - 1][col - 1] += v;
        };
        for (int c = 0; c < n; ++c) {
            if (d.crossings()[c].kind == CrossingKind::pos) {
                put(c, over_arc[c], 1 - t);
                put(c, in_arc[c], t);
                put(c, out_arc[c], -1);
            } else {
                put(c, over_arc[c], t - 1);
                put(c, in_arc[c], 1);
                put(c, out_arc[c], -t);
            }
        }
        return determinant(std::move(m));
    };
    std::vector<Rational> xs, ys;
    for (int k = 0; k < n; ++k) {
        xs.emplace_back(k + 2);
        ys.push_back(minor_at(xs.back()));
    }
    return detail::interpolate(xs, ys);
}

inline AlexanderPolynomial alexander_polynomial(const SingularDiagram& d) {
    auto p = alexander_raw(d);
    while (!p.empty() && p.back() == 0) p.pop_back();
    std::size_t low = 0;
    while (low < p.size() && p[low] == 0) ++low;
    p.erase(p.begin(), p.begin() + static_cast<long>(low));
    Rational at1 = 0;
    for (const auto& c : p) at1 += c;
    if (abs(at1) != 1) throw EncodingError("diagram is not realizable as a knot: |Δ(1)| = " + to_string(Rational(abs(at1))));
    if (p.size() % 2 == 0) throw EncodingError("diagram is not realizable as a knot: Δ has odd span");
    if (at1 < 0)
        for (auto& c : p) c = -c;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != p[p.size() - 1 - i]) throw EncodingError("diagram is not realizable as a knot: Δ is not symmetric");
    return {p};
}

/// Conway polynomial coefficients c_0, c_1, ... of ∇(z), z² = t − 2 + t⁻¹.
inline std::vector<Rational> conway_polynomial(const AlexanderPolynomial& a) {
    const int m = a.half_degree();
    // t^k + t^-k as a polynomial in w = z², p_{k+1} = (w + 2) p_k − p_{k−1}
    std::vector<std::vector<Rational>> p = {{Rational(2)}, {Rational(2), Rational(1)}};
    for (int k = 2; k <= m; ++k) {
        std::vector<Rational> next(k + 1, 0);
        for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
            next[i] += 2 * p[k - 1][i];
            next[i + 1] += p[k - 1][i];
        }
        for (std::size_t i = 0; i < p[k - 2].size(); ++i) next[i] -= p[k - 2][i];
        p.push_back(std::move(next));
    }
    std::vector<Rational> w(m + 1, 0);
    w[0] = a.at(0);
    for (int k = 1; k <= m; ++k)
        for (std::size_t i = 0; i < p[k].size(); ++i) w[i] += a.at(k) * p[k][i];
    std::vector<Rational> z(2 * m + 1, 0);
    for (int i = 0; i <= m; ++i) z[2 * i] = w[i];
    return z;
}

inline Rational conway_coefficient(const SingularDiagram& d, int k) {
    const auto z = conway_polynomial(alexander_polynomial(d));
    return k >= 0 && k < static_cast<int>(z.size()) ? z[k] : Rational(0);
}

inline Rational conway_a2(const SingularDiagram& d) { return conway_coefficient(d, 2); }

// ---------------------------------------------------------------------------
// Finite-type checks

/// Σ ε₁…εₙ f(resolution ε) over all 2ⁿ resolutions, sharded over `jobs` threads.
template <class F>
Rational resolution_sum(const SingularDiagram& d, const F& f, unsigned jobs = 1) {
    const KnotComplex k;
    const int n = d.singular_count();
    const std::size_t total = std::size_t{1} << n;
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    std::vector<Rational> part(jobs, 0);
    auto shard = [&](unsigned s) {
        for (std::size_t v = s; v < total; v += jobs) {
            std::vector<Sign> pattern(n);
            int minus = 0;
            for (int i = 0; i < n; ++i) {
                pattern[i] = (v >> i) & 1 ? Sign::minus : Sign::plus;
                minus += (v >> i) & 1;
            }
            const Rational val = f(vertex(k, d, pattern));
            part[s] += minus % 2 ? Rational(-val) : val;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned s = 1; s < jobs; ++s) pool.emplace_back(shard, s);
    shard(0);
    for (auto& t : pool) t.join();
    Rational sum = 0;
    for (const auto& p : part) sum += p;
    return sum;
}

/// Pass iff the resolution sum vanishes; needs n ≥ degree + 1.
template <class F>
DegreeResult<SingularDiagram> finite_type_check(const SingularDiagram& d, const F& f, int degree,
                                                unsigned jobs = 1) {
    if (d.singular_count() < degree + 1)
        throw ContractViolation("finite-type check at degree " + std::to_string(degree) + " needs at least " +
                                std::to_string(degree + 1) + " singular crossings, got " +
                                std::to_string(d.singular_count()));
    const Rational v = resolution_sum(d, f, jobs);
    if (v != 0) return Counterexample<SingularDiagram>{d, v};
    return Pass{std::size_t{1} << d.singular_count()};
}

/// Weight-system value on an n-singular diagram of an oracle of degree n.
template <class F>
Rational symbol(const SingularDiagram& d, const F& f, int degree, unsigned jobs = 1) {
    if (d.singular_count() != degree)
        throw ContractViolation("symbol at degree " + std::to_string(degree) + " needs exactly that many singular crossings");
    return resolution_sum(d, f, jobs);
}

/// Chord diagram of the singular crossings: the cyclic word of singular
/// passages, relabelled by first appearance and minimized over rotations.
inline std::vector<int> chord_diagram(const SingularDiagram& d) {
    std::vector<int> word;
    for (const auto& p : d.traversal())
        if (p.strand == Strand::singular) word.push_back(p.crossing);
    std::vector<int> best;
    for (std::size_t r = 0; r < std::max<std::size_t>(word.size(), 1); ++r) {
        std::map<int, int> label;
        std::vector<int> cur;
        for (std::size_t i = 0; i < word.size(); ++i) {
            const int c = word[(r + i) % word.size()];
            cur.push_back(label.try_emplace(c, static_cast<int>(label.size())).first->second);
        }
        if (best.empty() || cur < best) best = cur;
    }
    return best;
}

}  // namespace cubix
