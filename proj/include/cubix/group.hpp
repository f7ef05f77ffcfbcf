#pragma once

// Cubic structure on a free group: an n-cube is an element of the free product
// G⁰ * G¹ * … * Gⁿ of tagged copies. ∂⁻ᵢ kills copy i, ∂⁺ᵢ merges it into
// copy 0; higher copies shift down. Also the Magnus expansion used to decide
// membership in the lower central series.

#include <cubix/complex.hpp>
#include <cubix/finite_type.hpp>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubix {

struct Letter {
    std::uint8_t gen = 0;  // 0-based generator index
    bool inv = false;
    std::uint8_t tag = 0;  // copy of G the letter lives in

    Letter inverse() const { return {gen, !inv, tag}; }
    bool cancels(const Letter& o) const { return gen == o.gen && tag == o.tag && inv != o.inv; }
    auto operator<=>(const Letter&) const = default;
};

using Letters = boost::container::small_vector<Letter, 12>;

/// Canonical (freely reduced) element of G⁰ * … * Gⁿ, G free; `dim` is the
/// declared n, tags range over 0..dim. Words of dimension 0 are elements of G.
class TaggedWord {
public:
    TaggedWord() = default;
    TaggedWord(int dim, const Letters& letters) : dim_(dim) {
        if (dim < 0) throw ContractViolation("tagged word dimension must be >= 0");
        for (const Letter& l : letters) push(l);
    }

    int dim() const { return dim_; }
    const Letters& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    /// Appends with free reduction; only same-copy inverse pairs meet.
    void push(const Letter& l) {
        if (l.tag > dim_)
            throw ContractViolation("letter tag " + std::to_string(l.tag) + " exceeds dimension " + std::to_string(dim_));
        if (!letters_.empty() && letters_.back().cancels(l))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    TaggedWord inverse() const {
        TaggedWord out;
        out.dim_ = dim_;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
        return out;
    }

    friend TaggedWord operator*(TaggedWord a, const TaggedWord& b) {
        a.dim_ = std::max(a.dim_, b.dim_);
        for (const Letter& l : b.letters_) a.push(l);
        return a;
    }

    /// Same letters with every tag set to t (and dimension max(t, 0)).
    TaggedWord retagged(std::uint8_t t, int dim) const {
        TaggedWord out;
        out.dim_ = dim;
        for (Letter l : letters_) {
            l.tag = t;
            out.push(l);
        }
        return out;
    }

    /// The group element obtained by merging all copies into G⁰.
    TaggedWord evaluate() const { return retagged(0, 0); }

    friend bool operator==(const TaggedWord& a, const TaggedWord& b) {
        return a.dim_ == b.dim_ && a.letters_ == b.letters_;
    }
    friend std::strong_ordering operator<=>(const TaggedWord& a, const TaggedWord& b) {
        if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
                                                      b.letters_.end());
    }

private:
    int dim_ = 0;
    Letters letters_;
};

using Word = TaggedWord;  // dimension 0: a group element

/// ∂⁻ᵢ deletes copy i, ∂⁺ᵢ identifies it with copy 0; tags above i shift down.
inline TaggedWord face_group(const TaggedWord& w, int i, Sign s) {
    if (i < 1 || i > w.dim())
        throw ContractViolation("face index " + std::to_string(i) + " out of range 1.." + std::to_string(w.dim()));
    Letters out;
    for (Letter l : w.letters()) {
        if (l.tag == i) {
            if (s == Sign::minus) continue;
            l.tag = 0;
        } else if (l.tag > i) {
            --l.tag;
        }
        out.push_back(l);
    }
    return TaggedWord(w.dim() - 1, out);
}

/// Free group of the given rank with the free-product cubic structure.
struct GroupComplex {
    using cube_type = TaggedWord;
    int rank = 2;

    int dim(const TaggedWord& w) const { return w.dim(); }
    TaggedWord face(const TaggedWord& w, int i, Sign s) const { return face_group(w, i, s); }
};

// ------------------------------------------------------------- text syntax

inline std::vector<std::string> generator_names(int rank) {
    if (rank < 1 || rank > 200) throw ContractViolation("rank must be in 1..200");
    std::vector<std::string> names;
    if (rank <= 3) {
        const char* base[] = {"x", "y", "z"};
        for (int k = 0; k < rank; ++k) names.emplace_back(base[k]);
    } else {
        for (int k = 1; k <= rank; ++k) names.push_back("x" + std::to_string(k));
    }
    return names;
}

/// "x y^-1 z@2": generator, optional ^exponent, optional @tag; "1" for the identity.
inline std::string to_text(const TaggedWord& w, int rank, bool show_tags = true) {
    if (w.is_identity()) return "1";
    const auto names = generator_names(rank);
    std::string out;
    for (const Letter& l : w.letters()) {
        if (!out.empty()) out += ' ';
        out += l.gen < names.size() ? names[l.gen] : "g" + std::to_string(l.gen + 1);
        if (l.inv) out += "^-1";
        if (show_tags && w.dim() > 0) out += "@" + std::to_string(l.tag);
    }
    return out;
}

/// Left-to-right tree of brackets whose leaves are entry words, one slot each.
struct Commutator {
    Word entry;                    // leaves only
    std::vector<Commutator> parts;  // empty for a leaf, otherwise two

    bool is_leaf() const { return parts.empty(); }

    /// Number of entry slots; [g,h] has weight 2.
    int weight() const { return is_leaf() ? 1 : parts[0].weight() + parts[1].weight(); }

    static Commutator leaf(Word w) { return {std::move(w), {}}; }
    static Commutator bracket(Commutator a, Commutator b) {
        Commutator c;
        c.parts.push_back(std::move(a));
        c.parts.push_back(std::move(b));
        return c;
    }
};

namespace detail {

class WordParser {
public:
    WordParser(std::string_view text, int rank) : s_(text), names_(generator_names(rank)) {}

    Word parse_word_to_end() {
        Word w = parse_word();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

    Commutator parse_commutator_to_end() {
        Commutator c = parse_commutator();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return c;
    }

    /// A word, stopping before ',' or ']'.
    Word parse_word() {
        Word w;
        bool any = false;
        while (true) {
            skip_ws();
            if (pos_ == s_.size() || s_[pos_] == ',' || s_[pos_] == ']') break;
            any = true;
            if (s_[pos_] == '[') {
                Commutator c = parse_bracket();
                w = w * evaluate(c);
            } else if (s_[pos_] == '1' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
                ++pos_;
            } else {
                w = w * parse_power();
            }
        }
        if (!any) fail("empty word");
        return w;
    }

    static Word evaluate(const Commutator& c) {
        if (c.is_leaf()) return c.entry;
        const Word a = evaluate(c.parts[0]), b = evaluate(c.parts[1]);
        return a * b * a.inverse() * b.inverse();
    }

private:
    Commutator parse_commutator() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '[') {
            const std::size_t save = pos_;
            Commutator c = parse_bracket();
            skip_ws();
            if (pos_ == s_.size() || s_[pos_] == ',' || s_[pos_] == ']') return c;
            pos_ = save;  // a bracket followed by more letters is a plain word entry
        }
        return Commutator::leaf(parse_word());
    }

    Commutator parse_bracket() {
        expect('[');
        Commutator a = parse_commutator();
        expect(',');
        Commutator b = parse_commutator();
        expect(']');
        return Commutator::bracket(std::move(a), std::move(b));
    }

    Word parse_power() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name(s_.substr(start, pos_ - start));
        if (name.empty()) fail("expected a generator");
        const auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) fail("unknown generator '" + name + "'");
        long exp = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            const std::size_t e0 = pos_;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            try {
                exp = std::stol(std::string(s_.substr(e0, pos_ - e0)));
            } catch (const std::exception&) {
                fail("bad exponent");
            }
            if (exp > 1000 || exp < -1000) fail("exponent too large");
        }
        Word w;
        const Letter l{static_cast<std::uint8_t>(it - names_.begin()), exp < 0, 0};
        for (long k = 0; k < (exp < 0 ? -exp : exp); ++k) w.push(l);
        return w;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw EncodingError("word syntax at column " + std::to_string(pos_ + 1) + ": " + what + " in \"" +
                            std::string(s_) + "\"");
    }

    std::string_view s_;
    std::vector<std::string> names_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "x y^-1 [x,[y,x]]" into a reduced group element.
inline Word parse_word(std::string_view text, int rank) {
    return detail::WordParser(text, rank).parse_word_to_end();
}

/// Parses a bracket expression "[u,[v,w]]" whose leaves are words.
inline Commutator parse_commutator(std::string_view text, int rank) {
    return detail::WordParser(text, rank).parse_commutator_to_end();
}

inline Word evaluate(const Commutator& c) { return detail::WordParser::evaluate(c); }

inline Word generator(int k, bool inv = false) {
    Word w;
    w.push(Letter{static_cast<std::uint8_t>(k), inv, 0});
    return w;
}

/// Left-normed [[[g₁,g₂],g₃],…] with the given entries.
inline Commutator left_normed(const std::vector<Word>& entries) {
    if (entries.empty()) throw ContractViolation("commutator needs at least one entry");
    Commutator c = Commutator::leaf(entries[0]);
    for (std::size_t k = 1; k < entries.size(); ++k) c = Commutator::bracket(std::move(c), Commutator::leaf(entries[k]));
    return c;
}

// ------------------------------------------------------------- witnesses

namespace detail {
inline void expand_tagged(const Commutator& c, int& next_slot, TaggedWord& out, int dim) {
    if (c.is_leaf()) {
        out = out * c.entry.retagged(static_cast<std::uint8_t>(next_slot++), dim);
        return;
    }
    TaggedWord a(dim, {}), b(dim, {});
    expand_tagged(c.parts[0], next_slot, a, dim);
    expand_tagged(c.parts[1], next_slot, b, dim);
    out = out * a * b * a.inverse() * b.inverse();
}
}  // namespace detail

/// The cube x⁰·c with the k-th entry of c (and its inverses) in copy k. Every
/// ∂⁻ᵢ kills the commutator, so all vertices are x except the sink, x·c.
inline TaggedWord build_commutator_witness(const Word& x, const Commutator& c) {
    if (x.dim() != 0) throw ContractViolation("witness base point must be a group element");
    const int dim = c.weight();
    if (dim > 250) throw ContractViolation("commutator has too many entries");
    TaggedWord z = x.retagged(0, dim);
    int slot = 1;
    detail::expand_tagged(c, slot, z, dim);
    return z;
}

/// f(ab) − f(a) − f(b) + f(1), i.e. f on ∂² of the 2-cube a¹b².
template <class F>
Rational linearity_residual(const F& f, const Word& a, const Word& b) {
    const TaggedWord z = a.retagged(1, 2) * b.retagged(2, 2);
    return evaluate<TaggedWord>(f, vertex_expansion(GroupComplex{}, z));
}

// ------------------------------------------------------------- first structure

/// g₀(a₁b₁)g₁…(aₙbₙ)gₙ: ∂⁻ᵢ multiplies the i-th pair as aᵢbᵢ, ∂⁺ᵢ as bᵢaᵢ.
struct BracketCube {
    std::vector<Word> g;                     // n + 1 separators
    std::vector<std::pair<Word, Word>> pairs;  // n brackets

    int dim() const { return static_cast<int>(pairs.size()); }

    BracketCube face(int i, Sign s) const {
        if (i < 1 || i > dim()) throw ContractViolation("bracket face index out of range");
        BracketCube out;
        const auto& [a, b] = pairs[i - 1];
        for (int k = 0; k < dim(); ++k) {
            if (k == i - 1) continue;
            out.pairs.push_back(pairs[k]);
        }
        for (int k = 0; k <= dim(); ++k) {
            if (k == i) {
                out.g.back() = out.g.back() * (s == Sign::minus ? a * b : b * a) * g[k];
                continue;
            }
            out.g.push_back(g[k]);
        }
        return out;
    }

    /// As a cube of the free-product structure: the i-th bracket becomes
    /// a⁰b⁰·(b⁻¹a⁻¹ba)ⁱ, which collapses to ab under ∂⁻ᵢ and to ba under ∂⁺ᵢ.
    TaggedWord to_tagged() const {
        const int n = dim();
        if (static_cast<int>(g.size()) != n + 1) throw ContractViolation("bracket cube needs n + 1 separators");
        TaggedWord z = g[0].retagged(0, n);
        for (int i = 1; i <= n; ++i) {
            const auto& [a, b] = pairs[i - 1];
            const auto t = static_cast<std::uint8_t>(i);
            z = z * a.retagged(0, n) * b.retagged(0, n) *
                (b.inverse() * a.inverse() * b * a).retagged(t, n) * g[i].retagged(0, n);
        }
        return z;
    }
};

// ------------------------------------------------------------- Magnus expansion

/// Truncated image of a free group element in Z⟨⟨X₁..X_r⟩⟩ under
/// xₖ ↦ 1 + Xₖ, xₖ⁻¹ ↦ 1 − Xₖ + Xₖ² − …
class MagnusSeries {
public:
    using Monomial = boost::container::small_vector<std::uint8_t, 8>;

    explicit MagnusSeries(int degree) : degree_(degree) { coef_[{}] = 1; }

    int truncation() const { return degree_; }
    const std::map<Monomial, Integer>& coefficients() const { return coef_; }

    static MagnusSeries of(const Word& w, int degree) {
        MagnusSeries s(degree);
        for (const Letter& l : w.letters()) s = s * letter(l.gen, l.inv, degree);
        return s;
    }

    static MagnusSeries letter(std::uint8_t gen, bool inv, int degree) {
        MagnusSeries s(degree);
        Monomial m;
        for (int k = 1; k <= degree; ++k) {
            m.push_back(gen);
            if (!inv && k > 1) break;
            s.coef_[m] = inv && k % 2 ? -1 : 1;
        }
        return s;
    }

    friend MagnusSeries operator*(const MagnusSeries& a, const MagnusSeries& b) {
        MagnusSeries out(std::min(a.degree_, b.degree_));
        out.coef_.clear();
        for (const auto& [ma, ca] : a.coef_)
            for (const auto& [mb, cb] : b.coef_) {
                if (static_cast<int>(ma.size() + mb.size()) > out.degree_) continue;
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                auto& slot = out.coef_[m];
                slot += ca * cb;
                if (slot == 0) out.coef_.erase(m);
            }
        return out;
    }

    /// Smallest k >= 1 with a nonzero degree-k term, if any up to truncation.
    std::optional<int> lowest_degree() const {
        std::optional<int> best;
        for (const auto& [m, c] : coef_)
            if (!m.empty() && (!best || static_cast<int>(m.size()) < *best)) best = static_cast<int>(m.size());
        return best;
    }

    /// Terms of exactly degree k as text, e.g. "X Y - Y X".
    std::string degree_part(int k, int rank) const {
        const auto names = generator_names(rank);
        std::string out;
        for (const auto& [m, c] : coef_) {
            if (static_cast<int>(m.size()) != k) continue;
            out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            if (abs(c) != 1) out += Integer(abs(c)).get_str() + " ";
            for (std::size_t t = 0; t < m.size(); ++t) {
                if (t) out += " ";
                std::string n = names[m[t]];
                for (auto& ch : n) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
                out += n;
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    int degree_;
    std::map<Monomial, Integer> coef_;
};

/// w ∈ Gₙ (G₀ = G, Gₙ = [G, Gₙ₋₁]) iff its Magnus expansion is 1 plus terms of
/// degree >= n + 1. Exact for free groups; `degree` >= n only bounds the work.
inline bool lcs_membership(const Word& w, int n, std::optional<int> degree = std::nullopt) {
    if (n < 0) throw ContractViolation("lower central index must be >= 0");
    const int d = degree.value_or(n);
    if (d < n) throw ContractViolation("Magnus truncation must be >= n");
    if (n == 0) return true;
    const auto low = MagnusSeries::of(w.evaluate(), n).lowest_degree();
    return !low;
}

/// Largest n with w ∈ Gₙ, searched up to `limit`; the identity reports `limit`.
inline int lcs_depth(const Word& w, int limit) {
    const auto low = MagnusSeries::of(w.evaluate(), limit + 1).lowest_degree();
    return low ? *low - 1 : limit;
}

/// Free group of rank r, or its class-c nilpotent quotient F/F_c.
struct GroupSpec {
    int rank = 2;
    std::optional<int> nilpotency_class;

    std::vector<std::string> names() const { return generator_names(rank); }

    bool equal(const Word& a, const Word& b) const {
        const Word q = a.evaluate().inverse() * b.evaluate();
        if (!nilpotency_class) return q.is_identity();
        return lcs_membership(q, *nilpotency_class);
    }
};

// ------------------------------------------------------------- search

/// Best-effort refuter for the converse direction: looks for a single
/// Goussarov (n+1)-cube x⁰·w from x to y with |w| <= max_len. Finding none
/// proves nothing.
inline std::optional<TaggedWord> search_goussarov_witness(const Word& x, const Word& y, int n, int rank, int max_len,
                                                          std::size_t budget = 2'000'000) {
    const int dim = n + 1;
    const GroupComplex k{rank};
    std::optional<TaggedWord> found;
    std::size_t visited = 0;
    Letters cur;
    std::function<void()> dfs = [&] {
        if (found || visited >= budget) return;
        ++visited;
        if (!cur.empty()) {
            TaggedWord z = x.retagged(0, dim) * TaggedWord(dim, cur);
            if (is_goussarov_witness(k, z, x, y)) {
                found = z;
                return;
            }
        }
        if (static_cast<int>(cur.size()) == max_len) return;
        for (int t = 1; t <= dim; ++t)
            for (int g = 0; g < rank; ++g)
                for (bool inv : {false, true}) {
                    const Letter l{static_cast<std::uint8_t>(g), inv, static_cast<std::uint8_t>(t)};
                    if (!cur.empty() && cur.back().cancels(l)) continue;
                    cur.push_back(l);
                    dfs();
                    cur.pop_back();
                }
    };
    dfs();
    return found;
}

// ------------------------------------------------------------- JSON

inline nlohmann::json to_json(const TaggedWord& w, int rank) {
    return {{"dim", w.dim()}, {"word", to_text(w, rank)}};
}

/// {"dim": n, "word": "x@0 y^-1@2"}; tags default to 0.
inline TaggedWord tagged_word_from_json(const nlohmann::json& j, int rank) {
    try {
        const int dim = j.value("dim", 0);
        const std::string text = j.at("word").get<std::string>();
        TaggedWord out(dim, {});
        std::size_t pos = 0;
        while (pos < text.size()) {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == text.size()) break;
            std::size_t end = pos;
            while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
            std::string tok = text.substr(pos, end - pos);
            pos = end;
            int tag = 0;
            if (auto at = tok.find('@'); at != std::string::npos) {
                try {
                    tag = std::stoi(tok.substr(at + 1));
                } catch (const std::exception&) {
                    throw EncodingError("bad tag in '" + tok + "'");
                }
                tok = tok.substr(0, at);
            }
            if (tag < 0 || tag > dim) throw EncodingError("tag out of range in '" + tok + "'");
            out = out * parse_word(tok, rank).retagged(static_cast<std::uint8_t>(tag), dim);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw EncodingError(std::string("tagged word JSON: ") + e.what());
    }
}

}  // namespace cubix
