#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <cubix/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cubix {

class Polynomial {
public:
    using Exponents = std::vector<std::uint16_t>;
    using Terms = std::map<Exponents, Rational>;

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t k) {
        if (k >= nvars) throw ContractViolation("variable index out of range");
        Exponents e(nvars, 0);
        e[k] = 1;
        Polynomial p(nvars);
        p.add_term(e, 1);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Polynomial& add_term(const Exponents& e, const Rational& c) {
        if (e.size() != nvars_) throw ContractViolation("monomial has the wrong number of variables");
        if (c == 0) return *this;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    /// Total degree; −1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total(e));
        return d;
    }

    static int total(const Exponents& e) {
        int s = 0;
        for (auto x : e) s += x;
        return s;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same(b);
        Polynomial out(a.nvars_);
        Exponents e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned k) const {
        Polynomial out = constant(nvars_, 1), base = *this;
        while (k) {
            if (k & 1) out = out * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return out;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != nvars_)
            throw ContractViolation("evaluation point has " + std::to_string(point.size()) +
                                    " coordinates, polynomial has " + std::to_string(nvars_) + " variables");
        Rational total = 0;
        std::vector<std::vector<Rational>> powers(nvars_);
        for (const auto& [e, c] : terms_) {
            Rational m = c;
            for (std::size_t k = 0; k < nvars_; ++k) {
                if (!e[k]) continue;
                auto& pk = powers[k];
                if (pk.empty()) pk.push_back(1);
                while (pk.size() <= e[k]) pk.push_back(pk.back() * point[k]);
                m *= pk[e[k]];
            }
            total += m;
        }
        return total;
    }

    /// Substitutes images[k] for variable k; the images share one variable set.
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        if (images.size() != nvars_) throw ContractViolation("substitute: need one image per variable");
        const std::size_t m = images.empty() ? 0 : images[0].nvars();
        for (const auto& im : images)
            if (im.nvars() != m) throw ContractViolation("substitute: images differ in variable count");
        std::vector<std::vector<Polynomial>> powers(nvars_);
        Polynomial out(m);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(m, c);
            for (std::size_t k = 0; k < nvars_; ++k) {
                if (!e[k]) continue;
                auto& pk = powers[k];
                if (pk.empty()) pk.push_back(constant(m, 1));
                while (pk.size() <= e[k]) pk.push_back(pk.back() * images[k]);
                t = t * pk[e[k]];
            }
            out += t;
        }
        return out;
    }

    /// Keeps the terms satisfying `keep(exponents)`.
    template <class Pred>
    Polynomial filter(Pred keep) const {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_)
            if (keep(e)) out.terms_.emplace(e, c);
        return out;
    }

    /// Human-readable form, e.g. "8*y1*y2 - 1/2*x^2"; names default to x1, x2, ...
    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational mag = abs(c);
            out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            std::string mono;
            for (std::size_t k = 0; k < nvars_; ++k) {
                if (!e[k]) continue;
                if (!mono.empty()) mono += "*";
                mono += k < names.size() ? names[k] : "x" + std::to_string(k + 1);
                if (e[k] > 1) mono += "^" + std::to_string(e[k]);
            }
            if (mono.empty())
                out += mag.get_str();
            else if (mag == 1)
                out += mono;
            else
                out += mag.get_str() + "*" + mono;
        }
        return out;
    }

private:
    void require_same(const Polynomial& o) const {
        if (o.nvars_ != nvars_)
            throw ContractViolation("polynomials over " + std::to_string(nvars_) + " and " +
                                    std::to_string(o.nvars_) + " variables");
    }

    std::size_t nvars_;
    Terms terms_;
};

/// {"dim": d, "monomials": [{"exp": [..d ints..], "coef": "p/q"}, ...]}
inline Polynomial polynomial_from_json(const nlohmann::json& j) {
    try {
        const auto d = j.at("dim").get<std::size_t>();
        Polynomial p(d);
        for (const auto& t : j.at("monomials")) {
            const auto exp = t.at("exp").get<std::vector<int>>();
            if (exp.size() != d) throw EncodingError("polynomial term " + t.dump() + " does not have " + std::to_string(d) + " exponents");
            Polynomial::Exponents e;
            for (int x : exp) {
                if (x < 0 || x > 1000) throw EncodingError("exponent out of range in " + t.dump());
                e.push_back(static_cast<std::uint16_t>(x));
            }
            const auto& c = t.at("coef");
            if (c.is_string())
                p.add_term(e, parse_rational(c.get<std::string>()));
            else if (c.is_number_integer())
                p.add_term(e, Rational(Integer(std::to_string(c.get<long long>()))));
            else
                throw EncodingError("coefficient must be a \"p/q\" string in " + t.dump());
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw EncodingError(std::string("polynomial JSON: ") + e.what());
    }
}

inline nlohmann::json to_json(const Polynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", to_string(c)}});
    return {{"dim", p.nvars()}, {"monomials", terms}};
}

}  // namespace cubix
