#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubix {

using Rational = mpq_class;
using Integer = mpz_class;

/// Precondition on an argument or on the relation between arguments failed.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation is not defined for the given input (e.g. boundary of a 0-chain).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed external data: JSON schema errors, bad diagram codes, bad words.
class EncodingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// p/q in lowest terms; mpq_class(p, q) alone does not reduce.
inline Rational make_rational(long p, long q) {
    if (q == 0) throw DomainError("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// Canonical text form "p/q", q > 0, always with the slash ("3/1", "0/1").
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p/q" or "p" with optional sign; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto valid_int = [](std::string_view v) {
        if (v.empty()) return false;
        std::size_t k = (v[0] == '-' || v[0] == '+') ? 1 : 0;
        if (k == v.size()) return false;
        for (; k < v.size(); ++k)
            if (v[k] < '0' || v[k] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw EncodingError("bad rational '" + s + "'");
        return Rational(Integer(strip_plus(s)));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw EncodingError("bad rational '" + s + "'");
    Integer d(den);
    if (d == 0) throw EncodingError("zero denominator in '" + s + "'");
    Rational q(Integer(strip_plus(num)), d);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace cubix
