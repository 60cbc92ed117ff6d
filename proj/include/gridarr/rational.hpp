#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gridarr {

// Exact arbitrary-precision scalars. cpp_rational keeps the canonical form
// we require: denominator > 0 and gcd(|num|, den) = 1 after every operation.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational's two-argument constructor insists on a positive
// denominator; this one fixes the signs up first.
inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Largest integer <= r.
inline Int rfloor(const Rational& r) {
    Int q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(const Int& x) { return x.sign(); }

// Parses "p/q" or a plain integer. Used by every text format in the project.
inline Rational parse_rational(std::string_view tok) {
    if (tok.empty()) throw std::invalid_argument("rational: empty token");
    auto slash = tok.find('/');
    auto parse_int = [](std::string_view s) -> Int {
        if (s.empty()) throw std::invalid_argument("rational: empty integer");
        std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("rational: sign without digits");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("rational: bad digit in '" + std::string(s) + "'");
        return Int(std::string(s));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(tok));
    Int p = parse_int(tok.substr(0, slash));
    Int q = parse_int(tok.substr(slash + 1));
    if (q == 0)
        throw std::invalid_argument("rational: zero denominator in '" + std::string(tok) + "'");
    return make_rational(std::move(p), std::move(q));
}

inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::size_t hash_combine(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace gridarr
