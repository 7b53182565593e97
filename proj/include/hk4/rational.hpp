#pragma once

// Exact scalar types: arbitrary-precision integers and reduced rationals.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hk4 {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
inline Int gcdext(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return g;
}

/// Floor division for integers (rounds toward negative infinity).
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Nonnegative residue of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

/// Least common multiple of the denominators of a range of rationals.
template <class Range>
Int common_denominator(const Range& values) {
    Int d = 1;
    for (const Rat& v : values)
        if (v.get_den() != 1)
            d = lcm(d, v.get_den());
    return d;
}

/// Nonnegative generator g of the subgroup of Q generated by the values
/// (g = 0 iff all values vanish).
template <class Range>
Rat rational_gcd(const Range& values) {
    Int den = common_denominator(values);
    Int g = 0;
    for (const Rat& v : values)
        g = gcd(g, Int(v * den));
    return make_rat(g, den);
}

/// "p/q" (or "p" for integers); the exact serialization used throughout.
inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& n) { return n.get_str(); }

inline Rat parse_rat(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    Int num, den = 1;
    auto parse_int = [](const std::string& part, Int& out) {
        if (part.empty() || out.set_str(part, 10) != 0)
            throw std::invalid_argument("malformed rational: '" + part + "'");
    };
    if (slash == std::string::npos) {
        parse_int(s, num);
    } else {
        parse_int(s.substr(0, slash), num);
        parse_int(s.substr(slash + 1), den);
    }
    return make_rat(num, den);
}

}  // namespace hk4
