#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace wmlab {

// Exact rational scalar. mpq_class keeps values in reduced form
// (gcd(num, den) = 1, den > 0) as long as every value entering
// arithmetic is canonical, so parse() canonicalizes once at the border.
using Rational = mpq_class;

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

// Serializes as "p" or "p/q" with q > 0, matching GMP's canonical form.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace wmlab
