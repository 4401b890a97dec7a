#pragma once

#include <gmpxx.h>

#include <string>

#include "kpack/errors.hpp"

namespace kpack {

// Exact rational scalar. All geometry in this library is computed over
// arbitrary-precision rationals; equality is exact, never tolerance-based.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "123", "-7", "p/q" with integer p, q (q != 0). Canonicalizes sign
// and reduces to lowest terms.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

// Canonical text form: plain integer when the denominator is 1, else "p/q".
inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline double rational_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rational_abs(const Rational& q) { return abs(q); }

}  // namespace kpack
