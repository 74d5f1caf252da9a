#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace flagprod {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& s)
{
    Rational r(s);
    r.canonicalize();
    return r;
}

}  // namespace flagprod
