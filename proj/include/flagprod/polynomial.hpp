#pragma once

#include "flagprod/rational.hpp"

#include <vector>

namespace flagprod {

BigInt binomial(int n, int k);

/// Dense univariate polynomial, coefficient i of t^i. Trailing zeros are
/// trimmed by every operation, so the zero polynomial is empty.
template <class T>
using Poly = std::vector<T>;

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<Rational>;

Rational evaluate(const IntPoly& p, const Rational& t);
Rational evaluate(const RatPoly& p, const Rational& t);

/// p(-t).
IntPoly reflect(const IntPoly& p);
/// p(t) (1+t)^k, as used to invert the substitution t -> t/(1+t).
IntPoly times_one_plus_t_pow(const IntPoly& p, int k);

RatPoly to_rational(const IntPoly& p);
RatPoly derivative(const RatPoly& p);
RatPoly remainder(const RatPoly& a, const RatPoly& b);
RatPoly quotient(const RatPoly& a, const RatPoly& b);
/// Monic gcd.
RatPoly gcd(RatPoly a, RatPoly b);
/// p / gcd(p, p'): same roots, all simple.
RatPoly squarefree_part(const RatPoly& p);

/// Sturm chain of a squarefree polynomial.
class SturmSequence
{
public:
    explicit SturmSequence(const RatPoly& squarefree);
    /// Number of distinct real roots in (a, b], for a < b.
    int roots_in(const Rational& a, const Rational& b) const;

private:
    int sign_changes(const Rational& x) const;
    std::vector<RatPoly> chain_;
};

}  // namespace flagprod
