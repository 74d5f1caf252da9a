#include "flagprod/polynomial.hpp"

#include "flagprod/errors.hpp"

namespace flagprod {

namespace {

template <class T>
void trim(Poly<T>& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

template <class T>
Rational horner(const Poly<T>& p, const Rational& t)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * t + Rational(*it);
    return acc;
}

}  // namespace

BigInt binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational evaluate(const IntPoly& p, const Rational& t) { return horner(p, t); }
Rational evaluate(const RatPoly& p, const Rational& t) { return horner(p, t); }

IntPoly reflect(const IntPoly& p)
{
    IntPoly r = p;
    for (std::size_t i = 1; i < r.size(); i += 2)
        r[i] = -r[i];
    return r;
}

IntPoly times_one_plus_t_pow(const IntPoly& p, int k)
{
    IntPoly r = p;
    for (int step = 0; step < k; ++step) {
        r.push_back(0);
        for (std::size_t i = r.size() - 1; i > 0; --i)
            r[i] += r[i - 1];
    }
    trim(r);
    return r;
}

RatPoly to_rational(const IntPoly& p)
{
    RatPoly r(p.begin(), p.end());
    trim(r);
    return r;
}

RatPoly derivative(const RatPoly& p)
{
    RatPoly r;
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * static_cast<long>(i));
    trim(r);
    return r;
}

namespace {

void divide(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r)
{
    if (b.empty())
        throw InvalidInput("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    while (!r.empty() && r.size() >= b.size()) {
        const std::size_t shift = r.size() - b.size();
        const Rational c = r.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] -= c * b[i];
        trim(r);
    }
    trim(q);
}

}  // namespace

RatPoly remainder(const RatPoly& a, const RatPoly& b)
{
    RatPoly q, r;
    divide(a, b, q, r);
    return r;
}

RatPoly quotient(const RatPoly& a, const RatPoly& b)
{
    RatPoly q, r;
    divide(a, b, q, r);
    return q;
}

RatPoly gcd(RatPoly a, RatPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rational lead = a.back();
        for (auto& c : a)
            c /= lead;
    }
    return a;
}

RatPoly squarefree_part(const RatPoly& p)
{
    if (p.size() <= 1)
        return p;
    return quotient(p, gcd(p, derivative(p)));
}

SturmSequence::SturmSequence(const RatPoly& squarefree)
{
    RatPoly p0 = squarefree;
    trim(p0);
    if (p0.empty())
        throw InvalidInput("Sturm sequence of the zero polynomial");
    chain_.push_back(p0);
    RatPoly p1 = derivative(p0);
    while (!p1.empty()) {
        chain_.push_back(p1);
        RatPoly r = remainder(chain_[chain_.size() - 2], p1);
        for (auto& c : r)
            c = -c;
        p1 = std::move(r);
    }
}

int SturmSequence::sign_changes(const Rational& x) const
{
    int changes = 0, last = 0;
    for (const auto& p : chain_) {
        const int s = sgn(evaluate(p, x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::roots_in(const Rational& a, const Rational& b) const
{
    return sign_changes(a) - sign_changes(b);
}

}  // namespace flagprod
