#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flagprod/linear_algebra.hpp"
#include "flagprod/polynomial.hpp"
#include "flagprod/rng.hpp"

#include <random>

using namespace flagprod;

namespace {

RatPoly from_roots(const std::vector<Rational>& roots)
{
    RatPoly p{Rational(1)};
    for (const auto& r : roots) {
        RatPoly next(p.size() + 1, Rational(0));
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= r * p[i];
        }
        p = next;
    }
    return p;
}

DenseMatrix<BigInt> random_matrix(std::mt19937_64& eng, std::size_t r, std::size_t c, int range)
{
    DenseMatrix<BigInt> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = static_cast<long>(eng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
    return m;
}

}  // namespace

TEST_CASE("binomial coefficients")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(60, 30) == BigInt("118264581564861424"));
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("polynomial arithmetic")
{
    const IntPoly p{1, 2, 1};  // (1+t)^2
    CHECK(reflect(p) == IntPoly{1, -2, 1});
    CHECK(evaluate(p, Rational(1, 2)) == Rational(9, 4));
    CHECK(times_one_plus_t_pow(IntPoly{1}, 3) == IntPoly{1, 3, 3, 1});

    const RatPoly a = from_roots({1, 2, 2, 3});
    const RatPoly b = from_roots({2, 5});
    CHECK(remainder(a, a).empty());
    CHECK(gcd(a, b) == from_roots({2}));
    CHECK(squarefree_part(a) == from_roots({1, 2, 3}));
    // a = q b + r with deg r < deg b
    const RatPoly q = quotient(a, b), r = remainder(a, b);
    CHECK(r.size() < b.size());
    for (const Rational& t : {Rational(0), Rational(7, 3), Rational(-4)})
        CHECK(evaluate(a, t) == evaluate(q, t) * evaluate(b, t) + evaluate(r, t));
    CHECK(derivative(RatPoly{5, 0, 3}) == RatPoly{0, 6});
}

TEST_CASE("Sturm sequences count distinct roots")
{
    const RatPoly p = from_roots({Rational(1, 3), Rational(1, 2), Rational(2), Rational(-1)});
    const SturmSequence s(p);
    CHECK(s.roots_in(0, 1) == 2);
    CHECK(s.roots_in(Rational(1, 3), 1) == 1);  // (a, b]
    CHECK(s.roots_in(0, Rational(1, 3)) == 1);
    CHECK(s.roots_in(-5, 5) == 4);
    CHECK(s.roots_in(3, 10) == 0);
    // double root (1-t)^2 is still found after the squarefree reduction
    const SturmSequence d(squarefree_part(from_roots({1, 1})));
    CHECK(d.roots_in(0, 1) == 1);
    CHECK(d.roots_in(0, Rational(99, 100)) == 0);
    // no real roots: t^2 + 1
    CHECK(SturmSequence(RatPoly{1, 0, 1}).roots_in(-100, 100) == 0);
}

TEST_CASE("Checked64 overflow detection")
{
    const Checked64 big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * Checked64(4), IntegerOverflow);
    CHECK_THROWS_AS(big + big, IntegerOverflow);
    CHECK((Checked64(-7) / Checked64(2)).v == -3);
    CHECK((Checked64(-7) % Checked64(2)).v == -1);
}

TEST_CASE("Bareiss rank and determinant")
{
    DenseMatrix<BigInt> m(3, 3);
    const int vals[3][3] = {{2, 4, 1}, {1, 3, 0}, {3, 7, 1}};  // row 3 = row 1 + row 2
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = vals[i][j];
    CHECK(bareiss_determinant(m) == 0);
    auto copy = m;
    CHECK(bareiss_rank(copy) == 2);
    m(2, 2) = 5;
    CHECK(bareiss_determinant(m) == 8);

    std::mt19937_64 eng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_matrix(eng, 6, 7, 3);
        auto b = a;
        auto c = a.cast<Checked64>();
        CHECK(bareiss_rank(b) == bareiss_rank(c));
    }
}

TEST_CASE("Smith normal form with unimodular transforms")
{
    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + eng() % 6, c = 1 + eng() % 6;
        const auto a = random_matrix(eng, r, c, trial % 2 ? 9 : 2);
        const SmithDecomposition s = smith_decomposition(a);
        CHECK(s.left * a * s.right == s.diagonal);
        CHECK(abs(bareiss_determinant(s.left)) == 1);
        CHECK(abs(bareiss_determinant(s.right)) == 1);
        // diagonal with a divisibility chain of nonnegative entries
        std::vector<BigInt> diag;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                if (i != j)
                    CHECK(s.diagonal(i, j) == 0);
                else if (s.diagonal(i, i) != 0)
                    diag.push_back(s.diagonal(i, i));
            }
        for (std::size_t k = 0; k < diag.size(); ++k) {
            CHECK(diag[k] > 0);
            if (k + 1 < diag.size())
                CHECK(diag[k + 1] % diag[k] == 0);
        }
        auto copy = a;
        auto factors = smith_invariant_factors(copy);
        CHECK(factors == diag);
        auto rank_copy = a;
        CHECK(factors.size() == bareiss_rank(rank_copy));
    }
}

TEST_CASE("Smith normal form of a torsion example")
{
    // determinant -8, entry gcd 2
    DenseMatrix<BigInt> m(2, 2);
    m(0, 0) = 2, m(0, 1) = 4, m(1, 0) = 6, m(1, 1) = 8;
    auto copy = m;
    CHECK(smith_invariant_factors(copy) == std::vector<BigInt>{2, 4});
}

TEST_CASE("engines depend only on (seed, stream)")
{
    auto a = make_engine({5, 1});
    auto b = make_engine({5, 1});
    auto c = make_engine({5, 2});
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    auto e = make_engine({0, 0});
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(e);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
