#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "flagprod/errors.hpp"
#include "flagprod/flag_complex.hpp"

#include <cmath>

using namespace flagprod;

namespace {

std::vector<oracle::Face> faces_of(const FlagComplex& x)
{
    std::vector<oracle::Face> out;
    x.for_each([&](const Simplex& s) { out.emplace_back(s.begin(), s.end()); });
    return out;
}

}  // namespace

TEST_CASE("Simplex basics")
{
    const Simplex s{0, 2, 5};
    CHECK(s.dim() == 2);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.without(1) == Simplex{0, 5});
    CHECK(s.str() == "{0,2,5}");
    CHECK(Simplex{}.dim() == -1);
    CHECK_THROWS_AS(Simplex({2, 1}), InvalidInput);
    CHECK_THROWS_AS(Simplex({1, 1}), InvalidInput);
}

TEST_CASE("fixture complexes")
{
    const FlagComplex oct = fixtures::complex_of(fixtures::octahedron());
    CHECK(oct.dim() == 2);
    CHECK(oct.f_vector() == std::vector<std::uint64_t>{1, 6, 12, 8});
    CHECK(oct.maximal_simplices().size() == 8);

    const FlagComplex c4 = fixtures::complex_of(fixtures::c4());
    CHECK(c4.f_vector() == std::vector<std::uint64_t>{1, 4, 4});

    const FlagComplex k5 = fixtures::complex_of(complete_graph(5));
    CHECK(k5.dim() == 4);
    CHECK(k5.is_simplex());
    CHECK(k5.f_vector() == std::vector<std::uint64_t>{1, 5, 10, 10, 5, 1});

    const FlagComplex empty = build_flag_complex(graph_from_edges(0, {}));
    CHECK(empty.dim() == -1);
    CHECK(empty.is_simplex());
    CHECK(empty.f_vector() == std::vector<std::uint64_t>{1});
}

TEST_CASE("clique enumeration equals brute force over subsets")
{
    for (int n = 1; n <= 12; ++n)
        for (double p : {0.2, 0.5, 0.8}) {
            const Graph g = sample_gnp(n, p, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p * 10)});
            CHECK(faces_of(build_flag_complex(g)) == oracle::cliques_by_subsets(g));
        }
}

TEST_CASE("dimension cap and budget")
{
    const Graph g = complete_graph(6);
    const FlagComplex capped = build_flag_complex(g, 2);
    CHECK(capped.truncated());
    CHECK(capped.dim() == 2);
    CHECK(capped.f_vector() == std::vector<std::uint64_t>{1, 6, 15, 20});
    CHECK_THROWS_AS(build_flag_complex(g, std::nullopt, 10), ResourceError);
}

TEST_CASE("faces are closed under taking subsets")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const FlagComplex x = build_flag_complex(sample_gnp(14, 0.5, {3, s}));
        x.for_each([&](const Simplex& f) {
            for (std::size_t i = 0; i < f.size(); ++i)
                REQUIRE(x.contains(f.without(i)));
        });
    }
}

TEST_CASE("links, punctured complexes and full subcomplexes")
{
    const FlagComplex c4 = fixtures::complex_of(fixtures::c4());
    // vertex link of a 4-cycle: the two opposite neighbours, S^0
    const FlagComplex lk = link(c4, Simplex{0});
    CHECK(lk.f_vector() == std::vector<std::uint64_t>{1, 2});
    CHECK(lk.contains(Simplex{1}));
    CHECK(lk.contains(Simplex{3}));
    CHECK(link(c4, Simplex{0, 1}).f_vector() == std::vector<std::uint64_t>{1});
    CHECK(deleted(c4, Simplex{0}).f_vector() == std::vector<std::uint64_t>{1, 3, 2});
    CHECK(deleted(c4, Simplex{}).f_vector() == c4.f_vector());
    CHECK(link(c4, Simplex{}).f_vector() == c4.f_vector());
    CHECK_THROWS_AS(link(c4, Simplex{0, 2}), InvalidInput);
    CHECK_THROWS_AS(deleted(c4, Simplex{0, 2}), InvalidInput);

    VertexSet keep(4);
    keep.set(0), keep.set(2);
    CHECK(induced(c4, keep).f_vector() == std::vector<std::uint64_t>{1, 2});
    CHECK(subcomplex(c4, InducedOn{keep}).f_vector() == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("subcomplexes equal flag complexes of the induced subgraphs")
{
    for (std::uint64_t s = 0; s < 15; ++s) {
        const Graph g = sample_gnp(11, 0.55, {9, s});
        const FlagComplex x = build_flag_complex(g);
        for (int d = -1; d <= std::min(x.dim(), 1); ++d)
            for (const Simplex& sigma : x.faces(d)) {
                const VertexSet cn = x.common_neighbors(sigma);
                CHECK(faces_of(link(x, sigma)) == faces_of(build_flag_complex(g, cn)));
                VertexSet rest = full_vertex_set(11);
                for (Vertex v : sigma)
                    rest.reset(static_cast<std::size_t>(v));
                CHECK(faces_of(deleted(x, sigma)) == faces_of(build_flag_complex(g, rest)));
            }
    }
}

TEST_CASE("join of finite sets")
{
    const FlagComplex oct = join_of_finite_sets({2, 2, 2});
    CHECK(oct.f_vector() == std::vector<std::uint64_t>{1, 6, 12, 8});
    const FlagComplex j = join_of_finite_sets({3, 1, 2});
    CHECK(j.f_vector() == std::vector<std::uint64_t>{1, 6, 11, 6});
}

TEST_CASE("face polynomials")
{
    const FlagComplex c4 = fixtures::complex_of(fixtures::c4());
    CHECK(h_polynomial(c4) == std::vector<BigInt>{1, 2, 1});
    const FlagComplex oct = fixtures::complex_of(fixtures::octahedron());
    CHECK(h_polynomial(oct) == std::vector<BigInt>{1, 3, 3, 1});

    // f_X(t) for two points: 1 + 2t
    const FlagComplex two = fixtures::complex_of(fixtures::two_points());
    CHECK(f_polynomial(two, Rational(3)) == 7);
    const auto v = face_polynomials(two, Rational(1, 2));
    CHECK(v.f_value == 2);
    // hhat = (1-t)^2 f(t/(1-t)) = (1-t)^2 + 2t(1-t) = 1 - t^2
    CHECK(v.hhat_value == Rational(3, 4));
    CHECK(v.h_coeffs.has_value());

    CHECK_THROWS_AS(face_polynomials(two, Rational(1)), PoleError);
    CHECK_THROWS_AS(f_polynomial(two, std::vector<Rational>{1}), InvalidInput);

    const std::vector<Rational> t{Rational(1, 3), Rational(2)};
    CHECK(f_polynomial(two, t) == Rational(1) + Rational(1, 3) + 2);
    CHECK_FALSE(face_polynomials(two, t).h_coeffs.has_value());
}

TEST_CASE("f, h and hhat substitution identities on random complexes")
{
    for (std::uint64_t s = 0; s < 100; ++s) {
        const int n = 3 + static_cast<int>(s % 10);
        const FlagComplex x = build_flag_complex(sample_gnp(n, 0.3 + 0.05 * static_cast<double>(s % 9), {17, s}));
        const int d = x.dim();
        const auto h = h_polynomial(x);
        // h(t) = (1-t)^{d+1} f(t/(1-t)) at a few rationals
        for (const Rational& t : {Rational(1, 3), Rational(-2, 5), Rational(7, 2)}) {
            Rational hv = 0, pw = 1;
            for (const auto& c : h) {
                hv += c * pw;
                pw *= t;
            }
            Rational scale = 1;
            for (int i = 0; i <= d; ++i)
                scale *= 1 - t;
            CHECK(hv == scale * f_polynomial(x, t / (1 - t)));
            // hhat(t) = (1-t)^{n-d-1} h(t) with the full ground set
            Rational extra = 1;
            for (int i = d + 1; i < n; ++i)
                extra *= 1 - t;
            CHECK(face_polynomials(x, t).hhat_value == extra * hv);
        }
        // h(1) = f_d (top coefficient of f in t/(1-t) substitution)
        BigInt sum = 0;
        for (const auto& c : h)
            sum += c;
        CHECK(sum == static_cast<unsigned long>(x.f_vector().back()));
    }
}

TEST_CASE("expected face counts")
{
    CHECK(expected_face_count(10, 0.5, 1) == doctest::Approx(10.0));
    CHECK(expected_face_count(10, 0.5, 2) == doctest::Approx(45 * 0.5));
    CHECK(expected_face_count(100, 0.1, 3) == doctest::Approx(161700 * 1e-3).epsilon(1e-9));
    CHECK_THROWS_AS(expected_face_count(10, 1.5, 2), InvalidInput);
}

TEST_CASE("JSON summary")
{
    const std::string j = to_json(fixtures::complex_of(fixtures::path(3)));
    CHECK(j.find("\"f_vector\":[1,3,2]") != std::string::npos);
    CHECK(j.find("\"dim\":1") != std::string::npos);
}
