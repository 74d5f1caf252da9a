#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "flagprod/errors.hpp"
#include "flagprod/garland.hpp"
#include "flagprod/homology.hpp"

using namespace flagprod;

TEST_CASE("complete graph and octahedron are certified")
{
    const FlagComplex k5 = fixtures::complex_of(complete_graph(5));
    const GarlandVerdict v = garland_certificate(k5, 2, 0.1);
    CHECK(v.certified);
    CHECK(v.pure_skeleton);
    CHECK(v.links_checked == 5);
    CHECK(v.min_lambda2 == doctest::Approx(4.0 / 3.0));
    CHECK(betti(k5, Ring::rational).betti(1) == 0);

    const FlagComplex oct = fixtures::complex_of(fixtures::octahedron());
    // k = 1: the link of the empty simplex is the whole 1-skeleton
    const GarlandVerdict w = garland_certificate(oct, 1, 0.2);
    CHECK(w.certified);
    CHECK(w.links_checked == 1);
    CHECK(w.min_lambda2 == doctest::Approx(1.0));
    CHECK(betti(oct, Ring::rational).betti(0) == 0);
    CHECK_FALSE(garland_certificate(oct, 1, 0.6).certified);
}

TEST_CASE("argument checks")
{
    const FlagComplex c4 = fixtures::complex_of(fixtures::c4());
    CHECK_THROWS_AS(garland_certificate(c4, 1, 0.1), InvalidInput);
    const FlagComplex k4 = fixtures::complex_of(complete_graph(4));
    CHECK_THROWS_AS(garland_certificate(k4, 0, 0.1), InvalidInput);
    CHECK_THROWS_AS(garland_certificate(k4, 1, 0.0), InvalidInput);
    CHECK_NOTHROW(garland_certificate(k4, 2, 0.1));
}

TEST_CASE("failures carry the offending simplex")
{
    // triangle plus an isolated vertex: 1-skeleton not pure
    const Graph g = graph_from_edges(4, {{0, 1}, {1, 2}, {0, 2}});
    const GarlandVerdict v = garland_certificate(fixtures::complex_of(g), 1, 0.01);
    CHECK_FALSE(v.pure_skeleton);
    CHECK_FALSE(v.certified);
    // two triangles sharing a vertex: the link of the empty simplex is the
    // bowtie graph, whose gap is small
    const Graph bow = graph_from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    const GarlandVerdict b = garland_certificate(fixtures::complex_of(bow), 1, 0.01);
    CHECK(b.pure_skeleton);
    CHECK_FALSE(b.certified);
    REQUIRE(b.failing_simplex.has_value());
    CHECK(b.failing_simplex->empty());
    CHECK(*b.failing_lambda2 == doctest::Approx(0.5));
}

TEST_CASE("soundness: certified implies vanishing cohomology")
{
    int examined = 0, certified = 0;
    for (std::uint64_t s = 0; s < 140; ++s) {
        const int n = 8 + static_cast<int>(s % 53);
        const double p = std::min(0.95, 0.2 + 6.0 / n + 0.05 * static_cast<double>(s % 4));
        const FlagComplex x = build_flag_complex(sample_gnp(n, p, {606, s}), 4);
        if (x.dim() < 2)
            continue;
        const BettiProfile b = betti(build_flag_complex(x.skeleton(), 2), Ring::rational);
        for (int k = 1; k < std::min(x.dim(), 3); ++k) {
            for (double eps : {0.01, 0.1}) {
                const GarlandVerdict v = garland_certificate(x, k, eps);
                ++examined;
                if (v.certified) {
                    ++certified;
                    CHECK(v.pure_skeleton);
                    CHECK(v.min_lambda2 >= static_cast<double>(k) / (k + 1) + eps);
                    CHECK(b.betti(k - 1) == 0);
                }
            }
        }
    }
    CHECK(examined >= 100);
    CHECK(certified > 0);
}

TEST_CASE("certificate is monotone in epsilon")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const FlagComplex x = build_flag_complex(sample_gnp(25, 0.6, {8, s}), 4);
        if (x.dim() < 2)
            continue;
        // certified at some eps implies certified at every smaller eps
        bool seen = false;
        for (double eps : {0.5, 0.3, 0.2, 0.1, 0.05, 0.01}) {
            const bool c = garland_certificate(x, 1, eps).certified;
            if (seen)
                CHECK(c);
            seen = seen || c;
        }
    }
}

TEST_CASE("spectral-gap threshold")
{
    CHECK(ergap_threshold(200, 0, 1) == doctest::Approx(0.04568163199779173).epsilon(1e-12));
    CHECK_THROWS_AS(ergap_threshold(2, 0, 1), InvalidInput);
    double prev = ergap_threshold(50, 1, 1);
    for (int n = 51; n <= 10000; n += 37) {
        const double t = ergap_threshold(n, 1, 1);
        CHECK(t < prev);
        prev = t;
    }
}
