#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "flagprod/errors.hpp"
#include "flagprod/homology.hpp"

#include <set>

using namespace flagprod;

namespace {

// Barycentric subdivision of the six-vertex projective plane: a flag
// complex with H_1 = Z/2.
Graph rp2_subdivision()
{
    const std::vector<std::vector<int>> tri = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                               {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
    std::set<std::vector<int>> faces;
    for (auto t : tri) {
        std::sort(t.begin(), t.end());
        for (int mask = 1; mask < 8; ++mask) {
            std::vector<int> f;
            for (int i = 0; i < 3; ++i)
                if (mask >> i & 1)
                    f.push_back(t[static_cast<std::size_t>(i)]);
            faces.insert(f);
        }
    }
    const std::vector<std::vector<int>> list(faces.begin(), faces.end());
    std::vector<Edge> e;
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = 0; j < list.size(); ++j)
            if (list[i].size() < list[j].size() &&
                std::includes(list[j].begin(), list[j].end(), list[i].begin(), list[i].end()))
                e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return graph_from_edges(static_cast<int>(list.size()), e);
}

std::vector<std::int64_t> oracle_betti(const Graph& g)
{
    return oracle::reduced_betti(oracle::cliques_by_subsets(g));
}

}  // namespace

TEST_CASE("boundary matrices square to zero")
{
    const FlagComplex x = build_flag_complex(sample_gnp(10, 0.6, {1, 1}));
    const auto mats = boundary_matrices(x);
    REQUIRE(static_cast<int>(mats.size()) == x.dim() + 1);
    for (std::size_t k = 1; k < mats.size(); ++k) {
        const auto prod = mats[k - 1].dense<BigInt>() * mats[k].dense<BigInt>();
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j)
                REQUIRE(prod(i, j) == 0);
    }
}

TEST_CASE("fixture Betti numbers")
{
    const BettiProfile oct = betti(fixtures::complex_of(fixtures::octahedron()), Ring::rational);
    CHECK(oct.reduced == std::vector<std::int64_t>{0, 0, 0, 1});
    CHECK(oct.support() == std::vector<int>{2});
    CHECK(oct.alternating_sum() == 1);

    const BettiProfile c4 = betti(fixtures::complex_of(fixtures::c4()), Ring::integral);
    CHECK(c4.betti(1) == 1);
    CHECK(c4.betti(0) == 0);
    CHECK_FALSE(c4.has_torsion(0));

    const BettiProfile empty = betti(build_flag_complex(graph_from_edges(0, {})), Ring::rational);
    CHECK(empty.betti(-1) == 1);
    CHECK(empty.support() == std::vector<int>{-1});

    const BettiProfile two = betti(fixtures::complex_of(fixtures::two_points()), Ring::rational);
    CHECK(two.betti(0) == 1);
    CHECK(two.betti(-1) == 0);

    CHECK(betti(fixtures::complex_of(complete_graph(5)), Ring::rational).support().empty());
}

TEST_CASE("integral homology detects torsion")
{
    const FlagComplex rp2 = build_flag_complex(rp2_subdivision());
    CHECK(rp2.f_vector() == std::vector<std::uint64_t>{1, 31, 90, 60});
    const BettiProfile q = betti(rp2, Ring::rational);
    CHECK(q.support().empty());
    const BettiProfile z = betti(rp2, Ring::integral);
    CHECK(z.reduced == q.reduced);
    CHECK(z.has_torsion(1));
    CHECK((*z.torsion)[2] == std::vector<BigInt>{2});
    CHECK_FALSE(z.has_torsion(0));
    // universal coefficients: H^2 = Ext(H_1) = Z/2, H^1 = 0
    CHECK(z.integral_cohomology_nonzero(2));
    CHECK_FALSE(z.integral_cohomology_nonzero(1));
    CHECK_THROWS_AS(q.integral_cohomology_nonzero(1), InvalidInput);
}

TEST_CASE("Bareiss Betti numbers equal a dense rational row-reduction oracle")
{
    int checked = 0;
    for (double p : {0.3, 0.5, 0.7})
        for (std::uint64_t s = 0; s < 34; ++s) {
            const int n = 2 + static_cast<int>(s % 7);
            const Graph g = sample_gnp(n, p, {2024, s * 10 + static_cast<std::uint64_t>(p * 10)});
            const FlagComplex x = build_flag_complex(g);
            const BettiProfile b = betti(x, Ring::rational);
            CHECK(b.reduced == oracle_betti(g));
            const BettiProfile z = betti(x, Ring::integral);
            CHECK(z.reduced == b.reduced);
            ++checked;
        }
    CHECK(checked >= 100);
}

TEST_CASE("reduced Euler characteristic equals the alternating face count")
{
    for (std::uint64_t s = 0; s < 30; ++s) {
        const FlagComplex x = build_flag_complex(sample_gnp(16, 0.45, {77, s}));
        const auto f = x.f_vector();
        std::int64_t chi = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            chi += (i % 2 ? 1 : -1) * static_cast<std::int64_t>(f[i]);  // -f_{-1} + f_0 - ...
        CHECK(betti(x, Ring::rational).alternating_sum() == chi);
    }
}

TEST_CASE("punctured and link profiles")
{
    const FlagComplex oct = fixtures::complex_of(fixtures::octahedron());
    const PuncturedProfile pp = punctured_profile(oct, Ring::rational);
    CHECK(pp.size() == oct.face_count());
    for (std::size_t i = 0; i < pp.size(); ++i) {
        if (pp.simplices[i].empty())
            CHECK(pp.profiles[i].support() == std::vector<int>{2});
        else
            CHECK(pp.profiles[i].support().empty());
    }

    const LinkProfile lp = link_profile(oct, 0);
    CHECK(lp.size() == 7);
    CHECK(lp.at(Simplex{0}).support() == std::vector<int>{1});  // C4
    CHECK_THROWS_AS(lp.at(Simplex{0, 2}), InvalidInput);
    const LinkProfile all = link_profile(oct);
    CHECK(all.at(Simplex{0, 2, 4}).support() == std::vector<int>{-1});
}

TEST_CASE("profiles do not depend on the worker count")
{
    const FlagComplex x = build_flag_complex(sample_gnp(18, 0.4, {5, 5}));
    const PuncturedProfile a = punctured_profile(x, Ring::rational, 1);
    const PuncturedProfile b = punctured_profile(x, Ring::rational, 3);
    CHECK(a.simplices == b.simplices);
    CHECK(a.profiles == b.profiles);
}

TEST_CASE("homology budget")
{
    const FlagComplex x = build_flag_complex(sample_gnp(20, 0.5, {1, 2}));
    HomologyBudget tight;
    tight.max_dense_entries = 10;
    CHECK_THROWS_AS(betti(x, Ring::rational, tight), ResourceError);
    try {
        punctured_profile(x, Ring::rational, 1, tight);
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("sigma = {}") != std::string::npos);
    }
}
