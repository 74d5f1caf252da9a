#include "flagprod/homology.hpp"

#include "flagprod/errors.hpp"
#include "flagprod/parallel.hpp"

#include <algorithm>

namespace flagprod {

std::vector<BoundaryMatrix> boundary_matrices(const FlagComplex& k)
{
    std::vector<BoundaryMatrix> out;
    for (int deg = 0; deg <= k.dim(); ++deg) {
        BoundaryMatrix b;
        b.degree = deg;
        const auto lower = k.faces(deg - 1);
        const auto upper = k.faces(deg);
        b.rows = lower.size();
        b.cols = upper.size();
        b.columns.resize(b.cols);
        for (std::size_t j = 0; j < upper.size(); ++j) {
            const Simplex& s = upper[j];
            auto& col = b.columns[j];
            col.reserve(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                const auto row = k.index_of(s.without(i));
                col.push_back({static_cast<std::uint32_t>(*row), i % 2 ? -1 : 1});
            }
            std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.row < y.row; });
        }
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

void check_budget(const BoundaryMatrix& b, const HomologyBudget& budget)
{
    if (b.rows * b.cols > budget.max_dense_entries)
        throw ResourceError("boundary matrix of degree " + std::to_string(b.degree) + " is " +
                            std::to_string(b.rows) + "x" + std::to_string(b.cols) +
                            ", over the dense-entry budget");
}

std::size_t rational_rank(const BoundaryMatrix& b, const HomologyBudget& budget)
{
    if (b.cols == 0 || b.rows == 0)
        return 0;
    if (b.degree == 0)
        return 1;
    check_budget(b, budget);
    try {
        auto m = b.dense<Checked64>();
        return bareiss_rank(m);
    } catch (const IntegerOverflow&) {
        auto m = b.dense<BigInt>();
        return bareiss_rank(m);
    }
}

std::vector<BigInt> invariant_factors(const BoundaryMatrix& b, const HomologyBudget& budget)
{
    if (b.cols == 0 || b.rows == 0)
        return {};
    if (b.degree == 0)
        return {BigInt(1)};
    check_budget(b, budget);
    try {
        auto m = b.dense<Checked64>();
        std::vector<BigInt> out;
        for (auto d : smith_invariant_factors(m))
            out.push_back(BigInt(static_cast<long>(d.v)));
        return out;
    } catch (const IntegerOverflow&) {
        auto m = b.dense<BigInt>();
        return smith_invariant_factors(m);
    }
}

}  // namespace

std::int64_t BettiProfile::betti(int i) const
{
    if (i < -1 || i > dim)
        return 0;
    return reduced[static_cast<std::size_t>(i + 1)];
}

bool BettiProfile::has_torsion(int i) const
{
    if (!torsion || i < -1 || i > dim)
        return false;
    return !(*torsion)[static_cast<std::size_t>(i + 1)].empty();
}

std::vector<int> BettiProfile::support() const
{
    std::vector<int> s;
    for (int i = -1; i <= dim; ++i)
        if (betti(i) > 0)
            s.push_back(i);
    return s;
}

bool BettiProfile::integral_cohomology_nonzero(int i) const
{
    if (!torsion)
        throw InvalidInput("integral cohomology needs an integral Betti profile");
    return betti(i) > 0 || has_torsion(i - 1);
}

std::int64_t BettiProfile::alternating_sum() const
{
    std::int64_t s = 0;
    for (int i = -1; i <= dim; ++i)
        s += (i % 2 == 0 ? 1 : -1) * betti(i);
    return s;
}

BettiProfile betti(const FlagComplex& k, Ring ring, const HomologyBudget& budget)
{
    const int d = k.dim();
    const auto f = k.f_vector();
    const auto mats = boundary_matrices(k);

    // rank[i + 1] = rank of the boundary map out of degree i; rank out of -1 is 0.
    std::vector<std::int64_t> rank(static_cast<std::size_t>(d + 3), 0);
    BettiProfile p;
    p.dim = d;
    if (ring == Ring::integral)
        p.torsion.emplace(static_cast<std::size_t>(d + 2));
    for (const auto& b : mats) {
        std::int64_t r;
        if (ring == Ring::rational) {
            r = static_cast<std::int64_t>(rational_rank(b, budget));
        } else {
            auto factors = invariant_factors(b, budget);
            r = static_cast<std::int64_t>(factors.size());
            auto& tors = (*p.torsion)[static_cast<std::size_t>(b.degree)];  // degree - 1, shifted by one
            for (auto& x : factors)
                if (x > 1)
                    tors.push_back(std::move(x));
        }
        rank[static_cast<std::size_t>(b.degree + 1)] = r;
    }
    p.reduced.resize(static_cast<std::size_t>(d + 2));
    for (int i = -1; i <= d; ++i) {
        const auto idx = static_cast<std::size_t>(i + 1);
        p.reduced[idx] = static_cast<std::int64_t>(f[idx]) - rank[idx] - rank[idx + 1];
    }
    return p;
}

const BettiProfile& SimplexProfileMap::at(const Simplex& s) const
{
    auto it = std::lower_bound(simplices.begin(), simplices.end(), s, [](const Simplex& a, const Simplex& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    if (it == simplices.end() || *it != s)
        throw InvalidInput("no profile recorded for simplex " + s.str());
    return profiles[static_cast<std::size_t>(it - simplices.begin())];
}

namespace {

template <class Sub>
SimplexProfileMap profile_family(const FlagComplex& k, std::optional<int> max_dim, Ring ring, int jobs,
                                 const HomologyBudget& budget, const char* what, Sub&& sub)
{
    SimplexProfileMap out;
    out.ring = ring;
    k.for_each([&](const Simplex& s) {
        if (!max_dim || s.dim() <= *max_dim)
            out.simplices.push_back(s);
    });
    out.profiles.resize(out.simplices.size());
    parallel_for(out.simplices.size(), jobs, [&](std::size_t i) {
        try {
            out.profiles[i] = betti(sub(k, out.simplices[i]), ring, budget);
        } catch (const ResourceError& e) {
            throw ResourceError(std::string(what) + " at sigma = " + out.simplices[i].str() + ": " + e.what());
        }
    });
    return out;
}

}  // namespace

PuncturedProfile punctured_profile(const FlagComplex& k, Ring ring, int jobs, const HomologyBudget& budget)
{
    return profile_family(k, std::nullopt, ring, jobs, budget, "punctured complex",
                          [](const FlagComplex& x, const Simplex& s) { return deleted(x, s); });
}

LinkProfile link_profile(const FlagComplex& k, std::optional<int> max_source_dim, Ring ring, int jobs,
                         const HomologyBudget& budget)
{
    return profile_family(k, max_source_dim, ring, jobs, budget, "link",
                          [](const FlagComplex& x, const Simplex& s) { return link(x, s); });
}

}  // namespace flagprod
