#pragma once

#include "flagprod/flag_complex.hpp"
#include "flagprod/linear_algebra.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace flagprod {

enum class Ring { rational, integral };

/// Boundary map C_k -> C_{k-1} of the augmented chain complex, stored by
/// columns. Rows index (k-1)-simplices, columns k-simplices, both in the
/// complex's face order; degree 0 is the augmentation onto the empty simplex.
struct BoundaryMatrix
{
    struct Entry
    {
        std::uint32_t row;
        int sign;
    };

    int degree = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<Entry>> columns;

    template <class T>
    DenseMatrix<T> dense() const
    {
        DenseMatrix<T> m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (const auto& e : columns[j])
                m(e.row, j) = T(e.sign);
        return m;
    }
};

/// Matrices for degrees 0..dim; the face deleting position i has sign (-1)^i.
std::vector<BoundaryMatrix> boundary_matrices(const FlagComplex& k);

struct HomologyBudget
{
    /// Largest dense matrix (rows * cols) any single elimination may use.
    std::size_t max_dense_entries = 40'000'000;
};

/// Reduced Betti numbers of a complex, optionally with integral torsion.
struct BettiProfile
{
    int dim = -1;
    /// reduced[i + 1] = reduced Betti number in degree i, for i = -1..dim.
    std::vector<std::int64_t> reduced;
    /// torsion[i + 1] = invariant factors > 1 of reduced H_i(.; Z); integral mode only.
    std::optional<std::vector<std::vector<BigInt>>> torsion;

    /// Zero outside -1..dim.
    std::int64_t betti(int i) const;
    bool has_torsion(int i) const;
    bool integral() const { return torsion.has_value(); }
    /// Degrees i >= -1 with nonzero reduced Betti number.
    std::vector<int> support() const;
    /// Reduced integral cohomology in degree i is nonzero: free part in degree
    /// i or torsion in degree i-1 (universal coefficients). Needs integral data.
    bool integral_cohomology_nonzero(int i) const;
    /// Sum over i of (-1)^i b_i, for i = -1..dim.
    std::int64_t alternating_sum() const;

    friend bool operator==(const BettiProfile&, const BettiProfile&) = default;
};

/// Rational mode: ranks by Bareiss elimination. Integral mode: Smith normal
/// form of every boundary map. Throws ResourceError past the budget.
BettiProfile betti(const FlagComplex& k, Ring ring, const HomologyBudget& budget = {});

/// Betti profiles of a family of subcomplexes, one per simplex of the
/// parent, in the parent's face order.
struct SimplexProfileMap
{
    Ring ring = Ring::rational;
    std::vector<Simplex> simplices;
    std::vector<BettiProfile> profiles;

    const BettiProfile& at(const Simplex& s) const;
    std::size_t size() const { return simplices.size(); }
};

/// Profiles of X - sigma for every sigma in X (the empty simplex included).
using PuncturedProfile = SimplexProfileMap;
/// Profiles of Lk(sigma) for every sigma considered.
using LinkProfile = SimplexProfileMap;

/// `jobs` worker threads; results do not depend on it. A ResourceError names
/// the offending simplex.
PuncturedProfile punctured_profile(const FlagComplex& k, Ring ring, int jobs = 1,
                                   const HomologyBudget& budget = {});

/// Lk(sigma) for every sigma with dim sigma <= max_source_dim (all if unset).
LinkProfile link_profile(const FlagComplex& k, std::optional<int> max_source_dim = std::nullopt,
                         Ring ring = Ring::rational, int jobs = 1, const HomologyBudget& budget = {});

}  // namespace flagprod
