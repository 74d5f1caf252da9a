#pragma once

#include "flagprod/flag_complex.hpp"
#include "flagprod/homology.hpp"
#include "flagprod/rational.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

namespace flagprod {

/// A finite vertex group of order q + 1.
struct FiniteFactor
{
    std::int64_t q = 1;
    friend bool operator==(const FiniteFactor&, const FiniteFactor&) = default;
};

/// An infinite vertex group, described by the graded invariants the
/// graph-product formulas consume. Vectors are indexed by degree.
struct InfiniteFactor
{
    /// Reduced Betti numbers of the classifying space over the chosen field.
    std::vector<std::int64_t> reduced_betti;
    std::vector<Rational> l2_betti;
    /// chi(B Gamma) - 1.
    std::int64_t euler_reduced = -1;
    int cd = 1;
    /// Least k with H^k(Gamma; Q Gamma) != 0; at least 1 for infinite groups.
    int groupring_support_min = 1;
    friend bool operator==(const InfiniteFactor&, const InfiniteFactor&) = default;
};

/// The infinite cyclic group.
InfiniteFactor infinite_cyclic();

using FactorSpec = std::variant<FiniteFactor, InfiniteFactor>;

/// One factor per vertex of the ground set; all finite or all infinite.
class GroupAssignment
{
public:
    static GroupAssignment constant(const FactorSpec& f, int n);
    static GroupAssignment per_vertex(std::vector<FactorSpec> factors);
    static GroupAssignment finite_orders(const std::vector<std::int64_t>& q);
    static GroupAssignment raag(int n) { return constant(infinite_cyclic(), n); }

    int size() const { return static_cast<int>(factors_.size()); }
    bool all_finite() const { return finite_; }
    bool all_infinite() const { return !finite_; }
    bool is_constant() const { return constant_; }
    /// Every factor is the infinite cyclic group.
    bool is_raag() const;

    const FactorSpec& at(Vertex v) const { return factors_[static_cast<std::size_t>(v)]; }
    const InfiniteFactor& infinite_at(Vertex v) const { return std::get<InfiniteFactor>(at(v)); }
    /// The q_i (order minus one) of an all-finite assignment.
    std::vector<std::int64_t> orders() const;

private:
    explicit GroupAssignment(std::vector<FactorSpec> factors);
    std::vector<FactorSpec> factors_;
    bool finite_ = true;
    bool constant_ = false;
};

enum class Field { rational, f2 };

/// b_m(BG) for m = 0..degree_cap: sum over simplices of the degree-m part of
/// the tensor product of the factors' reduced profiles.
std::vector<BigInt> betti_classifying_space(const FlagComplex& x, const GroupAssignment& a, Field field,
                                            int degree_cap);

struct EulerCharacteristics
{
    /// chi(B G_0) = hhat_X(-q); all-finite assignments only.
    std::optional<Rational> chi_bg0;
    /// Rational Euler characteristic: f_X(-q/(1+q)) or f_X(e).
    Rational chi_rational;
};

EulerCharacteristics euler_characteristics(const FlagComplex& x, const GroupAssignment& a);

/// b_m(B G_0) = sum over non-simplices I of b~_{m-1}(X(I); Q) q_I, plus b_0 = 1,
/// for m = 0..dim+1. Exponential in the vertex count; ResourceError beyond
/// `size_limit` vertices.
std::vector<BigInt> bg0_betti(const FlagComplex& x, const std::vector<std::int64_t>& q, int size_limit = 20);

enum class Ends { zero, one, two, infinite };
const char* to_string(Ends e);

/// Degrees where H^k(G; QG) is nonzero, with the derived invariants.
struct SupportReport
{
    /// Exact support when `exact`; otherwise the degrees witnessed by some
    /// simplex's lowest possible contribution.
    std::set<int> support;
    bool exact = true;
    /// H^k(G; QG) = 0 for every k below this.
    int vanishing_below = 0;
    /// First (simplex, degree) found for each witnessed degree.
    std::vector<std::pair<Simplex, int>> witnesses;
    bool is_rational_duality = false;
    std::optional<int> formal_dimension;
    std::optional<Ends> ends;
    /// max(support) when exact.
    std::optional<int> cd_q;
    /// Virtual cohomological dimension over Z, as a closed interval
    /// (finite factors only; a point when integral data was supplied).
    std::optional<std::pair<int, int>> vcd_z;
    /// (dim X + 1) * max cd of the factors (infinite factors only).
    std::optional<int> cd_bound;
    bool cd_bound_is_equality = false;
};

/// All-finite case, from the punctured profile; orders decide the
/// two-ended suspension case.
SupportReport groupring_support_finite(const FlagComplex& x, const std::vector<std::int64_t>& q,
                                       const PuncturedProfile& pp);

/// 1/W_G(t) = f_X(-t/(1+t)). PoleError at t_i = -1.
Rational growth_series_inverse(const FlagComplex& x, const Evaluation& t);
/// h_X(-t) / (1+t)^{d+1}, the univariate closed form.
Rational growth_series_inverse_univariate(const FlagComplex& x, const Rational& t);

struct ConvergenceReport
{
    /// sum over vertices of 1/(q_i + 1) < 1.
    bool sufficient_pass = false;
    /// Smallest positive root of h_X(-t) lies in (rho_lo, rho_hi].
    Rational rho_lo, rho_hi;
    /// h_X(-t) has no root in (0, 1]; rho is then reported as 1.
    bool rho_no_root = false;
    /// 1/q < rho, for a constant q.
    std::optional<bool> in_region_univariate;
    /// 1/q is certified to lie in the region of convergence.
    bool region_ok = false;
};

ConvergenceReport convergence_check(const FlagComplex& x, const std::vector<std::int64_t>& q);

/// D_sigma(q) = prod_{i in sigma} 1/(1+q_i) * 1/W_{G(sigma)}(1/q), with G(sigma)
/// the 1-skeleton of Lk(sigma). ConvergenceError if 1/q is not certified.
Rational d_sigma(const FlagComplex& x, const Simplex& sigma, const std::vector<std::int64_t>& q);

/// Diagnostic only: the alternating sum over cofaces tau >= sigma of
/// (-1)^{dim tau - dim sigma} / prod_{i in tau} (1 + 1/q_i). It is not equal
/// to d_sigma (single vertex: q/(q+1) against 1/(q+1)).
Rational d_sigma_coface_sum(const FlagComplex& x, const Simplex& sigma, const std::vector<std::int64_t>& q);

/// L^2 b_m = sum over sigma of b~_{m-1}(X - sigma; Q) D_sigma(q), m = 0..dim+1.
std::vector<Rational> l2_betti_finite(const FlagComplex& x, const std::vector<std::int64_t>& q,
                                      const PuncturedProfile& pp);

/// L^2 b_l = sum over sigma, i + m = l of b~_{i-1}(Lk sigma; Q) L^2 b_{sigma,m}.
std::vector<Rational> l2_betti_infinite(const FlagComplex& x, const GroupAssignment& a, const LinkProfile& lp);

/// All-infinite case from link profiles: a certified vanishing range in
/// general, the exact support when every factor is infinite cyclic.
SupportReport groupring_support_infinite(const FlagComplex& x, const GroupAssignment& a, const LinkProfile& lp);

}  // namespace flagprod
