#pragma once

#include "flagprod/flag_complex.hpp"

#include <optional>

namespace flagprod {

/// Outcome of the spectral vanishing test for H^{k-1}(X; R).
struct GarlandVerdict
{
    int k = 0;
    double epsilon_margin = 0.0;
    /// Every simplex of dimension < k lies in some k-simplex.
    bool pure_skeleton = false;
    /// Smallest spectral gap over the links examined (+inf if none were).
    double min_lambda2 = 0.0;
    std::size_t links_checked = 0;
    /// true means H^{k-1}(X; R) = 0. false carries no claim.
    bool certified = false;
    /// First (k-2)-simplex whose link failed, and its gap (0 if disconnected).
    std::optional<Simplex> failing_simplex;
    std::optional<double> failing_lambda2;
};

/// Checks that the k-skeleton is pure and that the link of every
/// (k-2)-simplex inside the k-skeleton, a graph, is connected with
/// lambda_2 >= k/(k+1) + epsilon. For k = 1 the only such simplex is the
/// empty one and its link is the 1-skeleton. Requires 1 <= k < dim x and
/// epsilon > 0, else InvalidInput.
GarlandVerdict garland_certificate(const FlagComplex& x, int k, double epsilon);

/// ((alpha+1) ln n + c sqrt(ln n) ln ln n) / n. Requires n >= 3.
double ergap_threshold(int n, double alpha, double c_alpha);

}  // namespace flagprod
