#include "flagprod/garland.hpp"

#include "flagprod/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace flagprod {

namespace {

// Rounding in the eigensolver is absorbed on the conservative side.
constexpr double kSpectralSlack = 1e-9;

bool skeleton_is_pure(const FlagComplex& x, int k)
{
    // covered[j] marks (j-1)-simplices lying in some k-simplex
    std::vector<std::vector<char>> covered(static_cast<std::size_t>(k + 2));
    for (int d = -1; d <= k; ++d)
        covered[static_cast<std::size_t>(d + 1)].assign(x.faces(d).size(), d == k ? 1 : 0);
    for (int d = k; d >= 0; --d) {
        const auto faces = x.faces(d);
        for (std::size_t j = 0; j < faces.size(); ++j) {
            if (!covered[static_cast<std::size_t>(d + 1)][j])
                continue;
            for (std::size_t i = 0; i < faces[j].size(); ++i)
                covered[static_cast<std::size_t>(d)][*x.index_of(faces[j].without(i))] = 1;
        }
    }
    for (const auto& level : covered)
        for (char c : level)
            if (!c)
                return false;
    return true;
}

}  // namespace

GarlandVerdict garland_certificate(const FlagComplex& x, int k, double epsilon)
{
    if (k < 1 || k >= x.dim())
        throw InvalidInput("garland: need 1 <= k < dim X (k = " + std::to_string(k) + ", dim = " +
                           std::to_string(x.dim()) + ")");
    if (!(epsilon > 0))
        throw InvalidInput("garland: epsilon must be positive");

    GarlandVerdict v;
    v.k = k;
    v.epsilon_margin = epsilon;
    v.min_lambda2 = std::numeric_limits<double>::infinity();
    v.pure_skeleton = skeleton_is_pure(x, k);
    const double needed = static_cast<double>(k) / (k + 1) + epsilon;

    bool ok = v.pure_skeleton;
    for (const Simplex& sigma : x.faces(k - 2)) {
        // Lk(sigma) in the k-skeleton: the graph induced on the common neighbours.
        const VertexSet cn = x.common_neighbors(sigma);
        double lambda2 = 0.0;
        if (cn.count() >= 2) {
            try {
                const auto rep = spectral_report(x.skeleton(), cn);
                lambda2 = rep.connected ? rep.lambda2 : 0.0;
            } catch (const DegenerateDegree&) {
                lambda2 = 0.0;
            }
        }
        ++v.links_checked;
        v.min_lambda2 = std::min(v.min_lambda2, lambda2);
        if (lambda2 - kSpectralSlack < needed && !v.failing_simplex) {
            v.failing_simplex = sigma;
            v.failing_lambda2 = lambda2;
            ok = false;
        }
    }
    v.certified = ok;
    return v;
}

double ergap_threshold(int n, double alpha, double c_alpha)
{
    if (n < 3)
        throw InvalidInput("ergap threshold needs n >= 3 so that ln ln n is defined and positive");
    if (alpha < 0)
        throw InvalidInput("alpha must be nonnegative");
    const double ln = std::log(static_cast<double>(n));
    return ((alpha + 1) * ln + c_alpha * std::sqrt(ln) * std::log(ln)) / n;
}

}  // namespace flagprod
