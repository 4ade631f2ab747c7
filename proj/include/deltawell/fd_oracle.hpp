#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "deltawell/core.hpp"

namespace deltawell {

/// Symmetric tridiagonal discretization of -d^2/du^2 - a [bump(u+1) + bump(u-1)]
/// on [-W, W] with Dirichlet walls. Each point well is regularized as a
/// top-hat of height 1/w on [c - w/2, c + w/2), so its area stays exactly
/// the delta strength. Grid: u_i = -W + (i+1) h, h = 2W/(n+1).
struct GridHamiltonian {
    double domain_half_width;
    int n_points;
    double well_width;
    std::vector<double> diag;
    double offdiag;  // uniform -1/h^2

    double h() const { return 2.0 * domain_half_width / (n_points + 1); }
    double grid_point(int i) const { return -domain_half_width + (i + 1) * h(); }
};

inline GridHamiltonian build_hamiltonian(double a, double domain_half_width,
                                         int n_points, double well_width) {
    if (!std::isfinite(a))
        throw invalid_parameters("coupling a must be finite");
    if (!std::isfinite(domain_half_width) || !(domain_half_width > 0.0))
        throw invalid_parameters("domain_half_width must be positive");
    if (n_points < 3)
        throw invalid_parameters("n_points must be at least 3");
    if (!std::isfinite(well_width) || !(well_width > 0.0))
        throw invalid_parameters("well_width must be positive");

    GridHamiltonian H;
    H.domain_half_width = domain_half_width;
    H.n_points = n_points;
    H.well_width = well_width;
    const double h = H.h();
    if (well_width < 2.0 * h)
        throw resolution_error("well_width must span at least two grid cells (w >= 2h)");

    H.diag.assign(static_cast<std::size_t>(n_points), 2.0 / (h * h));
    H.offdiag = -1.0 / (h * h);

    // Bump membership by index, snapping near-integer cell boundaries so a
    // commensurate grid (w a multiple of h, edges on grid points) samples
    // exactly w/h points and the Riemann sum of the bump is exact.
    const double u0 = -domain_half_width + h;
    for (double center : {-1.0, 1.0}) {
        const double t_lo = ((center - 0.5 * well_width) - u0) / h;
        const double t_hi = ((center + 0.5 * well_width) - u0) / h;
        const long i_lo = std::max(0L, static_cast<long>(std::ceil(t_lo - 1e-9)));
        const long i_hi = std::min(static_cast<long>(n_points),
                                   static_cast<long>(std::ceil(t_hi - 1e-9)));
        for (long i = i_lo; i < i_hi; ++i)
            H.diag[static_cast<std::size_t>(i)] -= a / well_width;
    }
    return H;
}

inline double gershgorin_lower(const GridHamiltonian& H) {
    return *std::min_element(H.diag.begin(), H.diag.end()) - 2.0 * std::fabs(H.offdiag);
}

inline double gershgorin_upper(const GridHamiltonian& H) {
    return *std::max_element(H.diag.begin(), H.diag.end()) + 2.0 * std::fabs(H.offdiag);
}

/// Number of eigenvalues strictly below threshold, by the Sturm sign count
/// on the LDL^T pivots of H - threshold * I.
inline int eigenvalues_below(const GridHamiltonian& H, double threshold) {
    if (!std::isfinite(threshold))
        throw invalid_parameters("threshold must be finite");
    const double e2 = H.offdiag * H.offdiag;
    const double pivmin =
        std::max(e2, 1.0) * std::numeric_limits<double>::min() * 4.0;
    int count = 0;
    double q = 0.0;
    for (std::size_t i = 0; i < H.diag.size(); ++i) {
        q = (i == 0) ? H.diag[0] - threshold : H.diag[i] - threshold - e2 / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

/// k smallest eigenvalues, ascending, each located by Sturm-count bisection
/// to absolute width tol (or to double resolution, whichever comes first).
inline std::vector<double> lowest_eigenvalues(const GridHamiltonian& H, int k,
                                              double tol) {
    if (k < 1 || k > H.n_points)
        throw invalid_parameters("lowest_eigenvalues requires 1 <= k <= n_points");
    if (!std::isfinite(tol) || !(tol > 0.0))
        throw invalid_parameters("tol must be positive");
    const double glo = gershgorin_lower(H);
    const double ghi = gershgorin_upper(H);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) {
        double lo = glo, hi = ghi;
        for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (eigenvalues_below(H, mid) >= j)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace deltawell
