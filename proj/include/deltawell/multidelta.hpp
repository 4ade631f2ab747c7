#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "deltawell/core.hpp"

namespace deltawell {

struct Delta {
    double position;  // units of the reference length
    double strength;  // dimensionless, 2 m alpha_i L_ref / hbar^2; > 0 attractive
};

/// Ordered array of point wells; positions strictly increasing.
struct DeltaArray {
    std::vector<Delta> deltas;
};

inline void validate(const DeltaArray& arr) {
    if (arr.deltas.empty())
        throw invalid_parameters("delta array requires at least one delta");
    for (std::size_t i = 0; i < arr.deltas.size(); ++i) {
        const Delta& d = arr.deltas[i];
        if (!std::isfinite(d.position) || !std::isfinite(d.strength))
            throw invalid_parameters("delta positions and strengths must be finite");
        if (i > 0 && !(arr.deltas[i - 1].position < d.position))
            throw invalid_parameters("delta positions must be strictly increasing");
    }
}

/// 2x2 map of the coefficients (A, B) of phi(x) = A e^{kappa x} + B e^{-kappa x}
/// across one delta. Unimodular: det = 1 for every delta.
struct TransferStep {
    double m00, m01;
    double m10, m11;

    double determinant() const { return m00 * m11 - m01 * m10; }

    void apply(double& A, double& B) const {
        const double a2 = m00 * A + m01 * B;
        const double b2 = m10 * A + m11 * B;
        A = a2;
        B = b2;
    }
};

/// Transfer matrix of a single delta at x0: phi stays continuous and the
/// derivative jumps by phi'(x0+) - phi'(x0-) = -strength * phi(x0).
/// With t = strength / (2 kappa):
///   A' = (1 - t) A - t e^{-2 kappa x0} B
///   B' =  t e^{2 kappa x0} A + (1 + t) B
inline TransferStep delta_transfer(double kappa, double position, double strength) {
    if (!std::isfinite(kappa) || !(kappa > 0.0))
        throw invalid_parameters("delta_transfer requires kappa > 0");
    if (!std::isfinite(position) || !std::isfinite(strength))
        throw invalid_parameters("delta_transfer requires finite position and strength");
    const double t = strength / (2.0 * kappa);
    const double grow = std::exp(2.0 * kappa * position);
    const double decay = std::exp(-2.0 * kappa * position);
    return TransferStep{1.0 - t, -t * decay, t * grow, 1.0 + t};
}

namespace detail {

// Propagate (A, B) from the pure left-decaying start (1, 0) through the
// chain, working in the local frame of each delta and factoring the growing
// exponential out of every gap so nothing overflows. Also accumulates the
// magnitude of the terms feeding A: floating noise in the returned
// coefficient is O(eps * magnitude), which callers use as a resolvability
// floor when hunting sign changes.
struct ChainResult {
    double growing_coeff;  // final A up to a positive rescaling
    double magnitude;      // accumulated |term| bound for noise estimates
};

inline ChainResult propagate_chain(double kappa, const DeltaArray& arr) {
    double A = 1.0, B = 0.0;
    double Am = 1.0, Bm = 0.0;
    double prev = arr.deltas.front().position;
    for (const Delta& d : arr.deltas) {
        const double damp = std::exp(-2.0 * kappa * (d.position - prev));
        B *= damp;
        Bm *= damp;
        const TransferStep step = delta_transfer(kappa, 0.0, d.strength);
        step.apply(A, B);
        const double t = d.strength / (2.0 * kappa);
        const double am2 = Am * std::fabs(1.0 - t) + Bm * std::fabs(t);
        const double bm2 = Am * std::fabs(t) + Bm * std::fabs(1.0 + t);
        Am = am2;
        Bm = bm2;
        prev = d.position;
    }
    return ChainResult{A, Am};
}

}  // namespace detail

/// Coefficient of the growing exponential to the right of the last delta,
/// starting from the solution that decays toward -infinity. Zero exactly
/// at the bound-state kappa values. A positive factor exp(kappa * span) is
/// divided out during propagation, which leaves zeros and signs intact and
/// keeps the value representable for arbitrarily wide arrays.
inline double bound_state_residual(double kappa, const DeltaArray& arr) {
    validate(arr);
    if (!std::isfinite(kappa) || !(kappa > 0.0))
        throw invalid_parameters("bound_state_residual requires kappa > 0");
    return detail::propagate_chain(kappa, arr).growing_coeff;
}

struct SpectrumLine {
    double kappa;
    double energy_dimensionless;  // -kappa^2 in units hbar^2/(2 m L_ref^2)
};

namespace detail {

inline bool resolved(const ChainResult& r, double noise_factor) {
    return std::fabs(r.growing_coeff) >
           noise_factor * std::numeric_limits<double>::epsilon() * r.magnitude;
}

// Golden-section descent of sign * R over [lo, hi] around the sampled
// extremum x1. Returns an abscissa where sign * R < 0 if the dip crosses
// zero; nullopt when it bottoms out above zero or inside the noise floor.
// Near-degenerate pairs (e.g. both parities of a wide symmetric double
// delta) sit in a single grid cell and are only reachable this way.
inline std::optional<double> dip_crossing(const DeltaArray& arr, double kappa_sign,
                                          double lo, double x1, double hi,
                                          double h1, double noise_factor) {
    constexpr double golden = 0.61803398874989485;
    for (int i = 0; i < 240; ++i) {
        if (h1 < 0.0) return x1;
        const double x2 = (hi - x1 > x1 - lo) ? x1 + (1.0 - golden) * (hi - x1)
                                              : x1 - (1.0 - golden) * (x1 - lo);
        const ChainResult probe = propagate_chain(x2, arr);
        if (!resolved(probe, noise_factor)) return std::nullopt;
        const double h2 = kappa_sign * probe.growing_coeff;
        if (h2 < 0.0) return x2;
        if (x2 > x1) {
            if (h2 < h1) { lo = x1; x1 = x2; h1 = h2; }
            else hi = x2;
        } else {
            if (h2 < h1) { hi = x1; x1 = x2; h1 = h2; }
            else lo = x2;
        }
        if (hi - lo <= std::fabs(x1) * 1e-15) break;
    }
    return std::nullopt;
}

inline double bisect_kappa(const DeltaArray& arr, double lo, double hi,
                           double flo, const SolverConfig& cfg) {
    for (int i = 0; i < cfg.max_iterations; ++i) {
        if (hi - lo <= cfg.abs_tolerance) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = propagate_chain(mid, arr).growing_coeff;
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// All bound states of the array, ground state first (ascending energy,
/// i.e. descending kappa). Sign changes of the residual are located on a
/// log-spaced kappa grid up to 1.5x the merged-delta bound
/// sum(max(strength, 0)); sampled extrema are then probed by golden-section
/// search so near-degenerate pairs inside one grid cell are still split.
/// An all-repulsive array has no bound states and yields an empty list.
inline std::vector<SpectrumLine> solve_spectrum(const DeltaArray& arr,
                                                const SolverConfig& cfg = {},
                                                int grid_points = 512) {
    validate(arr);
    validate(cfg);
    if (grid_points < 8)
        throw invalid_parameters("solve_spectrum requires grid_points >= 8");

    double positive_total = 0.0;
    for (const Delta& d : arr.deltas) positive_total += std::max(d.strength, 0.0);
    if (!(positive_total > 0.0)) return {};

    const double kappa_max = 1.5 * positive_total;
    const double kappa_min = cfg.abs_tolerance;
    const double noise_factor = 8.0 * static_cast<double>(arr.deltas.size());

    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    std::vector<detail::ChainResult> vals(grid.size());
    const double log_ratio = std::log(kappa_max / kappa_min) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        grid[i] = (i == grid_points - 1) ? kappa_max
                                         : kappa_min * std::exp(log_ratio * i);
        vals[i] = detail::propagate_chain(grid[i], arr);
    }

    std::vector<double> roots;
    struct Bracket {
        double lo, hi, flo;
    };
    std::vector<Bracket> brackets;

    for (int i = 0; i + 1 < grid_points; ++i) {
        const double v0 = vals[i].growing_coeff;
        const double v1 = vals[i + 1].growing_coeff;
        if (v0 * v1 < 0.0 && detail::resolved(vals[i], noise_factor) &&
            detail::resolved(vals[i + 1], noise_factor))
            brackets.push_back({grid[i], grid[i + 1], v0});
    }
    // exact zeros on the grid count as roots when flanked by a clean sign change
    for (int i = 1; i + 1 < grid_points; ++i) {
        if (vals[i].growing_coeff == 0.0 &&
            detail::resolved(vals[i - 1], noise_factor) &&
            detail::resolved(vals[i + 1], noise_factor) &&
            vals[i - 1].growing_coeff * vals[i + 1].growing_coeff < 0.0)
            roots.push_back(grid[i]);
    }
    // probe sampled extrema for dips that cross zero inside one cell
    for (int i = 1; i + 1 < grid_points; ++i) {
        const double v0 = vals[i - 1].growing_coeff;
        const double v1 = vals[i].growing_coeff;
        const double v2 = vals[i + 1].growing_coeff;
        if (v0 == 0.0 || v1 == 0.0 || v2 == 0.0) continue;
        if ((v0 > 0.0) != (v1 > 0.0) || (v0 > 0.0) != (v2 > 0.0)) continue;
        if (!(std::fabs(v1) <= std::fabs(v0) && std::fabs(v1) <= std::fabs(v2)))
            continue;
        if (!detail::resolved(vals[i - 1], noise_factor) ||
            !detail::resolved(vals[i + 1], noise_factor))
            continue;
        const double outside = v1 > 0.0 ? 1.0 : -1.0;
        const auto crossing = detail::dip_crossing(arr, outside, grid[i - 1], grid[i],
                                                   grid[i + 1], outside * v1,
                                                   noise_factor);
        if (crossing) {
            const double fc = detail::propagate_chain(*crossing, arr).growing_coeff;
            brackets.push_back({grid[i - 1], *crossing, v0});
            brackets.push_back({*crossing, grid[i + 1], fc});
        }
    }

    for (const Bracket& b : brackets)
        roots.push_back(detail::bisect_kappa(arr, b.lo, b.hi, b.flo, cfg));

    std::sort(roots.begin(), roots.end());
    std::vector<SpectrumLine> out;
    for (double k : roots) {
        if (!out.empty() &&
            k - out.back().kappa <= 1e-11 * std::max(1.0, k))
            continue;
        out.push_back({k, -k * k});
    }
    std::reverse(out.begin(), out.end());  // deepest (largest kappa) first
    return out;
}

}  // namespace deltawell
