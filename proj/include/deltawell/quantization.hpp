#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "deltawell/core.hpp"

namespace deltawell {

/// Residual of the transcendental bound-state condition at coupling a.
///
/// Even states solve   exp(-2 xi) = 2 xi / a - 1,
/// odd states solve    exp(-2 xi) = 1 - 2 xi / a,
/// so the residuals are
///   f(xi) = exp(-2 xi) - (2 xi / a - 1)    (even)
///   g(xi) = exp(-2 xi) - (1 - 2 xi / a)    (odd)
/// Both are smooth in xi; the solvers rely on continuity only.
struct QuantizationResidual {
    Parity parity;
    double a;

    double operator()(double xi) const {
        // The even grouping keeps f(a/2) = exp(-a) exact: 2 xi / a is
        // exactly 1 there and the parenthesized term vanishes.
        if (parity == Parity::even)
            return std::exp(-2.0 * xi) - (2.0 * xi / a - 1.0);
        // identical to g, written via expm1 so the near-total cancellation
        // between exp(-2 xi) - 1 and 2 xi / a at small xi stays accurate
        return std::expm1(-2.0 * xi) + 2.0 * xi / a;
    }
};

inline double residual(Parity parity, double a, double xi) {
    if (!std::isfinite(a))
        throw invalid_parameters("coupling a must be finite");
    if (a == 0.0)
        throw degenerate_coupling("a = 0 is a free particle: no quantization condition");
    if (!std::isfinite(xi) || !(xi >= 0.0))
        throw invalid_parameters("xi must be finite and >= 0");
    return QuantizationResidual{parity, a}(xi);
}

/// Number of (even, odd) bound states: (0,0) for a <= 0, (1,0) for
/// 0 < a <= 1, (1,1) for a > 1. At a = 1 the odd condition is tangent to
/// the decaying exponential at xi = 0 only, which is not a bound state.
inline std::pair<int, int> count_bound_states(double a) {
    if (!std::isfinite(a))
        throw invalid_parameters("coupling a must be finite");
    if (a <= 0.0) return {0, 0};
    if (a <= 1.0) return {1, 0};
    return {1, 1};
}

namespace detail {

// Plain bisection on a bracket with opposite residual signs (an endpoint
// residual of exactly zero short-circuits to that endpoint). Stops when the
// bracket is narrower than tol or cannot be split at double resolution.
template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double flo, double fhi,
              const SolverConfig& cfg) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int i = 0; i < cfg.max_iterations; ++i) {
        if (hi - lo <= cfg.abs_tolerance) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;  // bracket is one ulp wide
        const double fmid = fn(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    if (hi - lo <= cfg.abs_tolerance) return 0.5 * (lo + hi);
    throw solver_failure("bisection did not converge within max_iterations");
}

}  // namespace detail

/// Unique even bound state for a > 0.
///
/// Bracket lemma: any root has 0 <= 2 xi/a - 1 <= 1 because exp(-2 xi) lies
/// in (0, 1], i.e. xi in [a/2, a]; and f(a/2) = exp(-a) > 0 while
/// f(a) = exp(-2a) - 1 < 0, so the bracket always holds a sign change.
/// f'(xi) = -2 exp(-2 xi) - 2/a < 0, so the root is unique.
inline BoundState solve_even(double a, const SolverConfig& cfg = {}) {
    validate(cfg);
    if (!std::isfinite(a))
        throw invalid_parameters("coupling a must be finite");
    if (!(a > 0.0))
        throw no_bound_state("even bound state requires a > 0");
    const QuantizationResidual f{Parity::even, a};
    const double lo = 0.5 * a;
    const double hi = a;
    // f(a/2) = exp(-a) underflows to zero for a beyond ~745; the root then
    // equals a/2 at double resolution and bisect() returns it directly.
    const double xi = detail::bisect(f, lo, hi, f(lo), f(hi), cfg);
    return BoundState{Parity::even, xi};
}

/// Odd bound state, present only for a > 1. The odd residual always
/// vanishes at xi = 0 (zero energy, not normalizable), so the lower
/// bracket is found by a geometric scan from a/2 toward zero; the scan
/// ratio covers 12 decades in cfg.bracket_scan_points steps. For a <= 1
/// the only root is the excluded xi = 0 and nullopt is returned.
inline std::optional<BoundState> solve_odd(double a, const SolverConfig& cfg = {}) {
    validate(cfg);
    if (!std::isfinite(a))
        throw invalid_parameters("coupling a must be finite");
    if (a <= 1.0) return std::nullopt;
    const QuantizationResidual g{Parity::odd, a};
    const double hi = 0.5 * a;
    const double ghi = g(hi);  // = exp(-a) > 0, or rounds to 0 for a beyond ~36
    if (ghi == 0.0) return BoundState{Parity::odd, hi};
    const double ratio = std::pow(10.0, -12.0 / cfg.bracket_scan_points);
    double lo = hi * ratio;
    double glo = g(lo);
    for (int k = 1; glo > 0.0 && k < cfg.bracket_scan_points; ++k) {
        lo *= ratio;
        glo = g(lo);
    }
    if (glo == 0.0) return BoundState{Parity::odd, lo};
    if (glo > 0.0)
        throw solver_failure("no sign change found below a/2 for the odd condition");
    const double xi = detail::bisect(g, lo, hi, glo, ghi, cfg);
    return BoundState{Parity::odd, xi};
}

/// Residual of the combined boundary relation (decay at infinity plus
/// continuity at the well), in units L = 1:
///   phi0 * (1 - (a/xi) e^{-xi} cosh xi) + dphi0 * (1/xi)(1 - (a/xi) e^{-xi} sinh xi).
/// Vanishes for (phi0, dphi0) = (1, 0) exactly on the even condition and
/// for (0, 1) exactly on the odd condition.
inline double phipil_residual(double phi0, double dphi0, double xi, double a) {
    if (!std::isfinite(phi0) || !std::isfinite(dphi0) || !std::isfinite(xi) ||
        !std::isfinite(a))
        throw invalid_parameters("phipil_residual requires finite inputs");
    if (!(xi > 0.0))
        throw invalid_parameters("phipil_residual requires xi > 0");
    if (a == 0.0)
        throw invalid_parameters("phipil_residual requires a != 0");
    const double w = (a / xi) * std::exp(-xi);
    return phi0 * (1.0 - w * std::cosh(xi)) +
           dphi0 * (1.0 / xi) * (1.0 - w * std::sinh(xi));
}

}  // namespace deltawell
