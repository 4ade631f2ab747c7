#pragma once

#include <cmath>
#include <vector>

#include "deltawell/core.hpp"

namespace deltawell {

namespace detail {

// Beyond this xi the closed normalization forms overflow; asymptotics are
// exact to double precision there (relative error ~ xi * exp(-2 xi)).
inline constexpr double kLargeXi = 350.0;

// c * cosh(xi) and c * sinh(xi) without overflowing the intermediate.
inline double scaled_cosh(double c, double xi) {
    if (xi <= kLargeXi) return c * std::cosh(xi);
    if (c == 0.0) return 0.0;
    const double v = 0.5 * std::exp(std::log(std::fabs(c)) + xi);
    return c > 0.0 ? v : -v;
}

inline double scaled_sinh(double c, double xi) {
    if (xi <= kLargeXi) return c * std::sinh(xi);
    if (c == 0.0) return 0.0;
    const double v = 0.5 * std::exp(std::log(std::fabs(c)) + xi);
    return c > 0.0 ? v : -v;
}

}  // namespace detail

/// Normalization of the closed-form eigenfunctions to unit L2 norm in
/// u = x/L. Closed integrals (interior plus the two exponential tails):
///   even: 1/C^2 = 1 + sinh(2 xi)/(2 xi) + cosh^2(xi)/xi
///   odd:  1/D^2 = sinh(2 xi)/(2 xi) - 1 + sinh^2(xi)/xi
/// Both constants are taken positive.
inline double normalization_constant(Parity parity, double xi) {
    if (!std::isfinite(xi) || !(xi > 0.0))
        throw invalid_parameters("normalization requires finite xi > 0");
    if (xi > detail::kLargeXi)
        return std::sqrt(2.0 * xi) * std::exp(-xi);  // both parities collapse to this
    const double sh2 = std::sinh(2.0 * xi) / (2.0 * xi);
    double norm2;
    if (parity == Parity::even) {
        const double ch = std::cosh(xi);
        norm2 = 1.0 + sh2 + ch * ch / xi;
    } else {
        const double sh = std::sinh(xi);
        norm2 = sh2 - 1.0 + sh * sh / xi;
    }
    return 1.0 / std::sqrt(norm2);
}

/// Closed-form bound-state eigenfunction in the dimensionless coordinate
/// u = x/L, normalized to unit L2 norm:
///   even: C cosh(xi u) inside |u| <= 1, C cosh(xi) e^{-xi(|u|-1)} outside
///   odd:  D sinh(xi u) inside,          D sinh(xi) sgn(u) e^{-xi(|u|-1)} outside
/// Continuous everywhere; the derivative kink at |u| = 1 carries the well.
struct PiecewiseEigenfunction {
    Parity parity;
    double xi;
    double norm_const;  // C (value at u = 0) for even, D (sinh prefactor) for odd
};

inline PiecewiseEigenfunction make_eigenfunction(Parity parity, double xi) {
    return PiecewiseEigenfunction{parity, xi, normalization_constant(parity, xi)};
}

/// Evaluate at u. Both branches agree at |u| = 1; the inner branch is used
/// there so results are bit-deterministic. Evaluation goes through |u|,
/// which makes the parity symmetry phi(-u) = +/- phi(u) exact in floating
/// point as well.
inline double evaluate(const PiecewiseEigenfunction& fn, double u) {
    if (!std::isfinite(u))
        throw invalid_parameters("evaluate requires finite u");
    const double r = std::fabs(u);
    const bool odd = fn.parity == Parity::odd;
    const double sign = (odd && u < 0.0) ? -1.0 : 1.0;
    if (r <= 1.0) {
        const double arg = fn.xi * r;
        if (arg <= detail::kLargeXi)
            return sign * fn.norm_const *
                   (odd ? std::sinh(arg) : std::cosh(arg));
        // large xi: assemble from exponentials in log space
        const double lc = std::log(fn.norm_const);
        const double grow = std::exp(lc + arg);
        const double decay = std::exp(lc - arg);
        return sign * 0.5 * (odd ? grow - decay : grow + decay);
    }
    const double amp = odd ? detail::scaled_sinh(fn.norm_const, fn.xi)
                           : detail::scaled_cosh(fn.norm_const, fn.xi);
    return sign * amp * std::exp(-fn.xi * (r - 1.0));
}

/// One-sided analytic derivatives of phi at u = 1 and the point-well jump
/// residual [phi'(1+) - phi'(1-)] + a phi(1). The jump condition is never
/// imposed by the construction; the residual vanishes exactly when xi
/// solves the quantization condition for this a, which makes it a useful
/// independent consistency probe.
struct DerivativeJump {
    double left_deriv;
    double right_deriv;
    double residual;
};

inline DerivativeJump derivative_jump(const PiecewiseEigenfunction& fn, double a) {
    if (!std::isfinite(a))
        throw invalid_parameters("derivative_jump requires finite a");
    const double c = fn.norm_const;
    const double xi = fn.xi;
    const double amp_cosh = detail::scaled_cosh(c, xi);
    const double amp_sinh = detail::scaled_sinh(c, xi);
    double left, right, value_at_one;
    if (fn.parity == Parity::even) {
        left = xi * amp_sinh;
        right = -xi * amp_cosh;
        value_at_one = amp_cosh;
    } else {
        left = xi * amp_cosh;
        right = -xi * amp_sinh;
        value_at_one = amp_sinh;
    }
    return DerivativeJump{left, right, (right - left) + a * value_at_one};
}

struct Sample {
    double u;
    double phi;
};

/// n uniform samples of phi on [u_min, u_max], endpoints included.
inline std::vector<Sample> sample_grid(const PiecewiseEigenfunction& fn,
                                       double u_min, double u_max, int n) {
    if (!std::isfinite(u_min) || !std::isfinite(u_max) || !(u_min < u_max))
        throw invalid_parameters("sample_grid requires finite u_min < u_max");
    if (n < 2)
        throw invalid_parameters("sample_grid requires n >= 2");
    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(n));
    const double step = (u_max - u_min) / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double u = (k == n - 1) ? u_max : u_min + k * step;
        out.push_back({u, evaluate(fn, u)});
    }
    return out;
}

}  // namespace deltawell
