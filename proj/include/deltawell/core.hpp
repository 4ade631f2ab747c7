#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace deltawell {

// Error taxonomy. The CLI maps these onto its stable exit codes:
// bad input -> 1, verification failure -> 2, solver breakdown -> 3.
struct invalid_parameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a = 0 leaves a free particle; no quantization condition exists.
struct degenerate_coupling : std::domain_error {
    using std::domain_error::domain_error;
};

struct no_bound_state : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested state absent for this coupling (e.g. odd state at a <= 1).
struct no_such_state : std::domain_error {
    using std::domain_error::domain_error;
};

// Grid too coarse to represent a regularized well.
struct resolution_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct solver_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Parity { even, odd };

inline const char* to_string(Parity p) {
    return p == Parity::even ? "even" : "odd";
}

/// Physical data for the symmetric pair of point wells
/// V(x) = -alpha [delta(x+L) + delta(x-L)]; alpha > 0 is attractive.
struct PhysicalParams {
    double mass;
    double alpha;              // well strength, units energy * length
    double half_separation_L;  // wells sit at x = -L and x = +L
    double hbar;
};

inline void validate(const PhysicalParams& p) {
    if (!std::isfinite(p.mass) || !std::isfinite(p.alpha) ||
        !std::isfinite(p.half_separation_L) || !std::isfinite(p.hbar))
        throw invalid_parameters("physical parameters must be finite");
    if (!(p.mass > 0.0) || !(p.half_separation_L > 0.0) || !(p.hbar > 0.0))
        throw invalid_parameters("mass, half_separation_L and hbar must be positive");
}

/// The single dimensionless coupling a = 2 m alpha L / hbar^2 that fixes
/// the whole spectrum. Negative a is the repulsive case.
struct DimensionlessWell {
    double a;
};

inline DimensionlessWell dimensionless_coupling(const PhysicalParams& p) {
    validate(p);
    const double a = 2.0 * p.mass * p.alpha * p.half_separation_L / (p.hbar * p.hbar);
    if (!std::isfinite(a))
        throw invalid_parameters("coupling 2 m alpha L / hbar^2 overflows");
    return DimensionlessWell{a};
}

/// One bound state in dimensionless form. The eigenfunction decays as
/// exp(-xi |x|/L) and the energy in units hbar^2/(2 m L^2) is -xi^2.
/// xi = 0 is excluded: zero energy is not normalizable.
struct BoundState {
    Parity parity;
    double xi;

    double energy_dimensionless() const { return -xi * xi; }
};

inline BoundState make_bound_state(Parity parity, double xi) {
    if (!std::isfinite(xi) || !(xi > 0.0))
        throw invalid_parameters("bound state requires finite xi > 0");
    return BoundState{parity, xi};
}

/// E = -hbar^2 xi^2 / (2 m L^2); strictly negative for every bound state.
inline double physical_energy(const BoundState& state, const PhysicalParams& p) {
    validate(p);
    if (!(state.xi > 0.0) || !std::isfinite(state.xi))
        throw invalid_parameters("bound state requires finite xi > 0");
    const double L = p.half_separation_L;
    return -(p.hbar * p.hbar * state.xi * state.xi) / (2.0 * p.mass * L * L);
}

struct SolverConfig {
    double abs_tolerance = 1e-13;  // bracket width on xi at which bisection stops
    int max_iterations = 200;
    int bracket_scan_points = 64;  // geometric scan for the odd lower bracket
};

inline void validate(const SolverConfig& c) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!std::isfinite(c.abs_tolerance) || !(c.abs_tolerance >= 16.0 * eps))
        throw invalid_parameters("abs_tolerance must be finite and >= 16 * machine epsilon");
    if (c.max_iterations <= 0)
        throw invalid_parameters("max_iterations must be positive");
    if (c.bracket_scan_points <= 0)
        throw invalid_parameters("bracket_scan_points must be positive");
}

}  // namespace deltawell
