#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "deltawell/core.hpp"
#include "deltawell/eigenfunction.hpp"
#include "deltawell/fd_oracle.hpp"
#include "deltawell/multidelta.hpp"
#include "deltawell/output.hpp"
#include "deltawell/quantization.hpp"

namespace deltawell {

inline constexpr const char* kToolName = "deltawell";
inline constexpr const char* kToolVersion = "0.1.0";

// verify tolerances, fixed per oracle
inline constexpr double kVerifyMultideltaXiTol = 1e-10;
inline constexpr double kVerifyFdEnergyRelTol = 2e-2;

// fd oracle default resolution
inline constexpr double kFdDefaultDomainHalfWidth = 20.0;
inline constexpr double kFdDefaultWellWidth = 0.01;  // h = w/4
inline constexpr double kFdEigenvalueTol = 1e-9;
inline constexpr long kFdMaxPoints = 8'000'000;

enum class OracleKind { multidelta, fd, both };

inline std::optional<OracleKind> parse_oracle(const std::string& s) {
    if (s == "multidelta") return OracleKind::multidelta;
    if (s == "fd") return OracleKind::fd;
    if (s == "both") return OracleKind::both;
    return std::nullopt;
}

/// All bound states at coupling a, ascending energy (even state first).
inline std::vector<BoundState> bound_states(double a, const SolverConfig& cfg = {}) {
    std::vector<BoundState> states;
    const auto [n_even, n_odd] = count_bound_states(a);
    if (n_even > 0) states.push_back(solve_even(a, cfg));
    if (n_odd > 0) states.push_back(*solve_odd(a, cfg));
    return states;
}

namespace detail {

inline KeyValues standard_metadata(const SolverConfig& cfg) {
    return {{"tool", std::string(kToolName)},
            {"version", std::string(kToolVersion)},
            {"abs_tolerance", cfg.abs_tolerance}};
}

}  // namespace detail

/// Bound states at one coupling. Zero rows plus a note for a <= 0; with
/// physical parameters given, an extra column carries the dimensional
/// energy -hbar^2 xi^2 / (2 m L^2).
inline OutputRecord cmd_solve(double a,
                              const std::optional<PhysicalParams>& phys = {},
                              const SolverConfig& cfg = {}) {
    if (!std::isfinite(a)) throw invalid_parameters("coupling a must be finite");
    validate(cfg);
    OutputRecord rec;
    rec.command = "solve";
    rec.inputs = {{"a", a}};
    if (phys) {
        validate(*phys);
        rec.inputs.push_back({"mass", phys->mass});
        rec.inputs.push_back({"alpha", phys->alpha});
        rec.inputs.push_back({"half_separation_L", phys->half_separation_L});
        rec.inputs.push_back({"hbar", phys->hbar});
    }
    rec.metadata = detail::standard_metadata(cfg);
    rec.main.name = "rows";
    rec.main.columns = {"parity", "xi", "energy_dimensionless"};
    if (phys) rec.main.columns.push_back("energy_physical");
    if (a <= 0.0) {
        rec.note = a < 0.0 ? "repulsive: no bound states"
                           : "zero coupling: no bound states";
        return rec;
    }
    for (const BoundState& s : bound_states(a, cfg)) {
        std::vector<Cell> row{std::string(to_string(s.parity)), s.xi,
                              s.energy_dimensionless()};
        if (phys) row.push_back(physical_energy(s, *phys));
        rec.main.rows.push_back(std::move(row));
    }
    return rec;
}

/// One row per coupling on a uniform grid: a, xi_even, xi_odd (empty cell
/// where the odd state does not exist). A degenerate range a_min == a_max
/// repeats the same coupling.
inline OutputRecord cmd_scan(double a_min, double a_max, int steps,
                             const SolverConfig& cfg = {}) {
    if (!std::isfinite(a_min) || !std::isfinite(a_max) || !(a_min > 0.0) ||
        !(a_min <= a_max))
        throw invalid_parameters("scan requires 0 < a_min <= a_max");
    if (steps < 2) throw invalid_parameters("scan requires steps >= 2");
    validate(cfg);
    OutputRecord rec;
    rec.command = "scan";
    rec.inputs = {{"a_min", a_min}, {"a_max", a_max}, {"steps", double(steps)}};
    rec.metadata = detail::standard_metadata(cfg);
    rec.main.name = "rows";
    rec.main.columns = {"a", "xi_even", "xi_odd"};
    const double step = (a_max - a_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        const double a = (i == steps - 1) ? a_max : a_min + i * step;
        const BoundState even = solve_even(a, cfg);
        const auto odd = solve_odd(a, cfg);
        std::vector<Cell> row{a, even.xi,
                              odd ? Cell{odd->xi} : Cell{std::monostate{}}};
        rec.main.rows.push_back(std::move(row));
    }
    return rec;
}

/// Both sides of the quantization condition exp(-2 xi) = |1 - 2 xi / a|
/// sampled on [0, xi_max], plus the intersection abscissas delivered by the
/// solvers in an "intersections" table.
inline OutputRecord cmd_figure1(double a, double xi_max, int n,
                                const SolverConfig& cfg = {}) {
    if (!std::isfinite(a) || !(a > 0.0))
        throw invalid_parameters("figure1 requires a > 0");
    if (!std::isfinite(xi_max) || !(xi_max > 0.0))
        throw invalid_parameters("figure1 requires xi_max > 0");
    if (n < 2) throw invalid_parameters("figure1 requires n >= 2");
    validate(cfg);
    OutputRecord rec;
    rec.command = "figure1";
    rec.inputs = {{"a", a}, {"xi_max", xi_max}, {"n", double(n)}};
    rec.metadata = detail::standard_metadata(cfg);
    rec.main.name = "rows";
    rec.main.columns = {"xi", "exp_neg_2xi", "abs_one_minus_2xi_over_a"};
    const double step = xi_max / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double xi = (i == n - 1) ? xi_max : i * step;
        rec.main.rows.push_back(
            {xi, std::exp(-2.0 * xi), std::fabs(1.0 - 2.0 * xi / a)});
    }
    Table inter;
    inter.name = "intersections";
    inter.columns = {"parity", "xi"};
    for (const BoundState& s : bound_states(a, cfg))
        inter.rows.push_back({std::string(to_string(s.parity)), s.xi});
    rec.extra.push_back(std::move(inter));
    return rec;
}

struct VerifyResult {
    OutputRecord record;
    bool all_passed;
};

namespace detail {

inline void verify_row(OutputRecord& rec, bool& all_passed, const char* oracle,
                       const std::string& quantity, Cell closed, Cell observed,
                       double error, const char* error_type, double tolerance,
                       bool pass) {
    rec.main.rows.push_back({std::string(oracle), quantity, std::move(closed),
                             std::move(observed), error, std::string(error_type),
                             tolerance, std::string(pass ? "pass" : "fail")});
    all_passed = all_passed && pass;
}

inline void verify_multidelta(OutputRecord& rec, bool& all_passed, double a,
                              const std::vector<BoundState>& states,
                              const SolverConfig& cfg) {
    const DeltaArray arr{{{-1.0, a}, {1.0, a}}};
    const auto spectrum = solve_spectrum(arr, cfg);
    const bool count_ok = spectrum.size() == states.size();
    verify_row(rec, all_passed, "multidelta", "count", double(states.size()),
               double(spectrum.size()), std::fabs(double(spectrum.size()) -
                                                  double(states.size())),
               "abs", 0.0, count_ok);
    if (!count_ok) return;
    for (std::size_t i = 0; i < states.size(); ++i) {
        // both lists are ordered by ascending energy
        const double diff = std::fabs(spectrum[i].kappa - states[i].xi);
        verify_row(rec, all_passed, "multidelta",
                   std::string("xi_") + to_string(states[i].parity),
                   states[i].xi, spectrum[i].kappa, diff, "abs",
                   kVerifyMultideltaXiTol, diff <= kVerifyMultideltaXiTol);
    }
}

inline void verify_fd(OutputRecord& rec, bool& all_passed, double a,
                      const std::vector<BoundState>& states) {
    try {
        // Default resolution; the domain grows (in whole units, which keeps
        // the bump edges on grid points) when a shallow state needs room to
        // decay before the Dirichlet wall.
        double W = kFdDefaultDomainHalfWidth;
        for (const BoundState& s : states)
            W = std::max(W, std::ceil(1.0 + 5.0 / s.xi));
        const double w = kFdDefaultWellWidth;
        const double h = w / 4.0;
        const long n = std::lround(2.0 * W / h) - 1;
        if (n > kFdMaxPoints)
            throw solver_failure("fd oracle grid too large: state too shallow "
                                 "to resolve at default resolution");
        const GridHamiltonian H =
            build_hamiltonian(a, W, static_cast<int>(n), w);
        const int negatives = eigenvalues_below(H, 0.0);
        const bool count_ok = negatives == static_cast<int>(states.size());
        verify_row(rec, all_passed, "fd", "count", double(states.size()),
                   double(negatives),
                   std::fabs(double(negatives) - double(states.size())), "abs",
                   0.0, count_ok);
        if (!count_ok || states.empty()) return;
        const auto evs =
            lowest_eigenvalues(H, static_cast<int>(states.size()), kFdEigenvalueTol);
        for (std::size_t i = 0; i < states.size(); ++i) {
            const double exact = states[i].energy_dimensionless();
            const double rel = std::fabs(evs[i] - exact) / std::fabs(exact);
            verify_row(rec, all_passed, "fd",
                       std::string("energy_") + to_string(states[i].parity),
                       exact, evs[i], rel, "rel", kVerifyFdEnergyRelTol,
                       rel <= kVerifyFdEnergyRelTol);
        }
    } catch (const std::exception& e) {
        verify_row(rec, all_passed, "fd", "count", double(states.size()),
                   std::monostate{}, std::numeric_limits<double>::quiet_NaN(),
                   "abs", 0.0, false);
        rec.note = std::string("fd oracle failed: ") + e.what();
    }
}

}  // namespace detail

/// Cross-check the closed-form spectrum against the selected independent
/// oracles. Tolerances: 1e-10 absolute on xi for the transfer-matrix
/// oracle, 2e-2 relative on energy for the finite-difference oracle at its
/// default resolution. Any failing row makes all_passed false.
inline VerifyResult cmd_verify(double a, OracleKind oracle,
                               const SolverConfig& cfg = {}) {
    if (!std::isfinite(a)) throw invalid_parameters("coupling a must be finite");
    validate(cfg);
    OutputRecord rec;
    rec.command = "verify";
    const char* oracle_name = oracle == OracleKind::multidelta ? "multidelta"
                              : oracle == OracleKind::fd       ? "fd"
                                                               : "both";
    rec.inputs = {{"a", a}, {"oracle", std::string(oracle_name)}};
    rec.metadata = detail::standard_metadata(cfg);
    rec.metadata.push_back({"multidelta_xi_tol", kVerifyMultideltaXiTol});
    rec.metadata.push_back({"fd_energy_rel_tol", kVerifyFdEnergyRelTol});
    rec.metadata.push_back({"fd_well_width", kFdDefaultWellWidth});
    rec.main.name = "rows";
    rec.main.columns = {"oracle",     "quantity",   "closed_form", "oracle_value",
                        "error",      "error_type", "tolerance",   "status"};
    const auto states = bound_states(a, cfg);
    bool all_passed = true;
    if (oracle == OracleKind::multidelta || oracle == OracleKind::both)
        detail::verify_multidelta(rec, all_passed, a, states, cfg);
    if (oracle == OracleKind::fd || oracle == OracleKind::both)
        detail::verify_fd(rec, all_passed, a, states);
    return VerifyResult{std::move(rec), all_passed};
}

/// Samples of the normalized eigenfunction of the requested parity.
inline OutputRecord cmd_wavefunction(double a, Parity parity, double u_min,
                                     double u_max, int n,
                                     const SolverConfig& cfg = {}) {
    if (!std::isfinite(a)) throw invalid_parameters("coupling a must be finite");
    validate(cfg);
    const auto [n_even, n_odd] = count_bound_states(a);
    if (parity == Parity::odd && n_odd == 0)
        throw no_such_state("odd bound state requires a > 1");
    if (parity == Parity::even && n_even == 0)
        throw no_such_state("even bound state requires a > 0");
    const BoundState state =
        parity == Parity::even ? solve_even(a, cfg) : *solve_odd(a, cfg);
    const PiecewiseEigenfunction fn = make_eigenfunction(parity, state.xi);
    OutputRecord rec;
    rec.command = "wavefunction";
    rec.inputs = {{"a", a},
                  {"parity", std::string(to_string(parity))},
                  {"u_min", u_min},
                  {"u_max", u_max},
                  {"n", double(n)}};
    rec.metadata = detail::standard_metadata(cfg);
    rec.scalars = {{"xi", state.xi},
                   {"energy_dimensionless", state.energy_dimensionless()},
                   {"norm_const", fn.norm_const}};
    rec.main.name = "rows";
    rec.main.columns = {"u", "phi"};
    for (const Sample& s : sample_grid(fn, u_min, u_max, n))
        rec.main.rows.push_back({s.u, s.phi});
    return rec;
}

/// Spectrum of an arbitrary delta array, ground state first.
inline OutputRecord cmd_multi(const DeltaArray& arr, const SolverConfig& cfg = {}) {
    validate(arr);
    validate(cfg);
    OutputRecord rec;
    rec.command = "multi";
    rec.inputs = {{"n_deltas", double(arr.deltas.size())}};
    rec.metadata = detail::standard_metadata(cfg);
    rec.main.name = "rows";
    rec.main.columns = {"kappa", "energy_dimensionless"};
    const auto spectrum = solve_spectrum(arr, cfg);
    if (spectrum.empty())
        rec.note = "no bound states (no attractive strength or too weak)";
    for (const SpectrumLine& line : spectrum)
        rec.main.rows.push_back({line.kappa, line.energy_dimensionless});
    return rec;
}

/// Parse a delta-array file: one "position strength" pair per line,
/// '#' starts a comment, blank lines ignored. Pairs are sorted by position;
/// duplicate positions are rejected.
inline DeltaArray parse_delta_file(std::istream& in) {
    DeltaArray arr;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        double pos, strength;
        if (!(ls >> pos >> strength))
            throw invalid_parameters("delta file line " + std::to_string(line_no) +
                                     ": expected 'position strength'");
        std::string trailing;
        if (ls >> trailing)
            throw invalid_parameters("delta file line " + std::to_string(line_no) +
                                     ": unexpected trailing token '" + trailing +
                                     "'");
        if (!std::isfinite(pos) || !std::isfinite(strength))
            throw invalid_parameters("delta file line " + std::to_string(line_no) +
                                     ": values must be finite");
        arr.deltas.push_back({pos, strength});
    }
    std::sort(arr.deltas.begin(), arr.deltas.end(),
              [](const Delta& x, const Delta& y) { return x.position < y.position; });
    for (std::size_t i = 1; i < arr.deltas.size(); ++i)
        if (!(arr.deltas[i - 1].position < arr.deltas[i].position))
            throw invalid_parameters("duplicate delta position " +
                                     format_number(arr.deltas[i].position));
    if (arr.deltas.empty())
        throw invalid_parameters("delta file contains no deltas");
    return arr;
}

}  // namespace deltawell
