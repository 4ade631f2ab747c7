// Bound states of symmetric point-well arrays on the line.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 internal solver failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "deltawell/deltawell.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitSolverFailure = 3;

struct PhysicalFlags {
    double mass = 0.0;
    double alpha = 0.0;
    double half_separation_L = 0.0;
    double hbar = 0.0;
    int given = 0;

    std::optional<deltawell::PhysicalParams> params() const {
        if (given == 0) return std::nullopt;
        if (given != 4)
            throw deltawell::invalid_parameters(
                "--mass, --alpha, --L and --hbar must be given together");
        return deltawell::PhysicalParams{mass, alpha, half_separation_L, hbar};
    }
};

void emit(const deltawell::OutputRecord& rec, const std::string& format) {
    const auto fmt = deltawell::parse_format(format);
    if (!fmt)
        throw deltawell::invalid_parameters("unknown format '" + format +
                                            "' (expected csv or json)");
    std::cout << deltawell::render(rec, *fmt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bound states of symmetric Dirac-delta potential arrays"};
    app.require_subcommand(1);

    std::string format = "csv";
    double a = 0.0;
    double a_min = 0.0, a_max = 0.0;
    int steps = 0;
    double xi_max = 0.0;
    int n = 0;
    double u_min = -4.0, u_max = 4.0;
    std::string parity_name;
    std::string oracle_name = "both";
    std::string file_path;
    PhysicalFlags phys;

    auto* solve = app.add_subcommand("solve", "bound states at one coupling a");
    auto* opt_a = solve->add_option("--a", a, "dimensionless coupling");
    auto* opt_mass = solve->add_option("--mass", phys.mass, "particle mass");
    auto* opt_alpha = solve->add_option("--alpha", phys.alpha, "well strength");
    auto* opt_L = solve->add_option("--L", phys.half_separation_L,
                                    "half separation of the wells");
    auto* opt_hbar = solve->add_option("--hbar", phys.hbar, "reduced Planck constant");
    solve->add_option("--format", format, "csv or json");

    auto* scan = app.add_subcommand("scan", "sweep xi roots over a coupling range");
    scan->add_option("--a-min", a_min, "first coupling")->required();
    scan->add_option("--a-max", a_max, "last coupling")->required();
    scan->add_option("--steps", steps, "number of rows")->required();
    scan->add_option("--format", format, "csv or json");

    auto* figure1 = app.add_subcommand(
        "figure1", "sample both sides of exp(-2 xi) = |1 - 2 xi/a|");
    figure1->add_option("--a", a, "dimensionless coupling")->required();
    auto* opt_ximax = figure1->add_option("--xi-max", xi_max,
                                          "upper end of the xi grid (default a + 2)");
    auto* opt_fig_n = figure1->add_option("--n", n, "grid points (default 256)");
    figure1->add_option("--format", format, "csv or json");

    auto* verify = app.add_subcommand("verify",
                                      "cross-check closed forms against oracles");
    verify->add_option("--a", a, "dimensionless coupling")->required();
    verify->add_option("--oracle", oracle_name, "multidelta, fd or both");
    verify->add_option("--format", format, "csv or json");

    auto* wavefunction =
        app.add_subcommand("wavefunction", "sample a normalized eigenfunction");
    wavefunction->add_option("--a", a, "dimensionless coupling")->required();
    wavefunction->add_option("--parity", parity_name, "even or odd")->required();
    wavefunction->add_option("--u-min", u_min, "left end in units of L (default -4)");
    wavefunction->add_option("--u-max", u_max, "right end in units of L (default 4)");
    auto* opt_wf_n = wavefunction->add_option("--n", n, "samples (default 201)");
    wavefunction->add_option("--format", format, "csv or json");

    auto* multi = app.add_subcommand("multi", "spectrum of a delta array from file");
    multi->add_option("--file", file_path, "one 'position strength' pair per line")
        ->required();
    multi->add_option("--format", format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) {
            phys.given = int(opt_mass->count() > 0) + int(opt_alpha->count() > 0) +
                         int(opt_L->count() > 0) + int(opt_hbar->count() > 0);
            const auto params = phys.params();
            double coupling = a;
            if (params) {
                if (opt_a->count() > 0)
                    throw deltawell::invalid_parameters(
                        "--a and the physical parameter group are mutually exclusive");
                coupling = deltawell::dimensionless_coupling(*params).a;
            } else if (opt_a->count() == 0) {
                throw deltawell::invalid_parameters(
                    "solve requires --a or the physical parameter group");
            }
            emit(deltawell::cmd_solve(coupling, params), format);
        } else if (*scan) {
            emit(deltawell::cmd_scan(a_min, a_max, steps), format);
        } else if (*figure1) {
            if (opt_ximax->count() == 0) xi_max = a + 2.0;
            if (opt_fig_n->count() == 0) n = 256;
            emit(deltawell::cmd_figure1(a, xi_max, n), format);
        } else if (*verify) {
            const auto oracle = deltawell::parse_oracle(oracle_name);
            if (!oracle)
                throw deltawell::invalid_parameters(
                    "unknown oracle '" + oracle_name +
                    "' (expected multidelta, fd or both)");
            const auto result = deltawell::cmd_verify(a, *oracle);
            emit(result.record, format);
            if (!result.all_passed) {
                std::cerr << "verify: at least one check failed\n";
                return kExitVerifyFailed;
            }
        } else if (*wavefunction) {
            deltawell::Parity parity;
            if (parity_name == "even")
                parity = deltawell::Parity::even;
            else if (parity_name == "odd")
                parity = deltawell::Parity::odd;
            else
                throw deltawell::invalid_parameters("unknown parity '" + parity_name +
                                                    "' (expected even or odd)");
            if (opt_wf_n->count() == 0) n = 201;
            emit(deltawell::cmd_wavefunction(a, parity, u_min, u_max, n), format);
        } else if (*multi) {
            std::ifstream in(file_path);
            if (!in)
                throw deltawell::invalid_parameters("cannot open file '" + file_path +
                                                    "'");
            emit(deltawell::cmd_multi(deltawell::parse_delta_file(in)), format);
        }
    } catch (const deltawell::solver_failure& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const deltawell::no_such_state& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitSolverFailure;
    }
    return kExitOk;
}
