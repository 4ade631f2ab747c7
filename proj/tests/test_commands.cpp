#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <variant>

#include "deltawell/commands.hpp"

using namespace deltawell;
using Catch::Approx;

namespace {

double num(const Cell& c) { return std::get<double>(c); }
std::string text(const Cell& c) { return std::get<std::string>(c); }

}  // namespace

TEST_CASE("solve emits one row per state") {
    const OutputRecord rec = cmd_solve(2.0);
    REQUIRE(rec.main.rows.size() == 2);
    CHECK(text(rec.main.rows[0][0]) == "even");
    CHECK(num(rec.main.rows[0][1]) == Approx(1.1089).margin(1e-3));
    CHECK(num(rec.main.rows[0][2]) == Approx(-1.2296).margin(1e-3));
    CHECK(text(rec.main.rows[1][0]) == "odd");
    CHECK(num(rec.main.rows[1][1]) == Approx(0.7968).margin(1e-3));
    CHECK(num(rec.main.rows[1][2]) == Approx(-0.6349).margin(1e-3));
    CHECK_FALSE(rec.note.has_value());
}

TEST_CASE("solve reports no rows for repulsive or zero coupling") {
    const OutputRecord rep = cmd_solve(-1.0);
    CHECK(rep.main.rows.empty());
    CHECK(rep.note == "repulsive: no bound states");
    const OutputRecord zero = cmd_solve(0.0);
    CHECK(zero.main.rows.empty());
    REQUIRE(zero.note.has_value());
    const OutputRecord shallow = cmd_solve(0.5);
    REQUIRE(shallow.main.rows.size() == 1);
    CHECK(text(shallow.main.rows[0][0]) == "even");
}

TEST_CASE("solve converts physical parameters") {
    const PhysicalParams p{1.0, 1.0, 1.0, 1.0};  // a = 2
    const OutputRecord rec = cmd_solve(2.0, p);
    REQUIRE(rec.main.columns.size() == 4);
    CHECK(rec.main.columns[3] == "energy_physical");
    // E = -hbar^2 xi^2 / (2 m L^2) = -xi^2 / 2 here
    const double xi = num(rec.main.rows[0][1]);
    CHECK(num(rec.main.rows[0][3]) == Approx(-0.5 * xi * xi));
}

TEST_CASE("scan sweeps the coupling and marks missing odd roots") {
    const OutputRecord rec = cmd_scan(0.5, 1.5, 11);
    REQUIRE(rec.main.rows.size() == 11);
    double prev_even = 0.0;
    for (const auto& row : rec.main.rows) {
        const double a = num(row[0]);
        const double xe = num(row[1]);
        CHECK(xe > prev_even);  // xi_even strictly increasing in a
        prev_even = xe;
        if (a <= 1.0)
            CHECK(std::holds_alternative<std::monostate>(row[2]));
        else
            CHECK(num(row[2]) > 0.0);
    }
    // odd column appears exactly above the threshold
    CHECK(std::holds_alternative<std::monostate>(rec.main.rows[5][2]));  // a = 1
    CHECK(std::holds_alternative<double>(rec.main.rows[6][2]));          // a = 1.1
}

TEST_CASE("degenerate scan range repeats identical rows") {
    const OutputRecord rec = cmd_scan(2.0, 2.0, 2);
    REQUIRE(rec.main.rows.size() == 2);
    CHECK(num(rec.main.rows[0][0]) == num(rec.main.rows[1][0]));
    CHECK(num(rec.main.rows[0][1]) == num(rec.main.rows[1][1]));
    CHECK(num(rec.main.rows[0][2]) == num(rec.main.rows[1][2]));
}

TEST_CASE("scan validates its range") {
    CHECK_THROWS_AS(cmd_scan(-1.0, 2.0, 5), invalid_parameters);
    CHECK_THROWS_AS(cmd_scan(2.0, 1.0, 5), invalid_parameters);
    CHECK_THROWS_AS(cmd_scan(1.0, 2.0, 1), invalid_parameters);
}

TEST_CASE("figure1 samples the two curves and marks the intersections") {
    const OutputRecord rec = cmd_figure1(2.0, 3.0, 301);
    REQUIRE(rec.main.rows.size() == 301);
    // at xi = 0 both curves equal 1 exactly
    CHECK(num(rec.main.rows[0][0]) == 0.0);
    CHECK(num(rec.main.rows[0][1]) == 1.0);
    CHECK(num(rec.main.rows[0][2]) == 1.0);
    REQUIRE(rec.extra.size() == 1);
    CHECK(rec.extra[0].name == "intersections");
    REQUIRE(rec.extra[0].rows.size() == 2);
    CHECK(text(rec.extra[0].rows[0][0]) == "even");
    CHECK(num(rec.extra[0].rows[0][1]) == Approx(1.1089).margin(1e-3));
    CHECK(text(rec.extra[0].rows[1][0]) == "odd");

    // below the odd threshold only one intersection remains
    const OutputRecord half = cmd_figure1(0.5, 3.0, 301);
    CHECK(half.extra[0].rows.size() == 1);

    CHECK_THROWS_AS(cmd_figure1(-2.0, 3.0, 100), invalid_parameters);
    CHECK_THROWS_AS(cmd_figure1(2.0, 0.0, 100), invalid_parameters);
}

TEST_CASE("verify passes against both oracles at a = 2") {
    const VerifyResult res = cmd_verify(2.0, OracleKind::both);
    CHECK(res.all_passed);
    // rows: multidelta count + 2 states, fd count + 2 states
    REQUIRE(res.record.main.rows.size() == 6);
    for (const auto& row : res.record.main.rows) CHECK(text(row[7]) == "pass");
}

TEST_CASE("verify agrees on the absence of states for repulsive coupling") {
    const VerifyResult res = cmd_verify(-3.0, OracleKind::both);
    CHECK(res.all_passed);
    for (const auto& row : res.record.main.rows) {
        CHECK(text(row[1]) == "count");
        CHECK(num(row[2]) == 0.0);
        CHECK(num(row[3]) == 0.0);
    }
}

TEST_CASE("verify reports an fd oracle breakdown as a failure") {
    // a state this shallow would need a grid beyond the oracle's cap; the
    // breakdown is reported per-row and fails the run instead of throwing
    const VerifyResult res = cmd_verify(1e-4, OracleKind::fd);
    CHECK_FALSE(res.all_passed);
    REQUIRE(res.record.main.rows.size() == 1);
    CHECK(text(res.record.main.rows[0][7]) == "fail");
    CHECK(res.record.note.has_value());
}

TEST_CASE("verify fd oracle at a = 5 stays within its tolerance") {
    const VerifyResult res = cmd_verify(5.0, OracleKind::fd);
    CHECK(res.all_passed);
    bool saw_energy = false;
    for (const auto& row : res.record.main.rows) {
        if (text(row[1]).rfind("energy_", 0) == 0) {
            saw_energy = true;
            CHECK(text(row[5]) == "rel");
            CHECK(num(row[4]) <= 2e-2);
        }
    }
    CHECK(saw_energy);
}

TEST_CASE("wavefunction output is a normalized symmetric profile") {
    // 65 points over [-4, 4]: dyadic step, so the grid is exactly symmetric
    const OutputRecord rec = cmd_wavefunction(2.0, Parity::even, -4.0, 4.0, 65);
    REQUIRE(rec.main.rows.size() == 65);
    // the even state follows cosh inside: maxima sit at the wells u = +/-1
    // (grid indices 24 and 40), with a local minimum at the center
    const double at_well = num(rec.main.rows[40][1]);
    for (int k = 0; k < 65; ++k) {
        CHECK(num(rec.main.rows[k][1]) == num(rec.main.rows[64 - k][1]));
        CHECK(num(rec.main.rows[k][1]) <= at_well);
        CHECK(num(rec.main.rows[k][1]) > 0.0);
    }
    CHECK(num(rec.main.rows[32][1]) < at_well);  // sag between the wells
    // scalars carry the state
    CHECK(text(rec.inputs[1].second) == "even");
    CHECK(rec.scalars[0].first == "xi");
    CHECK(num(rec.scalars[0].second) == Approx(1.1089).margin(1e-3));
}

TEST_CASE("wavefunction rejects a state that does not exist") {
    CHECK_THROWS_AS(cmd_wavefunction(0.9, Parity::odd, -4.0, 4.0, 11), no_such_state);
    CHECK_THROWS_AS(cmd_wavefunction(-1.0, Parity::even, -4.0, 4.0, 11),
                    no_such_state);
    CHECK_THROWS_WITH(cmd_wavefunction(0.9, Parity::odd, -4.0, 4.0, 11),
                      Catch::Matchers::ContainsSubstring("a > 1"));
}

TEST_CASE("multi solves a file-driven array") {
    std::istringstream file(
        "# symmetric pair, a = 2\n"
        "-1.0 2.0\n"
        " 1.0 2.0  # right well\n"
        "\n");
    const DeltaArray arr = parse_delta_file(file);
    REQUIRE(arr.deltas.size() == 2);
    const OutputRecord rec = cmd_multi(arr);
    REQUIRE(rec.main.rows.size() == 2);
    CHECK(num(rec.main.rows[0][0]) == Approx(1.1088575528785451).margin(1e-9));
    CHECK(num(rec.main.rows[0][1]) < num(rec.main.rows[1][1]));
}

TEST_CASE("multi reports an empty spectrum with a note") {
    std::istringstream file("0.0 -2.0\n");
    const OutputRecord rec = cmd_multi(parse_delta_file(file));
    CHECK(rec.main.rows.empty());
    CHECK(rec.note.has_value());
}

TEST_CASE("delta files are parsed strictly") {
    std::istringstream unsorted("1.0 2.0\n-1.0 2.0\n");
    CHECK(parse_delta_file(unsorted).deltas[0].position == -1.0);

    std::istringstream dup("1.0 2.0\n1.0 3.0\n");
    CHECK_THROWS_AS(parse_delta_file(dup), invalid_parameters);

    std::istringstream garbage("1.0 banana\n");
    CHECK_THROWS_AS(parse_delta_file(garbage), invalid_parameters);

    std::istringstream trailing("1.0 2.0 3.0\n");
    CHECK_THROWS_AS(parse_delta_file(trailing), invalid_parameters);

    std::istringstream empty("# nothing here\n\n");
    CHECK_THROWS_AS(parse_delta_file(empty), invalid_parameters);
}
