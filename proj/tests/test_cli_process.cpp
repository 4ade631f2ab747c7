// End-to-end checks against the installed binary: exit codes, stream
// separation and bit-identical reruns. The binary path arrives in the
// DELTAWELL_BIN environment variable (set by the ctest registration).

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <unistd.h>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string binary_path() {
    if (const char* bin = std::getenv("DELTAWELL_BIN")) return bin;
    // fallbacks for running the test binary by hand
    for (const char* candidate :
         {"./tools/deltawell", "../tools/deltawell", "build/tools/deltawell"})
        if (access(candidate, X_OK) == 0) return candidate;
    FAIL("deltawell binary not found; set DELTAWELL_BIN or run via ctest");
    return {};
}

RunResult run(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("solve exits zero and reports both states") {
    const RunResult r = run("solve --a 2 --format json");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    REQUIRE(parsed["rows"].size() == 2);
    CHECK(parsed["rows"][0]["parity"] == "even");
    CHECK(parsed["rows"][1]["parity"] == "odd");
    CHECK(parsed["schema_version"] == 1);
}

TEST_CASE("identical invocations are bit-identical") {
    const RunResult a = run("solve --a 3.7 --format csv");
    const RunResult b = run("solve --a 3.7 --format csv");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const RunResult ja = run("scan --a-min 0.5 --a-max 2.5 --steps 9 --format json");
    const RunResult jb = run("scan --a-min 0.5 --a-max 2.5 --steps 9 --format json");
    CHECK(ja.out == jb.out);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("solve").exit_code == 1);                       // missing --a
    CHECK(run("nonsense --a 2").exit_code == 1);              // unknown subcommand
    CHECK(run("solve --a nope").exit_code == 1);              // unparsable number
    CHECK(run("scan --a-min 2 --a-max 1 --steps 5").exit_code == 1);
    CHECK(run("wavefunction --a 0.9 --parity odd").exit_code == 1);
    CHECK(run("solve --a 2 --format yaml").exit_code == 1);
    CHECK(run("multi --file /nonexistent/path.txt").exit_code == 1);
}

TEST_CASE("verify exits zero on agreement") {
    CHECK(run("verify --a 2 --oracle multidelta").exit_code == 0);
    CHECK(run("verify --a -3 --oracle both").exit_code == 0);
}

TEST_CASE("verify exits with code 2 when a check fails") {
    // too shallow for the fd oracle's default resolution
    CHECK(run("verify --a 1e-4 --oracle fd").exit_code == 2);
}

TEST_CASE("physical parameter group prints dimensional energies") {
    const RunResult r =
        run("solve --mass 1 --alpha 1 --L 1 --hbar 1 --format json");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["inputs"]["a"].get<double>() == 2.0);
    REQUIRE(parsed["rows"].size() == 2);
    const double xi = parsed["rows"][0]["xi"].get<double>();
    CHECK(parsed["rows"][0]["energy_physical"].get<double>() ==
          Catch::Approx(-0.5 * xi * xi));
    // mixing --a with the group is rejected
    CHECK(run("solve --a 2 --mass 1 --alpha 1 --L 1 --hbar 1").exit_code == 1);
}

TEST_CASE("multi reads a delta file") {
    const std::string path = "cli_test_deltas.txt";
    {
        std::ofstream f(path);
        f << "# three attractive wells\n";
        f << "-2 1.5\n0 1.5\n2 1.5\n";
    }
    const RunResult r = run("multi --file " + path + " --format json");
    std::remove(path.c_str());
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["inputs"]["n_deltas"].get<double>() == 3.0);
    REQUIRE(parsed["rows"].size() == 2);
    CHECK(parsed["rows"][0]["kappa"].get<double>() > parsed["rows"][1]["kappa"].get<double>());
}

TEST_CASE("figure1 emits curves plus intersections") {
    const RunResult r = run("figure1 --a 0.5 --xi-max 2 --n 101 --format json");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["rows"].size() == 101);
    REQUIRE(parsed["intersections"].size() == 1);
    CHECK(parsed["intersections"][0]["parity"] == "even");
}
