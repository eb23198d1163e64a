#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "p4cm/io.hpp"

using namespace p4cm;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(P4CM_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch() {
    const fs::path d = fs::temp_directory_path() / "p4cm_cli_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-0.0) == "0");
}

TEST_CASE("trajectory rows skip poles") {
    const Trajectory t = integrate({0.5, 1.2}, 8.0, -5.0, 1e-10);
    REQUIRE_FALSE(t.poles().empty());
    const auto rows = trajectory_rows(t, 0.01);
    for (const auto& r : rows) CHECK(std::abs(r.x - t.poles()[0].location) >= t.pole_radius());
    const json j = poles_json(t);
    CHECK(j["poles"].size() == t.poles().size());
    CHECK(j["poles"][0]["residue"] == 1);
}

TEST_CASE("cli solve matches the closed form") {
    const fs::path out = scratch() / "half.csv";
    REQUIRE(run("solve --alpha 0.5 --kappa 0.3 --from 8 --to -5 --tol 1e-12 --step 0.05 -o " + out.string()).code == 0);
    std::istringstream csv(slurp(out));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "x,q,dq,H,sigma");
    double worst = 0.0;
    int n = 0;
    while (std::getline(csv, line)) {
        double x = 0, q = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &x, &q) == 2);
        worst = std::max(worst, std::abs(q - exact_half(x, 0.3)));
        ++n;
    }
    CHECK(n == 261);
    CHECK(worst < 1e-7);
    CHECK(fs::exists(scratch() / "half.poles.json"));
}

TEST_CASE("cli solve trivial and pole cases") {
    const Run z = run("solve --alpha 0.5 --kappa 0 --step 0.5");
    REQUIRE(z.code == 0);
    std::istringstream csv(z.out);
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line)) CHECK(line.substr(line.find(',') + 1, 2) == "0,");

    const fs::path out = scratch() / "pole.csv";
    REQUIRE(run("solve --alpha 0.5 --kappa 1.2 -o " + out.string()).code == 0);
    const json manifest = json::parse(slurp(scratch() / "pole.poles.json"));
    CHECK_FALSE(manifest["poles"].empty());
}

TEST_CASE("cli output is deterministic") {
    const Run a = run("solve --alpha 0.25 --kappa 0.1 --to -3 --format json");
    const Run b = run("solve --alpha 0.25 --kappa 0.1 --to -3 --format json");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli classify") {
    CHECK(json::parse(run("classify --alpha 0 --kappa 0.1").out)["regime"] == "oscillatory");
    CHECK(json::parse(run("classify --alpha 0 --kappa 0").out)["regime"] == "trivial");
    CHECK(json::parse(run("classify --alpha 0 --kappa 0.31830988618379067").out)["regime"] == "separatrix");
    const json grid = json::parse(run("classify --alpha-grid 0 0.5 3 --kappa-grid 0.1 0.9 3 --threads 2").out);
    REQUIRE(grid.size() == 9);
    CHECK(grid[0]["alpha"] == 0.0);
    CHECK(grid[8]["kappa"] == 0.9);
}

TEST_CASE("cli verify") {
    CHECK(run("verify --suite exact-half").code == 0);
    CHECK(run("verify --suite hermite").code == 0);
    CHECK(run("verify --suite sigma-det --nu 1.3 --gamma 0.1").code == 0);
}

TEST_CASE("cli validation") {
    const fs::path out = scratch() / "never.csv";
    fs::remove(out);
    CHECK(run("solve --alpha 0.5 --kappa 0.3 --tol 1 -o " + out.string()).code == 2);
    CHECK(run("solve --alpha 0.5 --kappa 0.3 --from -1 --to 2 -o " + out.string()).code == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK(run("solve --kappa 0.3").code == 2);
    CHECK(run("verify --suite nonsense").code == 2);
    CHECK(run("integral --alpha 0 --kappa 1").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("cli error body") {
    const std::string cmd = std::string(P4CM_CLI) + " solve --alpha 0.5 --kappa 0.3 --tol 1 2>&1 >/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096] = {};
    const std::size_t n = fread(buf, 1, sizeof buf - 1, p);
    pclose(p);
    const json err = json::parse(std::string(buf, n));
    CHECK(err["code"] == 2);
    CHECK(err.contains("message"));
    CHECK(err.contains("context"));
}

TEST_CASE("P4CM_TOL sets the default tolerance") {
    const std::string cmd = "P4CM_TOL=1 " + std::string(P4CM_CLI) + " solve --alpha 0.5 --kappa 0.3 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
