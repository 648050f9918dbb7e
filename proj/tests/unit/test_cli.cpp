#include <doctest.h>

#include "cocycle_lab/cli/app.hpp"
#include "cocycle_lab/cli/demos.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace cocycle_lab;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cocycle_lab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct ScratchDirs {
    std::vector<fs::path> paths;
    ~ScratchDirs() {
        std::error_code ec;
        for (const auto& p : paths) fs::remove_all(p, ec);
    }
};

fs::path scratch() {
    static std::atomic<int> counter{0};
    static ScratchDirs cleanup;
    auto dir = fs::temp_directory_path() / ("cocycle_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    cleanup.paths.push_back(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto path = dir / "run.cfg";
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const char* kConstantProbe = R"(seed = 3
horizons = 10 100 1000

[system]
kind = rotation

[cocycle]
kind = constant
matrix = 2 0; 0 0.5

[probe]
count = 8
)";

}  // namespace

TEST_CASE("misspelled key is rejected with its position") {
    const auto dir = scratch();
    const auto cfg = write_config(dir, "seed = 1\nnorrm = inf\n");
    const auto r = run({"probe", "--config", cfg.string(), "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2, column 1") != std::string::npos);
    CHECK(r.err.find("norrm") != std::string::npos);
}

TEST_CASE("constant cocycle probe") {
    const auto dir = scratch();
    const auto cfg = write_config(dir, kConstantProbe);
    const auto r = run({"probe", "--config", cfg.string(), "--out", dir.string()});
    CHECK(r.code == 0);
    const auto rows = csv_rows(slurp(dir / "probe.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][4] == "spread");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][4]) == 0.0);
    CHECK(slurp(dir / "probe_summary.txt").find("uniform-consistent") != std::string::npos);
}

TEST_CASE("companion witness probe reports non-uniformity") {
    const auto dir = scratch();
    const auto cfg = write_config(dir, cli::demo_config("theorem-c"));
    const auto r = run({"probe", "--config", cfg.string(), "--out", dir.string(), "--threads", "2"});
    CHECK(r.code == 10);
    CHECK(r.out.find("non-uniform-evidence") != std::string::npos);
}

TEST_CASE("decompose") {
    const auto dir = scratch();
    auto cfg = write_config(dir, "[system]\nkind = cycle\np = 6\n[decompose]\nd = 1\n");
    CHECK(run({"decompose", "--config", cfg.string(), "--out", dir.string()}).code == 2);

    cfg = write_config(dir, "[system]\nkind = cycle\np = 6\n[decompose]\nd = 6\nn = 6000\nx0 = cycle(0/6)\n[partition]\nbins = 6\n");
    const auto r = run({"decompose", "--config", cfg.string(), "--out", dir.string()});
    CHECK(r.code == 0);
    const auto rows = csv_rows(slurp(dir / "decompose.csv"));
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) == 0.0);
    CHECK(r.out.find("sound = true") != std::string::npos);
}

TEST_CASE("empirical and lyapunov outputs") {
    const auto dir = scratch();
    const auto cfg = write_config(dir, std::string(kConstantProbe) + "[empirical]\nn = 10000\n[partition]\nbins = 10\n");
    CHECK(run({"empirical", "--config", cfg.string(), "--out", dir.string()}).code == 0);
    CHECK(csv_rows(slurp(dir / "empirical.csv")).size() == 11);
    CHECK(run({"lyapunov", "--config", cfg.string(), "--out", dir.string()}).code == 0);
    CHECK(slurp(dir / "lyapunov.csv").rfind("n,a_n,error_bar\n", 0) == 0);
    CHECK(slurp(dir / "lyapunov_summary.txt").find("violations_within_error = true") != std::string::npos);
}

TEST_CASE("seed flag controls sampled probes") {
    const auto cfg_text = "horizons = 16 64 256\n[system]\nkind = rotation\n[cocycle]\nkind = herman\nlambda = 2\n[probe]\ncount = 4\n";
    const auto a = scratch(), b = scratch(), c = scratch();
    const auto cfg = write_config(a, cfg_text);
    run({"probe", "--config", cfg.string(), "--out", a.string(), "--seed", "5"});
    run({"probe", "--config", cfg.string(), "--out", b.string(), "--seed", "5", "--threads", "3"});
    run({"probe", "--config", cfg.string(), "--out", c.string(), "--seed", "6"});
    CHECK(slurp(a / "probe.csv") == slurp(b / "probe.csv"));
    CHECK(slurp(a / "probe.csv") != slurp(c / "probe.csv"));
}

TEST_CASE("usage errors") {
    CHECK(run({"demo", "nope"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"probe"}).code == 2);
    CHECK(run({"probe", "--config", "/nonexistent/cfg"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const auto dir = scratch();
    const auto cfg = write_config(dir, kConstantProbe);
    CHECK(run({"probe", "--config", cfg.string(), "--threads", "0"}).code == 2);
}

TEST_CASE("budget environment variable") {
    const auto dir = scratch();
    const auto cfg = write_config(dir, kConstantProbe);
    ::setenv("COCYCLE_LAB_BUDGET", "100", 1);
    const auto r = run({"probe", "--config", cfg.string(), "--out", dir.string()});
    ::setenv("COCYCLE_LAB_BUDGET", "lots", 1);
    const auto bad = run({"probe", "--config", cfg.string(), "--out", dir.string()});
    ::unsetenv("COCYCLE_LAB_BUDGET");
    CHECK(r.code == 3);
    CHECK(bad.code == 2);
    CHECK(run({"probe", "--config", cfg.string(), "--out", dir.string()}).code == 0);
}
