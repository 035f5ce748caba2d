#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "helpers.hpp"
#include "qig/cli.hpp"
#include "qig/matrix_json.hpp"
#include "qig/suites.hpp"

using namespace qig;
using namespace qig::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "qig-unit-scratch";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

SuiteConfig small_config() {
    SuiteConfig cfg;
    cfg.dims = {2};
    cfg.kappas = {0.5, 1.0};
    cfg.trials = 5;
    cfg.seed = 7;
    cfg.finalize();
    return cfg;
}

} // namespace

TEST_CASE("small sweep across every suite is clean") {
    const auto cfg = small_config();
    const auto reports = run_all_suites(cfg);
    CHECK(reports.size() == 5);
    CHECK(total_violations(reports) == 0);
    for (const auto& rep : reports) {
        CHECK(!rep.cells.empty());
        for (const auto& c : rep.cells) {
            CHECK(c.trials > 0);
            CHECK(c.seed != 0);
            CHECK(c.max_abs_residual >= 0.0);
        }
    }
}

TEST_CASE("reports serialize deterministically") {
    const auto cfg = small_config();
    const auto a = report_to_json(run_all_suites(cfg), cfg).dump(2);
    const auto b = report_to_json(run_all_suites(cfg), cfg).dump(2);
    CHECK(a == b);
    const auto csv_a = report_to_csv(run_all_suites(cfg));
    CHECK(csv_a == report_to_csv(run_all_suites(cfg)));
    // different seed, different residual bytes
    auto cfg2 = cfg;
    cfg2.seed = 8;
    CHECK(report_to_json(run_all_suites(cfg2), cfg2).dump(2) != a);
}

TEST_CASE("json report carries the expected shape") {
    const auto cfg = small_config();
    const auto j = report_to_json(run_all_suites(cfg), cfg);
    CHECK(j["version"] == kVersion);
    CHECK(j["config"]["seed"] == 7);
    CHECK(j["suites"].is_array());
    CHECK(j["suites"].size() == 5);
    for (const auto& suite : j["suites"]) {
        for (const auto& cell : suite["cells"]) {
            CHECK(cell.contains("suite"));
            CHECK(cell.contains("spec"));
            CHECK(cell.contains("trials"));
            CHECK(cell.contains("max_abs_residual"));
            CHECK(cell.contains("violations"));
            CHECK(cell.contains("seed"));
        }
    }
}

TEST_CASE("csv report has the documented header") {
    const auto cfg = small_config();
    const auto csv = report_to_csv({suite_gradient(cfg)});
    CHECK(csv.rfind("suite,check,n,kappa,spec,trials,skips,max_abs_residual,violations,seed\n", 0) == 0);
    // one line per cell plus the header
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n')
            ++lines;
    CHECK(lines == int(suite_gradient(cfg).cells.size()) + 1);
}

TEST_CASE("cli run is deterministic across invocations") {
    const auto f1 = scratch_dir() / "run1.json";
    const auto f2 = scratch_dir() / "run2.json";
    const std::vector<std::string> base{"run-all", "--dims", "2",      "--kappas", "0.5",
                                        "--trials", "3",    "--seed",  "7"};
    auto args1 = base;
    args1.push_back("--out");
    args1.push_back(f1.string());
    auto args2 = base;
    args2.push_back("--out");
    args2.push_back(f2.string());
    CHECK(cli_main(args1) == 0);
    CHECK(cli_main(args2) == 0);
    const auto t1 = read_file(f1);
    CHECK(t1 == read_file(f2));
    CHECK(!t1.empty());
    CHECK(nlohmann::json::parse(t1)["config"]["seed"] == 7);
}

TEST_CASE("cli csv format") {
    const auto f = scratch_dir() / "run.csv";
    CHECK(cli_main({"metric", "--dims", "2", "--trials", "2", "--specs", "bh", "--format", "csv",
                    "--out", f.string()}) == 0);
    const auto text = read_file(f);
    CHECK(text.rfind("suite,check,n,kappa,spec,", 0) == 0);
}

TEST_CASE("tiny tolerance scale turns residuals into violations") {
    const auto f = scratch_dir() / "violations.json";
    CHECK(cli_main({"metric", "--dims", "2", "--trials", "2", "--specs", "bh", "--tol-scale",
                    "1e-18", "--out", f.string()}) == 2);
    const auto j = nlohmann::json::parse(read_file(f));
    int count = 0;
    for (const auto& suite : j["suites"])
        for (const auto& cell : suite["cells"])
            count += int(cell["violations"].size());
    CHECK(count > 0);
}

TEST_CASE("kappa scan reports witnesses beyond one as informational") {
    const auto f = scratch_dir() / "scan.json";
    CHECK(cli_main({"kappa-scan", "--dims", "2", "--kappas", "2.0", "--trials", "400", "--seed",
                    "11", "--out", f.string()}) == 0);
    const auto j = nlohmann::json::parse(read_file(f));
    bool saw_witness = false;
    for (const auto& suite : j["suites"])
        for (const auto& cell : suite["cells"])
            if (cell["check"] == "monotonicity-witness" && cell.contains("extra"))
                for (const auto& [key, value] : cell["extra"].items())
                    if (key == "witness_found" && value.get<double>() > 0.5)
                        saw_witness = true;
    CHECK(saw_witness);
}

TEST_CASE("eval prints scalar values") {
    const auto f = scratch_dir() / "eval.txt";
    CHECK(cli_main({"eval", "--spec", "bkm", "--x", "1", "--out", f.string()}) == 0);
    CHECK(read_file(f) == "1.0\n");
    CHECK(cli_main({"eval", "--spec", "wy", "--x", "4", "--out", f.string()}) == 0);
    CHECK(read_file(f) == "2.25\n");
}

TEST_CASE("eval applies actions from matrix files") {
    const auto state = scratch_dir() / "state.json";
    const auto element = scratch_dir() / "element.json";
    const auto out = scratch_dir() / "acted.json";
    write_text_file(state.string(),
                    state_to_json(DensityState(diag2(0.5, 0.5))).dump(2) + "\n");
    write_text_file(element.string(),
                    matrix_to_json(ComplexMatrix::diagonal({2.0, 1.0})).dump(2) + "\n");
    CHECK(cli_main({"eval", "--action", "beta-kappa", "--kappa", "1", "--state", state.string(),
                    "--element", element.string(), "--out", out.string()}) == 0);
    const auto j = nlohmann::json::parse(read_file(out));
    CHECK(j["kind"] == "density");
    const auto m = matrix_from_json(j);
    CHECK(diff(m, ComplexMatrix::diagonal({0.8, 0.2})) < 1e-12);
}

TEST_CASE("cli rejects bad input with exit code 1") {
    const auto bad = scratch_dir() / "bad.json";
    write_text_file(bad.string(), "{nope");
    CHECK(cli_main({"eval", "--action", "beta", "--state", bad.string(), "--element",
                    bad.string()}) == 1);
    CHECK(cli_main({"eval", "--spec", "gl:oops", "--x", "1"}) == 1);
    CHECK(cli_main({"eval"}) == 1);
    CHECK(cli_main({"metric", "--specs", "nosuch", "--dims", "2", "--trials", "1"}) == 1);
    CHECK(cli_main({"definitely-not-a-subcommand"}) == 1);
    CHECK(cli_main({}) == 1);
}
