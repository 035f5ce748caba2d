#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qig/tolerances.hpp"

namespace qig {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteConfig {
    std::vector<int> dims{2, 3, 4};
    std::vector<double> kappas{0.25, 0.5, 0.75, 1.0};
    std::vector<std::string> specs; // empty: per-suite defaults
    int trials = 100;
    std::uint64_t seed = 7;
    double tol_scale = 1.0;
    Tolerances tol = Tolerances::defaults();

    // refresh tol from tol_scale
    void finalize() { tol = Tolerances::defaults().scaled(tol_scale); }
};

struct Violation {
    std::string check;
    int trial = -1;
    double value = 0.0;
    double threshold = 0.0;
};

struct CellResult {
    std::string suite;
    std::string check;
    std::string spec;    // metric/function label, may be empty
    int n = 0;           // 1 for scalar-only cells
    double kappa = 0.0;
    bool has_kappa = false;
    int trials = 0;
    int skips = 0;
    double max_abs_residual = 0.0;
    std::uint64_t seed = 0;
    std::vector<Violation> violations;
    std::vector<std::pair<std::string, double>> extra;
};

struct SuiteReport {
    std::string suite;
    std::vector<CellResult> cells;
    double wall_seconds = 0.0; // informational; not serialized

    int total_violations() const;
};

SuiteReport suite_gradient(const SuiteConfig& cfg);
SuiteReport suite_commutators(const SuiteConfig& cfg);
SuiteReport suite_metric(const SuiteConfig& cfg);
SuiteReport suite_kappa_scan(const SuiteConfig& cfg);
SuiteReport suite_actions(const SuiteConfig& cfg);

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg);

int total_violations(const std::vector<SuiteReport>& reports);

// Serialization is byte-deterministic for a fixed config and seed.
nlohmann::ordered_json report_to_json(const std::vector<SuiteReport>& reports,
                                      const SuiteConfig& cfg);
std::string report_to_csv(const std::vector<SuiteReport>& reports);

} // namespace qig
