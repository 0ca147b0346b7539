#pragma once

#include <string>
#include <vector>

#include "implab/cli/config.hpp"

namespace implab::cli {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Pass thresholds of the verification suite. Runtime limits are only applied
// when enforce_runtime is set; wall-clock time never enters written files.
struct SuiteThresholds {
    double functional_equation = 1e-8;
    double almost_fatou_final = 1e-3;
    double lavaurs_1d_final = 1e-2;
    double semiconjugacy_final = 1e-2;
    std::size_t cauchy_nonmonotone = 1;
    double telescoping_sum = 1e-3;
    double exponent = 0.05;
    bool enforce_runtime = false;
    double runtime_limit[8] = {0, 10, 60, 30, 120, 120, 5, 60};  // seconds, by criterion id
};

struct SuiteContext {
    const RunConfig* config = nullptr;
    std::string out_dir;  // empty: no files
    unsigned threads = 0;
};

CriterionResult check_functional_equation(const SuiteContext& ctx, const SuiteThresholds& thr);
CriterionResult check_almost_fatou(const SuiteContext& ctx, const SuiteThresholds& thr);
CriterionResult check_lavaurs_1d(const SuiteContext& ctx, const SuiteThresholds& thr);
CriterionResult check_lavaurs_2d(const SuiteContext& ctx, const SuiteThresholds& thr);
CriterionResult check_orbit_estimates(const SuiteContext& ctx, const SuiteThresholds& thr);
CriterionResult check_telescoping(const SuiteContext& ctx, const SuiteThresholds& thr);
CriterionResult check_entry_exit(const SuiteContext& ctx, const SuiteThresholds& thr);

// Criteria 1..7 in order.
std::vector<CriterionResult> run_verify_suite(const SuiteContext& ctx, const SuiteThresholds& thr);

// Exponent of P_j ~ c j^{-a} from the local slope between j and 2j.
double telescoping_exponent(double a, std::size_t l0, std::size_t j);

}  // namespace implab::cli
