#pragma once

// Verification suites over the module invariants, and the acceptance
// criteria with their pinned tolerances.  Reports are deterministic for a
// fixed config: fixed seeds, fixed iteration and summation orders.

#include <string>
#include <vector>

#include "finespec/opcalc.hpp"

namespace finespec {

struct SuiteConfig {
    std::string suite = "all";
    std::vector<int> ns = {3, 5, 7};
    long k_max = 20;
    long l_max = 4;
    long m_max = 5;
    unsigned seed = 1;
    int inject_fault = 0;  // test mode: perturb a closed-form constant; suites must fail
    int threads = 0;       // 0: FINESPEC_THREADS env or hardware count
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0;  // worst-case residual; 0 for exact checks
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

std::vector<std::string> suite_names();  // without "all"
std::vector<SuiteReport> run_suites(const SuiteConfig& cfg);

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    double worst = 0;
    std::string detail;
};

// The seven acceptance criteria at their stated tolerances.
std::vector<CriterionResult> run_acceptance();

int resolve_thread_count(int requested);

}  // namespace finespec
