#pragma once

#include <string>
#include <vector>

#include "geoprop/waves.hpp"

namespace geoprop {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::string to_json() const;  // {"suite":..., "checks":[{name,value,tolerance,pass}...]}
};

/// Named verification suites: frft | propagators | symmetry | holonomy.
/// tol_scale multiplies every tolerance (exploration only; defaults to 1).
SuiteReport verify_suite(const std::string& name, unsigned seed, double tol_scale);

/// Deterministic band-limited test state: seeded superposition of the first
/// `modes` Hermite-Gauss modes, argument scaled by `width`, unit norm.
WaveFunction1D random_bandlimited_state(const Grid1D& grid, unsigned seed, int modes = 8,
                                        double width = 1.0, double hbar = 1.0);

/// Exit codes: 0 success, 1 verification failure, 2 I/O error, 3 validation.
int run_cli(const std::vector<std::string>& args);

}  // namespace geoprop
