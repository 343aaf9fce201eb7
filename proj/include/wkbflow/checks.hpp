#pragma once

#include <string>
#include <vector>

namespace wkbflow {

/// One measured assertion of an invariant suite.
struct CheckItem {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool greater_is_pass = false; // rates and ratios pass from above
    bool pass = false;
};

struct CheckSuite {
    std::string name;
    std::vector<CheckItem> items;
    bool all_pass = true;
    double seconds = 0.0;
};

/// Named invariant suites, runnable standalone through the CLI. All use
/// fixed seeds and pinned thresholds.
std::vector<std::string> check_suite_names();
CheckSuite run_check_suite(const std::string& name);

/// The acceptance battery: the suites that make up the ten exit criteria,
/// in order.
std::vector<CheckSuite> run_acceptance();

std::string checks_to_json(const std::vector<CheckSuite>& suites);

} // namespace wkbflow
