// Acceptance battery: runs every exit criterion at its pinned tolerance and
// prints one pass/fail line per criterion.

#include <cstdio>

#include "wkbflow/checks.hpp"

int main() {
    using namespace wkbflow;

    struct Criterion {
        const char* label;
        std::vector<std::string> suites;
    };
    const std::vector<Criterion> criteria = {
        {"1. operator identities", {"operators"}},
        {"2. embedding of angle-independent solutions", {"embedding"}},
        {"3. acoustic dispersion (still and moving background)", {"dispersion"}},
        {"4. oscillation-balance residual with slaved momentum", {"eigenrelation"}},
        {"5. fast-operator inversion round trips", {"inversion"}},
        {"6. conservation and circulation drifts", {"conservation", "circulation"}},
        {"7. Reynolds-stress closure", {"reynolds"}},
        {"8. specific wave action equals -eps^3 I at rate O(eps)", {"glm-identity"}},
        {"9. slaving invariance residual scales as O(eps)", {"slow-manifold"}},
        {"10. full-vs-reduced convergence in eps", {"full-vs-reduced"}},
    };

    int failures = 0;
    double total_seconds = 0.0;
    for (const auto& c : criteria) {
        bool pass = true;
        double worst_margin = 0.0;
        std::string worst_item;
        double seconds = 0.0;
        std::vector<CheckSuite> results;
        for (const auto& name : c.suites) results.push_back(run_check_suite(name));
        for (const auto& s : results) {
            seconds += s.seconds;
            for (const auto& it : s.items) {
                pass &= it.pass;
                // Margin: how close the measurement sits to its threshold
                // (values above one fail).
                const double margin = it.greater_is_pass
                                          ? it.threshold / std::max(it.measured, 1e-300)
                                          : it.measured / it.threshold;
                if (margin > worst_margin) {
                    worst_margin = margin;
                    worst_item = it.name;
                }
            }
        }
        total_seconds += seconds;
        std::printf("[%s] %-55s margin=%.3g (%s) [%.1fs]\n", pass ? "PASS" : "FAIL",
                    c.label, worst_margin, worst_item.c_str(), seconds);
        if (!pass) {
            ++failures;
            for (const auto& s : results)
                for (const auto& it : s.items)
                    if (!it.pass)
                        std::printf("       failed: %s measured=%.6g %s %.6g\n",
                                    it.name.c_str(), it.measured,
                                    it.greater_is_pass ? ">=" : "<=", it.threshold);
        }
    }
    std::printf("%d/%zu criteria pass in %.1fs\n", static_cast<int>(criteria.size()) - failures,
                criteria.size(), total_seconds);
    return failures == 0 ? 0 : 1;
}
