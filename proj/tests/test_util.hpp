#pragma once

#include "wkbflow/synthetic.hpp"

namespace wkbflow::test {

using wkbflow::random_loop;
using wkbflow::random_scalar;

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double max_abs_diff(const LoopField& a, const LoopField& b) {
    std::vector<double> va = a.values(), vb = b.values();
    double m = 0.0;
    for (size_t k = 0; k < va.size(); ++k) m = std::max(m, std::abs(va[k] - vb[k]));
    return m;
}

} // namespace wkbflow::test
