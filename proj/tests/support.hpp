#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ptsusy/params.hpp"

namespace testsupport {

inline std::vector<double> uniform(double a, double b, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = a + i * (b - a) / (n - 1);
    return xs;
}

inline std::vector<double> interior(int n = 1000) { return uniform(0.02, ptsusy::kHalfPi - 0.02, n); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// max |f - g| / max(1, |g|) over the sample points.
inline double max_diff(const std::function<double(double)>& f, const std::function<double(double)>& g,
                       const std::vector<double>& xs) {
    double worst = 0.0;
    for (double x : xs) {
        double gv = g(x);
        worst = std::max(worst, std::abs(f(x) - gv) / std::max(1.0, std::abs(gv)));
    }
    return worst;
}

} // namespace testsupport
