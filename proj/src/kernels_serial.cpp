#include <algorithm>
#include <cmath>
#include <limits>

#include "ptsusy/kernels.hpp"

namespace ptsusy::kernels {

int sturm_count(const Tridiagonal& t, double x) {
    const double e2 = t.off * t.off;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < t.diag.size(); ++i) {
        q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0)
            q = -tiny;
        if (q < 0.0)
            ++count;
    }
    return count;
}

double bisect_eigenvalue(const Tridiagonal& t, int k) {
    const double r = 2.0 * std::abs(t.off);
    double lo = *std::min_element(t.diag.begin(), t.diag.end()) - r;
    double hi = *std::max_element(t.diag.begin(), t.diag.end()) + r;
    // Bisect until the interval stops shrinking in floating point.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (sturm_count(t, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_serial(const Tridiagonal& t, int count) {
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k)
        out[k] = bisect_eigenvalue(t, k);
    return out;
}

std::vector<double> eigenvector(const Tridiagonal& t, double eigenvalue) {
    const std::size_t n = t.diag.size();
    const double shift = eigenvalue + 1e-10 * std::max(1.0, std::abs(eigenvalue));
    std::vector<double> y(n, 1.0), cp(n), dp(n);
    for (int it = 0; it < 4; ++it) {
        // Thomas algorithm for (T - shift) z = y.
        double denom = t.diag[0] - shift;
        cp[0] = t.off / denom;
        dp[0] = y[0] / denom;
        for (std::size_t i = 1; i < n; ++i) {
            denom = t.diag[i] - shift - t.off * cp[i - 1];
            if (denom == 0.0)
                denom = 1e-300;
            cp[i] = t.off / denom;
            dp[i] = (y[i] - t.off * dp[i - 1]) / denom;
        }
        y[n - 1] = dp[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            y[i] = dp[i] - cp[i] * y[i + 1];
        double norm = 0.0;
        for (double v : y)
            norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : y)
            v /= norm;
    }
    return y;
}

std::vector<double> sample_serial(const std::function<double(double)>& f, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = f(xs[i]);
    return out;
}

} // namespace ptsusy::kernels
