#include <exception>

#include <omp.h>

#include "ptsusy/kernels.hpp"

namespace ptsusy::kernels {

std::vector<double> eigenvalues_parallel(const Tridiagonal& t, int count) {
    std::vector<double> out(count);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k)
        out[k] = bisect_eigenvalue(t, k);
    return out;
}

std::vector<double> sample_parallel(const std::function<double(double)>& f, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    std::exception_ptr error;
    const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (...) {
#pragma omp critical(ptsusy_sample_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

} // namespace ptsusy::kernels
