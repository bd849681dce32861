#pragma once

#include <functional>
#include <vector>

/// Dense numerical kernels behind the finite-difference oracle.
///
/// Every kernel has a serial reference version and an OpenMP version with the
/// same contract; tests require them to agree bit for bit on eigenvalues.
namespace ptsusy::kernels {

/// Symmetric tridiagonal matrix with a constant off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    double off = 0.0;
};

/// Number of eigenvalues strictly below x (Sturm sequence).
int sturm_count(const Tridiagonal& t, double x);

/// Eigenvalue with zero-based index k, by bisection on the Sturm count.
double bisect_eigenvalue(const Tridiagonal& t, int k);

/// Lowest `count` eigenvalues, ascending.
std::vector<double> eigenvalues_serial(const Tridiagonal& t, int count);
std::vector<double> eigenvalues_parallel(const Tridiagonal& t, int count);

/// Unit eigenvector for a computed eigenvalue, by inverse iteration.
std::vector<double> eigenvector(const Tridiagonal& t, double eigenvalue);

/// f at every x. The parallel version rethrows the first exception raised by f.
std::vector<double> sample_serial(const std::function<double(double)>& f, const std::vector<double>& xs);
std::vector<double> sample_parallel(const std::function<double(double)>& f, const std::vector<double>& xs);

} // namespace ptsusy::kernels
