#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>

#include "ptsusy/params.hpp"

/// Special-function kernel: Gamma family, Pochhammer symbols, Gauss 2F1 and a 3F2 series.
///
/// Everything here is a pure function of its arguments.
namespace ptsusy::specfun {

using cplx = std::complex<double>;

struct SeriesOptions {
    std::size_t max_terms = 10000;
    double rel_tol = 1e-15;
};

/// ln|Gamma(x)|. Throws PoleError at non-positive integers.
double ln_gamma(double x);

/// A branch of log Gamma(z) (sum of principal logs); exp() of it is Gamma(z).
cplx ln_gamma(cplx z);

/// Gamma(x); negative non-integers go through the reflection formula.
double gamma(double x);

/// 1 / Gamma(z). Entire: exactly zero at non-positive integers.
cplx rgamma(cplx z);

/// Product of Gamma(num_i) over product of Gamma(den_j), evaluated in log space.
/// Zero if any denominator argument is a pole; PoleError if a numerator one is.
cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den);

/// Rising factorial a(a+1)...(a+m-1), with (a)_0 = 1.
double pochhammer(double a, unsigned m);
cplx pochhammer(cplx a, unsigned m);

/// Arguments of 2F1(a, b; c; z). Upper parameters may be complex, c and z are real.
struct HyperParams2F1 {
    cplx a;
    cplx b;
    double c;
    double z;
};

/// Gauss hypergeometric series for z in [0, 1).
///
/// Terminating series (a or b a non-positive integer) are summed exactly as
/// polynomials. Otherwise terms are accumulated with Kahan compensation until
/// the tail bound drops below rel_tol of the running sum; ConvergenceError if
/// that takes more than max_terms.
cplx hyp2f1(const HyperParams2F1& p, const SeriesOptions& opts = {});

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
cplx hyp2f1_derivative(const HyperParams2F1& p, const SeriesOptions& opts = {});

/// 3F2(a1, a2, a3; b1, b2; z), same convergence contract as hyp2f1.
cplx hyp3f2(cplx a1, cplx a2, cplx a3, double b1, double b2, double z,
            const SeriesOptions& opts = {});

/// Gamma-ratio constants controlling the cos^(1-nu) growth of the seed
/// solutions at pi/2: u ~ (A a + B b) cos^(1-nu)(x).
struct AsymptoticCoeffs {
    double a_coef;
    double b_coef;
};

/// Complex version of the same constants (complex factorization energies).
struct AsymptoticCoeffsC {
    cplx a_coef;
    cplx b_coef;
};

/// a = G(l+1/2) G(n-1/2) / [G(mu/2 + k) G(mu/2 - k)],
/// b = G(3/2-l) G(n-1/2) / [G((1+n-l)/2 + k) G((1+n-l)/2 - k)],  k = sqrt(eps/2).
///
/// A denominator pole (eps a physical eigenvalue for a) yields exactly 0.
/// Negative Gamma arguments in the numerators are handled by reflection;
/// PoleError if a numerator Gamma is singular (half-integer lambda for b).
AsymptoticCoeffs ab_coefficients(const PTParams& params, double epsilon);
AsymptoticCoeffsC ab_coefficients(const PTParams& params, cplx epsilon);

/// k = sqrt(eps / 2), principal branch.
inline cplx half_energy_root(cplx epsilon) { return std::sqrt(epsilon / 2.0); }

} // namespace ptsusy::specfun
