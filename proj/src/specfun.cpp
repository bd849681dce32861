#include "ptsusy/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace ptsusy::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStirlingThreshold = 15.0;

// B_2k / (2k (2k - 1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool is_nonpositive_integer(cplx z) { return z.imag() == 0.0 && is_nonpositive_integer(z.real()); }

// sin(pi x) and cos(pi x) with exact zeros at integers / half-integers.
double sinpi(double x) {
    const double r = x - 2.0 * std::round(x / 2.0); // r in [-1, 1]
    if (r == 0.0 || r == 1.0 || r == -1.0)
        return 0.0;
    return std::sin(kPi * r);
}

double cospi(double x) {
    const double r = x - 2.0 * std::round(x / 2.0);
    if (std::abs(r) == 0.5)
        return 0.0;
    return std::cos(kPi * r);
}

cplx sinpi(cplx z) {
    const double y = kPi * z.imag();
    return {sinpi(z.real()) * std::cosh(y), cospi(z.real()) * std::sinh(y)};
}

template <typename T>
T stirling(T y) {
    const T inv = 1.0 / y;
    const T inv2 = inv * inv;
    T series = 0.0;
    T power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    return (y - 0.5) * std::log(y) - y + 0.5 * std::log(2.0 * kPi) + series;
}

std::optional<unsigned> terminating_degree(cplx a) {
    if (!is_nonpositive_integer(a))
        return std::nullopt;
    return static_cast<unsigned>(-a.real());
}

// Compensated complex accumulator.
struct KahanSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    void add(cplx t) {
        const double yr = t.real() - cre;
        const double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        const double yi = t.imag() - cim;
        const double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }

    cplx value() const { return {re, im}; }
};

// Sums sum_m t_m with t_0 = 1 and t_{m+1} = t_m * ratio(m), where ratio(m)
// tends to z for large m. Either `degree` (exact polynomial) or the tail
// bound stops the loop.
template <typename Ratio>
cplx sum_series(Ratio ratio, double z, std::optional<unsigned> degree, double scale_hint,
                const SeriesOptions& opts, const char* name) {
    KahanSum sum;
    cplx term = 1.0;
    sum.add(term);
    if (degree) {
        for (unsigned m = 0; m < *degree; ++m) {
            term *= ratio(m);
            sum.add(term);
        }
        return sum.value();
    }
    // Below this index the term ratio may still be far from its asymptote.
    const double asymptotic_from = scale_hint + 2.0;
    for (std::size_t m = 0; m < opts.max_terms; ++m) {
        const cplx r = ratio(static_cast<unsigned>(m));
        term *= r;
        sum.add(term);
        if (static_cast<double>(m) < asymptotic_from)
            continue;
        const double r_eff = std::max(std::abs(r), z);
        if (r_eff < 1.0 && std::abs(term) * r_eff / (1.0 - r_eff) <= opts.rel_tol * std::abs(sum.value()))
            return sum.value();
        if (term == 0.0)
            return sum.value();
    }
    throw ConvergenceError(std::string(name) + " series did not converge within " +
                           std::to_string(opts.max_terms) + " terms at z = " + std::to_string(z));
}

void check_argument(double z, const char* name) {
    if (!(z >= 0.0 && z < 1.0))
        throw DomainError(std::string(name) + ": argument z must lie in [0, 1)");
}

} // namespace

double ln_gamma(double x) {
    if (std::isnan(x))
        throw DomainError("ln_gamma: NaN argument");
    if (is_nonpositive_integer(x))
        throw PoleError("ln_gamma: pole at x = " + std::to_string(x));
    if (x < 0.5)
        return std::log(kPi / std::abs(sinpi(x))) - ln_gamma(1.0 - x);
    double y = x;
    double product = 1.0;
    while (y < kStirlingThreshold) {
        product *= y;
        y += 1.0;
    }
    return stirling(y) - std::log(product);
}

cplx ln_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw PoleError("ln_gamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5)
        return std::log(kPi) - std::log(sinpi(z)) - ln_gamma(1.0 - z);
    cplx y = z;
    cplx shift = 0.0;
    while (y.real() < kStirlingThreshold) {
        shift += std::log(y);
        y += 1.0;
    }
    return stirling(y) - shift;
}

double gamma(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("gamma: pole at x = " + std::to_string(x));
    if (x >= 0.5)
        return std::exp(ln_gamma(x));
    return kPi / (sinpi(x) * gamma(1.0 - x));
}

cplx rgamma(cplx z) {
    if (is_nonpositive_integer(z))
        return 0.0;
    if (z.real() < 0.5)
        return sinpi(z) / kPi * std::exp(ln_gamma(1.0 - z));
    return std::exp(-ln_gamma(z));
}

cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
    for (const cplx& d : den)
        if (is_nonpositive_integer(d))
            return 0.0;
    cplx log_sum = 0.0;
    for (const cplx& n : num)
        log_sum += ln_gamma(n);
    for (const cplx& d : den)
        log_sum -= ln_gamma(d);
    return std::exp(log_sum);
}

double pochhammer(double a, unsigned m) {
    double p = 1.0;
    for (unsigned i = 0; i < m; ++i)
        p *= a + i;
    return p;
}

cplx pochhammer(cplx a, unsigned m) {
    cplx p = 1.0;
    for (unsigned i = 0; i < m; ++i)
        p *= a + static_cast<double>(i);
    return p;
}

cplx hyp2f1(const HyperParams2F1& p, const SeriesOptions& opts) {
    check_argument(p.z, "hyp2f1");
    if (is_nonpositive_integer(p.c))
        throw DomainError("hyp2f1: c must not be a non-positive integer");
    if (p.z == 0.0)
        return 1.0;
    std::optional<unsigned> degree = terminating_degree(p.a);
    if (auto db = terminating_degree(p.b); db && (!degree || *db < *degree))
        degree = db;
    const auto ratio = [&](unsigned m) {
        const double md = m;
        return (p.a + md) * (p.b + md) / ((p.c + md) * (md + 1.0)) * p.z;
    };
    const double hint = std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c)});
    return sum_series(ratio, p.z, degree, hint, opts, "hyp2f1");
}

cplx hyp2f1_derivative(const HyperParams2F1& p, const SeriesOptions& opts) {
    if (is_nonpositive_integer(p.c))
        throw DomainError("hyp2f1_derivative: c must not be a non-positive integer");
    const cplx lead = p.a * p.b / p.c;
    if (lead == 0.0) {
        check_argument(p.z, "hyp2f1_derivative");
        return 0.0;
    }
    return lead * hyp2f1({p.a + 1.0, p.b + 1.0, p.c + 1.0, p.z}, opts);
}

cplx hyp3f2(cplx a1, cplx a2, cplx a3, double b1, double b2, double z, const SeriesOptions& opts) {
    check_argument(z, "hyp3f2");
    if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
        throw DomainError("hyp3f2: lower parameters must not be non-positive integers");
    if (z == 0.0)
        return 1.0;
    std::optional<unsigned> degree;
    for (const cplx& a : {a1, a2, a3})
        if (auto d = terminating_degree(a); d && (!degree || *d < *degree))
            degree = d;
    const auto ratio = [&](unsigned m) {
        const double md = m;
        return (a1 + md) * (a2 + md) * (a3 + md) / ((b1 + md) * (b2 + md) * (md + 1.0)) * z;
    };
    const double hint = std::max({std::abs(a1), std::abs(a2), std::abs(a3), std::abs(b1), std::abs(b2)});
    return sum_series(ratio, z, degree, hint, opts, "hyp3f2");
}

AsymptoticCoeffsC ab_coefficients(const PTParams& params, cplx epsilon) {
    const double l = params.lambda();
    const double n = params.nu();
    const double half_mu = params.mu() / 2.0;
    const double shift = (1.0 + n - l) / 2.0;
    const cplx k = half_energy_root(epsilon);
    AsymptoticCoeffsC out;
    out.a_coef = gamma_ratio({l + 0.5, n - 0.5}, {half_mu + k, half_mu - k});
    out.b_coef = gamma_ratio({1.5 - l, n - 0.5}, {shift + k, shift - k});
    return out;
}

AsymptoticCoeffs ab_coefficients(const PTParams& params, double epsilon) {
    const AsymptoticCoeffsC c = ab_coefficients(params, cplx(epsilon, 0.0));
    return {c.a_coef.real(), c.b_coef.real()};
}

} // namespace ptsusy::specfun
