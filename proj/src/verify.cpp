#include "ptsusy/verify.hpp"

#include <algorithm>
#include <cmath>

#include "ptsusy/kernels.hpp"

namespace ptsusy::verify {

namespace {

kernels::Tridiagonal assemble(const RealFunction& potential, int n, double delta, Execution exec) {
    const std::vector<double> xs = oracle_grid(n, delta);
    const double h = (kHalfPi - 2.0 * delta) / (n + 1);
    std::vector<double> v = exec == Execution::parallel ? kernels::sample_parallel(potential, xs)
                                                        : kernels::sample_serial(potential, xs);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]))
            throw DomainError("potential not finite at x = " + std::to_string(xs[i]));
        v[i] += 1.0 / (h * h);
    }
    return {std::move(v), -0.5 / (h * h)};
}

std::vector<double> eigenvalues(const kernels::Tridiagonal& t, int count, Execution exec) {
    return exec == Execution::parallel ? kernels::eigenvalues_parallel(t, count)
                                       : kernels::eigenvalues_serial(t, count);
}

double simpson(const RealFunction& g, double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

void OracleConfig::validate() const {
    if (grid_points < 500)
        throw ValidationError("grid must have at least 500 points", "oracle.grid_points");
    if (!(guard_delta > 0.0 && guard_delta < 0.01))
        throw ValidationError("guard must lie in (0, 0.01)", "oracle.guard_delta");
    if (levels < 1)
        throw ValidationError("at least one level", "oracle.levels");
}

std::vector<double> oracle_grid(int n, double delta) {
    const double h = (kHalfPi - 2.0 * delta) / (n + 1);
    std::vector<double> xs(n);
    for (int j = 0; j < n; ++j)
        xs[j] = delta + (j + 1) * h;
    return xs;
}

std::vector<double> oracle_spectrum(const RealFunction& potential, const OracleConfig& cfg) {
    cfg.validate();
    const int n = cfg.grid_points;
    const std::vector<double> coarse =
        eigenvalues(assemble(potential, n, cfg.guard_delta, cfg.execution), cfg.levels, cfg.execution);
    if (!cfg.richardson)
        return coarse;
    const std::vector<double> fine =
        eigenvalues(assemble(potential, 2 * n + 1, cfg.guard_delta, cfg.execution), cfg.levels, cfg.execution);
    std::vector<double> out(cfg.levels);
    for (int k = 0; k < cfg.levels; ++k)
        out[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
    return out;
}

OracleStates oracle_states(const RealFunction& potential, const OracleConfig& cfg) {
    cfg.validate();
    const kernels::Tridiagonal t = assemble(potential, cfg.grid_points, cfg.guard_delta, cfg.execution);
    OracleStates out;
    out.x = oracle_grid(cfg.grid_points, cfg.guard_delta);
    out.energies = eigenvalues(t, cfg.levels, cfg.execution);
    out.vectors.resize(cfg.levels);
#pragma omp parallel for if (cfg.execution == Execution::parallel)
    for (int k = 0; k < cfg.levels; ++k)
        out.vectors[k] = kernels::eigenvector(t, out.energies[k]);
    return out;
}

int count_sign_changes(const std::vector<double>& values) {
    double peak = 0.0;
    for (double v : values)
        peak = std::max(peak, std::abs(v));
    int changes = 0;
    int sign = 0;
    for (double v : values) {
        if (std::abs(v) <= 1e-8 * peak)
            continue;
        const int s = v > 0.0 ? 1 : -1;
        if (sign != 0 && s != sign)
            ++changes;
        sign = s;
    }
    return changes;
}

SpectrumReport compare_spectra(const std::vector<SpectrumLevel>& predicted, const std::vector<double>& oracle,
                               double rel_tol) {
    SpectrumReport r;
    r.predicted = predicted;
    r.oracle = oracle;
    r.rel_tol = rel_tol;
    const double ceiling = oracle.empty() ? 0.0 : oracle.back() * (1.0 + rel_tol);
    auto close = [rel_tol](double a, double b) { return std::abs(a - b) <= rel_tol * std::abs(b); };
    std::vector<bool> used(oracle.size(), false);
    std::size_t j = 0;
    for (const SpectrumLevel& lv : predicted) {
        if (lv.tag == LevelTag::deleted || lv.energy > ceiling)
            continue;
        while (j < oracle.size() && oracle[j] < lv.energy && !close(lv.energy, oracle[j])) {
            ++j;
        }
        if (j < oracle.size() && close(lv.energy, oracle[j])) {
            r.matched.push_back({lv.energy, oracle[j], std::abs(oracle[j] - lv.energy) / std::abs(lv.energy), lv.tag});
            used[j] = true;
            ++j;
        } else {
            r.unmatched_predicted.push_back(lv);
        }
    }
    for (std::size_t i = 0; i < oracle.size(); ++i)
        if (!used[i])
            r.unmatched_oracle.push_back(oracle[i]);
    for (const SpectrumLevel& lv : predicted) {
        if (lv.tag != LevelTag::deleted || lv.energy > ceiling)
            continue;
        const bool seen = std::any_of(oracle.begin(), oracle.end(), [&](double o) { return close(lv.energy, o); });
        (seen ? r.present_but_deleted : r.absent_as_expected).push_back(lv);
    }
    r.pass = r.unmatched_predicted.empty() && r.unmatched_oracle.empty() && r.present_but_deleted.empty();
    return r;
}

double residual_norm(const RealFunction& potential, const RealFunction& f, double energy, const OracleConfig& cfg) {
    const int n = cfg.grid_points;
    const double a = 1e-3;
    const double b = kHalfPi - 1e-3;
    const double spacing = (b - a) / (n - 1);
    std::vector<double> res(n), ef(n);
    auto point = [&](int i) {
        const double x = a + i * spacing;
        const double h = std::min(1e-4, 0.1 * std::min(x, kHalfPi - x));
        const double f0 = f(x);
        const double d2 = (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f0 + 16.0 * f(x - h) - f(x - 2 * h)) / (12.0 * h * h);
        res[i] = std::abs(-0.5 * d2 + potential(x) * f0 - energy * f0);
        ef[i] = std::abs(energy * f0);
    };
    std::exception_ptr error;
#pragma omp parallel for if (cfg.execution == Execution::parallel)
    for (int i = 0; i < n; ++i) {
        try {
            point(i);
        } catch (...) {
#pragma omp critical(ptsusy_residual_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    const double scale = *std::max_element(ef.begin(), ef.end());
    return *std::max_element(res.begin(), res.end()) / scale;
}

double quadrature(const RealFunction& f, int power, double a, double b, integrate::Tails exponents) {
    if (!(a < b) || a < 0.0 || b > kHalfPi)
        throw DomainError("quadrature interval must be an ordered subinterval of [0, pi/2]");
    auto g = [&f, power](double x) { return power == 1 ? f(x) : std::pow(f(x), power); };
    double extra = 0.0;
    auto tail = [&](double at, double width, double exponent) {
        const double t = power * exponent;
        if (!(t > -1.0))
            throw DivergenceError("integrand is not integrable at an endpoint");
        return g(at) * width / (t + 1.0);
    };
    if (a < kGuard) {
        extra += tail(kGuard, kGuard, exponents.left);
        a = kGuard;
    }
    if (b > kHalfPi - kGuard) {
        extra += tail(kHalfPi - kGuard, kGuard, exponents.right);
        b = kHalfPi - kGuard;
    }
    // Split into panels so that power-law ends are resolved.
    const auto& mesh = integrate::graded_mesh();
    std::vector<double> cuts{a};
    for (double m : mesh)
        if (m > a && m < b)
            cuts.push_back(m);
    cuts.push_back(b);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double fa = g(lo);
        const double fb = g(hi);
        const double fm = g(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        const double tol = std::max(1e-12 * (hi - lo) / kHalfPi, 1e-10 * std::abs(whole));
        sum += simpson(g, lo, hi, fa, fm, fb, whole, tol, 40);
    }
    return sum + extra;
}

} // namespace ptsusy::verify
