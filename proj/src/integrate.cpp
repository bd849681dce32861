#include "ptsusy/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ptsusy/errors.hpp"
#include "ptsusy/params.hpp"

namespace ptsusy::integrate {

namespace {

constexpr int kOrder = 20;

struct Rule {
    std::array<double, kOrder> nodes;
    std::array<double, kOrder> weights;
};

// Roots of P_20 by Newton iteration from the Chebyshev-like initial guess.
Rule make_rule() {
    Rule r{};
    for (int i = 0; i < kOrder; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= kOrder; ++n) {
                const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

std::vector<double> make_mesh() {
    constexpr double kRatio = 1.3;
    constexpr double kMaxWidth = 0.04;
    const double mid = kHalfPi / 2.0;
    std::vector<double> half{kGuard};
    double width = kGuard * (kRatio - 1.0);
    while (half.back() + width < mid) {
        half.push_back(half.back() + width);
        width = std::min(width * kRatio, kMaxWidth);
    }
    // Stretch the last panels evenly so the half mesh ends exactly at pi/4.
    const double gap = mid - half.back();
    if (gap < 0.5 * width && half.size() > 1)
        half.pop_back();
    half.push_back(mid);

    std::vector<double> mesh(half);
    for (auto it = half.rbegin() + 1; it != half.rend(); ++it)
        mesh.push_back(kHalfPi - *it);
    return mesh;
}

double tail(const Integrand& f, double exponent, double guard_point, double distance) {
    if (exponent <= -1.0)
        throw DivergenceError("integrand ~ t^" + std::to_string(exponent) + " is not integrable at the endpoint");
    return f(guard_point) * distance / (exponent + 1.0);
}

} // namespace

const std::vector<double>& graded_mesh() {
    static const std::vector<double> mesh = make_mesh();
    return mesh;
}

double gauss_legendre(const Integrand& f, double a, double b) {
    const Rule& r = rule();
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < kOrder; ++i)
        sum += r.weights[i] * f(centre + half * r.nodes[i]);
    return sum * half;
}

double half_period(const Integrand& f, Tails tails) {
    const auto& mesh = graded_mesh();
    double sum = tail(f, tails.left, mesh.front(), mesh.front());
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
        sum += gauss_legendre(f, mesh[i], mesh[i + 1]);
    sum += tail(f, tails.right, mesh.back(), kHalfPi - mesh.back());
    return sum;
}

Cumulative::Cumulative(Integrand f, double tail_exponent, Anchor anchor) : f_(std::move(f)), anchor_(anchor) {
    const auto& mesh = graded_mesh();
    const std::size_t n = mesh.size();
    table_.assign(n, 0.0);
    if (anchor_ == Anchor::left) {
        table_[0] = tail(f_, tail_exponent, mesh.front(), mesh.front());
        for (std::size_t i = 1; i < n; ++i)
            table_[i] = table_[i - 1] + gauss_legendre(f_, mesh[i - 1], mesh[i]);
    } else {
        // Stored in reverse so that table_[j] = int from mesh[n-1-j] to pi/2.
        table_[0] = tail(f_, tail_exponent, mesh.back(), kHalfPi - mesh.back());
        for (std::size_t j = 1; j < n; ++j)
            table_[j] = table_[j - 1] + gauss_legendre(f_, mesh[n - 1 - j], mesh[n - j]);
    }
}

double Cumulative::operator()(double x) const {
    const auto& mesh = graded_mesh();
    if (!(x >= mesh.front() && x <= mesh.back()))
        throw DomainError("cumulative integral requested outside the guarded interval");
    const std::size_t n = mesh.size();
    if (anchor_ == Anchor::left) {
        std::size_t i = std::upper_bound(mesh.begin(), mesh.end(), x) - mesh.begin() - 1;
        i = std::min(i, n - 1);
        return table_[i] + (x > mesh[i] ? gauss_legendre(f_, mesh[i], x) : 0.0);
    }
    std::size_t i = std::lower_bound(mesh.begin(), mesh.end(), x) - mesh.begin();
    i = std::min(i, n - 1);
    return table_[n - 1 - i] + (mesh[i] > x ? gauss_legendre(f_, x, mesh[i]) : 0.0);
}

} // namespace ptsusy::integrate
