#pragma once

#include <functional>
#include <vector>

/// Deterministic quadrature on (0, pi/2) for integrands with power-law endpoint behaviour.
///
/// The mesh is graded geometrically toward both ends and each panel gets a
/// 20-point Gauss-Legendre rule; the pieces below the guard are added
/// analytically from the known exponents.
namespace ptsusy::integrate {

using Integrand = std::function<double(double)>;

/// Power of sin x (left) and cos x (right) governing the integrand near the ends.
struct Tails {
    double left;
    double right;
};

/// Panel boundaries covering [kGuard, pi/2 - kGuard], symmetric about pi/4.
const std::vector<double>& graded_mesh();

/// 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const Integrand& f, double a, double b);

/// Integral over (0, pi/2). DivergenceError if a tail exponent is <= -1.
double half_period(const Integrand& f, Tails tails);

/// Running integral F(x) = int_0^x f (from_left) or int_x^{pi/2} f, tabulated
/// on the graded mesh and completed by one Gauss-Legendre panel per query.
class Cumulative {
public:
    enum class Anchor { left, right };

    Cumulative(Integrand f, double tail_exponent, Anchor anchor);

    double operator()(double x) const;

    /// Integral over the whole interval (only meaningful when both tails converge).
    double total() const { return table_.back(); }

private:
    Integrand f_;
    Anchor anchor_;
    std::vector<double> table_;
};

} // namespace ptsusy::integrate
