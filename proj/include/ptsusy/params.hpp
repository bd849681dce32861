#pragma once

#include <numbers>

#include "ptsusy/errors.hpp"

namespace ptsusy {

inline constexpr double kHalfPi = std::numbers::pi / 2;

/// Evaluators refuse x outside [kGuard, pi/2 - kGuard].
inline constexpr double kGuard = 1e-6;

/// Parameters of V(x) = (l-1)l / (2 sin^2 x) + (n-1)n / (2 cos^2 x) on (0, pi/2).
class PTParams {
public:
    PTParams(double lambda, double nu) : lambda_(lambda), nu_(nu), mu_(lambda + nu) {
        if (!(lambda > 1.0) || !(nu > 1.0))
            throw ValidationError("lambda and nu must both exceed 1", "params");
    }

    double lambda() const noexcept { return lambda_; }
    double nu() const noexcept { return nu_; }
    double mu() const noexcept { return mu_; }

    /// Parameters of the problem seen from the other endpoint (x -> pi/2 - x).
    PTParams swapped() const { return PTParams(nu_, lambda_); }

    friend bool operator==(const PTParams&, const PTParams&) = default;

private:
    double lambda_;
    double nu_;
    double mu_;
};

} // namespace ptsusy
