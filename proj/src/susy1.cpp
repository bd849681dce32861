#include "ptsusy/susy1.hpp"

#include <cmath>

namespace ptsusy {

namespace {

void require_below_ground(const PTParams& params, double epsilon) {
    if (!(epsilon < eigen_energy(params, 0)))
        throw ValidationError("factorization energy must lie below E_0 = " + std::to_string(eigen_energy(params, 0)),
                              "transform.epsilon");
}

void require_above(double value, double bound, const char* field) {
    if (!(value > bound))
        throw ValidationError(std::string("must exceed ") + std::to_string(bound), field);
}

} // namespace

FirstOrderTransform::FirstOrderTransform(const PTParams& params, const SeedSpec& seed, std::string name)
    : PartnerPotential(params, std::move(name)), seed_(params, seed) {
    if (!seed_.is_real())
        throw ValidationError("first-order seeds need a real factorization energy", "transform.epsilon");
    const double eps = epsilon();
    const double e0 = eigen_energy(params, 0);
    const bool ground_state = seed.level && *seed.level == 0;
    if (eps > e0 || (eps == e0 && !ground_state) || (ground_state && seed.coeffs.B != 0.0))
        throw ValidationError("first-order factorization energy must satisfy eps < E_0 or use psi_0",
                              "transform.epsilon");
    require_nodeless([this](double x) { return seed_.value(x); }, "seed solution");
    transform_exponents_ = {seed_.left_exponent(), seed_.right_exponent()};
}

double FirstOrderTransform::superpotential(double x) const {
    const SolutionValue v = seed_.evaluate(x);
    const double u = v.u.real();
    const double du = v.du.real();
    if (!(std::abs(u) > 1e-14 * std::abs(du) * std::min(x, kHalfPi - x)) || !std::isfinite(du / u))
        throw SingularityError("seed vanishes at x = " + std::to_string(x));
    return du / u;
}

double FirstOrderTransform::value(double x) const {
    const double alpha = superpotential(x);
    return 2.0 * epsilon() - potential_value(params(), x) + alpha * alpha;
}

std::vector<MissingState> FirstOrderTransform::missing_states() const {
    const EndpointBehavior exps{-seed_.left_exponent(), -seed_.right_exponent()};
    const SchrodingerSolution u = seed_;
    return {{epsilon(), [u](double x) { return 1.0 / u.value(x); }, exps, exps.left > 0.0 && exps.right > 0.0}};
}

StateFunction FirstOrderTransform::transformed_state(int n) const {
    const double en = eigen_energy(params(), n);
    if (std::abs(en - epsilon()) <= 1e-12 * en)
        throw DegenerateError("E_n coincides with the factorization energy");
    const SchrodingerSolution psi = eigenfunction(params(), n);
    const double norm = std::sqrt(2.0 * (en - epsilon()));
    const SchrodingerSolution u = seed_;
    auto raw = [psi, u, norm](double x) {
        const SolutionValue p = psi.evaluate(x);
        const SolutionValue s = u.evaluate(x);
        const double alpha = s.du.real() / s.u.real();
        return (-p.du.real() + alpha * p.u.real()) / norm;
    };
    return StateFunction(raw, en, new_exponents());
}

std::shared_ptr<FirstOrderTransform> delete_ground(const PTParams& params) {
    return std::make_shared<FirstOrderTransform>(params, physical_seed(params, 0), "delete_ground");
}

std::shared_ptr<FirstOrderTransform> create_ground(const PTParams& params, double epsilon, double q) {
    require_above(params.lambda(), 2.0, "params.lambda");
    require_above(params.nu(), 2.0, "params.nu");
    require_below_ground(params, epsilon);
    if (!(q > 0.0))
        throw ValidationError("q must be positive for a nodeless seed", "transform.q");
    return std::make_shared<FirstOrderTransform>(params, seed_from_q(params, epsilon, q), "create_ground");
}

std::shared_ptr<FirstOrderTransform> isospectral_first(const PTParams& params, double epsilon, Side side) {
    if (side == Side::left)
        require_above(params.nu(), 2.0, "params.nu");
    else
        require_above(params.lambda(), 2.0, "params.lambda");
    require_below_ground(params, epsilon);
    return std::make_shared<FirstOrderTransform>(params, regular_seed(epsilon, side),
                                                 side == Side::left ? "isospectral_first_left"
                                                                    : "isospectral_first_right");
}

StateFunction transform_eigenfunction_first(const FirstOrderTransform& t, int n) { return t.transformed_state(n); }

} // namespace ptsusy
