#include "ptsusy/susy2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptsusy {

namespace {

using integrate::Cumulative;

void require_above(double value, double bound, const char* field) {
    if (!(value > bound))
        throw ValidationError(std::string("must exceed ") + std::to_string(bound), field);
}

/// The far end of a seed vanishing at `side` must carry a strong enough barrier.
void require_far_barrier(const PTParams& params, Side side, double bound) {
    if (side == Side::left)
        require_above(params.nu(), bound, "params.nu");
    else
        require_above(params.lambda(), bound, "params.lambda");
}

int require_band(const PTParams& params, double epsilon, const char* field) {
    const auto band = band_index(params, epsilon);
    if (!band)
        throw ValidationError("factorization energy coincides with an eigenvalue", field);
    return *band;
}

void require_index(int i, int lowest, const char* field) {
    if (i < lowest)
        throw ValidationError("level index must be at least " + std::to_string(lowest), field);
}

double band_lower(const PTParams& params, int i) {
    return i == 0 ? -std::numeric_limits<double>::infinity() : eigen_energy(params, i - 1);
}

EndpointBehavior pair_exponents(const SchrodingerSolution& u1, const SchrodingerSolution& u2) {
    return {wronskian_exponent(branch_exponents(u1, Frame::left), branch_exponents(u2, Frame::left)),
            wronskian_exponent(branch_exponents(u1, Frame::right), branch_exponents(u2, Frame::right))};
}

Expansion conjugate(const Expansion& e) {
    Expansion out = e;
    for (std::size_t i = 0; i < out.size; ++i) {
        Term& t = out.terms[i];
        t.coeff = std::conj(t.coeff);
        t.f = std::conj(t.f);
        t.fx = std::conj(t.fx);
    }
    return out;
}

bool left_regular(const SchrodingerSolution& u) {
    return u.left_coefficients() && u.left_coefficients()->B == 0.0;
}

} // namespace

FactorizationPair FactorizationPair::real(double eps1, double eps2) {
    if (eps1 == eps2)
        throw ValidationError("distinct energies required", "transform.eps2");
    return {Kind::real, eps1, eps2};
}

FactorizationPair FactorizationPair::complex(cplx epsilon) {
    if (epsilon.imag() == 0.0)
        throw ValidationError("complex case needs Im(eps) != 0", "transform.epsilon");
    return {Kind::complex, epsilon, std::conj(epsilon)};
}

FactorizationPair FactorizationPair::confluent(double epsilon) { return {Kind::confluent, epsilon, epsilon}; }

double FactorizationPair::c() const {
    const cplx h = (eps1_ - eps2_) / 2.0;
    return (h * h).real();
}

double SecondOrderTransform::value(double x) const {
    const WValue v = w_value(x);
    if (!(std::abs(v.w) > 0.0))
        throw SingularityError("w vanishes at x = " + std::to_string(x));
    const double r1 = v.dw / v.w;
    const double eta_prime = v.d2w / v.w - r1 * r1;
    const double out = potential_value(params(), x) - eta_prime;
    if (!std::isfinite(out))
        throw SingularityError("partner potential not finite at x = " + std::to_string(x));
    return out;
}

double SecondOrderTransform::eta(double x) const {
    const WValue v = w_value(x);
    return v.dw / v.w;
}

double SecondOrderTransform::gamma(double x) const {
    const WValue v = w_value(x);
    const double eta = v.dw / v.w;
    const double eta_prime = v.d2w / v.w - eta * eta;
    return eta_prime / 2.0 + eta * eta / 2.0 - 2.0 * potential_value(params(), x) + pair_.d();
}

void SecondOrderTransform::check_nodeless() const {
    require_nodeless([this](double x) { return w_value(x).w; }, "w");
}

StateFunction SecondOrderTransform::transformed_state(int n) const {
    const double en = eigen_energy(params(), n);
    const cplx p1 = en - pair_.eps1();
    const cplx p2 = en - pair_.eps2();
    if (std::abs(p1) <= 1e-12 * en || std::abs(p2) <= 1e-12 * en)
        throw DegenerateError("E_n coincides with a factorization energy");
    const double norm = std::sqrt(std::abs(p1 * p2));
    const SchrodingerSolution psi = eigenfunction(params(), n);
    const double d = pair_.d();
    auto raw = [this, psi, en, d, norm](double x) {
        const WValue v = w_value(x);
        const double eta = v.dw / v.w;
        const double eta_prime = v.d2w / v.w - eta * eta;
        const SolutionValue p = psi.evaluate(x);
        return 0.5 * ((d - 2.0 * en + eta_prime / 2.0 + eta * eta / 2.0) * p.u.real() - eta * p.du.real()) / norm;
    };
    return StateFunction(raw, en, new_exponents());
}

WValue wronskian_pair(const SchrodingerSolution& u1, const SchrodingerSolution& u2, double x) {
    const double de = 2.0 * (u1.epsilon().real() - u2.epsilon().real());
    const double w = structured_wronskian(u1.expand(x), u2.expand(x), x).real();
    const SolutionValue a = u1.evaluate(x);
    const SolutionValue b = u2.evaluate(x);
    return {w, de * (a.u * b.u).real(), de * (a.du * b.u + a.u * b.du).real()};
}

RealPairTransform::RealPairTransform(const PTParams& params, const SeedSpec& seed1, const SeedSpec& seed2,
                                     std::string name)
    : SecondOrderTransform(params, FactorizationPair::real(seed1.epsilon.real(), seed2.epsilon.real()),
                           std::move(name)),
      u1_(params, seed1), u2_(params, seed2) {
    if (!u1_.is_real() || !u2_.is_real())
        throw ValidationError("real case needs real factorization energies", "transform.epsilon");
    transform_exponents_ = pair_exponents(u1_, u2_);
    check_nodeless();
}

WValue RealPairTransform::w_value(double x) const { return wronskian_pair(u1_, u2_, x); }

std::vector<MissingState> RealPairTransform::missing_states() const {
    const EndpointBehavior e = transform_exponents_;
    auto make = [this, &e](const SchrodingerSolution& u, double energy) {
        const EndpointBehavior exps{u.left_exponent() - e.left, u.right_exponent() - e.right};
        auto f = [this, u](double x) { return u.value(x) / w_value(x).w; };
        return MissingState{energy, f, exps, exps.left > 0.0 && exps.right > 0.0};
    };
    return {make(u2_, u1_.epsilon().real()), make(u1_, u2_.epsilon().real())};
}

ComplexTransform::ComplexTransform(const PTParams& params, const SeedSpec& seed, std::string name)
    : SecondOrderTransform(params, FactorizationPair::complex(seed.epsilon), std::move(name)), u_(params, seed) {
    const auto pl = branch_exponents(u_, Frame::left);
    const auto pr = branch_exponents(u_, Frame::right);
    transform_exponents_ = {wronskian_exponent(pl, pl), wronskian_exponent(pr, pr)};
    check_nodeless();
}

WValue ComplexTransform::w_value(double x) const {
    const Expansion e = u_.expand(x);
    const cplx denom = 2.0 * (u_.epsilon() - std::conj(u_.epsilon()));
    const double w = (structured_wronskian(e, conjugate(e), x) / denom).real();
    const SolutionValue v = u_.evaluate(x);
    return {w, std::norm(v.u), 2.0 * (std::conj(v.u) * v.du).real()};
}

ConfluentW::ConfluentW(const SchrodingerSolution& u, std::optional<double> w_left, std::optional<double> w_right,
                       ConfluentMethod method)
    : u_(u), w_left_(w_left), w_right_(w_right), method_(method) {
    if (!w_left_ && !w_right_)
        throw ValidationError("confluent w needs an anchor value", "transform.w0");
    const SchrodingerSolution seed = u_;
    auto square = [seed](double x) {
        const double v = seed.value(x);
        return v * v;
    };
    if (w_left_)
        from_left_ = std::make_shared<const Cumulative>(square, 2.0 * u_.left_exponent(), Cumulative::Anchor::left);
    if (w_right_)
        from_right_ =
            std::make_shared<const Cumulative>(square, 2.0 * u_.right_exponent(), Cumulative::Anchor::right);
}

double ConfluentW::operator()(double x) const {
    const bool use_left = w_left_ && (!w_right_ || x <= kHalfPi / 2.0);
    if (!use_left)
        return *w_right_ - (*from_right_)(x);
    if (method_ == ConfluentMethod::closed_form && left_regular(u_)) {
        try {
            return *w_left_ + closed_form_integral(x);
        } catch (const ConvergenceError&) {
        }
    }
    return *w_left_ + (*from_left_)(x);
}

double ConfluentW::closed_form_integral(double x) const {
    if (!left_regular(u_))
        throw DomainError("closed form needs a seed vanishing at the origin");
    const PTParams& p = u_.params();
    const double l = p.lambda();
    const cplx amp = u_.expand_in(std::min(x, kHalfPi / 2.0), Frame::left).terms[0].coeff;
    const cplx k = specfun::half_energy_root(u_.epsilon());
    cplx a1, a2;
    if (u_.seed().level) {
        a1 = p.mu() + *u_.seed().level;
        a2 = -static_cast<double>(*u_.seed().level);
    } else {
        a1 = p.mu() / 2.0 + k;
        a2 = p.mu() / 2.0 - k;
    }
    const double c = l + 0.5;
    const cplx alpha = c - a1;
    const cplx beta = c - a2;
    const double s = std::sin(x);
    const double z = s * s;

    constexpr int kMaxTerms = 10000;
    const double scale = std::max({std::abs(a1), std::abs(a2), c}) + 2.0;
    cplx coef = 1.0;  // (a1)_m (a2)_m / ((c)_m m!)
    cplx sum = 0.0;
    double power = std::pow(s, 2.0 * l + 1.0);
    int small = 0;
    for (int m = 0; m < kMaxTerms; ++m) {
        if (coef == 0.0)
            return (amp * amp * sum).real();
        const double b2 = l + m + 1.5;
        const cplx inner = specfun::hyp3f2(alpha, beta, l + m + 0.5, c, b2, z);
        const cplx term = coef * power * inner / (2.0 * l + 2.0 * m + 1.0);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) && m > scale) {
            if (++small == 3)
                return (amp * amp * sum).real();
        } else {
            small = 0;
        }
        coef *= (a1 + double(m)) * (a2 + double(m)) / ((c + m) * (m + 1.0));
        power *= z;
    }
    throw ConvergenceError("closed-form confluent integral did not converge");
}

ConfluentW confluent_w(const SchrodingerSolution& u, double w0, ConfluentMethod method) {
    std::optional<double> right;
    if (2.0 * u.right_exponent() > -1.0) {
        const SchrodingerSolution seed = u;
        const Cumulative whole([seed](double x) { return seed.value(x) * seed.value(x); }, 2.0 * u.left_exponent(),
                               Cumulative::Anchor::left);
        right = w0 + whole.total();
    }
    return ConfluentW(u, w0, right, method);
}

ConfluentTransform::ConfluentTransform(const SchrodingerSolution& u, std::optional<double> w_left,
                                       std::optional<double> w_right, std::string name, ConfluentMethod method)
    : SecondOrderTransform(u.params(), FactorizationPair::confluent(u.epsilon().real()), std::move(name)), u_(u),
      w_(u, w_left, w_right, method) {
    if (!u_.is_real())
        throw ValidationError("confluent case needs a real factorization energy", "transform.epsilon");
    const double pl = u_.left_exponent();
    const double pr = u_.right_exponent();
    if ((w_left && !(2.0 * pl > -1.0)) || (w_right && !(2.0 * pr > -1.0)))
        throw ValidationError("u^2 is not integrable at an anchored end", "transform.w0");
    const bool finite_left = w_left && *w_left != 0.0;
    const bool finite_right = w_right && *w_right != 0.0;
    transform_exponents_ = {finite_left ? 0.0 : 2.0 * pl + 1.0, finite_right ? 0.0 : 2.0 * pr + 1.0};
    check_nodeless();
}

WValue ConfluentTransform::w_value(double x) const {
    const SolutionValue v = u_.evaluate(x);
    const double u = v.u.real();
    return {w_(x), u * u, 2.0 * u * v.du.real()};
}

std::vector<MissingState> ConfluentTransform::missing_states() const {
    const EndpointBehavior exps{u_.left_exponent() - transform_exponents_.left,
                                u_.right_exponent() - transform_exponents_.right};
    auto f = [this](double x) { return u_.value(x) / w_(x); };
    return {{u_.epsilon().real(), f, exps, exps.left > 0.0 && exps.right > 0.0}};
}

SecondOrderPtr delete_two(const PTParams& params, int i) {
    require_index(i, 1, "transform.i");
    return std::make_shared<RealPairTransform>(params, physical_seed(params, i), physical_seed(params, i - 1),
                                               "delete_two");
}

SecondOrderPtr create_two(const PTParams& params, double eps1, double eps2, double q1, double q2) {
    require_above(params.lambda(), 3.0, "params.lambda");
    require_above(params.nu(), 3.0, "params.nu");
    if (!(q1 > 0.0))
        throw ValidationError("q1 must be positive", "transform.q1");
    if (!(q2 < 0.0))
        throw ValidationError("q2 must be negative", "transform.q2");
    if (!(eps2 < eps1))
        throw ValidationError("eps2 must lie below eps1", "transform.eps2");
    if (require_band(params, eps1, "transform.eps1") != require_band(params, eps2, "transform.eps2"))
        throw ValidationError("eps1 and eps2 must lie between the same pair of neighbouring levels",
                              "transform.eps2");
    return std::make_shared<RealPairTransform>(params, seed_from_q(params, eps1, q1), seed_from_q(params, eps2, q2),
                                               "create_two");
}

SecondOrderPtr iso_two_real(const PTParams& params, double eps1, double eps2, Side side) {
    require_far_barrier(params, side, 3.0);
    if (!(eps2 < eps1))
        throw ValidationError("eps2 must lie below eps1", "transform.eps2");
    if (require_band(params, eps1, "transform.eps1") != require_band(params, eps2, "transform.eps2"))
        throw ValidationError("eps1 and eps2 must lie between the same pair of neighbouring levels",
                              "transform.eps2");
    return std::make_shared<RealPairTransform>(params, regular_seed(eps1, side), regular_seed(eps2, side),
                                               side == Side::left ? "iso_two_real_left" : "iso_two_real_right");
}

SecondOrderPtr create_one(const PTParams& params, double eps1, double q1, Side side, std::optional<double> eps2) {
    require_far_barrier(params, side, 3.0);
    if (!(q1 > 0.0))
        throw ValidationError("q1 must be positive", "transform.q1");
    const int i = require_band(params, eps1, "transform.eps1");
    const double lower = band_lower(params, i);
    if (!eps2)
        eps2 = i == 0 ? eps1 - (eigen_energy(params, 1) - eigen_energy(params, 0)) / 2.0 : (lower + eps1) / 2.0;
    if (!(*eps2 > lower && *eps2 < eps1))
        throw ValidationError("eps2 must lie between E_{i-1} and eps1", "transform.eps2");
    return std::make_shared<RealPairTransform>(params, seed_from_q(params, eps1, q1, side), regular_seed(*eps2, side),
                                               side == Side::left ? "create_one_left" : "create_one_right");
}

SecondOrderPtr move_level(const PTParams& params, int i, double target, Direction direction, std::optional<double> q) {
    require_index(i, 1, "transform.i");
    if (require_band(params, target, "transform.target") != i)
        throw ValidationError("target must lie between E_{i-1} and E_i", "transform.target");
    if (direction == Direction::up) {
        const double qv = q.value_or(1.0);
        if (!(qv > 0.0))
            throw ValidationError("moving up needs q > 0", "transform.q");
        return std::make_shared<RealPairTransform>(params, seed_from_q(params, target, qv),
                                                   physical_seed(params, i - 1), "move_up");
    }
    const double qv = q.value_or(-1.0);
    if (!(qv < 0.0))
        throw ValidationError("moving down needs q < 0", "transform.q");
    return std::make_shared<RealPairTransform>(params, physical_seed(params, i), seed_from_q(params, target, qv),
                                               "move_down");
}

SecondOrderPtr delete_one(const PTParams& params, int i, Side side, std::optional<double> eps1) {
    require_index(i, 1, "transform.i");
    const double lower = eigen_energy(params, i - 1);
    const double upper = eigen_energy(params, i);
    const double e1 = eps1.value_or((lower + upper) / 2.0);
    if (!(e1 > lower && e1 < upper))
        throw ValidationError("eps1 must lie between E_{i-1} and E_i", "transform.eps1");
    return std::make_shared<RealPairTransform>(params, regular_seed(e1, side), physical_seed(params, i - 1),
                                               side == Side::left ? "delete_one_left" : "delete_one_right");
}

SecondOrderPtr iso_complex(const PTParams& params, cplx epsilon, Side side) {
    require_far_barrier(params, side, 3.0);
    if (epsilon.imag() == 0.0)
        throw ValidationError("complex case needs Im(eps) != 0", "transform.epsilon");
    return std::make_shared<ComplexTransform>(params, regular_seed(epsilon, side),
                                              side == Side::left ? "iso_complex_left" : "iso_complex_right");
}

SecondOrderPtr confluent_create(const PTParams& params, double epsilon, double w0, Side side) {
    require_far_barrier(params, side, 3.0);
    if (!(w0 > 0.0))
        throw ValidationError("w0 must be positive", "transform.w0");
    require_band(params, epsilon, "transform.epsilon");
    const SchrodingerSolution u(params, regular_seed(epsilon, side));
    if (side == Side::left)
        return std::make_shared<ConfluentTransform>(u, w0, std::nullopt, "confluent_create_left");
    return std::make_shared<ConfluentTransform>(u, std::nullopt, -w0, "confluent_create_right");
}

SecondOrderPtr confluent_iso(const PTParams& params, double epsilon, ConfluentIsoVariant variant,
                             std::optional<int> level, double w0) {
    switch (variant) {
    case ConfluentIsoVariant::general_w0_zero: {
        require_far_barrier(params, Side::left, 3.0);
        require_band(params, epsilon, "transform.epsilon");
        const SchrodingerSolution u(params, regular_seed(epsilon, Side::left));
        return std::make_shared<ConfluentTransform>(u, 0.0, std::nullopt, "confluent_iso_general");
    }
    case ConfluentIsoVariant::mirrored_w0_zero: {
        require_far_barrier(params, Side::right, 3.0);
        require_band(params, epsilon, "transform.epsilon");
        const SchrodingerSolution u(params, regular_seed(epsilon, Side::right));
        return std::make_shared<ConfluentTransform>(u, std::nullopt, 0.0, "confluent_iso_mirrored");
    }
    case ConfluentIsoVariant::physical_seed: {
        if (!level)
            throw ValidationError("physical-seed variant needs a level index", "transform.level");
        require_index(*level, 0, "transform.level");
        if (w0 >= -1.0 && w0 <= 0.0)
            throw ValidationError("w0 in [-1, 0] gives a zero of w", "transform.w0");
        const SchrodingerSolution u = eigenfunction(params, *level);
        const ConfluentW w = confluent_w(u, w0);
        return std::make_shared<ConfluentTransform>(u, w.w_left(), w.w_right(), "confluent_iso_physical");
    }
    }
    throw ValidationError("unknown variant", "transform.variant");
}

SecondOrderPtr confluent_delete(const PTParams& params, int i, ConfluentLimit limit) {
    require_index(i, 0, "transform.i");
    const SchrodingerSolution u = eigenfunction(params, i);
    const double w0 = limit == ConfluentLimit::w0_to_zero ? 0.0 : -1.0;
    const ConfluentW w = confluent_w(u, w0);
    // Pin the vanishing end exactly to the limit value.
    std::optional<double> right = w.w_right();
    if (limit == ConfluentLimit::w0_to_minus_one)
        right = 0.0;
    return std::make_shared<ConfluentTransform>(u, w0, right,
                                                limit == ConfluentLimit::w0_to_zero ? "confluent_delete_zero"
                                                                                    : "confluent_delete_minus_one");
}

StateFunction transform_eigenfunction_second(const SecondOrderTransform& t, int n) { return t.transformed_state(n); }

MissingState missing_state(const SecondOrderTransform& t, int which) {
    const std::vector<MissingState> all = t.missing_states();
    if (all.empty())
        throw DomainError("transformation has no real missing states");
    if (which < 1 || which > static_cast<int>(all.size()))
        throw DomainError("missing state index out of range");
    return all[which - 1];
}

} // namespace ptsusy
