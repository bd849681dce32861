#include "ptsusy/pt_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ptsusy/integrate.hpp"

namespace ptsusy {

namespace {

using specfun::gamma_ratio;
using specfun::half_energy_root;
using specfun::hyp2f1;
using specfun::hyp2f1_derivative;

constexpr double kLevelTol = 1e-9;

void check_guarded(double x, const char* who) {
    if (!(x >= kGuard && x <= kHalfPi - kGuard))
        throw DomainError(std::string(who) + ": x = " + std::to_string(x) + " outside the guarded interval");
}

template <typename F>
std::optional<cplx> try_pole(F&& f) {
    try {
        return f();
    } catch (const PoleError&) {
        return std::nullopt;
    }
}

// Right-frame coefficients of a seed given in the left frame. Either entry is
// nullopt if a Gamma pole makes it undefined.
std::pair<std::optional<cplx>, std::optional<cplx>> to_other_frame(const PTParams& params, const SeedSpec& seed,
                                                                     Coefficients c) {
    const cplx eps = seed.epsilon;
    std::optional<cplx> A2, B2;
    if (seed.level) {
        // psi_n is regular at both ends: exactly no divergent branch.
        B2 = 0.0;
        A2 = try_pole([&] { return connection_matrix(params, eps).c11 * c.A; });
        return {A2, B2};
    }
    A2 = try_pole([&] {
        const ConnectionMatrix m = connection_matrix(params, eps);
        cplx v = 0.0;
        if (c.A != 0.0)
            v += m.c11 * c.A;
        if (c.B != 0.0)
            v += m.c12 * c.B;
        return v;
    });
    B2 = try_pole([&] {
        const specfun::AsymptoticCoeffsC ab = specfun::ab_coefficients(params, eps);
        if (seed.q)
            return cplx(*seed.q) * ab.a_coef * c.B;
        cplx v = 0.0;
        if (c.A != 0.0)
            v += ab.a_coef * c.A;
        if (c.B != 0.0)
            v += ab.b_coef * c.B;
        return v;
    });
    return {A2, B2};
}

Term branch(cplx coeff, double p, double r, cplx a, cplx b, double c, double z, double dzdx) {
    const specfun::HyperParams2F1 hp{a, b, c, z};
    return {coeff, p, r, hyp2f1(hp), hyp2f1_derivative(hp) * dzdx};
}

} // namespace

/// Fixed-step RK4 trajectory from pi/4 toward one endpoint, used only where an
/// endpoint basis is degenerate. Steps shrink as min(1e-4, 0.01 d) with d the
/// distance to the endpoint, because the local length scale of the solution
/// is proportional to d there.
class OdeContinuation {
public:
    OdeContinuation(const PTParams& params, cplx epsilon, SolutionValue start, Frame toward)
        : params_(params), epsilon_(epsilon), toward_(toward) {
        double x = kHalfPi / 2.0;
        const double end = toward == Frame::left ? kGuard : kHalfPi - kGuard;
        const double dir = toward == Frame::left ? -1.0 : 1.0;
        SolutionValue y = start;
        xs_.push_back(x);
        ys_.push_back(y);
        while (dir * (end - x) > 0.0) {
            const double dist = toward == Frame::left ? x : kHalfPi - x;
            double h = std::min(1e-4, 0.01 * dist);
            if (dir * (end - x) < h)
                h = dir * (end - x);
            y = step(x, y, dir * h);
            x += dir * h;
            xs_.push_back(x);
            ys_.push_back(y);
        }
    }

    SolutionValue at(double x) const {
        // Nodes run away from pi/4; take the last node not beyond x.
        std::size_t i = 0;
        if (toward_ == Frame::right)
            i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin() - 1;
        else
            i = std::upper_bound(xs_.begin(), xs_.end(), x, std::greater<>()) - xs_.begin() - 1;
        i = std::min(i, xs_.size() - 1);
        if (x == xs_[i])
            return ys_[i];
        return step(xs_[i], ys_[i], x - xs_[i]);
    }

private:
    SolutionValue rhs(double x, SolutionValue y) const {
        return {y.du, 2.0 * (potential_value(params_, x) - epsilon_) * y.u};
    }

    SolutionValue step(double x, SolutionValue y, double h) const {
        auto add = [](SolutionValue a, SolutionValue b, double s) {
            return SolutionValue{a.u + s * b.u, a.du + s * b.du};
        };
        const SolutionValue k1 = rhs(x, y);
        const SolutionValue k2 = rhs(x + h / 2, add(y, k1, h / 2));
        const SolutionValue k3 = rhs(x + h / 2, add(y, k2, h / 2));
        const SolutionValue k4 = rhs(x + h, add(y, k3, h));
        return {y.u + h / 6 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
                y.du + h / 6 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du)};
    }

    PTParams params_;
    cplx epsilon_;
    Frame toward_;
    std::vector<double> xs_;
    std::vector<SolutionValue> ys_;
};

double potential_value(const PTParams& params, double x) {
    if (!(x > 0.0 && x < kHalfPi))
        throw DomainError("potential_value: x must lie in (0, pi/2)");
    const double l = params.lambda();
    const double n = params.nu();
    const double s = std::sin(x);
    const double c = std::cos(x);
    return (l - 1.0) * l / (2.0 * s * s) + (n - 1.0) * n / (2.0 * c * c);
}

double eigen_energy(const PTParams& params, int n) {
    if (n < 0)
        throw DomainError("eigen_energy: negative level index");
    const double m = params.mu() + 2.0 * n;
    return m * m / 2.0;
}

std::optional<int> eigen_index(const PTParams& params, double epsilon) {
    for (int n = 0;; ++n) {
        const double e = eigen_energy(params, n);
        if (std::abs(epsilon - e) <= kLevelTol * e)
            return n;
        if (e > epsilon)
            return std::nullopt;
    }
}

std::optional<int> band_index(const PTParams& params, double epsilon) {
    if (eigen_index(params, epsilon))
        return std::nullopt;
    int i = 0;
    while (eigen_energy(params, i) < epsilon)
        ++i;
    return i;
}

SeedSpec physical_seed(const PTParams& params, int n) {
    SeedSpec s;
    s.epsilon = eigen_energy(params, n);
    s.level = n;
    return s;
}

SeedSpec regular_seed(cplx epsilon, Frame side) {
    SeedSpec s;
    s.epsilon = epsilon;
    s.frame = side;
    return s;
}

SeedSpec seed_from_q(const PTParams& params, double epsilon, double q, Frame frame) {
    const PTParams p = frame == Frame::left ? params : params.swapped();
    const specfun::AsymptoticCoeffs ab = specfun::ab_coefficients(p, epsilon);
    if (ab.a_coef == 0.0)
        throw PoleError("seed_from_q: a = 0 at eps = " + std::to_string(epsilon) + " (eigenvalue)");
    SeedSpec s;
    s.epsilon = epsilon;
    s.frame = frame;
    s.coeffs = {-ab.b_coef / ab.a_coef + q, 1.0};
    s.q = q;
    return s;
}

SeedSpec general_seed(cplx epsilon, Coefficients coeffs, Frame frame) {
    if (coeffs.A == 0.0 && coeffs.B == 0.0)
        throw ValidationError("(A, B) must not both vanish", "seed");
    SeedSpec s;
    s.epsilon = epsilon;
    s.frame = frame;
    s.coeffs = coeffs;
    return s;
}

ConnectionMatrix connection_matrix(const PTParams& params, cplx epsilon) {
    const double l = params.lambda();
    const double n = params.nu();
    const double half_mu = params.mu() / 2.0;
    const double p0 = (1.0 + l - n) / 2.0;
    const cplx k = half_energy_root(epsilon);
    const specfun::AsymptoticCoeffsC ab = specfun::ab_coefficients(params, epsilon);
    ConnectionMatrix m;
    m.c11 = gamma_ratio({l + 0.5, 0.5 - n}, {p0 + k, p0 - k});
    m.c12 = gamma_ratio({1.5 - l, 0.5 - n}, {1.0 - half_mu + k, 1.0 - half_mu - k});
    m.a = ab.a_coef;
    m.b = ab.b_coef;
    return m;
}

MirrorMap printed_mirror_coefficients(const PTParams& params, cplx epsilon) {
    const double l = params.lambda();
    const double n = params.nu();
    const double half_mu = params.mu() / 2.0;
    const double p0 = (1.0 + l - n) / 2.0;
    const cplx k = half_energy_root(epsilon);
    const specfun::AsymptoticCoeffsC ab = specfun::ab_coefficients(params, epsilon);
    const double ratio = (2.0 * n - 1.0) / (2.0 * l - 1.0);
    MirrorMap m;
    m.alpha1 = -ratio * ab.b_coef;
    m.alpha2 = ratio * ab.a_coef;
    m.beta1 = gamma_ratio({0.5 - l, 1.5 - n}, {1.0 - half_mu + k, 1.0 - half_mu - k});
    m.beta2 = gamma_ratio({l - 0.5, 1.5 - n}, {p0 + k, p0 - k});
    return m;
}

std::pair<SeedSpec, PTParams> mirror(const SeedSpec& seed, const PTParams& params) {
    const SchrodingerSolution sol(params, seed);
    const auto& right = sol.right_coefficients();
    if (!right)
        throw PoleError("mirror: connection coefficients are singular for these parameters");
    SeedSpec out;
    out.epsilon = seed.epsilon;
    out.frame = Frame::left;
    out.coeffs = *right;
    if (seed.level) {
        // The mirrored eigenfunction is a multiple of psi_n of the swapped problem.
        out.level = seed.level;
    }
    return {out, params.swapped()};
}

SchrodingerSolution::SchrodingerSolution(const PTParams& params, SeedSpec seed)
    : params_(params), seed_(std::move(seed)) {
    if (seed_.coeffs.A == 0.0 && seed_.coeffs.B == 0.0)
        throw ValidationError("(A, B) must not both vanish", "seed");
    k_ = half_energy_root(seed_.epsilon);
    if (seed_.level) {
        if (seed_.frame != Frame::left)
            throw ValidationError("physical seeds are specified in the left frame", "seed");
        seed_.epsilon = eigen_energy(params_, *seed_.level);
        k_ = params_.mu() / 2.0 + *seed_.level;
        terminating_ = seed_.coeffs.B == 0.0;
        if (!terminating_)
            throw ValidationError("physical seed must have B = 0", "seed");
    } else if (seed_.frame == Frame::left && seed_.coeffs.B == 0.0) {
        const cplx top = params_.mu() / 2.0 - k_;
        terminating_ = top.imag() == 0.0 && top.real() <= 0.0 && top.real() == std::floor(top.real());
    }

    std::optional<cplx> otherA, otherB;
    if (seed_.frame == Frame::left) {
        left_ = seed_.coeffs;
        std::tie(otherA, otherB) = to_other_frame(params_, seed_, seed_.coeffs);
        if (otherA && otherB)
            right_ = Coefficients{*otherA, *otherB};
    } else {
        right_ = seed_.coeffs;
        SeedSpec mirrored = seed_;
        std::tie(otherA, otherB) = to_other_frame(params_.swapped(), mirrored, seed_.coeffs);
        if (otherA && otherB)
            left_ = Coefficients{*otherA, *otherB};
    }
    if (!otherB)
        throw PoleError("seed asymptotics undefined: Gamma pole in a or b");

    const cplx leftB = seed_.frame == Frame::left ? seed_.coeffs.B : *otherB;
    const cplx rightB = seed_.frame == Frame::right ? seed_.coeffs.B : *otherB;
    left_exponent_ = leftB == 0.0 ? params_.lambda() : 1.0 - params_.lambda();
    right_exponent_ = rightB == 0.0 ? params_.nu() : 1.0 - params_.nu();

    // A basis is unusable if one of its series has a pole in c.
    auto usable = [](double c_lower, cplx coeffB) {
        return !(coeffB != 0.0 && c_lower <= 0.0 && c_lower == std::floor(c_lower));
    };
    if (left_ && !usable(1.5 - params_.lambda(), left_->B))
        left_.reset();
    if (right_ && !usable(1.5 - params_.nu(), right_->B))
        right_.reset();

    const bool need_right = !terminating_ && !right_;
    const bool need_left = !left_;
    if (need_left && need_right)
        throw DomainError("both endpoint bases are degenerate for these parameters");
    if (need_right || need_left) {
        const Frame have = need_right ? Frame::left : Frame::right;
        const Expansion e = expand_in(kHalfPi / 2.0, have);
        const double x = kHalfPi / 2.0;
        const double s = std::sin(x), c = std::cos(x);
        SolutionValue start{0.0, 0.0};
        for (const Term& t : e) {
            const double sc = std::pow(s, t.p) * std::pow(c, t.r);
            start.u += t.coeff * sc * t.f;
            start.du += t.coeff * sc * (t.fx + t.f * (t.p * c / s - t.r * s / c));
        }
        continuation_ = std::make_shared<OdeContinuation>(params_, seed_.epsilon, start,
                                                          need_right ? Frame::right : Frame::left);
    }
}

Expansion SchrodingerSolution::expand_in(double x, Frame frame) const {
    check_guarded(x, "SchrodingerSolution");
    const double l = params_.lambda();
    const double n = params_.nu();
    const double half_mu = params_.mu() / 2.0;
    const double s = std::sin(x);
    const double c = std::cos(x);
    Expansion e;
    if (frame == Frame::left) {
        if (!left_)
            throw DomainError("left basis unavailable");
        const double z = s * s;
        const double dz = 2.0 * s * c;
        const Coefficients& k = *left_;
        if (k.A != 0.0) {
            const cplx a1 = seed_.level ? cplx(params_.mu() + *seed_.level) : half_mu + k_;
            const cplx a2 = seed_.level ? cplx(-*seed_.level) : half_mu - k_;
            e.push(branch(scale_ * k.A, l, n, a1, a2, l + 0.5, z, dz));
        }
        if (k.B != 0.0) {
            const double q0 = (1.0 + n - l) / 2.0;
            e.push(branch(scale_ * k.B, 1.0 - l, n, q0 + k_, q0 - k_, 1.5 - l, z, dz));
        }
    } else {
        if (!right_)
            throw DomainError("right basis unavailable");
        const double t = c * c;
        const double dt = -2.0 * s * c;
        const Coefficients& k = *right_;
        if (k.A != 0.0)
            e.push(branch(scale_ * k.A, l, n, half_mu + k_, half_mu - k_, n + 0.5, t, dt));
        if (k.B != 0.0) {
            const double p0 = (1.0 + l - n) / 2.0;
            e.push(branch(scale_ * k.B, l, 1.0 - n, p0 + k_, p0 - k_, 1.5 - n, t, dt));
        }
    }
    return e;
}

Expansion SchrodingerSolution::expand(double x) const {
    check_guarded(x, "SchrodingerSolution");
    const bool left_half = x <= kHalfPi / 2.0;
    Frame want = (terminating_ || left_half) ? Frame::left : Frame::right;
    const bool have = want == Frame::left ? left_.has_value() : right_.has_value();
    if (have)
        return expand_in(x, want);
    const SolutionValue v = continuation_->at(x);
    Expansion e;
    e.push({scale_, 0.0, 0.0, v.u, v.du});
    return e;
}

SolutionValue SchrodingerSolution::evaluate(double x) const {
    const Expansion e = expand(x);
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double cot = c / s;
    const double tan = s / c;
    SolutionValue v{0.0, 0.0};
    for (const Term& t : e) {
        const double sc = std::pow(s, t.p) * std::pow(c, t.r);
        v.u += t.coeff * sc * t.f;
        v.du += t.coeff * sc * (t.fx + t.f * (t.p * cot - t.r * tan));
    }
    return v;
}

SchrodingerSolution SchrodingerSolution::scaled(double factor) const {
    SchrodingerSolution copy = *this;
    copy.scale_ *= factor;
    return copy;
}

SchrodingerSolution general_solution(const PTParams& params, const SeedSpec& seed) {
    return SchrodingerSolution(params, seed);
}

SchrodingerSolution eigenfunction(const PTParams& params, int n) {
    const SchrodingerSolution raw(params, physical_seed(params, n));
    const double norm2 = integrate::half_period(
        [&](double x) {
            const double u = raw.value(x);
            return u * u;
        },
        {2.0 * params.lambda(), 2.0 * params.nu()});
    return raw.scaled(1.0 / std::sqrt(norm2));
}

int count_nodes(const SchrodingerSolution& sol, int grid_points) {
    if (!sol.is_real())
        throw DomainError("count_nodes: complex factorization energy");
    if (grid_points < 1000)
        throw DomainError("count_nodes: at least 1000 grid points required");
    const double a = kGuard;
    const double b = kHalfPi - kGuard;
    const double h = (b - a) / (grid_points - 1);
    std::vector<double> u(grid_points);
    for (int i = 0; i < grid_points; ++i)
        u[i] = sol.value(i + 1 == grid_points ? b : a + i * h);

    int count = 0;
    for (int i = 0; i + 1 < grid_points; ++i) {
        if (i > 0 && i + 1 < grid_points) {
            const double nb = std::min(std::abs(u[i - 1]), std::abs(u[i + 1]));
            if (std::abs(u[i]) <= 1e-12 * nb && (u[i - 1] > 0) == (u[i + 1] > 0))
                throw InconclusiveError("count_nodes: u touches zero near x = " + std::to_string(a + i * h));
        }
        if (u[i] == 0.0) {
            if (i > 0 && (u[i - 1] > 0) != (u[i + 1] > 0))
                ++count;
            continue;
        }
        if (u[i + 1] == 0.0 || (u[i] > 0) == (u[i + 1] > 0))
            continue;
        // Bisection to 1e-12 confirms a single crossing inside the cell.
        double lo = a + i * h, hi = a + (i + 1) * h;
        double flo = u[i];
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            const double fm = sol.value(mid);
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        ++count;
    }
    return count;
}

} // namespace ptsusy
