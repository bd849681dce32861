#include "ptsusy/partner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptsusy/integrate.hpp"

namespace ptsusy {

namespace {

constexpr int kNodelessGrid = 4000;
constexpr int kGradedPoints = 200;

std::vector<double> nodeless_grid() {
    std::vector<double> xs;
    const double a = kGuard;
    const double b = kHalfPi - kGuard;
    // Geometric approach to each end, from kGuard up to the first uniform step.
    const double h = (b - a) / (kNodelessGrid - 1);
    const double ratio = std::pow(h / kGuard, 1.0 / kGradedPoints);
    for (int i = 0; i < kGradedPoints; ++i)
        xs.push_back(kGuard * std::pow(ratio, i));
    for (int i = 1; i + 1 < kNodelessGrid; ++i)
        xs.push_back(a + i * h);
    for (int i = kGradedPoints - 1; i >= 0; --i)
        xs.push_back(kHalfPi - kGuard * std::pow(ratio, i));
    return xs;
}

bool same_energy(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

} // namespace

const char* to_string(LevelTag tag) {
    switch (tag) {
    case LevelTag::retained:
        return "retained";
    case LevelTag::created:
        return "created";
    case LevelTag::deleted:
        return "deleted";
    }
    return "?";
}

StateFunction::StateFunction(RealFunction raw, double energy, EndpointBehavior exponents)
    : raw_(std::move(raw)), energy_(energy), exponents_(exponents) {
    const double norm2 = integrate::half_period(
        [this](double x) {
            const double f = raw_(x);
            return f * f;
        },
        {2.0 * exponents_.left, 2.0 * exponents_.right});
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw DomainError("state function has no finite positive norm");
    scale_ = 1.0 / std::sqrt(norm2);

    constexpr int kSamples = 2000;
    std::vector<double> f(kSamples);
    double peak = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        f[i] = raw_(kGuard + (kHalfPi - 2.0 * kGuard) * (i + 0.5) / kSamples);
        peak = std::max(peak, std::abs(f[i]));
    }
    for (double v : f) {
        if (std::abs(v) > 1e-3 * peak) {
            if (v < 0.0)
                scale_ = -scale_;
            break;
        }
    }
}

void require_nodeless(const RealFunction& f, const std::string& what) {
    static const std::vector<double> xs = nodeless_grid();
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        v[i] = f(xs[i]);
        if (!std::isfinite(v[i]))
            throw ConstructionError(what + " is not finite", xs[i]);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (v[i] == 0.0)
            throw ConstructionError(what + " vanishes", xs[i]);
        if (i + 1 < xs.size() && (v[i] > 0) != (v[i + 1] > 0))
            throw ConstructionError(what + " changes sign", 0.5 * (xs[i] + xs[i + 1]));
        if (i > 0 && i + 1 < xs.size()) {
            const double nb = std::min(std::abs(v[i - 1]), std::abs(v[i + 1]));
            if (std::abs(v[i]) < 1e-12 * nb)
                throw ConstructionError(what + " touches zero", xs[i]);
        }
    }
}

cplx structured_wronskian(const Expansion& e1, const Expansion& e2, double x) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double cot = c / s;
    const double tan = s / c;
    cplx w = 0.0;
    for (const Term& t1 : e1) {
        for (const Term& t2 : e2) {
            const double sc = std::pow(s, t1.p + t2.p) * std::pow(c, t1.r + t2.r);
            const cplx bracket =
                t1.f * t2.fx - t2.f * t1.fx + t1.f * t2.f * ((t2.p - t1.p) * cot - (t2.r - t1.r) * tan);
            w += t1.coeff * t2.coeff * sc * bracket;
        }
    }
    return w;
}

std::vector<double> branch_exponents(const SchrodingerSolution& u, Frame end) {
    const auto& coeffs = end == Frame::left ? u.left_coefficients() : u.right_coefficients();
    const double base = end == Frame::left ? u.params().lambda() : u.params().nu();
    if (!coeffs)
        return {end == Frame::left ? u.left_exponent() : u.right_exponent()};
    std::vector<double> out;
    if (coeffs->A != 0.0)
        out.push_back(base);
    if (coeffs->B != 0.0)
        out.push_back(1.0 - base);
    return out;
}

double wronskian_exponent(const std::vector<double>& p1, const std::vector<double>& p2) {
    double e = std::numeric_limits<double>::infinity();
    for (double a : p1)
        for (double b : p2)
            e = std::min(e, a == b ? 2.0 * a + 1.0 : a + b - 1.0);
    return e;
}

double effective_exponent(double coefficient) { return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 + 8.0 * coefficient))); }

EndpointBehavior PartnerPotential::endpoint_coefficients() const {
    const double l = params_.lambda();
    const double n = params_.nu();
    return {l * (l - 1.0) / 2.0 + transform_exponents_.left, n * (n - 1.0) / 2.0 + transform_exponents_.right};
}

EndpointBehavior PartnerPotential::new_exponents() const {
    const EndpointBehavior c = endpoint_coefficients();
    return {effective_exponent(c.left), effective_exponent(c.right)};
}

std::vector<SpectrumLevel> PartnerPotential::predicted_spectrum(int count) const {
    const std::vector<MissingState> missing = missing_states();
    std::vector<SpectrumLevel> out;
    double top_created = -std::numeric_limits<double>::infinity();
    for (const MissingState& m : missing) {
        if (!m.physical || eigen_index(params_, m.energy))
            continue;
        out.push_back({m.energy, LevelTag::created, std::nullopt});
        top_created = std::max(top_created, m.energy);
    }
    int active = static_cast<int>(out.size());
    for (int n = 0;; ++n) {
        const double e = eigen_energy(params_, n);
        if (active >= count && e > top_created)
            break;
        LevelTag tag = LevelTag::retained;
        for (const MissingState& m : missing)
            if (same_energy(m.energy, e))
                tag = m.physical ? LevelTag::retained : LevelTag::deleted;
        out.push_back({e, tag, n});
        if (tag != LevelTag::deleted)
            ++active;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SpectrumLevel& a, const SpectrumLevel& b) { return a.energy < b.energy; });
    // Trim active levels beyond `count`; keep deleted ones that lie below the last kept level.
    std::vector<SpectrumLevel> trimmed;
    int kept = 0;
    for (const SpectrumLevel& lv : out) {
        if (lv.tag == LevelTag::deleted) {
            trimmed.push_back(lv);
            continue;
        }
        if (kept == count)
            break;
        trimmed.push_back(lv);
        ++kept;
    }
    while (!trimmed.empty() && trimmed.back().tag == LevelTag::deleted)
        trimmed.pop_back();
    return trimmed;
}

StateFunction PartnerPotential::state(const SpectrumLevel& level) const {
    if (level.tag == LevelTag::deleted)
        throw DegenerateError("no eigenfunction for a deleted level");
    for (const MissingState& m : missing_states()) {
        if (m.physical && same_energy(m.energy, level.energy))
            return StateFunction(m.function, m.energy, m.exponents);
    }
    if (!level.original_index)
        throw DegenerateError("created level without a physical missing state");
    return transformed_state(*level.original_index);
}

StateFunction IdentityPartner::transformed_state(int n) const {
    const SchrodingerSolution psi = eigenfunction(params(), n);
    return StateFunction([psi](double x) { return psi.value(x); }, eigen_energy(params(), n),
                         {params().lambda(), params().nu()});
}

} // namespace ptsusy
