#pragma once

#include <algorithm>
#include <cmath>

#include "ptsusy/partner.hpp"
#include "ptsusy/verify.hpp"
#include "support.hpp"

namespace testsupport {

inline ptsusy::verify::SpectrumReport oracle_report(const ptsusy::PartnerPotential& t, int levels = 6) {
    ptsusy::verify::OracleConfig cfg;
    cfg.levels = levels;
    auto oracle = ptsusy::verify::oracle_spectrum([&](double x) { return t.value(x); }, cfg);
    return ptsusy::verify::compare_spectra(t.predicted_spectrum(levels + 4), oracle, 1e-4);
}

/// Worst residual of the first `count` present levels.
inline double worst_residual(const ptsusy::PartnerPotential& t, int count) {
    ptsusy::verify::OracleConfig cfg;
    double worst = 0.0;
    int done = 0;
    for (const auto& level : t.predicted_spectrum(count + 4)) {
        if (level.tag == ptsusy::LevelTag::deleted) continue;
        if (done++ == count) break;
        auto f = t.state(level);
        worst = std::max(worst, ptsusy::verify::residual_norm([&](double x) { return t.value(x); }, f, level.energy, cfg));
    }
    return worst;
}

/// Largest |<f_i, f_j> - delta_ij| over the first `count` present levels.
inline double gram_error(const ptsusy::PartnerPotential& t, int count) {
    std::vector<ptsusy::StateFunction> fs;
    for (const auto& level : t.predicted_spectrum(count + 4)) {
        if (level.tag == ptsusy::LevelTag::deleted) continue;
        if (static_cast<int>(fs.size()) == count) break;
        fs.push_back(t.state(level));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            auto& a = fs[i];
            auto& b = fs[j];
            double g = ptsusy::verify::quadrature([&](double x) { return a(x) * b(x); }, 1, 0.0, ptsusy::kHalfPi,
                                                  {a.exponents().left + b.exponents().left,
                                                   a.exponents().right + b.exponents().right});
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

/// Coefficient c of c / sin^2 x estimated from V~ sin^2 x close to the end.
inline double left_coefficient_estimate(const ptsusy::PartnerPotential& t) {
    double x = 1e-5;
    return t.value(x) * std::sin(x) * std::sin(x);
}

inline double right_coefficient_estimate(const ptsusy::PartnerPotential& t) {
    double x = ptsusy::kHalfPi - 1e-5;
    return t.value(x) * std::cos(x) * std::cos(x);
}

/// max |V~_b(x) - V~_a(pi/2 - x)| / max(1, |V~_a|).
inline double mirror_difference(const ptsusy::PartnerPotential& a, const ptsusy::PartnerPotential& b) {
    return max_diff([&](double x) { return b.value(x); }, [&](double x) { return a.value(ptsusy::kHalfPi - x); },
                    interior());
}

} // namespace testsupport
