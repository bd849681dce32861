#pragma once

#include <string>
#include <vector>

#include "ptsusy/integrate.hpp"
#include "ptsusy/partner.hpp"

/// Independent brute-force checks: finite-difference spectrum of -u''/2 + V u
/// with Dirichlet ends at the guard points, spectrum matching, residuals and
/// quadrature. Only sampled potential values flow in from the SUSY modules.
namespace ptsusy::verify {

enum class Execution { serial, parallel };

struct OracleConfig {
    int grid_points = 4000;
    double guard_delta = 1e-4;
    int levels = 6;
    bool richardson = true;
    Execution execution = Execution::parallel;

    /// ValidationError unless grid_points >= 500, guard in (0, 0.01), levels >= 1.
    void validate() const;
};

/// Interior grid x_j = delta + j h, j = 1..n, h = (pi/2 - 2 delta)/(n + 1).
std::vector<double> oracle_grid(int n, double delta);

/// Lowest cfg.levels eigenvalues. DomainError if V is not finite on the grid.
std::vector<double> oracle_spectrum(const RealFunction& potential, const OracleConfig& cfg);

/// Eigenvectors of the coarse-grid matrix for the lowest cfg.levels levels.
struct OracleStates {
    std::vector<double> x;
    std::vector<double> energies;
    std::vector<std::vector<double>> vectors;
};

OracleStates oracle_states(const RealFunction& potential, const OracleConfig& cfg);

/// Sign changes of a sampled function, ignoring samples below 1e-8 of its maximum.
int count_sign_changes(const std::vector<double>& values);

struct MatchedLevel {
    double predicted;
    double oracle;
    double rel_error;
    LevelTag tag;
};

struct SpectrumReport {
    std::vector<SpectrumLevel> predicted;
    std::vector<double> oracle;
    std::vector<MatchedLevel> matched;
    std::vector<SpectrumLevel> unmatched_predicted;
    std::vector<double> unmatched_oracle;
    /// Deleted levels that the oracle indeed does not show.
    std::vector<SpectrumLevel> absent_as_expected;
    /// Deleted levels that the oracle still shows.
    std::vector<SpectrumLevel> present_but_deleted;
    double rel_tol = 1e-4;
    bool pass = false;
};

/// Greedy in-order matching of the non-deleted predicted levels against the
/// oracle list. Predicted levels above the last oracle level are not probed.
/// Passes iff every probed level matches, no oracle level is left over and no
/// deleted level shows up.
SpectrumReport compare_spectra(const std::vector<SpectrumLevel>& predicted, const std::vector<double>& oracle,
                               double rel_tol = 1e-4);

/// max |-f''/2 + V f - E f| / max |E f| on cfg.grid_points points of
/// [1e-3, pi/2 - 1e-3], f'' from a five-point stencil.
double residual_norm(const RealFunction& potential, const RealFunction& f, double energy, const OracleConfig& cfg);

/// Integral of f^power over [a, b] inside [0, pi/2] by adaptive Simpson
/// (1e-12 absolute or 1e-10 relative). An end at 0 or pi/2 is replaced by the
/// guard point plus the analytic tail from the exponent of f there;
/// DivergenceError if power * exponent <= -1.
double quadrature(const RealFunction& f, int power, double a, double b, integrate::Tails exponents = {0.0, 0.0});

} // namespace ptsusy::verify
