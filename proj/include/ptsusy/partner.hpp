#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptsusy/pt_core.hpp"

namespace ptsusy {

using RealFunction = std::function<double(double)>;

enum class LevelTag { retained, created, deleted };

const char* to_string(LevelTag tag);

struct SpectrumLevel {
    double energy;
    LevelTag tag;
    std::optional<int> original_index;  ///< n of E_n for retained / deleted levels
};

/// Power-law exponents at x -> 0 (sin^left) and x -> pi/2 (cos^right).
struct EndpointBehavior {
    double left;
    double right;
};

/// Bound state of a partner Hamiltonian, normalized to unit L2 norm by
/// quadrature; sign fixed so the first sample above 1e-3 of the maximum is positive.
class StateFunction {
public:
    StateFunction(RealFunction raw, double energy, EndpointBehavior exponents);

    double operator()(double x) const { return scale_ * raw_(x); }
    double energy() const { return energy_; }
    const EndpointBehavior& exponents() const { return exponents_; }

private:
    RealFunction raw_;
    double energy_;
    EndpointBehavior exponents_;
    double scale_ = 1.0;
};

/// The eigenfunction of the partner Hamiltonian annihilated by the intertwiner
/// (1/u, u2/W, u1/W or u/w). It is a bound state only if it vanishes at both ends.
struct MissingState {
    double energy;
    RealFunction function;
    EndpointBehavior exponents;
    bool physical;
};

/// Scans the guarded interval (4000 uniform points plus a geometric grid toward
/// each end) and throws ConstructionError at the first sign change or touching
/// zero of f.
void require_nodeless(const RealFunction& f, const std::string& what);

/// Wronskian u1 u2' - u2 u1' assembled term by term from the endpoint
/// expansions, so that cancelling leading powers never get subtracted numerically.
cplx structured_wronskian(const Expansion& e1, const Expansion& e2, double x);

/// Exponents of the individual terms of a solution at one end.
std::vector<double> branch_exponents(const SchrodingerSolution& u, Frame end);

/// Leading exponent of W(u1, u2) at one end, from the term exponents.
double wronskian_exponent(const std::vector<double>& p1, const std::vector<double>& p2);

/// lambda~ with lambda~(lambda~ - 1)/2 = coefficient (the root >= 1/2).
double effective_exponent(double coefficient);

/// A partner potential V~(x) with its predicted spectrum and eigenfunctions.
class PartnerPotential {
public:
    virtual ~PartnerPotential() = default;

    const PTParams& params() const { return params_; }
    const std::string& name() const { return name_; }

    virtual double value(double x) const = 0;

    /// Coefficients c in c / sin^2 x and c / cos^2 x of the singular terms of V~.
    EndpointBehavior endpoint_coefficients() const;

    /// (lambda~, nu~) with V~ ~ l~(l~-1)/(2 sin^2) + n~(n~-1)/(2 cos^2).
    EndpointBehavior new_exponents() const;

    /// Lowest `count` levels that should be present, in ascending order, plus
    /// deleted original levels interleaved and tagged as such.
    std::vector<SpectrumLevel> predicted_spectrum(int count) const;

    virtual std::vector<MissingState> missing_states() const { return {}; }

    /// Image of psi_n under the intertwiner, normalized. DegenerateError if E_n
    /// is a factorization energy.
    virtual StateFunction transformed_state(int n) const = 0;

    /// Normalized eigenfunction for a level of predicted_spectrum().
    StateFunction state(const SpectrumLevel& level) const;

protected:
    PartnerPotential(const PTParams& params, std::string name) : params_(params), name_(std::move(name)) {}

    /// Exponents of the transformation function (u for first order, w for second).
    EndpointBehavior transform_exponents_{0.0, 0.0};

private:
    PTParams params_;
    std::string name_;
};

/// V~ = V: the untransformed problem seen through the partner interface.
class IdentityPartner : public PartnerPotential {
public:
    explicit IdentityPartner(const PTParams& params) : PartnerPotential(params, "none") {}

    double value(double x) const override { return potential_value(params(), x); }
    StateFunction transformed_state(int n) const override;
};

} // namespace ptsusy
