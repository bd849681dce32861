#pragma once

#include <memory>

#include "ptsusy/partner.hpp"

namespace ptsusy {

/// First-order partner V~ = V - (ln u)'' = 2 eps - V + alpha^2, alpha = u'/u,
/// built from a nodeless seed u with eps <= E_0.
class FirstOrderTransform : public PartnerPotential {
public:
    /// ValidationError if eps > E_0 (or eps = E_0 with a seed other than psi_0);
    /// ConstructionError if the seed has a zero in the open interval.
    FirstOrderTransform(const PTParams& params, const SeedSpec& seed, std::string name = "first_order");

    double value(double x) const override;
    double superpotential(double x) const;
    double epsilon() const { return seed_.epsilon().real(); }
    const SchrodingerSolution& seed() const { return seed_; }

    std::vector<MissingState> missing_states() const override;
    StateFunction transformed_state(int n) const override;

private:
    SchrodingerSolution seed_;
};

using Side = Frame;

/// Seed psi_0: V~ is V with (lambda+1, nu+1); E_0 removed.
std::shared_ptr<FirstOrderTransform> delete_ground(const PTParams& params);

/// q-seed below E_0 (q > 0): new ground level at eps. Requires lambda, nu > 2.
std::shared_ptr<FirstOrderTransform> create_ground(const PTParams& params, double epsilon, double q);

/// Seed vanishing at the chosen end (A = 1, B = 0 in that frame): spectrum unchanged.
/// Requires nu > 2 for the left variant, lambda > 2 for the right one.
std::shared_ptr<FirstOrderTransform> isospectral_first(const PTParams& params, double epsilon, Side side);

StateFunction transform_eigenfunction_first(const FirstOrderTransform& t, int n);

} // namespace ptsusy
