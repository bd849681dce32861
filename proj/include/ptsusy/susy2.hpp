#pragma once

#include <memory>
#include <optional>

#include "ptsusy/integrate.hpp"
#include "ptsusy/partner.hpp"
#include "ptsusy/susy1.hpp"

namespace ptsusy {

/// Factorization energies of a second-order transformation. c > 0 for two
/// distinct real energies, c < 0 for a complex-conjugate pair, c = 0 confluent.
class FactorizationPair {
public:
    enum class Kind { real, complex, confluent };

    static FactorizationPair real(double eps1, double eps2);
    static FactorizationPair complex(cplx epsilon);
    static FactorizationPair confluent(double epsilon);

    Kind kind() const { return kind_; }
    cplx eps1() const { return eps1_; }
    cplx eps2() const { return eps2_; }
    /// d = eps1 + eps2 (real in every case).
    double d() const { return (eps1_ + eps2_).real(); }
    /// c = ((eps1 - eps2)/2)^2, real.
    double c() const;

private:
    FactorizationPair(Kind kind, cplx e1, cplx e2) : kind_(kind), eps1_(e1), eps2_(e2) {}
    Kind kind_;
    cplx eps1_;
    cplx eps2_;
};

/// w together with its first two derivatives at a point.
struct WValue {
    double w;
    double dw;
    double d2w;
};

/// Second-order partner V~ = V - eta', eta = w'/w, with w nodeless.
class SecondOrderTransform : public PartnerPotential {
public:
    const FactorizationPair& pair() const { return pair_; }

    virtual WValue w_value(double x) const = 0;

    double value(double x) const override;
    double eta(double x) const;

    /// gamma = eta'/2 + eta^2/2 - 2V + d.
    double gamma(double x) const;

    StateFunction transformed_state(int n) const override;

protected:
    SecondOrderTransform(const PTParams& params, FactorizationPair pair, std::string name)
        : PartnerPotential(params, std::move(name)), pair_(pair) {}

    /// Throws ConstructionError if w has a zero on the guarded grid.
    void check_nodeless() const;

    FactorizationPair pair_;
};

/// w = W(u1, u2) for two real seeds with eps1 != eps2.
class RealPairTransform : public SecondOrderTransform {
public:
    RealPairTransform(const PTParams& params, const SeedSpec& seed1, const SeedSpec& seed2,
                      std::string name = "second_order_real");

    WValue w_value(double x) const override;
    std::vector<MissingState> missing_states() const override;

    const SchrodingerSolution& u1() const { return u1_; }
    const SchrodingerSolution& u2() const { return u2_; }

private:
    SchrodingerSolution u1_;
    SchrodingerSolution u2_;
};

/// w = W(u, conj u) / (2 (eps - conj eps)), real with w' = |u|^2.
class ComplexTransform : public SecondOrderTransform {
public:
    ComplexTransform(const PTParams& params, const SeedSpec& seed, std::string name = "second_order_complex");

    WValue w_value(double x) const override;
    const SchrodingerSolution& seed() const { return u_; }

private:
    SchrodingerSolution u_;
};

enum class ConfluentMethod { quadrature, closed_form };

/// w(x) = w_left + int_0^x u^2, or w_right - int_x^{pi/2} u^2 (or both when
/// u^2 is integrable at both ends, each used on its own half).
class ConfluentW {
public:
    ConfluentW(const SchrodingerSolution& u, std::optional<double> w_left, std::optional<double> w_right,
               ConfluentMethod method = ConfluentMethod::quadrature);

    double operator()(double x) const;
    const std::optional<double>& w_left() const { return w_left_; }
    const std::optional<double>& w_right() const { return w_right_; }

    /// int_0^x u^2 from the hypergeometric series (left-regular seeds only).
    /// ConvergenceError if the series does not settle.
    double closed_form_integral(double x) const;

private:
    SchrodingerSolution u_;
    std::optional<double> w_left_;
    std::optional<double> w_right_;
    ConfluentMethod method_;
    std::shared_ptr<const integrate::Cumulative> from_left_;
    std::shared_ptr<const integrate::Cumulative> from_right_;
};

/// w = w0 + int_0^x u^2 (anchored at pi/2 as well when u^2 is integrable there).
ConfluentW confluent_w(const SchrodingerSolution& u, double w0, ConfluentMethod method = ConfluentMethod::quadrature);

class ConfluentTransform : public SecondOrderTransform {
public:
    /// w_left = w(0+) and/or w_right = w(pi/2-); at least one must be given and
    /// u^2 must be integrable at every anchored end.
    ConfluentTransform(const SchrodingerSolution& u, std::optional<double> w_left, std::optional<double> w_right,
                       std::string name = "second_order_confluent",
                       ConfluentMethod method = ConfluentMethod::quadrature);

    WValue w_value(double x) const override;
    std::vector<MissingState> missing_states() const override;

    const SchrodingerSolution& seed() const { return u_; }
    const ConfluentW& w() const { return w_; }

private:
    SchrodingerSolution u_;
    ConfluentW w_;
};

using SecondOrderPtr = std::shared_ptr<SecondOrderTransform>;

enum class Direction { up, down };

enum class ConfluentIsoVariant { general_w0_zero, mirrored_w0_zero, physical_seed };

enum class ConfluentLimit { w0_to_zero, w0_to_minus_one };

/// (w, w', w'') for two real seeds: W, 2(e1-e2) u1 u2, 2(e1-e2)(u1' u2 + u1 u2').
WValue wronskian_pair(const SchrodingerSolution& u1, const SchrodingerSolution& u2, double x);

/// Seeds psi_i, psi_{i-1}: E_{i-1} and E_i removed. i >= 1.
SecondOrderPtr delete_two(const PTParams& params, int i);

/// q-seeds at E_{i-1} < eps2 < eps1 < E_i with q1 > 0, q2 < 0: two new levels. lambda, nu > 3.
SecondOrderPtr create_two(const PTParams& params, double eps1, double eps2, double q1, double q2);

/// Both seeds vanish at the chosen end: isospectral.
SecondOrderPtr iso_two_real(const PTParams& params, double eps1, double eps2, Side side);

/// q-seed at eps1 (q1 > 0) and a seed vanishing at the chosen end at eps2 in
/// (E_{i-1}, eps1): one new level at eps1. eps2 defaults to the middle of
/// (E_{i-1}, eps1), or eps1 - (E_1 - E_0)/2 below the ground state.
SecondOrderPtr create_one(const PTParams& params, double eps1, double q1, Side side,
                          std::optional<double> eps2 = std::nullopt);

/// up: E_{i-1} replaced by target in (E_{i-1}, E_i); down: E_i replaced by target.
/// q defaults to +1 (up) or -1 (down).
SecondOrderPtr move_level(const PTParams& params, int i, double target, Direction direction,
                          std::optional<double> q = std::nullopt);

/// psi_{i-1} and a seed vanishing at the chosen end at eps1 in (E_{i-1}, E_i): E_{i-1} removed.
SecondOrderPtr delete_one(const PTParams& params, int i, Side side, std::optional<double> eps1 = std::nullopt);

/// Complex eps with a seed vanishing at the chosen end: isospectral.
SecondOrderPtr iso_complex(const PTParams& params, cplx epsilon, Side side);

/// Confluent, seed vanishing at the chosen end, w0 > 0: new level at eps.
SecondOrderPtr confluent_create(const PTParams& params, double epsilon, double w0, Side side);

/// Confluent isospectral variants; `level` and `w0` are used by physical_seed
/// (w0 outside [-1, 0]).
SecondOrderPtr confluent_iso(const PTParams& params, double epsilon, ConfluentIsoVariant variant,
                             std::optional<int> level = std::nullopt, double w0 = 0.0);

/// Confluent with psi_i at the limit w0 -> 0 or w0 -> -1: E_i removed.
SecondOrderPtr confluent_delete(const PTParams& params, int i, ConfluentLimit limit);

StateFunction transform_eigenfunction_second(const SecondOrderTransform& t, int n);

/// Missing state 1 (u2/W) or 2 (u1/W) of a real transform, or the single u/w
/// of a confluent one (which must be 1).
MissingState missing_state(const SecondOrderTransform& t, int which);

} // namespace ptsusy
