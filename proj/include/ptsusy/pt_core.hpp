#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <tuple>
#include <utility>

#include "ptsusy/params.hpp"
#include "ptsusy/specfun.hpp"

/// The trigonometric Poschl-Teller problem: potential, spectrum, eigenfunctions
/// and the general solution u(x; eps, A, B) of -u''/2 + V u = eps u.
namespace ptsusy {

using specfun::cplx;

double potential_value(const PTParams& params, double x);

/// E_n = (mu + 2n)^2 / 2.
double eigen_energy(const PTParams& params, int n);

/// Band index i with E_{i-1} < eps < E_i (E_{-1} = -inf), or nullopt if eps
/// coincides with an eigenvalue to 1e-9 relative.
std::optional<int> band_index(const PTParams& params, double epsilon);

/// Index n with E_n == eps to 1e-9 relative.
std::optional<int> eigen_index(const PTParams& params, double epsilon);

/// Expansion coefficients of u in one endpoint basis.
///
/// Left basis:  phi_A = s^l c^n F(mu/2+k, mu/2-k; l+1/2; s^2),
///              phi_B = s^(1-l) c^n F(q0+k, q0-k; 3/2-l; s^2),   q0 = (1+n-l)/2.
/// Right basis: the same functions for (n, l) evaluated at pi/2 - x.
struct Coefficients {
    cplx A;
    cplx B;
};

enum class Frame { left, right };

struct SeedSpec {
    cplx epsilon;
    Frame frame = Frame::left;
    Coefficients coeffs{1.0, 0.0};
    std::optional<double> q;   ///< set when built by seed_from_q
    std::optional<int> level;  ///< set for the physical eigenfunction psi_level (unnormalized)
};

/// Unnormalized physical seed: eps = E_n, A = 1, B = 0 (terminating series).
SeedSpec physical_seed(const PTParams& params, int n);

/// u(0) = 0 (A = 1, B = 0), or u(pi/2) = 0 for Frame::right.
SeedSpec regular_seed(cplx epsilon, Frame side = Frame::left);

/// B = 1, A = -b/a + q in the given frame (Frame::right uses the mirrored problem).
/// PoleError if a = 0, i.e. eps is an eigenvalue.
SeedSpec seed_from_q(const PTParams& params, double epsilon, double q, Frame frame = Frame::left);

SeedSpec general_seed(cplx epsilon, Coefficients coeffs, Frame frame = Frame::left);

/// Matrix taking left coefficients to right coefficients:
/// (A', B') = (c11 A + c12 B, a A + b B).
struct ConnectionMatrix {
    cplx c11, c12, a, b;
};

ConnectionMatrix connection_matrix(const PTParams& params, cplx epsilon);

/// The coefficients alpha1, alpha2, beta1, beta2 in the form the mirror map is
/// usually printed. They act on coefficients of the mirrored problem and
/// return those of the original one, i.e. they are the inverse of
/// connection_matrix (equivalently, connection_matrix of the swapped params).
struct MirrorMap {
    cplx alpha1, alpha2, beta1, beta2;
};

MirrorMap printed_mirror_coefficients(const PTParams& params, cplx epsilon);

/// Seed of the swapped problem whose solution at pi/2 - x equals the original at x.
std::pair<SeedSpec, PTParams> mirror(const SeedSpec& seed, const PTParams& params);

/// One term coeff * sin^p(x) cos^r(x) f(x) of a solution, with f_x = df/dx.
struct Term {
    cplx coeff;
    double p;
    double r;
    cplx f;
    cplx fx;
};

/// At most two terms; enough for any solution in either endpoint basis.
struct Expansion {
    std::array<Term, 2> terms{};
    std::size_t size = 0;

    void push(const Term& t) { terms[size++] = t; }
    const Term* begin() const { return terms.data(); }
    const Term* end() const { return terms.data() + size; }
};

struct SolutionValue {
    cplx u;
    cplx du;
};

class OdeContinuation;

/// Evaluator for a seed solution u(x) and u'(x).
///
/// Each point is evaluated from the endpoint basis closest to it (sin^2 x <= 1/2
/// uses the left one), so both series stay well inside their disc of
/// convergence. Terminating seeds use their polynomial everywhere. When one
/// basis degenerates (half-integer lambda or nu) that half of the interval is
/// reached by integrating the ODE from pi/4 instead.
class SchrodingerSolution {
public:
    SchrodingerSolution(const PTParams& params, SeedSpec seed);

    const PTParams& params() const { return params_; }
    const SeedSpec& seed() const { return seed_; }
    cplx epsilon() const { return seed_.epsilon; }
    bool is_real() const { return seed_.epsilon.imag() == 0.0; }
    bool terminating() const { return terminating_; }

    /// Coefficients in each basis (nullopt if that basis is degenerate).
    const std::optional<Coefficients>& left_coefficients() const { return left_; }
    const std::optional<Coefficients>& right_coefficients() const { return right_; }

    /// u ~ sin^left_exponent as x -> 0 and ~ cos^right_exponent as x -> pi/2.
    double left_exponent() const { return left_exponent_; }
    double right_exponent() const { return right_exponent_; }

    SolutionValue evaluate(double x) const;
    Expansion expand(double x) const;

    /// Evaluation forced through one basis (for cross-checks near the middle).
    Expansion expand_in(double x, Frame frame) const;

    /// Real parts of u and u' (for real epsilon).
    double value(double x) const { return evaluate(x).u.real(); }
    double derivative(double x) const { return evaluate(x).du.real(); }

    /// Same function scaled by `factor`.
    SchrodingerSolution scaled(double factor) const;

private:
    PTParams params_;
    SeedSpec seed_;
    bool terminating_ = false;
    std::optional<Coefficients> left_;
    std::optional<Coefficients> right_;
    double left_exponent_ = 0.0;
    double right_exponent_ = 0.0;
    cplx k_;
    double scale_ = 1.0;
    std::shared_ptr<const OdeContinuation> continuation_;
};

SchrodingerSolution general_solution(const PTParams& params, const SeedSpec& seed);

/// psi_n normalized to unit L2 norm on (0, pi/2) by quadrature, positive near x = 0.
SchrodingerSolution eigenfunction(const PTParams& params, int n);

/// Sign changes of u on a uniform grid of the guarded interval, each located by
/// bisection. InconclusiveError if a grid value touches zero without a sign change.
int count_nodes(const SchrodingerSolution& sol, int grid_points = 4000);

} // namespace ptsusy
