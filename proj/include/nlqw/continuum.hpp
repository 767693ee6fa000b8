#pragma once

// Closed-form continuum-limit results: nonlinear Dirac mass term, the
// stationary soliton profile, the phase-sum drift law, the plane-wave
// linear-stability machinery, and a discrete-vs-continuum consistency
// residual for order-of-accuracy checks.

#include <array>
#include <complex>
#include <vector>

#include "nlqw/field.hpp"

namespace nlqw {

struct ContinuumParams {
    double theta0_t = 0.0;  // continuum-scale coin angle
    double alpha_t = 0.0;   // continuum-scale nonlinearity
    double epsilon = 1.0;   // lattice spacing for discretization comparisons
};

// m(psi) = theta0_t + alpha_t * Im(u * conj(d)); identical in form to the
// lattice coin angle with the continuum-scale parameters substituted.
double mass_term(const Spinor& s, const ContinuumParams& cp);

struct StationaryPoint {
    double delta = 0.0;      // phase difference Delta(x)
    double intensity = 0.0;  // I(x), per-component intensity density
};

// Delta(x) = (a/2) tanh(a*th*x/2), I(x) = (a*th/8) sech^2(a*th*x/2),
// with a = alpha_t, th = theta0_t. Requires a*th > 0.
StationaryPoint stationary_profile(const ContinuumParams& cp, double x);

// e^{i (sigma0 - 2*theta0*t)}: the phase-sum drift law on the unit circle.
cplx sigma_drift(double sigma0, double theta0, long t);

enum class PerturbationBranch { plus, minus_ };

// Roots of P±(lambda) = lambda^4 + 2[k^2 + 2(aI±th)^2] lambda^2
//                     + k^4 + 4 k^2 aI (aI±th), solved as a biquadratic.
std::array<cplx, 4> characteristic_roots(PerturbationBranch branch, double I,
                                         double k, const ContinuumParams& cp);

// Roots of (lambda^2 + k^2)^2: {ik, ik, -ik, -ik}. Applies to the zero-
// intensity branch and the theta=0 branch alike.
std::array<cplx, 4> trivial_branch_roots(double k);

struct SteadyStateBranch {
    enum class Kind { trivial, theta_zero, delta_plus, delta_minus };
    Kind kind = Kind::trivial;
    double intensity = 0.0;

    // theta_zero requires intensity * alpha_t > |theta0_t|; throws
    // std::invalid_argument("branch does not exist") otherwise.
    static SteadyStateBranch make(Kind kind, double intensity,
                                  const ContinuumParams& cp);
};

// The 4x4 linearization of the homogeneous steady state against
// perturbations ~ e^{lambda t} e^{ikx}, row-major.
std::array<cplx, 16> linearization_matrix(const SteadyStateBranch& branch,
                                          double k, const ContinuumParams& cp);

// Eigenvalues of linearization_matrix, via a dense complex eigensolver.
std::array<cplx, 4> linearization_eigenvalues(const SteadyStateBranch& branch,
                                              double k,
                                              const ContinuumParams& cp);

struct StabilityResult {
    SteadyStateBranch branch;
    double k = 0.0;
    std::array<cplx, 4> eigenvalues{};
    double max_growth = 0.0;  // max Re(lambda)
};

StabilityResult analyze_stability(const SteadyStateBranch& branch, double k,
                                  const ContinuumParams& cp);

struct StabilityMap {
    std::vector<double> a_values;      // alpha_t * I / theta0_t axis (rows)
    std::vector<double> kappa_values;  // k^2 / theta0_t^2 axis (columns)
    std::vector<std::vector<double>> max_growth;  // max Re(lambda) * theta0_t
};

// Minus-branch growth-rate map over the dimensionless axes; values are
// scaled by theta0_t to match the paper's presentation.
StabilityMap stability_map(const ContinuumParams& cp,
                           const std::vector<double>& a_values,
                           const std::vector<double>& kappa_values);

// || step_eps(psi) - [psi + eps (-sigma_z D_x psi - i m(psi) sigma_y psi)] ||
// with D_x a central difference and a grid-weighted 2-norm sqrt(eps*sum|r|^2).
// Scales as O(eps^2) for smooth input: halving eps divides it by ~4.
double consistency_residual(const SpinorField1D& psi,
                            const ContinuumParams& cp);

}  // namespace nlqw
