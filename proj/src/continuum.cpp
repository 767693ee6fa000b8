#include "nlqw/continuum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "nlqw/dynamics1d.hpp"

namespace nlqw {

double mass_term(const Spinor& s, const ContinuumParams& cp) {
    return cp.theta0_t + cp.alpha_t * std::imag(s.u * std::conj(s.d));
}

StationaryPoint stationary_profile(const ContinuumParams& cp, double x) {
    const double w = cp.alpha_t * cp.theta0_t;
    if (!(w > 0.0))
        throw std::invalid_argument(
            "stationary_profile: alpha_t * theta0_t must be positive");
    const double arg = 0.5 * w * x;
    StationaryPoint p;
    p.delta = 0.5 * cp.alpha_t * std::tanh(arg);
    const double sech = std::abs(arg) > 350.0 ? 0.0 : 1.0 / std::cosh(arg);
    p.intensity = (w / 8.0) * sech * sech;
    return p;
}

cplx sigma_drift(double sigma0, double theta0, long t) {
    return std::polar(1.0, sigma0 - 2.0 * theta0 * static_cast<double>(t));
}

std::array<cplx, 4> characteristic_roots(PerturbationBranch branch, double I,
                                         double k, const ContinuumParams& cp) {
    if (I < 0.0)
        throw std::invalid_argument("characteristic_roots: negative intensity");
    const double sgn = (branch == PerturbationBranch::plus) ? 1.0 : -1.0;
    const double m = cp.alpha_t * I + sgn * cp.theta0_t;
    const double b = k * k + 2.0 * m * m;
    const double c = k * k * k * k + 4.0 * k * k * cp.alpha_t * I * m;
    const cplx disc = std::sqrt(cplx(b * b - c, 0.0));
    const cplx l2a = -b + disc;
    const cplx l2b = -b - disc;
    const cplx ra = std::sqrt(l2a);
    const cplx rb = std::sqrt(l2b);
    return {ra, -ra, rb, -rb};
}

std::array<cplx, 4> trivial_branch_roots(double k) {
    const cplx ik(0.0, k);
    return {ik, ik, -ik, -ik};
}

SteadyStateBranch SteadyStateBranch::make(Kind kind, double intensity,
                                          const ContinuumParams& cp) {
    if (intensity < 0.0)
        throw std::invalid_argument("SteadyStateBranch: negative intensity");
    if (kind == Kind::trivial && intensity != 0.0)
        throw std::invalid_argument("SteadyStateBranch: trivial branch has I=0");
    if (kind == Kind::theta_zero &&
        !(intensity * cp.alpha_t > std::abs(cp.theta0_t)))
        throw std::invalid_argument("branch does not exist");
    SteadyStateBranch b;
    b.kind = kind;
    b.intensity = intensity;
    return b;
}

std::array<cplx, 16> linearization_matrix(const SteadyStateBranch& branch,
                                          double k, const ContinuumParams& cp) {
    const double th0 = cp.theta0_t, al = cp.alpha_t;
    const double I = branch.intensity;

    // Steady-state values (sin/cos of delta_bar, theta_bar); the trivial
    // branch is the I->0 limit along delta = +/- pi/2, where every sqrt(I)
    // and 1/sqrt(I) entry vanishes by convention.
    double sd, cd, thb, sqI, inv_sqI;
    switch (branch.kind) {
        case SteadyStateBranch::Kind::trivial:
            sd = 1.0;
            cd = 0.0;
            thb = th0;
            sqI = 0.0;
            inv_sqI = 0.0;
            break;
        case SteadyStateBranch::Kind::delta_plus:
        case SteadyStateBranch::Kind::delta_minus:
            sd = (branch.kind == SteadyStateBranch::Kind::delta_plus) ? 1.0 : -1.0;
            cd = 0.0;
            thb = th0 + al * I * sd;
            sqI = std::sqrt(I);
            inv_sqI = 1.0 / sqI;
            break;
        case SteadyStateBranch::Kind::theta_zero:
            sd = -th0 / (al * I);
            cd = std::sqrt(std::max(0.0, 1.0 - sd * sd));
            thb = 0.0;
            sqI = std::sqrt(I);
            inv_sqI = 1.0 / sqI;
            break;
        default:
            throw std::logic_error("unreachable");
    }

    const cplx ik(0.0, k);  // d/dx -> ik on plane-wave perturbations
    std::array<cplx, 16> L{};
    auto E = [&L](int r, int c) -> cplx& { return L[static_cast<std::size_t>(4 * r + c)]; };
    E(0, 0) = (th0 - thb) * cd - ik;
    E(1, 1) = -E(0, 0);
    E(0, 1) = (th0 - 2.0 * thb) * cd;
    E(1, 0) = -E(0, 1);
    E(0, 2) = sqI * (thb * sd - al * I * cd * cd);
    E(1, 2) = -E(0, 2);
    E(2, 0) = -2.0 * thb * sd * inv_sqI;
    E(2, 1) = -E(2, 0);
    E(2, 3) = -ik;
    E(3, 0) = 2.0 * sqI * al * sd * sd;
    E(3, 1) = E(3, 0);
    E(3, 2) = -2.0 * (th0 - 2.0 * thb) * cd - ik;
    return L;
}

std::array<cplx, 4> linearization_eigenvalues(const SteadyStateBranch& branch,
                                              double k,
                                              const ContinuumParams& cp) {
    const auto L = linearization_matrix(branch, k, cp);
    Eigen::Matrix4cd M;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) M(r, c) = L[static_cast<std::size_t>(4 * r + c)];
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(M, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("linearization_eigenvalues: eigensolver failed");
    std::array<cplx, 4> out;
    for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

StabilityResult analyze_stability(const SteadyStateBranch& branch, double k,
                                  const ContinuumParams& cp) {
    StabilityResult r;
    r.branch = branch;
    r.k = k;
    switch (branch.kind) {
        case SteadyStateBranch::Kind::delta_plus:
            r.eigenvalues = characteristic_roots(PerturbationBranch::plus,
                                                 branch.intensity, k, cp);
            break;
        case SteadyStateBranch::Kind::delta_minus:
            r.eigenvalues = characteristic_roots(PerturbationBranch::minus_,
                                                 branch.intensity, k, cp);
            break;
        case SteadyStateBranch::Kind::trivial:
            r.eigenvalues = trivial_branch_roots(k);
            break;
        case SteadyStateBranch::Kind::theta_zero:
            r.eigenvalues = linearization_eigenvalues(branch, k, cp);
            break;
    }
    r.max_growth = 0.0;
    for (const cplx& l : r.eigenvalues)
        r.max_growth = std::max(r.max_growth, l.real());
    return r;
}

StabilityMap stability_map(const ContinuumParams& cp,
                           const std::vector<double>& a_values,
                           const std::vector<double>& kappa_values) {
    const double th0 = cp.theta0_t;
    if (!(th0 > 0.0) || !(cp.alpha_t > 0.0))
        throw std::invalid_argument("stability_map: parameters must be positive");
    StabilityMap map;
    map.a_values = a_values;
    map.kappa_values = kappa_values;
    map.max_growth.resize(a_values.size());
    for (std::size_t i = 0; i < a_values.size(); ++i) {
        auto& row = map.max_growth[i];
        row.resize(kappa_values.size());
        const double I = a_values[i] * th0 / cp.alpha_t;
        for (std::size_t jc = 0; jc < kappa_values.size(); ++jc) {
            const double k = th0 * std::sqrt(kappa_values[jc]);
            const auto roots =
                characteristic_roots(PerturbationBranch::minus_, I, k, cp);
            double g = 0.0;
            for (const cplx& l : roots) g = std::max(g, l.real());
            row[jc] = g * th0;
        }
    }
    return map;
}

double consistency_residual(const SpinorField1D& psi,
                            const ContinuumParams& cp) {
    const double eps = psi.epsilon();
    WalkParams p;
    p.theta0 = eps * cp.theta0_t;
    p.alpha = eps * cp.alpha_t;
    p.boundary = Boundary::periodic;  // edges excluded from the norm below
    const SpinorField1D stepped = apply_shift(apply_coin(psi, p), p.boundary);

    double acc = 0.0;
    for (int j = psi.j_min() + 1; j < psi.j_max(); ++j) {
        const Spinor& s = psi.at(j);
        const cplx dxu = (psi.at(j + 1).u - psi.at(j - 1).u) / (2.0 * eps);
        const cplx dxd = (psi.at(j + 1).d - psi.at(j - 1).d) / (2.0 * eps);
        const double th = mass_term(s, cp);
        const cplx tu = s.u + eps * (-dxu - th * s.d);
        const cplx td = s.d + eps * (dxd + th * s.u);
        acc += std::norm(stepped.at(j).u - tu) + std::norm(stepped.at(j).d - td);
    }
    return std::sqrt(eps * acc);
}

}  // namespace nlqw
