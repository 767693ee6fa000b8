#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nlqw/continuum.hpp"
#include "nlqw/dynamics1d.hpp"

using namespace nlqw;

namespace {

constexpr double pi = std::numbers::pi;

cplx char_poly(PerturbationBranch br, double I, double k,
               const ContinuumParams& cp, cplx l) {
    const double sgn = br == PerturbationBranch::plus ? 1.0 : -1.0;
    const double m = cp.alpha_t * I + sgn * cp.theta0_t;
    const cplx l2 = l * l;
    return l2 * l2 + 2.0 * (k * k + 2.0 * m * m) * l2 +
           cplx(std::pow(k, 4) + 4.0 * k * k * cp.alpha_t * I * m, 0.0);
}

// Smooth test state: plane-wave-modulated Gaussian envelopes.
SpinorField1D smooth_state(double epsilon, int half_width) {
    SpinorField1D psi(GridSpec{-half_width, half_width, epsilon});
    for (int j = -half_width; j <= half_width; ++j) {
        const double x = epsilon * j;
        const double env = std::exp(-0.5 * x * x / 4.0);
        psi.at(j).u = env * std::polar(0.8, 0.9 * x);
        psi.at(j).d = env * std::polar(0.6, -0.4 * x + 0.3);
    }
    return psi;
}

}  // namespace

TEST_CASE("mass term examples") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    Spinor s{cplx(1 / std::sqrt(2.0), 0), cplx(0, 1 / std::sqrt(2.0))};
    CHECK(mass_term(s, cp) == doctest::Approx(pi / 3 - 0.5));
    Spinor r{cplx(0.4, 0), cplx(0.9, 0)};
    CHECK(mass_term(r, cp) == doctest::Approx(pi / 3));
}

TEST_CASE("mass term equals the lattice coin angle under substitution") {
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ContinuumParams cp{0.77, 1.9, 1.0};
    WalkParams p;
    p.theta0 = cp.theta0_t;
    p.alpha = cp.alpha_t;
    for (int i = 0; i < 100; ++i) {
        Spinor s{cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng))};
        CHECK(mass_term(s, cp) ==
              doctest::Approx(nonlinear_angle(s, p)).epsilon(1e-14));
    }
}

TEST_CASE("stationary profile closed form") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    const StationaryPoint p0 = stationary_profile(cp, 0.0);
    CHECK(p0.delta == doctest::Approx(0.0));
    CHECK(p0.intensity == doctest::Approx(pi / 3 / 8.0));

    SUBCASE("normalization: integral of 2I equals 1") {
        // Simpson quadrature over a wide window
        const double L = 60.0, h = 0.01;
        const int n = static_cast<int>(2 * L / h);
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double x = -L + i * h;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            sum += w * 2.0 * stationary_profile(cp, x).intensity;
        }
        sum *= h / 3.0;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("satisfies the reduced steady-state ODEs") {
        // dDelta/dx = 2 a I, dI/dx = -2 I th0 Delta
        const double h = 1e-5;
        for (double x : {-3.0, -0.7, 0.2, 1.9}) {
            const auto c = stationary_profile(cp, x);
            const auto f = stationary_profile(cp, x + h);
            const auto b = stationary_profile(cp, x - h);
            const double dDelta = (f.delta - b.delta) / (2 * h);
            const double dI = (f.intensity - b.intensity) / (2 * h);
            CHECK(dDelta ==
                  doctest::Approx(2.0 * cp.alpha_t * c.intensity).epsilon(1e-6));
            CHECK(dI == doctest::Approx(-2.0 * c.intensity * cp.theta0_t *
                                        c.delta)
                            .epsilon(1e-6));
        }
    }
}

TEST_CASE("sigma drift law on the unit circle") {
    CHECK(std::abs(sigma_drift(0.4, pi / 3, 0) - std::polar(1.0, 0.4)) < 1e-15);
    // 2 * (pi/3) * 3 = 2pi: back to the start
    CHECK(std::abs(sigma_drift(0.4, pi / 3, 3) - std::polar(1.0, 0.4)) < 1e-12);
    CHECK(std::abs(sigma_drift(0.0, 0.25, 2) - std::polar(1.0, -1.0)) < 1e-15);
}

TEST_CASE("characteristic roots: closed-form structure") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};

    SUBCASE("plus branch is neutrally stable on a grid") {
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const double I = 0.15 * i, k = 0.2 * j;
                for (const cplx& l :
                     characteristic_roots(PerturbationBranch::plus, I, k, cp))
                    CHECK(std::abs(l.real()) < 1e-10);
            }
        }
    }

    SUBCASE("minus branch at k = 0") {
        const double I = 0.7;
        const auto roots =
            characteristic_roots(PerturbationBranch::minus_, I, 0.0, cp);
        const double m = cp.alpha_t * I - cp.theta0_t;
        // lambda^2 in {0, -4 m^2}
        std::vector<double> mags;
        for (const cplx& l : roots) {
            CHECK(std::abs(l.real()) < 1e-10);
            mags.push_back(std::abs(l));
        }
        std::sort(mags.begin(), mags.end());
        CHECK(mags[0] == doctest::Approx(0.0));
        CHECK(mags[1] == doctest::Approx(0.0));
        CHECK(mags[3] == doctest::Approx(2.0 * std::abs(m)).epsilon(1e-12));
    }

    SUBCASE("minus branch degenerates to (l^2+k^2)^2 at alpha I = theta0") {
        const double I = cp.theta0_t / cp.alpha_t;
        for (double k : {0.3, 1.1, 2.5}) {
            const auto roots =
                characteristic_roots(PerturbationBranch::minus_, I, k, cp);
            // The discriminant b^2 - c cancels to ~0 here, so sqrt only
            // resolves the roots to about half machine precision.
            for (const cplx& l : roots) {
                CHECK(std::abs(l.real()) < 1e-7);
                CHECK(std::abs(l) == doctest::Approx(k).epsilon(1e-7));
            }
        }
    }

    SUBCASE("roots come in +/- pairs and satisfy the polynomial") {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> U(0.0, 3.0);
        for (int trial = 0; trial < 100; ++trial) {
            const double I = U(rng), k = U(rng);
            for (auto br :
                 {PerturbationBranch::plus, PerturbationBranch::minus_}) {
                const auto r = characteristic_roots(br, I, k, cp);
                CHECK(std::abs(r[0] + r[1]) < 1e-12);
                CHECK(std::abs(r[2] + r[3]) < 1e-12);
                for (const cplx& l : r)
                    CHECK(std::abs(char_poly(br, I, k, cp, l)) < 1e-10);
            }
        }
    }
}

TEST_CASE("trivial branch roots") {
    const auto r0 = trivial_branch_roots(0.0);
    for (const cplx& l : r0) CHECK(std::abs(l) == doctest::Approx(0.0));
    const auto r2 = trivial_branch_roots(2.0);
    CHECK(r2[0] == cplx(0, 2));
    CHECK(r2[1] == cplx(0, 2));
    CHECK(r2[2] == cplx(0, -2));
    CHECK(r2[3] == cplx(0, -2));
    for (const cplx& l : r2) CHECK(l.real() == 0.0);
}

TEST_CASE("steady-state branch construction rules") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    CHECK_NOTHROW(SteadyStateBranch::make(SteadyStateBranch::Kind::delta_plus,
                                          0.5, cp));
    CHECK_THROWS_WITH(
        SteadyStateBranch::make(SteadyStateBranch::Kind::theta_zero, 0.5, cp),
        "branch does not exist");
    CHECK_NOTHROW(
        SteadyStateBranch::make(SteadyStateBranch::Kind::theta_zero, 1.5, cp));
    CHECK_THROWS_AS(
        SteadyStateBranch::make(SteadyStateBranch::Kind::trivial, 0.5, cp),
        std::invalid_argument);
}

TEST_CASE("linearization matrix eigenvalues match the closed-form roots") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> U(0.05, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double I = U(rng), k = U(rng);
        const bool plus = trial % 2 == 0;
        const auto branch = SteadyStateBranch::make(
            plus ? SteadyStateBranch::Kind::delta_plus
                 : SteadyStateBranch::Kind::delta_minus,
            I, cp);
        auto expect = characteristic_roots(
            plus ? PerturbationBranch::plus : PerturbationBranch::minus_, I, k,
            cp);
        auto got = linearization_eigenvalues(branch, k, cp);
        // greedy matching of the two unordered sets
        double worst = 0.0;
        std::vector<bool> used(4, false);
        for (const cplx& e : expect) {
            double best = 1e30;
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                if (used[i]) continue;
                const double dd = std::abs(e - got[i]);
                if (dd < best) {
                    best = dd;
                    best_i = i;
                }
            }
            used[best_i] = true;
            worst = std::max(worst, best);
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("linearization matrix: trivial branch gives {+/-ik, +/-ik}") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    const auto branch =
        SteadyStateBranch::make(SteadyStateBranch::Kind::trivial, 0.0, cp);
    for (double k : {0.0, 0.7, 2.2}) {
        const auto got = linearization_eigenvalues(branch, k, cp);
        int plus_count = 0;
        for (const cplx& l : got) {
            CHECK(std::abs(l.real()) < 1e-12);
            CHECK(std::abs(std::abs(l.imag()) - k) < 1e-12);
            if (l.imag() > 1e-12) ++plus_count;
        }
        if (k > 0) CHECK(plus_count == 2);
    }
}

TEST_CASE("theta-zero branch is neutrally stable (numerically)") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    const auto branch =
        SteadyStateBranch::make(SteadyStateBranch::Kind::theta_zero, 1.8, cp);
    for (double k : {0.0, 0.4, 1.3, 3.0}) {
        const auto res = analyze_stability(branch, k, cp);
        // Repeated imaginary eigenvalue pairs limit the numerical
        // eigensolver to roughly sqrt(machine epsilon) accuracy.
        CHECK(res.max_growth < 1e-6);
    }
}

TEST_CASE("stability map spot values") {
    ContinuumParams cp{pi / 3, 1.0, 1.0};
    const StabilityMap map =
        stability_map(cp, {0.5, 1.5}, {0.5, 1.5, 4.0});
    // long-wavelength instability below the intensity threshold
    CHECK(map.max_growth[0][0] > 0.0);
    CHECK(map.max_growth[0][1] < 1e-10);
    // short-wavelength instability above it
    CHECK(map.max_growth[1][2] > 0.0);
}

TEST_CASE("consistency residual scales as O(eps^2)") {
    SUBCASE("identity dynamics on a constant field leaves zero residual") {
        ContinuumParams cp{0.0, 0.0, 0.3};
        SpinorField1D psi(GridSpec{-20, 20, 0.3});
        for (auto& s : psi.sites()) {
            s.u = cplx(0.3, 0.1);
            s.d = cplx(-0.2, 0.4);
        }
        CHECK(consistency_residual(psi, cp) < 1e-14);
    }
    SUBCASE("linear dynamics: ratio ~4 under eps halving") {
        std::vector<double> r;
        for (double eps : {0.1, 0.05, 0.025}) {
            ContinuumParams cp{pi / 3, 0.0, eps};
            r.push_back(consistency_residual(
                smooth_state(eps, static_cast<int>(12.0 / eps)), cp));
        }
        CHECK(r[0] / r[1] > 3.5);
        CHECK(r[0] / r[1] < 4.5);
        CHECK(r[1] / r[2] > 3.5);
        CHECK(r[1] / r[2] < 4.5);
    }
    SUBCASE("nonlinear dynamics: same scaling") {
        std::vector<double> r;
        for (double eps : {0.1, 0.05, 0.025}) {
            ContinuumParams cp{pi / 3, 1.0, eps};
            r.push_back(consistency_residual(
                smooth_state(eps, static_cast<int>(12.0 / eps)), cp));
        }
        CHECK(r[0] / r[1] > 3.5);
        CHECK(r[0] / r[1] < 4.5);
        CHECK(r[1] / r[2] > 3.5);
        CHECK(r[1] / r[2] < 4.5);
    }
}
