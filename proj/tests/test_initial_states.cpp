#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlqw/initial_states.hpp"
#include "nlqw/observables.hpp"

using namespace nlqw;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("bright soliton: normalization, symmetry, phase") {
    const GridSpec g{-100, 100, 0.5};
    const double beta = pi / 6;  // the published initial width
    const SpinorField1D psi = bright_soliton(beta, g);
    CHECK(psi.total_probability() == doctest::Approx(1.0).epsilon(1e-12));
    // peak at the center, even-symmetric
    const auto P = probability_density(psi);
    for (int j = 1; j <= 100; ++j) {
        CHECK(psi.at(j).probability() ==
              doctest::Approx(psi.at(-j).probability()).epsilon(1e-12));
        CHECK(psi.at(0).probability() >= psi.at(j).probability());
    }
    // delta = -pi/2 at every site
    for (const auto& d : phase_difference(psi)) {
        REQUIRE(d.has_value());
        CHECK(*d == doctest::Approx(-pi / 2).epsilon(1e-12));
    }
}

TEST_CASE("bright soliton rejects non-positive width") {
    CHECK_THROWS_AS(bright_soliton(0.0, GridSpec{-10, 10, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bright_soliton(-1.0, GridSpec{-10, 10, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("moving soliton with nu = 0 equals the bright soliton") {
    const GridSpec g{-80, 80, 1.0};
    const SpinorField1D a = bright_soliton(0.5, g);
    const SpinorField1D b = moving_soliton(0.5, 0.0, g);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a.sites()[i].u - b.sites()[i].u) < 1e-15);
        CHECK(std::abs(a.sites()[i].d - b.sites()[i].d) < 1e-15);
    }
}

TEST_CASE("moving soliton profile is independent of nu") {
    const GridSpec g{-80, 80, 1.0};
    const SpinorField1D a = moving_soliton(0.5, 2.0 / 3.0, g);
    const SpinorField1D b = moving_soliton(0.5, -2.0 / 3.0, g);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.sites()[i].probability() ==
              doctest::Approx(b.sites()[i].probability()).epsilon(1e-14));
}

TEST_CASE("constructors commute with translation") {
    const GridSpec g{-60, 60, 1.0};
    const SpinorField1D base = moving_soliton(0.5, 0.4, g, 0);
    const SpinorField1D moved = moving_soliton(0.5, 0.4, g, 9);
    for (int j = -40; j <= 40; ++j) {
        CHECK(std::abs(moved.at(j + 9).u - base.at(j).u) < 1e-6);
        CHECK(std::abs(moved.at(j + 9).d - base.at(j).d) < 1e-6);
    }
}

TEST_CASE("dark soliton: null center, flank level, flank phase") {
    const GridSpec g{-200, 200, 1.0};
    const double beta = 0.3;
    const SpinorField1D psi = dark_soliton(beta, g);  // default I = beta
    CHECK(psi.at(0).probability() == 0.0);
    CHECK(psi.at(200).probability() == doctest::Approx(2 * beta).epsilon(1e-9));
    CHECK(psi.at(-200).probability() == doctest::Approx(2 * beta).epsilon(1e-9));
    const auto d = phase_difference(psi);
    CHECK(*d[0 /* j=-200 */] == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(*d.back() == doctest::Approx(pi / 2).epsilon(1e-12));
    // explicit intensity overrides the default
    const SpinorField1D psi2 = dark_soliton(beta, g, 0, 0.04);
    CHECK(psi2.at(200).probability() == doctest::Approx(0.08).epsilon(1e-9));
}

TEST_CASE("uniform block variants") {
    const GridSpec g{-20, 20, 1.0};
    const Spinor coin{cplx(1 / std::sqrt(2.0), 0), cplx(0, -1 / std::sqrt(2.0))};
    SUBCASE("unit-total normalization and delta") {
        const SpinorField1D psi = uniform_block(-5, 5, coin, g);
        CHECK(psi.total_probability() == doctest::Approx(1.0).epsilon(1e-12));
        const auto d = phase_difference(psi);
        CHECK(*d[static_cast<std::size_t>(0 - psi.j_min())] ==
              doctest::Approx(pi / 2));
        CHECK(psi.at(6).probability() == 0.0);
    }
    SUBCASE("per-site intensity scaling") {
        const SpinorField1D psi = uniform_block(
            -5, 5, coin, g, false, BlockScaling::per_site_intensity, 0.05);
        CHECK(psi.at(0).probability() == doctest::Approx(0.10).epsilon(1e-12));
        CHECK(std::norm(psi.at(0).u) == doctest::Approx(0.05).epsilon(1e-12));
    }
    SUBCASE("inverted support") {
        const SpinorField1D psi = uniform_block(-5, 5, coin, g, true);
        CHECK(psi.at(0).probability() == 0.0);
        CHECK(psi.at(6).probability() > 0.0);
        CHECK(psi.total_probability() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(uniform_block(5, -5, coin, g), std::invalid_argument);
        CHECK_THROWS_AS(uniform_block(-30, 5, coin, g), std::invalid_argument);
        CHECK_THROWS_AS(uniform_block(-5, 5, Spinor{cplx(1, 0), cplx(1, 0)}, g),
                        std::invalid_argument);
        CHECK_THROWS_AS(uniform_block(-20, 20, coin, g, true),
                        std::invalid_argument);
    }
}

TEST_CASE("superpose adds site-wise") {
    const GridSpec g{-30, 30, 1.0};
    const SpinorField1D a = bright_soliton(0.5, g, -10);
    const SpinorField1D b = bright_soliton(0.5, g, 10);
    const SpinorField1D s = superpose(a, b);
    CHECK(std::abs(s.at(3).u - (a.at(3).u + b.at(3).u)) < 1e-15);
    CHECK_THROWS_AS(superpose(a, bright_soliton(0.5, GridSpec{-10, 10, 1.0})),
                    std::invalid_argument);
}
