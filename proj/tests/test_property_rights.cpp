#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eldermodel/errors.hpp"
#include "eldermodel/property_rights.hpp"
#include "eldermodel/static_economy.hpp"

using namespace eldermodel;

namespace {
// The worked example used throughout: one middle-aged and one elderly agent,
// elderly keep 2.5% of their labor power.
const LandEconomy kBaseline{0.5, 1.0, 0.025};
}

TEST_CASE("marginal products satisfy the Euler identity on simple economies") {
    // L = 1, T = 1: output 1, split half and half.
    const LandEconomy unit{0.5, 1.0, 0.0};
    const auto d1 = euler_decompose(unit);
    CHECK(d1.F == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d1.F_L == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d1.F_T == doctest::Approx(0.5).epsilon(1e-15));

    // L = 4, T = 1: output 2, labor margin 0.25, land margin 1.
    const LandEconomy wide{0.5, 3.0, 1.0};
    const auto d2 = euler_decompose(wide);
    CHECK(d2.F == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d2.F_L == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d2.F_T == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("factor payments exhaust output for random economies") {
    std::mt19937 rng(24680);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        LandEconomy econ;
        econ.alpha = 0.2 + 0.6 * u(rng);
        econ.A_m = 0.5 + 1.5 * u(rng);
        econ.A_e = econ.A_m * u(rng);
        econ.T = 0.5 + 2.5 * u(rng);
        econ.N_m = 0.5 + 2.5 * u(rng);
        econ.N_e = 0.5 + 2.5 * u(rng);
        const auto d = euler_decompose(econ);
        CHECK(d.F_L * econ.total_labor() + d.F_T * econ.T ==
              doctest::Approx(d.F).epsilon(1e-12));
    }
}

TEST_CASE("land shares interpolate between communal and elderly-owned") {
    const LandEconomy econ{0.5, 1.0, 0.25, 1.0, 2.0, 1.0};  // L = 2.25
    double sigma_e = 0.0, sigma_m = 0.0;

    sigma_shares(econ, {0.0, 1.0}, sigma_e, sigma_m);
    CHECK(sigma_e == doctest::Approx(0.25 / 2.25).epsilon(1e-15));
    CHECK(sigma_m == doctest::Approx(1.0 / 2.25).epsilon(1e-15));

    sigma_shares(econ, {1.0, 1.0}, sigma_e, sigma_m);
    CHECK(sigma_e == doctest::Approx(1.0).epsilon(1e-15));  // 1/N_e
    CHECK(sigma_m == doctest::Approx(0.0).epsilon(1e-15));

    // Interior point: phi^rho = 0.25 mixes the two cases linearly.
    sigma_shares(econ, {0.25, 1.0}, sigma_e, sigma_m);
    CHECK(sigma_e == doctest::Approx(0.25 * 1.0 + 0.75 * 0.25 / 2.25).epsilon(1e-15));
    CHECK(sigma_m == doctest::Approx(0.75 * 1.0 / 2.25).epsilon(1e-15));

    // Land shares always aggregate to the whole stock.
    std::mt19937 rng(1357);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        sigma_shares(econ, {u(rng), 0.3 + 2.7 * u(rng)}, sigma_e, sigma_m);
        CHECK(econ.N_e * sigma_e + econ.N_m * sigma_m == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pooled incomes exhaust output at every rights level") {
    std::mt19937 rng(8642);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        LandEconomy econ;
        econ.alpha = 0.2 + 0.6 * u(rng);
        econ.A_m = 0.5 + 1.5 * u(rng);
        econ.A_e = econ.A_m * u(rng);
        econ.T = 0.5 + 2.5 * u(rng);
        econ.N_m = 0.5 + 2.5 * u(rng);
        econ.N_e = 0.5 + 2.5 * u(rng);
        const RightsParams rights{u(rng), 0.3 + 2.7 * u(rng)};
        const auto d = decompose_incomes(econ, rights);
        CHECK(econ.N_m * d.y_m + econ.N_e * d.y_e == doctest::Approx(d.F).epsilon(1e-12));
    }
}

TEST_CASE("income ratio endpoints at the worked example") {
    CHECK(income_ratio(kBaseline, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    // Full rights: A_e/A_m + (1-alpha)L/(alpha*A_m*N_e) with L = 1.025.
    CHECK(income_ratio(kBaseline, {1.0, 1.0}) == doctest::Approx(1.05).epsilon(1e-12));
}

TEST_CASE("income ratio does not depend on the land stock") {
    for (double phi : {0.0, 0.3, 0.7, 1.0}) {
        LandEconomy scaled = kBaseline;
        const double at_unit = income_ratio(scaled, {phi, 1.0});
        scaled.T = 7.0;
        CHECK(income_ratio(scaled, {phi, 1.0}) == doctest::Approx(at_unit).epsilon(1e-12));
    }
}

TEST_CASE("income ratio falls at the communal end at rate (A_e-A_m)N/L") {
    const LandEconomy econ{0.4, 1.0, 0.2, 1.0, 1.5, 1.0};
    const double slope = (econ.A_e - econ.A_m) * (econ.N_m + econ.N_e) / econ.total_labor();
    const double h = 1e-7;
    const double fd = (income_ratio(econ, {h, 1.0}) - income_ratio(econ, {0.0, 1.0})) / h;
    CHECK(fd == doctest::Approx(slope).epsilon(1e-5));
}

TEST_CASE("critical phi matches the closed form and the grid minimum") {
    const auto crit = critical_phi(kBaseline, {0.0, 1.0});
    REQUIRE(crit.has_value());
    CHECK(*crit == doctest::Approx(0.4875).epsilon(1e-12));

    // It is a genuine interior minimum of the ratio.
    const double at = income_ratio(kBaseline, {*crit, 1.0});
    CHECK(income_ratio(kBaseline, {*crit - 1e-4, 1.0}) > at);
    CHECK(income_ratio(kBaseline, {*crit + 1e-4, 1.0}) > at);

    // Slower co-evolution of land rights pushes the minimum outward.
    const auto crit2 = critical_phi(kBaseline, {0.0, 2.0});
    REQUIRE(crit2.has_value());
    CHECK(*crit2 == doctest::Approx(std::sqrt(0.975 / 3.0)).epsilon(1e-12));
    const double at2 = income_ratio(kBaseline, {*crit2, 2.0});
    CHECK(income_ratio(kBaseline, {*crit2 - 1e-4, 2.0}) > at2);
    CHECK(income_ratio(kBaseline, {*crit2 + 1e-4, 2.0}) > at2);
}

TEST_CASE("critical phi is absent when the ratio is monotone") {
    // Strong diminishing land share: the interior root lands above 1.
    const LandEconomy econ{0.9, 1.0, 0.0};
    CHECK(!critical_phi(econ, {0.0, 1.0}).has_value());
    CHECK(income_ratio(econ, {1.0, 1.0}) < income_ratio(econ, {0.5, 1.0}));
}

TEST_CASE("critical phi requires the elderly to be the weaker workers") {
    const LandEconomy econ{0.5, 1.0, 1.0};
    CHECK_THROWS_AS((void)critical_phi(econ, {0.0, 1.0}), parameter_error);
}

TEST_CASE("phi sweep marks the inculcation band and matches the overlay") {
    const PreferenceParams prefs{0.4, 1.0, 0.25};  // threshold Y* = 0.9
    const auto grid = linspace(0.0, 1.0, 21);
    const auto rows = phi_sweep(kBaseline, 1.0, grid, prefs);
    REQUIRE(rows.size() == grid.size());

    const double y_star = inculcation_threshold(prefs, kBaseline.n());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].phi == grid[i]);
        CHECK(rows[i].income_ratio ==
              doctest::Approx(income_ratio(kBaseline, {rows[i].phi, 1.0})).epsilon(1e-12));
        CHECK(rows[i].inculcation == (rows[i].income_ratio <= y_star));
        CHECK(rows[i].consumption_ratio ==
              doctest::Approx(relative_consumption_static(prefs, rows[i].income_ratio,
                                                          kBaseline.n()))
                  .epsilon(1e-12));
    }
    // The band is interior: both endpoints sit above the threshold.
    CHECK(!rows.front().inculcation);
    CHECK(!rows.back().inculcation);
    CHECK(rows[10].inculcation);  // phi = 0.5, near the ratio minimum
}

TEST_CASE("phi sweep is identical across thread counts") {
    const PreferenceParams prefs{0.4, 1.0, 0.25};
    const auto grid = linspace(0.0, 1.0, 101);
    const auto serial = phi_sweep(kBaseline, 1.0, grid, prefs, 1);
    const auto parallel = phi_sweep(kBaseline, 1.0, grid, prefs, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].income_ratio == parallel[i].income_ratio);
        CHECK(serial[i].consumption_ratio == parallel[i].consumption_ratio);
        CHECK(serial[i].inculcation == parallel[i].inculcation);
    }
}

TEST_CASE("linspace covers both endpoints exactly") {
    const auto g = linspace(0.05, 3.0, 60);
    REQUIRE(g.size() == 60);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 3.0);
    CHECK(g[1] - g[0] == doctest::Approx(2.95 / 59).epsilon(1e-15));
    CHECK_THROWS_AS((void)linspace(0.0, 1.0, 1), parameter_error);
}

TEST_CASE("economy validation rejects out-of-domain values") {
    CHECK_THROWS_AS((LandEconomy{0.0, 1.0, 0.5}.validate()), parameter_error);
    CHECK_THROWS_AS((LandEconomy{1.0, 1.0, 0.5}.validate()), parameter_error);
    CHECK_THROWS_AS((LandEconomy{0.5, 0.0, 0.5}.validate()), parameter_error);
    CHECK_THROWS_AS((LandEconomy{0.5, 1.0, -0.1}.validate()), parameter_error);
    CHECK_THROWS_AS((LandEconomy{0.5, 1.0, 0.5, 0.0}.validate()), parameter_error);
    CHECK_THROWS_AS((RightsParams{-0.1, 1.0}.validate()), parameter_error);
    CHECK_THROWS_AS((RightsParams{1.1, 1.0}.validate()), parameter_error);
    CHECK_THROWS_AS((RightsParams{0.5, 0.0}.validate()), parameter_error);
}
