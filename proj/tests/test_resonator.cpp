#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "paramres/constants.hpp"
#include "paramres/errors.hpp"
#include "paramres/resonator.hpp"

using Catch::Approx;
using namespace paramres;

TEST_CASE("loaded quality factor combines the two loss channels") {
    const auto r = ResonatorParams::make(5e9, 2e4, 100.0);
    CHECK(loaded_q(r) == Approx(99.502487562189055).epsilon(1e-13));

    CHECK(loaded_q(ResonatorParams::lossless(5e9, 100.0)) == 100.0);
    CHECK(loaded_q(ResonatorParams::make(5e9, 200.0, 200.0)) == Approx(100.0).epsilon(1e-13));

    SECTION("symmetric in the two quality factors and below both") {
        const double pairs[][2] = {{37.0, 910.0}, {1e4, 1e4}, {3.0, 5e6}};
        for (const auto& p : pairs) {
            const double q_ab = loaded_q(ResonatorParams::make(1e9, p[0], p[1]));
            const double q_ba = loaded_q(ResonatorParams::make(1e9, p[1], p[0]));
            CHECK(q_ab == Approx(q_ba).epsilon(1e-13));
            CHECK(q_ab <= std::min(p[0], p[1]));
        }
    }
}

TEST_CASE("lossless resonator is an exact sentinel, not a large float") {
    const auto r = ResonatorParams::lossless(5e9, 100.0);
    CHECK(r.is_lossless());
    CHECK(r.inv_q_unloaded() == 0.0);
    CHECK_FALSE(ResonatorParams::make(5e9, 1e12, 100.0).is_lossless());
}

TEST_CASE("parameter validation rejects non-physical values") {
    CHECK_THROWS_AS(ResonatorParams::make(0.0, 100.0, 100.0), ConfigInvalid);
    CHECK_THROWS_AS(ResonatorParams::make(-1e9, 100.0, 100.0), ConfigInvalid);
    CHECK_THROWS_AS(ResonatorParams::make(5e9, -3.0, 100.0), ConfigInvalid);
    CHECK_THROWS_AS(ResonatorParams::make(5e9, 100.0, 0.0), ConfigInvalid);
    CHECK_THROWS_AS(ResonatorParams::make(5e9, std::nan(""), 100.0), ConfigInvalid);

    BathTemperatures bad{-0.1, 4.0};
    CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
    CHECK_NOTHROW(BathTemperatures{0.0, 0.0}.validate());

    CHECK_THROWS_AS((Modulation{-0.1, 1e10}.validate()), ConfigInvalid);
}

TEST_CASE("regime classification against the self-oscillation threshold") {
    const auto r = ResonatorParams::make(5e9, 2e4, 100.0);

    const auto sub = classify_regime(r, Modulation::parametric_resonance(0.01, r));
    CHECK(sub.classification == RegimeClass::SubThreshold);
    CHECK(sub.xi_q == Approx(0.99502487562189055).epsilon(1e-13));

    CHECK(classify_regime(r, Modulation::parametric_resonance(0.0, r)).classification ==
          RegimeClass::SubThreshold);

    const auto above = classify_regime(r, Modulation::parametric_resonance(0.02, r));
    CHECK(above.classification == RegimeClass::AboveThreshold);
    CHECK(above.xi_q == Approx(1.9900497512437811).epsilon(1e-13));

    SECTION("tolerance band around the exact threshold") {
        const auto lossless = ResonatorParams::lossless(1e9, 100.0);  // Q exactly 100
        const auto at = [&](double xi) {
            return classify_regime(lossless, Modulation::parametric_resonance(xi, lossless))
                .classification;
        };
        CHECK(at(0.01) == RegimeClass::AtThreshold);
        CHECK(at((1.0 - 2e-9) / 100.0) == RegimeClass::SubThreshold);
        CHECK(at((1.0 + 2e-9) / 100.0) == RegimeClass::AboveThreshold);
    }

    SECTION("bisection localizes the classification flip at the tolerance edge") {
        const auto lossless = ResonatorParams::lossless(1e9, 100.0);
        double lo = 0.005, hi = 0.015;  // SubThreshold at lo, not at hi
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            const auto c =
                classify_regime(lossless, Modulation::parametric_resonance(mid, lossless))
                    .classification;
            (c == RegimeClass::SubThreshold ? lo : hi) = mid;
        }
        // The Sub side of the band ends where |xi*Q - 1| equals the declared
        // tolerance.
        CHECK(hi * 100.0 == Approx(1.0 - threshold_tolerance).epsilon(1e-12));
    }
}

TEST_CASE("thermal occupation factor") {
    CHECK(thermal_factor(5e9, 0.0) == 0.5);
    CHECK(thermal_factor(1e3, 0.0) == 0.5);

    SECTION("reference point at 5 GHz and 10 K") {
        const double a = thermal_factor(5e9, 10.0);
        CHECK(a == Approx(41.675237937611161).epsilon(1e-12));
        CHECK(std::abs(a - 41.68) < 0.01);

        // Independent small-x series for coth: 1/x + x/3 - x^3/45.
        const double x = constants::hbar * 2.0 * constants::pi * 5e9 /
                         (2.0 * constants::k_boltzmann * 10.0);
        const double series = 0.5 * (1.0 / x + x / 3.0 - x * x * x / 45.0);
        CHECK(a == Approx(series).epsilon(1e-12));
    }

    SECTION("unit-argument point") {
        const double t_x1 = constants::hbar * 2.0 * constants::pi * 5e9 /
                            (2.0 * constants::k_boltzmann);
        CHECK(thermal_factor(5e9, t_x1) == Approx(0.65651764274966565).epsilon(1e-12));
    }

    SECTION("strictly increasing in temperature") {
        // Starts at 0.01 K; below that the increase over the vacuum value 1/2
        // falls under double-precision resolution.
        double prev = thermal_factor(5e9, 0.0);
        for (double t : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            const double a = thermal_factor(5e9, t);
            CHECK(a > prev);
            prev = a;
        }
    }

    SECTION("classical limit at high temperature") {
        // x < 0.05 means k_B t > 10 * hbar*omega0: A ~ k_B t / (hbar*omega0).
        for (double x : {0.04, 0.02, 0.005}) {
            const double t = constants::hbar * 2.0 * constants::pi * 5e9 /
                             (2.0 * constants::k_boltzmann * x);
            const double classical = 1.0 / (2.0 * x);
            CHECK(thermal_factor(5e9, t) == Approx(classical).epsilon(0.01));
        }
    }

    CHECK_THROWS_AS(thermal_factor(0.0, 1.0), ConfigInvalid);
    CHECK_THROWS_AS(thermal_factor(5e9, -1.0), ConfigInvalid);
}

TEST_CASE("single-port reflection response") {
    const auto r = ResonatorParams::make(5e9, 2e4, 100.0);

    SECTION("on-resonance depth for the overcoupled reference resonator") {
        const auto s11 = reflection_response(r, 5e9);
        CHECK(std::abs(s11) == Approx(0.99004975124378109).epsilon(1e-12));
        CHECK(s11.real() < 0.0);  // overcoupled: phase flip at resonance
        CHECK(s11.imag() == Approx(0.0).margin(1e-15));
    }

    SECTION("critical coupling absorbs everything at resonance") {
        const auto rc = ResonatorParams::make(5e9, 300.0, 300.0);
        CHECK(std::abs(reflection_response(rc, 5e9)) < 1e-15);
    }

    SECTION("lossless resonator reflects all power at every frequency") {
        const auto rl = ResonatorParams::lossless(5e9, 100.0);
        for (double df : {0.0, 1e4, 1e6, 1e8, -3e7}) {
            CHECK(std::abs(reflection_response(rl, 5e9 + df)) == Approx(1.0).epsilon(1e-12));
        }
    }

    SECTION("magnitude bounded by one, minimum at resonance, unity far away") {
        std::mt19937 gen(2024);
        std::uniform_real_distribution<double> qdist(1.5, 6.0);
        for (int i = 0; i < 50; ++i) {
            const auto rr = ResonatorParams::make(1e9, std::pow(10.0, qdist(gen)),
                                                  std::pow(10.0, qdist(gen)));
            const double width = rr.f0 / loaded_q(rr);
            for (double k : {-40.0, -2.0, -0.3, 0.0, 0.7, 5.0, 120.0}) {
                CHECK(std::abs(reflection_response(rr, rr.f0 + k * width)) <= 1.0 + 1e-12);
            }
            const double dip = std::abs(reflection_response(rr, rr.f0));
            CHECK(dip <= std::abs(reflection_response(rr, rr.f0 + 0.1 * width)) + 1e-12);
            CHECK(std::abs(reflection_response(rr, rr.f0 + 1e6 * width)) ==
                  Approx(1.0).epsilon(1e-9));
        }
    }

    SECTION("the absorption dip has full width f0/Q at half depth") {
        // 1 - |S11|^2 falls to half its on-resonance value at f0 +- f0/(2Q).
        const double d0 = std::norm(reflection_response(r, r.f0));
        const double target = 0.5 * (1.0 + d0);
        double lo = 0.0, hi = 10.0 * r.f0 / loaded_q(r);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (std::norm(reflection_response(r, r.f0 + mid)) < target) lo = mid;
            else hi = mid;
        }
        const double full_width = 2.0 * 0.5 * (lo + hi);
        CHECK(full_width == Approx(r.f0 / loaded_q(r)).epsilon(1e-6));
    }
}

TEST_CASE("threshold parameter from a static resonance shift") {
    CHECK(xi_q_from_shift(3.71e9, 3.71e9, 100.0) == 0.0);

    const double f_dark = 3.71e9;
    const double shifted = f_dark * (1.0 - 0.002);
    CHECK(xi_q_from_shift(f_dark, shifted, 100.0) == Approx(0.1).epsilon(1e-12));

    SECTION("linear in the shift and symmetric in its sign") {
        const double one = xi_q_from_shift(f_dark, f_dark - 1e6, 250.0);
        CHECK(xi_q_from_shift(f_dark, f_dark - 2e6, 250.0) == Approx(2.0 * one).epsilon(1e-12));
        CHECK(xi_q_from_shift(f_dark, f_dark + 1e6, 250.0) == Approx(one).epsilon(1e-12));
    }

    CHECK_THROWS_AS(xi_q_from_shift(0.0, 1e9, 100.0), ConfigInvalid);
    CHECK_THROWS_AS(xi_q_from_shift(1e9, 1e9, -5.0), ConfigInvalid);
}

TEST_CASE("parametric resonance helper pins the modulation at twice the carrier") {
    const auto r = ResonatorParams::make(5e9, 2e4, 100.0);
    const auto m = Modulation::parametric_resonance(0.01, r);
    CHECK(m.f_mod == 1e10);
    CHECK(m.xi == 0.01);
}
