#include "doctest.h"
#include "approx.hpp"

#include "wpbro/error.hpp"
#include "wpbro/pto_hydraulics.hpp"

#include <cmath>
#include <random>

using namespace wpbro;

TEST_CASE("slider-crank piston position") {
    pto::SliderCrank sc;
    CHECK(pto::piston_position(sc, 0.0) == Approx(3.0 + std::sqrt(25.0 - 1.69)));
    CHECK(pto::piston_position(sc, 0.0) == Approx(7.828).epsilon(1e-4));
    CHECK(pto::piston_position(sc, M_PI / 2) == Approx(4.702).epsilon(1e-4));
    for (double th : {-0.7, 0.1, 1.3})
        CHECK(pto::piston_position(sc, th) == Approx(pto::piston_position(sc, th + 2 * M_PI)));
}

TEST_CASE("stroke rate matches a central difference") {
    pto::SliderCrank sc;
    const double h = 1e-6;
    for (double th : {-0.9, -0.2, 0.0, 0.5, 1.0}) {
        const double fd =
            (pto::piston_position(sc, th + h) - pto::piston_position(sc, th - h)) / (2 * h);
        CHECK(pto::piston_stroke_rate(sc, th) == Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("piston flows are rectified") {
    pto::SliderCrank sc;
    const auto z = pto::piston_flows(sc, 0.3, 0.0);
    CHECK(z.to_high_side == 0.0);
    CHECK(z.from_intake == 0.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> th(-1.0, 1.0), om(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(pto::piston_flows(sc, th(rng), om(rng)).to_high_side >= 0.0);
}

TEST_CASE("mean delivered flow over a crank swing equals swept volume over time") {
    // theta(t) = a sin(w t) sweeps [-a, a] twice per period, and the pair
    // delivers A |dx| either way, so the volume is 2 A times the total
    // variation of x(theta) on [-a, a]. x is not monotone here.
    pto::SliderCrank sc;
    const double a = 0.5, w = 0.6, period = 2 * M_PI / w;
    const int n = 200000;
    double vol = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 0.5) * period / n;
        vol += pto::piston_flows(sc, a * std::sin(w * t), a * w * std::cos(w * t)).to_high_side *
               period / n;
    }
    double variation = 0.0;
    double prev = pto::piston_position(sc, -a);
    for (int i = 1; i <= 100000; ++i) {
        const double x = pto::piston_position(sc, -a + 2 * a * i / 100000.0);
        variation += std::abs(x - prev);
        prev = x;
    }
    CHECK(vol == Approx(2 * sc.piston_area * variation).epsilon(1e-4));
}

TEST_CASE("reaction torque opposes motion") {
    pto::SliderCrank sc;
    CHECK(pto::piston_reaction_torque(sc, 0.2, 0.5, 16e6) * 0.5 > 0.0);
    CHECK(pto::piston_reaction_torque(sc, 0.2, -0.5, 16e6) * -0.5 > 0.0);
    CHECK(pto::piston_reaction_torque(sc, 0.2, 0.0, 16e6) == 0.0);
}

TEST_CASE("rod too short is a mechanism error") {
    pto::SliderCrank sc;
    sc.rod_length = 1.0;
    CHECK_THROWS_AS(sc.validate(M_PI / 3), Error);
}

TEST_CASE("accumulator rated point") {
    pto::Accumulator acc;
    CHECK(pto::accumulator_liquid_volume(acc, acc.precharge) == 0.0);
    const double v = 6.0 * (1.0 - std::pow(0.6, 1.0 / 1.4));
    CHECK(pto::accumulator_liquid_volume(acc, 16e6) == Approx(v));
    CHECK(std::round(v * 100) / 100 == 1.83);
    CHECK(pto::accumulator_pressure(acc, 0.0) == Approx(9.6e6));
    CHECK(pto::accumulator_pressure(acc, 1.83) == Approx(16e6).epsilon(5e-3));
}

TEST_CASE("isothermal exponent moves the rated volume off 1.83") {
    pto::Accumulator acc;
    acc.adiabatic_n = 1.0;
    CHECK(pto::accumulator_liquid_volume(acc, 16e6) == Approx(2.4));
}

TEST_CASE("accumulator pressure is monotone and inverts the volume law") {
    pto::Accumulator acc;
    double prev = 0.0;
    for (double v = 0.0; v < 5.9; v += 0.05) {
        const double p = pto::accumulator_pressure(acc, v);
        REQUIRE(p > prev);
        prev = p;
    }
    for (double p = 9.6e6; p < 40e6; p += 0.7e6)
        CHECK(pto::accumulator_pressure(acc, pto::accumulator_liquid_volume(acc, p)) ==
              Approx(p).epsilon(1e-9));
    CHECK_THROWS_AS(pto::accumulator_liquid_volume(acc, 1e6), Error);
    CHECK_THROWS_AS(pto::accumulator_pressure(acc, 6.0), Error);
}

TEST_CASE("gas energy is the integral of p dV") {
    for (double n : {1.0, 1.4}) {
        pto::Accumulator acc;
        acc.adiabatic_n = n;
        const int steps = 100000;
        double e = 0.0;
        for (int i = 0; i < steps; ++i)
            e += pto::accumulator_pressure(acc, (i + 0.5) * 2.0 / steps) * 2.0 / steps;
        CHECK(pto::accumulator_gas_energy(acc, 2.0) == Approx(e).epsilon(1e-8));
    }
}

TEST_CASE("orifice equation") {
    pto::FcdState f;
    CHECK(pto::orifice_flow(f, 1e6, 1025.0) == 0.0);
    f.area = 1e-4;
    CHECK(pto::orifice_flow(f, 1e6, 1025.0) == Approx(0.7e-4 * std::sqrt(2e6 / 1025.0)));
    CHECK(pto::orifice_flow(f, 1e6, 1025.0) == Approx(3.09e-3).epsilon(2e-3));
    CHECK(pto::orifice_flow(f, 4e6, 1025.0) == Approx(2 * pto::orifice_flow(f, 1e6, 1025.0)));
    CHECK(pto::orifice_pressure_drop(f, pto::orifice_flow(f, 2.5e6, 1025.0), 1025.0) ==
          Approx(2.5e6));
    CHECK_THROWS_AS(pto::orifice_flow(f, -1.0, 1025.0), Error);
}

TEST_CASE("turbine flow and shaft dynamics") {
    pto::ShaftAssembly sh{0.0, 3.52e-4, 0.95, 2000.0};
    CHECK(pto::turbine_flow(sh) == 0.0);
    sh.speed = 50.0;
    CHECK(pto::turbine_flow(sh) == Approx(0.0176));
    CHECK(pto::turbine_flow(sh) == Approx(0.8 * 0.022));
    pto::ShaftAssembly small{50.0, 2.24e-4, 0.95, 2000.0};
    CHECK(pto::turbine_flow(small) == Approx(0.8 * 0.014));

    const double tau_m = 1e7 * 3.52e-4 * 0.95 / (2 * M_PI);
    CHECK(tau_m == Approx(532.21).epsilon(1e-4));
    CHECK(pto::shaft_acceleration(sh, 1e7, 500.0) == Approx((tau_m - 500.0) / (2 * M_PI * 2000.0)));
    CHECK(pto::shaft_acceleration(sh, 1e7, 500.0) == Approx(2.5635e-3).epsilon(1e-4));

    const double p = pto::balancing_motor_pressure(sh, 623.5);
    CHECK(std::abs(pto::shaft_acceleration(sh, p, 623.5)) < 1e-12);
    // Transmitted mechanical power at steady state.
    CHECK(p * pto::turbine_flow(sh) * 0.95 == Approx(623.5 * 2 * M_PI * 50.0));
}

TEST_CASE("network step with no inflow and closed valves freezes the accumulator") {
    pto::PtoConfig cfg;
    pto::PtoState s{1.83, 0.0, 0.0, 0.0};
    const auto out = pto::pto_network_step(cfg, s, 0.0, 0.0, 0.01);
    CHECK(out.state.liquid_volume == s.liquid_volume);
    CHECK(out.q_kidney == 0.0);
    CHECK(out.q_main == 0.0);
}

TEST_CASE("network power bookkeeping closes against gas energy") {
    pto::PtoConfig cfg;
    pto::PtoState s{1.83, 50.0, 5e-3, 1e-5};
    const double e0 = pto::accumulator_gas_energy(cfg.accumulator, s.liquid_volume);
    double in = 0.0, out_sum = 0.0;
    const double dt = 0.001;
    for (int i = 0; i < 20000; ++i) {
        const double q = 0.022 * (1.0 + 0.3 * std::sin(0.57 * i * dt));
        const auto st = pto::pto_network_step(cfg, s, q, 600.0, dt);
        in += st.power.pistons * dt;
        out_sum += (st.power.turbine + st.power.kidney + st.power.main_fcd) * dt;
        s = st.state;
    }
    const double de = pto::accumulator_gas_energy(cfg.accumulator, s.liquid_volume) - e0;
    CHECK(std::abs(in - out_sum - de) / in < 5e-3);
}

TEST_CASE("network step reports overload and emptying") {
    pto::PtoConfig cfg;
    pto::PtoState s{1.83, 50.0, 1e-6, 0.0};
    CHECK_THROWS_AS(pto::pto_network_step(cfg, s, 0.02, 0.0, 0.01), Error);
    try {
        pto::pto_network_step(cfg, s, 0.02, 0.0, 0.01);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Overload);
    }
    pto::PtoState dry{1e-6, 50.0, 1e-2, 0.0};
    try {
        pto::pto_network_step(cfg, dry, 0.0, 0.0, 0.01);
        FAIL("expected an infeasible-sea-state error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InfeasibleSeaState);
    }
}
