#include "doctest.h"
#include "approx.hpp"

#include "wpbro/error.hpp"
#include "wpbro/bro.hpp"

#include <cmath>

using namespace wpbro;

TEST_CASE("HP pump flow") {
    bro::BroPumpConfig p;
    CHECK(bro::hp_pump_flow(0.0, p) == 0.0);
    CHECK(bro::hp_pump_flow(50.0, p) == Approx(0.02775));
    CHECK(bro::hp_pump_flow(50.0, p) * 86400 == Approx(2398).epsilon(1e-3));
    p.displacement = 3.95e-4;
    CHECK(bro::hp_pump_flow(50.0, p) * 86400 == Approx(1706).epsilon(1e-3));
}

TEST_CASE("permeate flux") {
    bro::MembraneConfig m;
    CHECK(bro::permeate_flux(0.0, m) == 0.0);
    CHECK(bro::permeate_flux(0.02775, m) == Approx(8.33e-6).epsilon(1e-3));
    CHECK(bro::permeate_flux(0.02775, m) * 3.6e6 == Approx(30.0).epsilon(1e-3)); // LMH
    bro::MembraneConfig m2 = m;
    m2.modules_parallel *= 2;
    CHECK(bro::permeate_flux(0.02775, m2) == Approx(0.5 * bro::permeate_flux(0.02775, m)));
}

TEST_CASE("mass-transfer correlation") {
    bro::MembraneConfig m;
    const double re = 0.15 * 1.4224e-3 / 8.56e-7;
    const double sc = 8.56e-7 / 1.47e-9;
    const double k = 0.065 * std::pow(re, 0.875) * std::pow(sc, 0.25) * 1.47e-9 / 1.4224e-3;
    CHECK(re == Approx(249.3).epsilon(1e-3));
    CHECK(bro::mass_transfer_coeff(0.15, m) == Approx(k));
    CHECK(bro::mass_transfer_coeff(0.15, m) == Approx(4.126e-5).epsilon(1e-3));
    CHECK(bro::mass_transfer_coeff(0.2, m) > bro::mass_transfer_coeff(0.15, m));

    // b = c = 0 gives a constant Sherwood number, i.e. a fixed k.
    m.sherwood_b = 0.0;
    m.sherwood_c = 0.0;
    CHECK(bro::mass_transfer_coeff(0.1, m) == Approx(bro::mass_transfer_coeff(0.3, m)));
}

TEST_CASE("osmotic pressure with polarisation") {
    bro::MembraneConfig m;
    CHECK(bro::osmotic_pressure(0.0, 0.0, 1.0, m) == 0.0);
    const double bare = 2 * 0.93 * 8.314 * 300 * (35 * 1025 / 58.55);
    CHECK(bro::osmotic_pressure(35.0, 0.0, 1.0, m) == Approx(bare));
    CHECK(bare == Approx(2.84e6).epsilon(3e-3));
    CHECK(bro::osmotic_pressure(35.0, 8.33e-6, 3.88e-5, m) ==
          Approx(bare * std::exp(8.33e-6 / 3.88e-5)));
    CHECK(bro::osmotic_pressure(35.0, 8.33e-6, 3.88e-5, m) == Approx(3.52e6).epsilon(3e-3));
}

TEST_CASE("feed pressure") {
    bro::MembraneConfig m;
    CHECK(bro::feed_pressure(0.0, 2.84e6, 0.0, m) == 2.84e6);
    CHECK(8.33e-6 / m.permeability == Approx(1.498e6).epsilon(1e-3));
    const double u = bro::crossflow_velocity(0.02775, 0.1, m);
    const double pf = bro::feed_pressure(8.33e-6, 2.84e6, u, m);
    CHECK(pf > 4.3e6);
    CHECK(pf < 4.6e6);
}

TEST_CASE("friction drop") {
    bro::MembraneConfig m;
    const double u = 0.15;
    const double re = u * m.hydraulic_diameter() / m.kinematic_viscosity;
    const double f = 6.23 * std::pow(re, -0.3);
    CHECK(bro::half_channel_drop(u, m) ==
          Approx(f * 1025.0 * u * u / (4 * m.hydraulic_diameter()) * 0.96));
    CHECK(bro::half_channel_drop(0.0, m) == 0.0);
}

TEST_CASE("HP pump torque") {
    bro::BroPumpConfig p;
    CHECK(bro::hp_pump_torque(0.0, p) == 0.0);
    CHECK(bro::hp_pump_torque(6e6, p) == Approx(5.55e-4 * 6e6 / (2 * M_PI * 0.85)));
    CHECK(bro::hp_pump_torque(6e6, p) == Approx(623.5).epsilon(1e-3));
    CHECK(bro::hp_pump_torque(7e6, p) > bro::hp_pump_torque(6e6, p));
}

TEST_CASE("branch concentrations") {
    const auto a = bro::membrane_bulk_concentration(35.0, 0.1);
    CHECK(a.outlet == Approx(38.89).epsilon(1e-4));
    CHECK(a.membrane_avg == Approx(36.944).epsilon(1e-4));
    const auto b = bro::membrane_bulk_concentration(70.0, 0.1);
    CHECK(b.outlet == Approx(2 * a.outlet));
    CHECK(b.membrane_avg == Approx(2 * a.membrane_avg));
    CHECK(bro::membrane_bulk_concentration(35.0, 1e-9).outlet == Approx(35.0));
}

TEST_CASE("circulation pump power") {
    bro::BroConfig cfg;
    CHECK(bro::circulation_pump_power(0.0, 0.1, 0.0, cfg) == 0.0);
    CHECK(cfg.pump.circ_efficiency == 0.65);
    const double u = 0.1;
    const double p1 = bro::circulation_pump_power(0.02, 0.1, u, cfg);
    CHECK(p1 == Approx(0.2 * 2 * bro::half_channel_drop(u, cfg.membrane) / 0.65));
}

TEST_CASE("batch step conserves salt and doubles salinity at half volume") {
    bro::BroConfig cfg;
    cfg.pump.total_recovery = 0.9;
    auto s = bro::initial_batch(cfg);
    CHECK(bro::batch_step(s, 0.0, 1.0, cfg).bulk_salinity == s.bulk_salinity);
    const double salt = s.bulk_salinity * s.active_volume;
    const double q = 0.59 / 5000.0;
    for (int i = 0; i < 5000; ++i) {
        s = bro::batch_step(s, q, 1.0, cfg);
        REQUIRE(std::abs(s.bulk_salinity * s.active_volume - salt) / salt < 1e-12);
    }
    // Closed form: C = C0 V0 / V.
    CHECK(s.bulk_salinity == Approx(70.0).epsilon(1e-3));
    CHECK(s.cycle_permeate == Approx(0.59));
}

TEST_CASE("cycle reset restores the fresh tank") {
    bro::BroConfig cfg;
    auto s = bro::initial_batch(cfg);
    s = bro::batch_step(s, 0.02775, 10.0, cfg);
    CHECK(bro::permeate_to_reset(s, cfg) == Approx(0.5 * 1.18 - 0.2775));
    const auto r = bro::cycle_reset(s, cfg);
    CHECK(r.bulk_salinity == 35.0);
    CHECK(r.active_volume == 1.18);
    CHECK(r.cycle_permeate == 0.0);
    CHECK(r.cycle_index == 1);
    CHECK(r.cumulative_permeate == s.cumulative_permeate);
}

TEST_CASE("cycles are tens of seconds so several fit in a run") {
    bro::BroConfig cfg;
    const double q = bro::hp_pump_flow(50.0, cfg.pump);
    const double period = cfg.pump.total_recovery * cfg.pump.tank_volume / q;
    CHECK(period > 10.0);
    CHECK(period < 60.0);
    CHECK(500.0 / period >= 3.0);
}

TEST_CASE("draining past empty is a cycle-accounting error") {
    bro::BroConfig cfg;
    auto s = bro::initial_batch(cfg);
    CHECK_THROWS_AS(bro::batch_step(s, 1.0, 10.0, cfg), Error);
}

TEST_CASE("operating point rises over a cycle") {
    bro::BroConfig cfg;
    const auto a = bro::operating_point(50.0, 35.0, cfg);
    const auto b = bro::operating_point(50.0, 70.0, cfg);
    CHECK(b.feed_pressure > a.feed_pressure);
    CHECK(b.pump_torque > a.pump_torque);
    CHECK(a.feed_pressure > 3e6);
    CHECK(b.feed_pressure < 7e6 * 1.5);
    CHECK(a.pump_power == Approx(a.feed_pressure * a.q_p / 0.85));
}
