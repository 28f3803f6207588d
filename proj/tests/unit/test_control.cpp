#include "doctest.h"
#include "approx.hpp"

#include "wpbro/error.hpp"
#include "wpbro/control.hpp"

#include <cmath>

using namespace wpbro;

TEST_CASE("error definitions") {
    CHECK(control::main_loop_error(50, 50) == 0.0);
    CHECK(control::main_loop_error(50, 48) == 2.0);
    CHECK(control::main_loop_error(3, 7) == -control::main_loop_error(7, 3));
    CHECK(control::kidney_error(16e6, 16e6) == 0.0);
    CHECK(control::kidney_error(16e6, 15e6) == 1e6);
    CHECK(control::default_kidney_loop().setpoint == 16e6);
    CHECK(control::default_main_loop().setpoint == 50.0);
}

TEST_CASE("PD increments") {
    const auto m = control::default_main_loop();
    const auto k = control::default_kidney_loop();
    CHECK(control::pd_delta(m, 0.0, 0.0) == 0.0);
    CHECK(control::pd_delta(m, 1.0, 0.0) == Approx(1e-5));
    // Overpressure opens the kidney valve.
    CHECK(control::pd_delta(k, -1e6, 0.0) == Approx(6.67e-8));
}

TEST_CASE("derivative filter converges to the raw rate") {
    auto c = control::default_main_loop();
    double rate = 0.0, e = 0.0;
    const double slope = 2.0, dt = c.sample_period;
    for (int i = 0; i < 2000; ++i) {
        const double e2 = e + slope * dt;
        rate = control::pd_update(c, e2, e, dt, rate).filtered_rate;
        e = e2;
    }
    CHECK(rate == Approx(slope).epsilon(1e-9));

    c.filter_time_constant = 0.0;
    CHECK(control::pd_update(c, 1.0, 0.0, 0.5, 0.0).filtered_rate == Approx(2.0));
}

TEST_CASE("controller output is clamped to the valve range") {
    auto c = control::default_main_loop();
    control::PdController pd(c, 5e-3);
    for (int i = 0; i < 100000; ++i)
        pd.update(0.0); // large positive error keeps opening
    CHECK(pd.area() == c.area_max);
    for (int i = 0; i < 100000; ++i)
        pd.update(100.0);
    CHECK(pd.area() == c.area_min);
}

TEST_CASE("first update has no derivative kick") {
    auto c = control::default_main_loop();
    control::PdController pd(c, 1e-3);
    CHECK(pd.update(49.0) == Approx(1e-3 + c.kp * 1.0));
}

namespace {

// First-order plant: valve area sets speed through a static gain and lag.
// Summed over samples the incremental derivative term acts as a
// proportional gain kd / T_s, so closed-loop settling takes minutes.
double settle(control::PdConfig c) {
    control::PdController pd(c, 0.0);
    double n = 45.0;
    const double dt = c.sample_period;
    for (int i = 0; i < 200000; ++i) {
        const double target = 45.0 + 1000.0 * pd.area();
        n += dt / 5.0 * (target - n);
        pd.update(n);
    }
    return n;
}

} // namespace

TEST_CASE("loop settles on a lagged plant and diverges with the gain sign flipped") {
    auto c = control::default_main_loop();
    CHECK(settle(c) == Approx(50.0).epsilon(1e-3));
    c.kp = -c.kp;
    c.kd = -c.kd;
    CHECK(std::abs(settle(c) - 50.0) > 1.0);
}

TEST_CASE("invalid controller configs are rejected") {
    auto c = control::default_main_loop();
    c.area_max = -1.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = control::default_main_loop();
    c.sample_period = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
}
