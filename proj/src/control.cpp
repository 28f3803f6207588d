#include "wpbro/control.hpp"

#include "wpbro/error.hpp"

#include <algorithm>

namespace wpbro::control {

void PdConfig::validate() const {
    if (!(area_min >= 0.0))
        fail(ErrorKind::Config, "controller: area_min must be >= 0");
    if (!(area_max > area_min))
        fail(ErrorKind::Config, "controller: area_max must exceed area_min");
    if (!(filter_time_constant >= 0.0))
        fail(ErrorKind::Config, "controller: filter_time_constant must be >= 0");
    if (!(sample_period > 0.0))
        fail(ErrorKind::Config, "controller: sample_period must be > 0");
}

PdConfig default_main_loop() {
    PdConfig c;
    c.kp = 1e-5;
    c.kd = 100e-5;
    c.setpoint = 50.0;
    c.area_min = 0.0;
    c.area_max = 1e-2;
    return c;
}

PdConfig default_kidney_loop() {
    PdConfig c;
    c.kp = -6.67e-14;
    c.kd = -667e-14;
    c.setpoint = 16e6;
    c.area_min = 0.0;
    c.area_max = 1e-2;
    return c;
}

double main_loop_error(double n_ref, double n) { return n_ref - n; }

double kidney_error(double p_ref, double p) { return p_ref - p; }

double pd_delta(const PdConfig& c, double e, double filtered_rate) {
    return c.kp * e + c.kd * filtered_rate;
}

PdUpdate pd_update(const PdConfig& c, double e, double prev_e, double dt,
                   double prev_filtered_rate) {
    if (!(dt > 0.0))
        fail(ErrorKind::Domain, "pd_update: dt must be > 0");
    const double raw = (e - prev_e) / dt;
    // Backward-Euler discretisation of tau x' + x = raw.
    const double alpha = dt / (c.filter_time_constant + dt);
    const double rate = prev_filtered_rate + alpha * (raw - prev_filtered_rate);
    return {pd_delta(c, e, rate), rate};
}

PdController::PdController(PdConfig cfg, double initial_area)
    : cfg_(cfg), area_(std::clamp(initial_area, cfg.area_min, cfg.area_max)) {
    cfg_.validate();
}

double PdController::update(double measurement) {
    const double e = cfg_.setpoint - measurement;
    if (!primed_) {
        prev_error_ = e;
        primed_ = true;
    }
    const PdUpdate u = pd_update(cfg_, e, prev_error_, cfg_.sample_period, filtered_rate_);
    prev_error_ = e;
    filtered_rate_ = u.filtered_rate;
    area_ = std::clamp(area_ + u.delta_area, cfg_.area_min, cfg_.area_max);
    return area_;
}

} // namespace wpbro::control
