#pragma once

// Discrete PD controllers for the two flow control devices. Each update
// yields an area increment that is accumulated into the absolute orifice
// area and clamped to the device bounds.

namespace wpbro::control {

struct PdConfig {
    double kp = 0.0;                   // area per unit error
    double kd = 0.0;                   // area per unit error rate
    double sample_period = 0.005;      // controller update period [s]
    double filter_time_constant = 0.05; // derivative low-pass [s]; 0 = unfiltered
    double area_min = 0.0;             // [m^2]
    double area_max = 1e-2;            // [m^2]
    double setpoint = 0.0;             // rev/s (main) or Pa (kidney)

    void validate() const;

    friend bool operator==(const PdConfig&, const PdConfig&) = default;
};

/// Table-default main-loop controller (shaft speed, 50 rev/s).
PdConfig default_main_loop();
/// Table-default kidney controller (accumulator pressure, 16 MPa).
PdConfig default_kidney_loop();

/// e = n_ref - n [rev/s]
double main_loop_error(double n_ref, double n);
/// e = p_ref - p [Pa]
double kidney_error(double p_ref, double p);

struct PdUpdate {
    double delta_area = 0.0;
    double filtered_rate = 0.0; // filtered de/dt after this update
};

/// One controller evaluation. `filtered_rate` is the first-order-filtered
/// backward difference of e; pass prev_filtered_rate from the previous call.
PdUpdate pd_update(const PdConfig& c, double e, double prev_e, double dt,
                   double prev_filtered_rate);

/// Same, with the derivative already formed: delta = kp e + kd rate.
double pd_delta(const PdConfig& c, double e, double filtered_rate);

/// Stateful wrapper owning the error history and the accumulated area.
class PdController {
public:
    PdController(PdConfig cfg, double initial_area);

    /// Returns the new (clamped) area.
    double update(double measurement);

    double area() const noexcept { return area_; }
    const PdConfig& config() const noexcept { return cfg_; }

private:
    PdConfig cfg_;
    double area_;
    double prev_error_ = 0.0;
    double filtered_rate_ = 0.0;
    bool primed_ = false;
};

} // namespace wpbro::control
