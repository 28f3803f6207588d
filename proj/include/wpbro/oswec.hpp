#pragma once

// Single-DOF pitching flap surrogate for the oscillating surge WEC, with
// constant hydrodynamic coefficients.

#include <functional>

namespace wpbro::oswec {

struct WecConfig {
    // Geometry of the reference flap (kg, m); informational for the
    // surrogate, which is driven by the lumped coefficients below.
    double mass = 127000.0;
    double height = 8.9;
    double width = 18.0;
    double thickness = 1.8;

    double pitch_inertia = 1.85e6;          // I [kg m^2]
    double added_inertia = 7.0e6;           // A_add [kg m^2]
    double radiation_damping = 2.0e6;       // B_rad [N m s/rad]
    double hydrostatic_stiffness = 2.9e7;   // K_hs [N m/rad]
    double excitation_gain = 2.0e6;         // Gamma [N m per m of elevation]
    double max_pitch = 1.0471975511965976;  // end stop [rad], 60 deg

    double total_inertia() const { return pitch_inertia + added_inertia; }

    void validate() const;

    friend bool operator==(const WecConfig&, const WecConfig&) = default;
};

struct FlapState {
    double theta = 0.0; // rad
    double omega = 0.0; // rad/s
};

/// Instantaneous loads on the flap at (t, state).
struct FlapForcing {
    double eta = 0.0;     // wave elevation [m]
    double tau_pto = 0.0; // PTO reaction torque [N m], positive opposes +omega
};

using ForcingFn = std::function<FlapForcing(double t, const FlapState&)>;

double excitation_torque(const WecConfig& cfg, double eta);

double flap_acceleration(const WecConfig& cfg, const FlapState& s, double tau_pto, double eta);

/// RK4 step with the forcing re-evaluated at every stage. The end stop
/// clamps theta to +-max_pitch and zeroes omega on contact.
FlapState step_flap(const WecConfig& cfg, const FlapState& s, double t, double dt,
                    const ForcingFn& forcing);

/// RK4 step with loads held constant over the step.
FlapState step_flap(const WecConfig& cfg, const FlapState& s, double tau_pto, double eta,
                    double dt);

/// Mechanical energy 1/2 (I + A_add) omega^2 + 1/2 K_hs theta^2 [J].
double mechanical_energy(const WecConfig& cfg, const FlapState& s);

} // namespace wpbro::oswec
