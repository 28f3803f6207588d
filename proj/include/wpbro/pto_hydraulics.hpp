#pragma once

// Hydraulic power take-off: slider-crank pistons with ideal check valves,
// gas-charged accumulator, kidney (bypass) and main-loop flow control
// devices, and the turbine side of the hydraulic converter.
//
// Topology: pistons -> accumulator -> { kidney FCD -> ambient,
//                                       main FCD -> turbine -> ambient }
// Ambient is 0 Pa gauge; pipe losses are neglected.

namespace wpbro::pto {

struct SliderCrank {
    double crank_length = 3.0;   // R2 [m]
    double rod_length = 5.0;     // R3 [m]
    double offset = 1.3;         // R5 [m]
    double piston_area = 0.0378; // A [m^2]

    /// Checks R3^2 > (R2 sin(theta) - R5)^2 for all |theta| <= max_pitch.
    void validate(double max_pitch) const;

    friend bool operator==(const SliderCrank&, const SliderCrank&) = default;
};

/// x = R2 cos(theta) + sqrt(R3^2 - (R2 sin(theta) - R5)^2)
double piston_position(const SliderCrank& sc, double theta);

/// dx/dtheta [m/rad].
double piston_stroke_rate(const SliderCrank& sc, double theta);

struct PistonFlows {
    double to_high_side = 0.0; // discharge through the outlet check valves [m^3/s]
    double from_intake = 0.0;  // suction through the inlet check valves [m^3/s]
};

/// Two opposed pistons: whichever chamber is shrinking discharges to the
/// high-pressure line while the other draws seawater in.
PistonFlows piston_flows(const SliderCrank& sc, double theta, double omega);

/// Reaction torque of the piston pair on the crank when delivering into a
/// line at p_high; sign opposes omega so that tau * omega >= 0.
double piston_reaction_torque(const SliderCrank& sc, double theta, double omega, double p_high);

struct Accumulator {
    double total_gas_volume = 6.0;  // V0 [m^3]
    double precharge = 9.6e6;       // [Pa]
    double rated_pressure = 16e6;   // [Pa]
    double adiabatic_n = 1.4;

    void validate() const;

    friend bool operator==(const Accumulator&, const Accumulator&) = default;
};

/// Gas follows p V_gas^n = const; stored liquid is V0 - V_gas.
double accumulator_liquid_volume(const Accumulator& acc, double p);
double accumulator_pressure(const Accumulator& acc, double v_liq);

/// Work done on the gas charging it from empty to v_liq [J].
double accumulator_gas_energy(const Accumulator& acc, double v_liq);

struct ShaftAssembly {
    double speed = 50.0;              // N [rev/s] (state)
    double displacement = 3.52e-4;    // V_d [m^3/rev]
    double turbine_efficiency = 0.95; // eta_m
    double inertia = 2000.0;          // J [kg m^2]

    void validate() const;
};

/// Q_main = N V_d.
double turbine_flow(const ShaftAssembly& sh);

/// dN/dt [rev/s^2] from the turbine torque dp V_d eta_m / 2pi minus the
/// pump back-torque magnitude tau_hp.
double shaft_acceleration(const ShaftAssembly& sh, double dp_motor, double tau_hp);

/// Turbine pressure drop that balances tau_hp at zero acceleration.
double balancing_motor_pressure(const ShaftAssembly& sh, double tau_hp);

struct FcdState {
    double area = 0.0;        // A_orifice [m^2] (state)
    double flow_coeff = 0.7;  // C_f
    double area_min = 0.0;
    double area_max = 1e-2;
};

/// Q = C_f A sqrt(2 dp / rho). Negative dp is a backflow error.
double orifice_flow(const FcdState& fcd, double dp, double rho);

/// Inverse of orifice_flow: drop needed to pass q through the current area.
/// Infinite when the orifice is closed and q > 0.
double orifice_pressure_drop(const FcdState& fcd, double q, double rho);

/// Static network parameters.
struct PtoConfig {
    Accumulator accumulator;
    double turbine_displacement = 3.52e-4;
    double turbine_efficiency = 0.95;
    double shaft_inertia = 2000.0;
    double flow_coeff = 0.7;
    double density = 1025.0;

    friend bool operator==(const PtoConfig&, const PtoConfig&) = default;
};

/// Hydraulic state vector.
struct PtoState {
    double liquid_volume = 0.0; // V_liq [m^3]
    double shaft_speed = 0.0;   // N [rev/s]
    double area_main = 0.0;     // main-loop FCD area [m^2]
    double area_kidney = 0.0;   // kidney-loop FCD area [m^2]
};

struct PtoPowers {
    double pistons = 0.0;  // delivered into the accumulator node
    double turbine = 0.0;  // hydraulic power into the turbine
    double kidney = 0.0;   // dissipated across the kidney FCD
    double main_fcd = 0.0; // dissipated across the main FCD
    double gas = 0.0;      // rate of work on the accumulator gas
    double shaft = 0.0;    // mechanical power out of the turbine
};

struct NetworkStep {
    PtoState state;             // state at the end of the step
    double p_accum = 0.0;       // pressures and flows during the step
    double dp_main_fcd = 0.0;
    double p_turbine_inlet = 0.0;
    double q_main = 0.0;
    double q_kidney = 0.0;
    double shaft_accel = 0.0;
    PtoPowers power;
};

/// Advances the hydraulic network one step. Pressure comes from the state,
/// then flows, then the state update (explicit). FCD areas are taken from
/// the state as set by the controllers.
NetworkStep pto_network_step(const PtoConfig& cfg, const PtoState& s, double q_pistons,
                             double tau_hp, double dt);

} // namespace wpbro::pto
