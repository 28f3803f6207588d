#pragma once

// Batch reverse osmosis: the high-pressure pump side of the hydraulic
// converter, membrane transport with concentration polarisation, and the
// piston-tank water/salt balance with instantaneous cycle reset.

namespace wpbro::bro {

struct MembraneConfig {
    double permeability = 5.56e-12;     // A_w [m/(s Pa)]
    double area_per_module = 7.4;       // A_mem [m^2]
    double module_length = 0.96;        // L_mem [m]
    double spacer_thickness = 7.112e-4; // delta [m]; D_h = 2 delta
    int modules_series = 1;
    int modules_parallel = 450;
    double osmotic_coeff = 0.93;        // Phi
    double vant_hoff = 2.0;             // i
    double molar_mass = 58.55;          // [kg/kmol]
    double gas_const = 8.314;           // [J/(mol K)]
    double temperature = 300.0;         // [K]
    double diffusivity = 1.47e-9;       // [m^2/s]
    double kinematic_viscosity = 8.56e-7; // [m^2/s]
    double density = 1025.0;            // [kg/m^3]
    double friction_k = 6.23;           // f = K_f Re^-n_f
    double friction_n = 0.3;
    double sherwood_a = 0.065;          // Sh = a Re^b Sc^c
    double sherwood_b = 0.875;
    double sherwood_c = 0.25;

    double hydraulic_diameter() const { return 2.0 * spacer_thickness; }
    double total_area() const { return area_per_module * modules_series * modules_parallel; }
    /// Feed-channel cross-section of one module: spacer gap times leaf width.
    double channel_cross_section() const {
        return spacer_thickness * area_per_module / module_length;
    }

    void validate() const;

    friend bool operator==(const MembraneConfig&, const MembraneConfig&) = default;
};

struct BroPumpConfig {
    double displacement = 5.55e-4;  // V_d,pump [m^3/rev]
    double hp_efficiency = 0.85;
    double circ_efficiency = 0.65;
    double recovery_per_pass = 0.1; // RR_inst
    double total_recovery = 0.5;    // RR_tot
    double tank_volume = 1.18;      // V_tank [m^3]
    double feed_salinity = 35.0;    // [g/kg]

    void validate() const;

    friend bool operator==(const BroPumpConfig&, const BroPumpConfig&) = default;
};

struct BroConfig {
    MembraneConfig membrane;
    BroPumpConfig pump;

    void validate() const {
        membrane.validate();
        pump.validate();
    }

    friend bool operator==(const BroConfig&, const BroConfig&) = default;
};

enum class BatchPhase { Pressurize, Reset };

struct BatchState {
    double active_volume = 0.0;       // [m^3]
    double bulk_salinity = 0.0;       // C [g/kg]
    double cumulative_permeate = 0.0; // whole run [m^3]
    double cycle_permeate = 0.0;      // current cycle [m^3]
    int cycle_index = 0;
    BatchPhase phase = BatchPhase::Pressurize;
};

/// Fresh tank at feed salinity.
BatchState initial_batch(const BroConfig& cfg);

double hp_pump_flow(double n, const BroPumpConfig& cfg);
double permeate_flux(double q_p, const MembraneConfig& cfg);

/// Mean crossflow velocity in one leaf for feed flow q_p / RR_inst.
double crossflow_velocity(double q_p, double rr_inst, const MembraneConfig& cfg);
double reynolds_number(double u_avg, const MembraneConfig& cfg);
double mass_transfer_coeff(double u_avg, const MembraneConfig& cfg);

/// pi = i Phi R T (c rho / M) exp(J_w / k)   [Pa]
double osmotic_pressure(double c_mem, double j_w, double k, const MembraneConfig& cfg);

/// Half of the series friction drop: f rho u^2 / (4 D_h) L m_ser.
double half_channel_drop(double u_avg, const MembraneConfig& cfg);

/// p_f = J_w / A_w + pi + half_channel_drop
double feed_pressure(double j_w, double pi, double u_avg, const MembraneConfig& cfg);

/// tau_hp = V_d p_f / (2 pi eta_hp)
double hp_pump_torque(double p_f, const BroPumpConfig& cfg);

struct BranchConcentration {
    double outlet = 0.0;
    double membrane_avg = 0.0;
};

/// Salt balance over one pass with perfect rejection.
BranchConcentration membrane_bulk_concentration(double c_in, double rr_inst);

double circulation_pump_power(double q_p, double rr_inst, double u_avg, const BroConfig& cfg);

/// Everything the membrane side presents to the shaft at one instant.
struct OperatingPoint {
    double q_p = 0.0;
    double flux = 0.0;
    double u_avg = 0.0;
    double mass_transfer = 0.0;
    double c_membrane = 0.0;
    double osmotic = 0.0;
    double feed_pressure = 0.0;
    double pump_torque = 0.0;
    double pump_power = 0.0; // shaft power into the HP pump, p_f q_p / eta_hp
    double circ_power = 0.0;
};

OperatingPoint operating_point(double shaft_speed, double bulk_salinity, const BroConfig& cfg);

/// Water/salt balance for one pressurisation step (perfect rejection).
BatchState batch_step(const BatchState& s, double q_p, double dt, const BroConfig& cfg);

/// Permeate still to be produced before the cycle reaches RR_tot [m^3].
double permeate_to_reset(const BatchState& s, const BroConfig& cfg);

/// Zero-duration flush and refill.
BatchState cycle_reset(const BatchState& s, const BroConfig& cfg);

} // namespace wpbro::bro
