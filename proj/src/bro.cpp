#include "wpbro/bro.hpp"

#include "wpbro/error.hpp"

#include <cmath>

namespace wpbro::bro {

namespace {
constexpr double kTwoPi = 6.283185307179586;
} // namespace

void MembraneConfig::validate() const {
    const bool positive = permeability > 0 && area_per_module > 0 && module_length > 0 &&
                          spacer_thickness > 0 && vant_hoff > 0 && molar_mass > 0 &&
                          gas_const > 0 && temperature > 0 && diffusivity > 0 &&
                          kinematic_viscosity > 0 && density > 0 && friction_k >= 0 &&
                          sherwood_a > 0;
    if (!positive)
        fail(ErrorKind::Config, "membrane: physical parameters must be positive");
    if (modules_series < 1 || modules_parallel < 1)
        fail(ErrorKind::Config, "membrane: module counts must be >= 1");
    if (!(osmotic_coeff > 0.0 && osmotic_coeff <= 1.0))
        fail(ErrorKind::Config, "membrane: osmotic_coeff must be in (0, 1]");
}

void BroPumpConfig::validate() const {
    if (!(displacement > 0.0))
        fail(ErrorKind::Config, "pump: displacement must be > 0");
    if (!(hp_efficiency > 0.0 && hp_efficiency <= 1.0) ||
        !(circ_efficiency > 0.0 && circ_efficiency <= 1.0))
        fail(ErrorKind::Config, "pump: efficiencies must be in (0, 1]");
    if (!(recovery_per_pass > 0.0 && recovery_per_pass < 1.0))
        fail(ErrorKind::Config, "pump: recovery_per_pass must be in (0, 1)");
    if (!(total_recovery > 0.0 && total_recovery < 1.0))
        fail(ErrorKind::Config, "pump: total_recovery must be in (0, 1)");
    if (!(tank_volume > 0.0))
        fail(ErrorKind::Config, "pump: tank_volume must be > 0");
    if (!(feed_salinity >= 0.0))
        fail(ErrorKind::Config, "pump: feed_salinity must be >= 0");
}

BatchState initial_batch(const BroConfig& cfg) {
    BatchState s;
    s.active_volume = cfg.pump.tank_volume;
    s.bulk_salinity = cfg.pump.feed_salinity;
    return s;
}

double hp_pump_flow(double n, const BroPumpConfig& cfg) {
    if (n < 0.0)
        fail(ErrorKind::Domain, "hp_pump_flow: negative shaft speed");
    return n * cfg.displacement;
}

double permeate_flux(double q_p, const MembraneConfig& cfg) {
    if (q_p < 0.0)
        fail(ErrorKind::Domain, "permeate_flux: negative permeate flow");
    return q_p / cfg.total_area();
}

double crossflow_velocity(double q_p, double rr_inst, const MembraneConfig& cfg) {
    const double q_feed = q_p / rr_inst;
    return q_feed / (cfg.modules_parallel * cfg.channel_cross_section());
}

double reynolds_number(double u_avg, const MembraneConfig& cfg) {
    return u_avg * cfg.hydraulic_diameter() / cfg.kinematic_viscosity;
}

double mass_transfer_coeff(double u_avg, const MembraneConfig& cfg) {
    if (!(u_avg > 0.0))
        fail(ErrorKind::Domain, "mass_transfer_coeff: u_avg must be > 0");
    const double re = reynolds_number(u_avg, cfg);
    const double sc = cfg.kinematic_viscosity / cfg.diffusivity;
    const double sh =
        cfg.sherwood_a * std::pow(re, cfg.sherwood_b) * std::pow(sc, cfg.sherwood_c);
    return sh * cfg.diffusivity / cfg.hydraulic_diameter();
}

double osmotic_pressure(double c_mem, double j_w, double k, const MembraneConfig& cfg) {
    if (c_mem < 0.0 || !(k > 0.0))
        fail(ErrorKind::Domain, "osmotic_pressure: need c_mem >= 0 and k > 0");
    const double c_molar = c_mem * cfg.density / cfg.molar_mass; // mol/m^3
    return cfg.vant_hoff * cfg.osmotic_coeff * cfg.gas_const * cfg.temperature * c_molar *
           std::exp(j_w / k);
}

double half_channel_drop(double u_avg, const MembraneConfig& cfg) {
    if (u_avg <= 0.0)
        return 0.0;
    const double f = cfg.friction_k * std::pow(reynolds_number(u_avg, cfg), -cfg.friction_n);
    return f * cfg.density * u_avg * u_avg / (4.0 * cfg.hydraulic_diameter()) *
           cfg.module_length * cfg.modules_series;
}

double feed_pressure(double j_w, double pi, double u_avg, const MembraneConfig& cfg) {
    if (j_w < 0.0)
        fail(ErrorKind::Domain, "feed_pressure: negative flux");
    return j_w / cfg.permeability + pi + half_channel_drop(u_avg, cfg);
}

double hp_pump_torque(double p_f, const BroPumpConfig& cfg) {
    if (p_f < 0.0)
        fail(ErrorKind::Domain, "hp_pump_torque: negative feed pressure");
    return cfg.displacement * p_f / (kTwoPi * cfg.hp_efficiency);
}

BranchConcentration membrane_bulk_concentration(double c_in, double rr_inst) {
    if (!(rr_inst > 0.0 && rr_inst < 1.0))
        fail(ErrorKind::Domain, "membrane_bulk_concentration: rr_inst must be in (0, 1)");
    const double c_out = c_in / (1.0 - rr_inst);
    return {c_out, 0.5 * (c_in + c_out)};
}

double circulation_pump_power(double q_p, double rr_inst, double u_avg, const BroConfig& cfg) {
    if (q_p <= 0.0)
        return 0.0;
    const double q_feed = q_p / rr_inst;
    const double dp_loop = 2.0 * half_channel_drop(u_avg, cfg.membrane);
    return q_feed * dp_loop / cfg.pump.circ_efficiency;
}

OperatingPoint operating_point(double shaft_speed, double bulk_salinity, const BroConfig& cfg) {
    const MembraneConfig& m = cfg.membrane;
    const double rr = cfg.pump.recovery_per_pass;

    OperatingPoint op;
    op.q_p = hp_pump_flow(shaft_speed, cfg.pump);
    op.flux = permeate_flux(op.q_p, m);
    op.u_avg = crossflow_velocity(op.q_p, rr, m);
    op.c_membrane = membrane_bulk_concentration(bulk_salinity, rr).membrane_avg;
    if (op.q_p > 0.0) {
        op.mass_transfer = mass_transfer_coeff(op.u_avg, m);
        op.osmotic = osmotic_pressure(op.c_membrane, op.flux, op.mass_transfer, m);
    } else {
        // No flux, no polarisation.
        op.osmotic = osmotic_pressure(op.c_membrane, 0.0, 1.0, m);
    }
    op.feed_pressure = feed_pressure(op.flux, op.osmotic, op.u_avg, m);
    op.pump_torque = hp_pump_torque(op.feed_pressure, cfg.pump);
    op.pump_power = op.feed_pressure * op.q_p / cfg.pump.hp_efficiency;
    op.circ_power = circulation_pump_power(op.q_p, rr, op.u_avg, cfg);
    return op;
}

BatchState batch_step(const BatchState& s, double q_p, double dt, const BroConfig&) {
    if (!(dt > 0.0))
        fail(ErrorKind::Domain, "batch_step: dt must be > 0");
    if (s.phase != BatchPhase::Pressurize)
        fail(ErrorKind::CycleAccounting, "batch_step: tank is not pressurising");
    const double dv = q_p * dt;
    if (dv == 0.0)
        return s;
    const double v_new = s.active_volume - dv;
    if (!(v_new > 0.0))
        fail(ErrorKind::CycleAccounting, "batch_step: active volume underflow before reset");

    BatchState out = s;
    out.bulk_salinity = s.bulk_salinity * s.active_volume / v_new;
    out.active_volume = v_new;
    out.cumulative_permeate += dv;
    out.cycle_permeate += dv;
    return out;
}

double permeate_to_reset(const BatchState& s, const BroConfig& cfg) {
    return cfg.pump.total_recovery * cfg.pump.tank_volume - s.cycle_permeate;
}

BatchState cycle_reset(const BatchState& s, const BroConfig& cfg) {
    BatchState out = s;
    out.active_volume = cfg.pump.tank_volume;
    out.bulk_salinity = cfg.pump.feed_salinity;
    out.cycle_permeate = 0.0;
    out.cycle_index = s.cycle_index + 1;
    out.phase = BatchPhase::Pressurize;
    return out;
}

} // namespace wpbro::bro
