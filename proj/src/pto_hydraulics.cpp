#include "wpbro/pto_hydraulics.hpp"

#include "wpbro/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wpbro::pto {

namespace {
constexpr double kTwoPi = 6.283185307179586;
} // namespace

void SliderCrank::validate(double max_pitch) const {
    if (!(piston_area > 0.0))
        fail(ErrorKind::Config, "slider_crank: piston_area must be > 0");
    // |R2 sin(theta) - R5| peaks at one end of the reachable range.
    const double lo = std::abs(crank_length * std::sin(-max_pitch) - offset);
    const double hi = std::abs(crank_length * std::sin(max_pitch) - offset);
    double worst = std::max(lo, hi);
    if (max_pitch >= kTwoPi / 4.0)
        worst = std::max(worst, std::abs(crank_length) + std::abs(offset));
    if (!(rod_length * rod_length > worst * worst))
        fail(ErrorKind::Mechanism, "slider_crank: rod too short for the reachable pitch range");
}

namespace {

double root_term(const SliderCrank& sc, double theta) {
    const double y = sc.crank_length * std::sin(theta) - sc.offset;
    const double arg = sc.rod_length * sc.rod_length - y * y;
    if (!(arg > 0.0))
        fail(ErrorKind::Mechanism, "slider_crank: kinematic lockup");
    return std::sqrt(arg);
}

} // namespace

double piston_position(const SliderCrank& sc, double theta) {
    return sc.crank_length * std::cos(theta) + root_term(sc, theta);
}

double piston_stroke_rate(const SliderCrank& sc, double theta) {
    const double y = sc.crank_length * std::sin(theta) - sc.offset;
    return -sc.crank_length * std::sin(theta) -
           y * sc.crank_length * std::cos(theta) / root_term(sc, theta);
}

PistonFlows piston_flows(const SliderCrank& sc, double theta, double omega) {
    const double q = std::abs(sc.piston_area * piston_stroke_rate(sc, theta) * omega);
    return {q, q};
}

double piston_reaction_torque(const SliderCrank& sc, double theta, double omega,
                              double p_high) {
    if (omega == 0.0)
        return 0.0;
    const double lever = std::abs(sc.piston_area * piston_stroke_rate(sc, theta));
    return std::copysign(p_high * lever, omega);
}

void Accumulator::validate() const {
    if (!(total_gas_volume > 0.0))
        fail(ErrorKind::Config, "accumulator: total_gas_volume must be > 0");
    if (!(precharge > 0.0))
        fail(ErrorKind::Config, "accumulator: precharge must be > 0");
    if (!(rated_pressure >= precharge))
        fail(ErrorKind::Config, "accumulator: rated_pressure must be >= precharge");
    if (!(adiabatic_n > 0.0))
        fail(ErrorKind::Config, "accumulator: adiabatic_n must be > 0");
}

double accumulator_liquid_volume(const Accumulator& acc, double p) {
    if (p < acc.precharge)
        fail(ErrorKind::AccumulatorEmpty,
             "accumulator: pressure " + std::to_string(p) + " Pa below precharge");
    return acc.total_gas_volume * (1.0 - std::pow(acc.precharge / p, 1.0 / acc.adiabatic_n));
}

double accumulator_pressure(const Accumulator& acc, double v_liq) {
    if (v_liq >= acc.total_gas_volume)
        fail(ErrorKind::AccumulatorOverfill, "accumulator: liquid volume reached V0");
    if (v_liq < 0.0)
        fail(ErrorKind::AccumulatorEmpty, "accumulator: negative liquid volume");
    return acc.precharge *
           std::pow(acc.total_gas_volume / (acc.total_gas_volume - v_liq), acc.adiabatic_n);
}

double accumulator_gas_energy(const Accumulator& acc, double v_liq) {
    const double v0 = acc.total_gas_volume;
    const double ratio = v0 / (v0 - v_liq);
    const double n = acc.adiabatic_n;
    if (std::abs(n - 1.0) < 1e-12)
        return acc.precharge * v0 * std::log(ratio);
    return acc.precharge * v0 / (n - 1.0) * (std::pow(ratio, n - 1.0) - 1.0);
}

void ShaftAssembly::validate() const {
    if (speed < 0.0)
        fail(ErrorKind::Config, "shaft: speed must be >= 0");
    if (!(displacement > 0.0))
        fail(ErrorKind::Config, "shaft: displacement must be > 0");
    if (!(turbine_efficiency > 0.0 && turbine_efficiency <= 1.0))
        fail(ErrorKind::Config, "shaft: turbine_efficiency must be in (0, 1]");
    if (!(inertia > 0.0))
        fail(ErrorKind::Config, "shaft: inertia must be > 0");
}

double turbine_flow(const ShaftAssembly& sh) {
    if (sh.speed < 0.0)
        fail(ErrorKind::Domain, "turbine_flow: negative shaft speed");
    return sh.speed * sh.displacement;
}

double shaft_acceleration(const ShaftAssembly& sh, double dp_motor, double tau_hp) {
    const double tau_m = dp_motor * sh.displacement * sh.turbine_efficiency / kTwoPi;
    return (tau_m - tau_hp) / (kTwoPi * sh.inertia);
}

double balancing_motor_pressure(const ShaftAssembly& sh, double tau_hp) {
    return kTwoPi * tau_hp / (sh.displacement * sh.turbine_efficiency);
}

double orifice_flow(const FcdState& fcd, double dp, double rho) {
    if (dp < 0.0)
        fail(ErrorKind::Backflow, "orifice_flow: negative pressure drop");
    return fcd.flow_coeff * fcd.area * std::sqrt(2.0 * dp / rho);
}

double orifice_pressure_drop(const FcdState& fcd, double q, double rho) {
    if (q <= 0.0)
        return 0.0;
    if (fcd.area <= 0.0)
        return std::numeric_limits<double>::infinity();
    const double v = q / (fcd.flow_coeff * fcd.area);
    return 0.5 * rho * v * v;
}

NetworkStep pto_network_step(const PtoConfig& cfg, const PtoState& s, double q_pistons,
                             double tau_hp, double dt) {
    if (!(dt > 0.0))
        fail(ErrorKind::Domain, "pto_network_step: dt must be > 0");

    NetworkStep out;
    out.p_accum = accumulator_pressure(cfg.accumulator, s.liquid_volume);

    const ShaftAssembly shaft{s.shaft_speed, cfg.turbine_displacement, cfg.turbine_efficiency,
                              cfg.shaft_inertia};
    out.q_main = turbine_flow(shaft);
    const FcdState main_fcd{s.area_main, cfg.flow_coeff};
    out.dp_main_fcd = orifice_pressure_drop(main_fcd, out.q_main, cfg.density);
    out.p_turbine_inlet = out.p_accum - out.dp_main_fcd;
    if (out.q_main > 0.0 && !(out.p_turbine_inlet > 0.0))
        fail(ErrorKind::Overload, "pto: turbine-inlet pressure <= 0");

    const FcdState kidney_fcd{s.area_kidney, cfg.flow_coeff};
    out.q_kidney = orifice_flow(kidney_fcd, out.p_accum, cfg.density);
    if (out.q_kidney < 0.0)
        fail(ErrorKind::InfeasibleSeaState, "pto: kidney-loop flow < 0");

    const double dv = (q_pistons - out.q_main - out.q_kidney) * dt;
    out.state = s;
    out.state.liquid_volume = s.liquid_volume + dv;
    if (out.state.liquid_volume < 0.0)
        fail(ErrorKind::InfeasibleSeaState,
             "pto: accumulator emptied (main-loop demand exceeds supply)");
    if (out.state.liquid_volume >= cfg.accumulator.total_gas_volume)
        fail(ErrorKind::AccumulatorOverfill, "pto: accumulator overfilled");

    const double dp_motor = out.q_main > 0.0 ? out.p_turbine_inlet : out.p_accum;
    out.shaft_accel = shaft_acceleration(shaft, dp_motor, tau_hp);
    out.state.shaft_speed = std::max(0.0, s.shaft_speed + dt * out.shaft_accel);

    out.power.pistons = q_pistons * out.p_accum;
    out.power.turbine = out.q_main * out.p_turbine_inlet;
    out.power.kidney = out.q_kidney * out.p_accum;
    out.power.main_fcd = out.q_main * out.dp_main_fcd;
    out.power.gas = out.p_accum * dv / dt;
    out.power.shaft = out.power.turbine * cfg.turbine_efficiency;
    return out;
}

} // namespace wpbro::pto
