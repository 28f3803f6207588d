#include "wpbro/oswec.hpp"

#include "wpbro/error.hpp"

#include <cmath>

namespace wpbro::oswec {

void WecConfig::validate() const {
    if (!(total_inertia() > 0.0))
        fail(ErrorKind::Config, "wec: pitch_inertia + added_inertia must be > 0");
    if (radiation_damping < 0.0)
        fail(ErrorKind::Config, "wec: radiation_damping must be >= 0");
    if (!(hydrostatic_stiffness > 0.0))
        fail(ErrorKind::Config, "wec: hydrostatic_stiffness must be > 0");
    if (excitation_gain < 0.0)
        fail(ErrorKind::Config, "wec: excitation_gain must be >= 0");
    if (!(max_pitch > 0.0))
        fail(ErrorKind::Config, "wec: max_pitch must be > 0");
}

double excitation_torque(const WecConfig& cfg, double eta) { return cfg.excitation_gain * eta; }

double flap_acceleration(const WecConfig& cfg, const FlapState& s, double tau_pto, double eta) {
    const double tau = excitation_torque(cfg, eta) - cfg.radiation_damping * s.omega -
                       cfg.hydrostatic_stiffness * s.theta - tau_pto;
    return tau / cfg.total_inertia();
}

namespace {

struct Deriv {
    double dtheta;
    double domega;
};

Deriv rhs(const WecConfig& cfg, double t, const FlapState& s, const ForcingFn& forcing) {
    const FlapForcing f = forcing(t, s);
    return {s.omega, flap_acceleration(cfg, s, f.tau_pto, f.eta)};
}

FlapState advance(const FlapState& s, const Deriv& d, double h) {
    return {s.theta + h * d.dtheta, s.omega + h * d.domega};
}

} // namespace

FlapState step_flap(const WecConfig& cfg, const FlapState& s, double t, double dt,
                    const ForcingFn& forcing) {
    if (!(dt > 0.0))
        fail(ErrorKind::Domain, "step_flap: dt must be > 0");

    const Deriv k1 = rhs(cfg, t, s, forcing);
    const Deriv k2 = rhs(cfg, t + 0.5 * dt, advance(s, k1, 0.5 * dt), forcing);
    const Deriv k3 = rhs(cfg, t + 0.5 * dt, advance(s, k2, 0.5 * dt), forcing);
    const Deriv k4 = rhs(cfg, t + dt, advance(s, k3, dt), forcing);

    FlapState out{
        s.theta + dt / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta),
        s.omega + dt / 6.0 * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega),
    };
    if (!std::isfinite(out.theta) || !std::isfinite(out.omega))
        fail(ErrorKind::IntegrationDiverged, "step_flap: non-finite flap state");

    if (out.theta >= cfg.max_pitch) {
        out.theta = cfg.max_pitch;
        out.omega = 0.0;
    } else if (out.theta <= -cfg.max_pitch) {
        out.theta = -cfg.max_pitch;
        out.omega = 0.0;
    }
    return out;
}

FlapState step_flap(const WecConfig& cfg, const FlapState& s, double tau_pto, double eta,
                    double dt) {
    const FlapForcing f{eta, tau_pto};
    return step_flap(cfg, s, 0.0, dt, [f](double, const FlapState&) { return f; });
}

double mechanical_energy(const WecConfig& cfg, const FlapState& s) {
    return 0.5 * cfg.total_inertia() * s.omega * s.omega +
           0.5 * cfg.hydrostatic_stiffness * s.theta * s.theta;
}

} // namespace wpbro::oswec
