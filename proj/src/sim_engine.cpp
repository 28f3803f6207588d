#include "wpbro/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace wpbro::sim {

const char* to_string(FcdMode mode) noexcept {
    return mode == FcdMode::Valve ? "valve" : "generator";
}

double CalibratedSource::flow(double eta, double hs) const {
    return std::max(0.0, mean_flow * (1.0 + modulation_depth * eta / (0.5 * hs)));
}

namespace {

long steps_per_sample(const control::PdConfig& c, double dt) {
    const double ratio = c.sample_period / dt;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-6)
        fail(ErrorKind::Config, "controller sample_period must be a whole multiple of dt");
    return n;
}

} // namespace

void Scenario::validate() const {
    // Component checks report Domain; in a scenario they are config errors.
    try {
        sea.validate();
        wec.validate();
        slider_crank.validate(wec.max_pitch);
        pto.accumulator.validate();
        pto::ShaftAssembly{main_loop.setpoint, pto.turbine_displacement,
                           pto.turbine_efficiency, pto.shaft_inertia}
            .validate();
        main_loop.validate();
        kidney_loop.validate();
        bro.validate();
        econ.validate();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Domain)
            throw;
        fail(ErrorKind::Config, e.what());
    }
    if (!(dt > 0.0))
        fail(ErrorKind::Config, "run: dt must be > 0");
    if (!(duration > warmup) || warmup < 0.0)
        fail(ErrorKind::Config, "run: need 0 <= warmup < duration");
    if (!(generator_efficiency >= 0.0 && generator_efficiency <= 1.0))
        fail(ErrorKind::Config, "run: generator_efficiency must be in [0, 1]");
    if (source.mean_flow < 0.0 || source.modulation_depth < 0.0)
        fail(ErrorKind::Config, "source: mean_flow and modulation_depth must be >= 0");
    if (log_every < 1)
        fail(ErrorKind::Config, "run: log_every must be >= 1");
    if (!(pto.flow_coeff > 0.0) || !(pto.density > 0.0))
        fail(ErrorKind::Config, "fcd: flow_coeff and density must be > 0");
    steps_per_sample(main_loop, dt);
    steps_per_sample(kidney_loop, dt);
}

std::vector<FeasibilityFlag> check_feasibility(const StateSnapshot& s) {
    std::vector<FeasibilityFlag> flags;
    if (s.q_kidney < 0.0)
        flags.push_back({ErrorKind::InfeasibleSeaState, "kidney-loop flow < 0"});
    if (s.q_main > 0.0 && !(s.p_turbine_inlet > 0.0))
        flags.push_back({ErrorKind::Overload, "turbine-inlet pressure <= 0"});
    if (s.area_main_max > 0.0 && s.area_main >= s.area_main_max)
        flags.push_back({ErrorKind::Overload, "main FCD saturated fully open"});
    return flags;
}

const std::vector<std::string>& time_series_columns() {
    static const std::vector<std::string> cols = {
        "t",        "eta",      "theta",  "omega",      "p_accum", "V_liq",  "N_shaft",
        "A_main",   "A_kidney", "Q_main", "Q_kidney",   "p_f",     "pi",     "C_bulk",
        "Q_p",      "P_wec",    "P_turbine", "P_kidney", "P_main_fcd", "P_cp", "P_hp"};
    return cols;
}

namespace {

struct Accumulators {
    double p_wec = 0, p_cp = 0, p_kidney = 0, p_main_fcd = 0, p_turbine = 0, q_p = 0;
    double audit_net = 0; // integral of pistons - turbine - kidney - main FCD [J]
    double input = 0;     // integral of piston power [J]
    double time = 0;
    double speed_sum = 0, p_sum = 0;
    long samples = 0;
};

// Advances the batch by q_p over dt, resetting (zero duration) each time
// the cycle reaches its total recovery. Returns resets performed.
int advance_batch(bro::BatchState& b, double q_p, double dt, const bro::BroConfig& cfg) {
    int resets = 0;
    double left = dt;
    while (left > 0.0 && q_p > 0.0) {
        const double need = bro::permeate_to_reset(b, cfg);
        const double can = q_p * left;
        if (can < need) {
            b = bro::batch_step(b, q_p, left, cfg);
            break;
        }
        const double part = need / q_p;
        if (part > 0.0)
            b = bro::batch_step(b, q_p, part, cfg);
        b = bro::cycle_reset(b, cfg);
        ++resets;
        left -= part;
    }
    return resets;
}

} // namespace

RunResult run(const Scenario& sc, const RunOptions& opts) {
    sc.validate();

    const wave::WaveField waves(sc.sea);
    const long n_steps = std::lround(sc.duration / sc.dt);
    const long warm_steps = std::lround(sc.warmup / sc.dt);
    const long main_every = steps_per_sample(sc.main_loop, sc.dt);
    const long kidney_every = steps_per_sample(sc.kidney_loop, sc.dt);
    const double hs = sc.sea.significant_height;
    const double rho = sc.pto.density;

    // Pre-charged initial conditions: rated accumulator, reference speed,
    // valve areas at the steady operating point of a fresh batch.
    bro::BatchState batch = bro::initial_batch(sc.bro);
    pto::PtoState ps;
    ps.liquid_volume =
        pto::accumulator_liquid_volume(sc.pto.accumulator, sc.pto.accumulator.rated_pressure);
    ps.shaft_speed = sc.main_loop.setpoint;
    {
        const double p0 = sc.pto.accumulator.rated_pressure;
        const bro::OperatingPoint op = bro::operating_point(ps.shaft_speed, batch.bulk_salinity, sc.bro);
        const pto::ShaftAssembly shaft{ps.shaft_speed, sc.pto.turbine_displacement,
                                       sc.pto.turbine_efficiency, sc.pto.shaft_inertia};
        const double q_main = pto::turbine_flow(shaft);
        const double dp_fcd = p0 - pto::balancing_motor_pressure(shaft, op.pump_torque);
        ps.area_main = dp_fcd > 0.0
                           ? q_main / (sc.pto.flow_coeff * std::sqrt(2.0 * dp_fcd / rho))
                           : sc.main_loop.area_max;
        double q_kidney = 0.0;
        if (sc.wec_mode == WecMode::CalibratedSource)
            q_kidney = std::max(0.0, sc.source.mean_flow - q_main);
        ps.area_kidney = q_kidney / (sc.pto.flow_coeff * std::sqrt(2.0 * p0 / rho));
    }
    control::PdController main_ctl(sc.main_loop, ps.area_main);
    control::PdController kidney_ctl(sc.kidney_loop, ps.area_kidney);
    ps.area_main = main_ctl.area();
    ps.area_kidney = kidney_ctl.area();

    oswec::FlapState flap;

    RunResult result;
    SimSummary& sum = result.summary;
    Diagnostics& diag = sum.diagnostics;
    diag.shaft_speed_min = diag.p_accum_min = diag.main_fcd_power_min = diag.q_kidney_min =
        std::numeric_limits<double>::infinity();
    diag.shaft_speed_max = diag.p_accum_max = -std::numeric_limits<double>::infinity();

    Accumulators acc;
    double gas_energy_start = 0.0;
    if (opts.record_series)
        result.series.reserve(static_cast<std::size_t>(n_steps / sc.log_every + 2));

    for (long k = 0; k < n_steps; ++k) {
        const double t = k * sc.dt;
        const bool in_window = k >= warm_steps;
        if (k == warm_steps)
            gas_energy_start = pto::accumulator_gas_energy(sc.pto.accumulator, ps.liquid_volume);

        const double eta = waves.elevation(t);
        const double q_in = sc.wec_mode == WecMode::CalibratedSource
                                ? sc.source.flow(eta, hs)
                                : pto::piston_flows(sc.slider_crank, flap.theta, flap.omega)
                                      .to_high_side;

        const bro::OperatingPoint op =
            bro::operating_point(ps.shaft_speed, batch.bulk_salinity, sc.bro);

        pto::NetworkStep net;
        try {
            net = pto::pto_network_step(sc.pto, ps, q_in, op.pump_torque, sc.dt);
        } catch (const Error& e) {
            StateSnapshot snap{t,  0.0, ps.liquid_volume, ps.shaft_speed, ps.area_main,
                               ps.area_kidney, 0.0, 0.0, 0.0, op.feed_pressure,
                               batch.bulk_salinity, sc.main_loop.area_max};
            throw SimulationError(e.kind(),
                                  std::string(e.what()) + " at t=" + std::to_string(t) + " s",
                                  snap);
        }

        const StateSnapshot snap{t,
                                 net.p_accum,
                                 ps.liquid_volume,
                                 ps.shaft_speed,
                                 ps.area_main,
                                 ps.area_kidney,
                                 net.q_main,
                                 net.q_kidney,
                                 net.p_turbine_inlet,
                                 op.feed_pressure,
                                 batch.bulk_salinity,
                                 sc.main_loop.area_max};
        if (const auto flags = check_feasibility(snap); !flags.empty())
            throw SimulationError(flags.front().kind,
                                  flags.front().message + " at t=" + std::to_string(t) + " s",
                                  snap);

        if (opts.record_series && k % sc.log_every == 0) {
            result.series.push_back({t, eta, flap.theta, flap.omega, net.p_accum,
                                     ps.liquid_volume, ps.shaft_speed, ps.area_main,
                                     ps.area_kidney, net.q_main, net.q_kidney, op.feed_pressure,
                                     op.osmotic, batch.bulk_salinity, op.q_p, net.power.pistons,
                                     net.power.turbine, net.power.kidney, net.power.main_fcd,
                                     op.circ_power, op.pump_power});
        }

        if (sc.wec_mode == WecMode::Physics) {
            const double p_line = net.p_accum;
            flap = oswec::step_flap(
                sc.wec, flap, t, sc.dt,
                [&](double tt, const oswec::FlapState& s) {
                    return oswec::FlapForcing{
                        waves.elevation(tt),
                        pto::piston_reaction_torque(sc.slider_crank, s.theta, s.omega, p_line)};
                });
        }

        const int resets = advance_batch(batch, op.q_p, sc.dt, sc.bro);

        ps = net.state;
        if ((k + 1) % main_every == 0)
            ps.area_main = main_ctl.update(ps.shaft_speed);
        if ((k + 1) % kidney_every == 0)
            ps.area_kidney = kidney_ctl.update(
                pto::accumulator_pressure(sc.pto.accumulator, ps.liquid_volume));

        if (in_window) {
            const double dt = sc.dt;
            acc.p_wec += net.power.pistons * dt;
            acc.p_cp += op.circ_power * dt;
            acc.p_kidney += net.power.kidney * dt;
            acc.p_main_fcd += net.power.main_fcd * dt;
            acc.p_turbine += net.power.turbine * dt;
            acc.q_p += op.q_p * dt;
            acc.audit_net +=
                (net.power.pistons - net.power.turbine - net.power.kidney - net.power.main_fcd) *
                dt;
            acc.input += net.power.pistons * dt;
            acc.time += dt;
            acc.speed_sum += snap.shaft_speed;
            acc.p_sum += snap.p_accum;
            ++acc.samples;
            sum.cycles_completed += resets;

            diag.shaft_speed_min = std::min(diag.shaft_speed_min, snap.shaft_speed);
            diag.shaft_speed_max = std::max(diag.shaft_speed_max, snap.shaft_speed);
            diag.p_accum_min = std::min(diag.p_accum_min, snap.p_accum);
            diag.p_accum_max = std::max(diag.p_accum_max, snap.p_accum);
            diag.main_fcd_power_min = std::min(diag.main_fcd_power_min, net.power.main_fcd);
            diag.q_kidney_min = std::min(diag.q_kidney_min, net.q_kidney);
        }
    }

    const double gas_energy_end = pto::accumulator_gas_energy(sc.pto.accumulator, ps.liquid_volume);

    econ::EnergyLedger& ledger = sum.ledger;
    ledger.t_begin = warm_steps * sc.dt;
    ledger.t_end = n_steps * sc.dt;
    ledger.avg_p_wec = acc.p_wec / acc.time;
    ledger.avg_p_cp = acc.p_cp / acc.time;
    ledger.avg_p_kidney = acc.p_kidney / acc.time;
    ledger.avg_p_main_fcd = acc.p_main_fcd / acc.time;
    ledger.avg_p_turbine = acc.p_turbine / acc.time;
    ledger.avg_q_permeate = acc.q_p / acc.time;
    diag.shaft_speed_mean = acc.speed_sum / acc.samples;
    diag.p_accum_mean = acc.p_sum / acc.samples;

    const double audit_residual = acc.audit_net - (gas_energy_end - gas_energy_start);
    sum.energy_audit_residual = acc.input > 0.0 ? std::abs(audit_residual) / acc.input : 0.0;

    sum.sec = econ::sec(ledger);
    sum.sec_with_gen = econ::sec_with_recovery(ledger, sc.generator_efficiency);
    diag.sec_least = econ::sec_least(
        econ::least_work(sc.bro.pump.feed_salinity, sc.bro.pump.total_recovery,
                         sc.least_work_temperature, sc.gibbs),
        sc.permeate_density);
    const double sec_active = sc.fcd_mode == FcdMode::Valve ? sum.sec : sum.sec_with_gen;
    sum.eta_II = econ::second_law_efficiency(diag.sec_least, sec_active);
    sum.permeate_per_day = ledger.avg_q_permeate * 86400.0;
    sum.lcow = econ::evaluate_economics(sc.econ, sum.permeate_per_day).lcow;

    if (sum.cycles_completed < 3)
        sum.feasibility_flags.push_back("fewer than 3 BRO cycles after warm-up");
    if (sum.energy_audit_residual >= 0.005)
        sum.feasibility_flags.push_back("energy audit residual >= 0.5%");
    if (acc.input > 0.0 && std::abs(gas_energy_end - gas_energy_start) >= 0.01 * acc.input)
        sum.feasibility_flags.push_back(
            "accumulator stored energy changed by >= 1% of WEC input (not stationary)");
    return result;
}

BroOnlyResult run_bro_only(const bro::BroConfig& cfg, double shaft_speed, double duration,
                           double dt) {
    cfg.validate();
    if (!(dt > 0.0) || !(duration > 0.0))
        fail(ErrorKind::Domain, "run_bro_only: dt and duration must be > 0");
    bro::BatchState b = bro::initial_batch(cfg);
    BroOnlyResult r;
    double energy = 0.0, volume = 0.0, pf_sum = 0.0;
    const long n = std::lround(duration / dt);
    for (long k = 0; k < n; ++k) {
        const bro::OperatingPoint op = bro::operating_point(shaft_speed, b.bulk_salinity, cfg);
        energy += (op.pump_power + op.circ_power) * dt;
        volume += op.q_p * dt;
        pf_sum += op.feed_pressure;
        r.max_feed_pressure = std::max(r.max_feed_pressure, op.feed_pressure);
        r.cycles_completed += advance_batch(b, op.q_p, dt, cfg);
    }
    if (!(volume > 0.0))
        fail(ErrorKind::UndefinedSec, "run_bro_only: no permeate");
    r.sec = energy / volume / econ::kJoulesPerKwh;
    r.avg_q_permeate = volume / (n * dt);
    r.avg_feed_pressure = pf_sum / n;
    return r;
}

Scenario apply_case(const Scenario& base, const SeaStateCase& c) {
    Scenario sc = base;
    sc.sea = c.sea;
    if (c.mean_flow)
        sc.source.mean_flow = *c.mean_flow;
    if (c.modules)
        sc.bro.membrane.modules_parallel = *c.modules;
    if (c.turbine_displacement)
        sc.pto.turbine_displacement = *c.turbine_displacement;
    if (c.pump_displacement)
        sc.bro.pump.displacement = *c.pump_displacement;
    if (c.tank_volume)
        sc.bro.pump.tank_volume = *c.tank_volume;
    return sc;
}

Scenario with_modules(const Scenario& base, int modules) {
    if (modules < 1)
        fail(ErrorKind::Domain, "with_modules: module count must be >= 1");
    Scenario sc = base;
    const double scale =
        static_cast<double>(modules) / static_cast<double>(base.bro.membrane.modules_parallel);
    sc.bro.membrane.modules_parallel = modules;
    sc.bro.pump.displacement = base.bro.pump.displacement * scale;
    sc.bro.pump.tank_volume = base.bro.pump.tank_volume * scale;
    return sc;
}

std::vector<SweepRow> sweep(const Scenario& base, const SweepAxes& axes, unsigned threads) {
    std::vector<SeaStateCase> seas = axes.sea_states;
    if (seas.empty())
        seas.push_back({"base", base.sea, {}, {}, {}, {}, {}});
    std::vector<FcdMode> modes = axes.fcd_modes;
    if (modes.empty())
        modes.push_back(base.fcd_mode);

    struct Job {
        std::string name;
        Scenario sc;
    };
    std::vector<Job> jobs;
    for (const auto& c : seas) {
        const Scenario sea_sc = apply_case(base, c);
        if (axes.modules.empty()) {
            jobs.push_back({c.name, sea_sc});
        } else {
            for (int m : axes.modules)
                jobs.push_back({c.name, with_modules(sea_sc, m)});
        }
    }

    // The FCD mode only changes reporting, so each grid point is simulated
    // once and expanded into one row per mode.
    std::vector<std::vector<SweepRow>> out(jobs.size());
    auto work = [&](std::size_t i) {
        const Job& job = jobs[i];
        for (FcdMode mode : modes) {
            SweepRow row;
            row.sea_name = job.name;
            row.hs = job.sc.sea.significant_height;
            row.tp = job.sc.sea.peak_period;
            row.modules = job.sc.bro.membrane.modules_parallel;
            row.fcd_mode = mode;
            out[i].push_back(row);
        }
        Scenario sc = job.sc;
        sc.fcd_mode = modes.front();
        try {
            const SimSummary s = run(sc).summary;
            for (SweepRow& row : out[i]) {
                row.feasible = true;
                row.summary = s;
                const double active = row.fcd_mode == FcdMode::Valve ? s.sec : s.sec_with_gen;
                row.summary.eta_II = econ::second_law_efficiency(s.diagnostics.sec_least, active);
            }
        } catch (const Error& e) {
            for (SweepRow& row : out[i]) {
                row.feasible = false;
                row.failure = to_string(e.kind());
            }
        }
    };

    unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(jobs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < n_threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < jobs.size();)
                work(i);
        });
    for (std::size_t i; (i = next++) < jobs.size();)
        work(i);
    for (auto& th : pool)
        th.join();

    std::vector<SweepRow> rows;
    for (auto& v : out)
        for (auto& r : v)
            rows.push_back(std::move(r));
    return rows;
}

int max_feasible_modules(const Scenario& base, int lo, int hi, int step) {
    if (step < 1 || hi < lo)
        fail(ErrorKind::Domain, "max_feasible_modules: bad grid");
    auto feasible = [&](int m) {
        try {
            run(with_modules(base, m));
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    // Binary search over grid indices.
    int a = 0, b = (hi - lo) / step; // candidates lo + i*step
    if (!feasible(lo))
        return lo - step;
    if (feasible(lo + b * step))
        return lo + b * step;
    while (b - a > 1) {
        const int mid = (a + b) / 2;
        if (feasible(lo + mid * step))
            a = mid;
        else
            b = mid;
    }
    return lo + a * step;
}

} // namespace wpbro::sim
