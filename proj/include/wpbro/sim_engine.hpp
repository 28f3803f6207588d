#pragma once

// Fixed-step orchestration: wave -> flap (or calibrated source) -> PTO
// network -> controllers -> batch RO, with warm-up, feasibility checks,
// time-series logging and energy ledger accumulation.

#include "wpbro/bro.hpp"
#include "wpbro/control.hpp"
#include "wpbro/energy_econ.hpp"
#include "wpbro/error.hpp"
#include "wpbro/oswec.hpp"
#include "wpbro/pto_hydraulics.hpp"
#include "wpbro/wave_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wpbro::sim {

enum class WecMode { CalibratedSource, Physics };
enum class FcdMode { Valve, Generator };

const char* to_string(FcdMode mode) noexcept;

/// Piston delivery synthesised directly: mean flow with a modulation that
/// follows the normalised wave elevation eta / (Hs/2).
struct CalibratedSource {
    double mean_flow = 0.022;        // [m^3/s]
    double modulation_depth = 0.27;  // fraction of mean flow per unit normalised elevation

    double flow(double eta, double hs) const;

    friend bool operator==(const CalibratedSource&, const CalibratedSource&) = default;
};

struct Scenario {
    wave::SeaState sea;
    WecMode wec_mode = WecMode::CalibratedSource;
    oswec::WecConfig wec;
    CalibratedSource source;
    pto::SliderCrank slider_crank;
    pto::PtoConfig pto;
    control::PdConfig main_loop = control::default_main_loop();
    control::PdConfig kidney_loop = control::default_kidney_loop();
    bro::BroConfig bro;
    econ::EconConfig econ;
    econ::GibbsModel gibbs;

    double dt = 0.005;
    double duration = 600.0;
    double warmup = 100.0;
    FcdMode fcd_mode = FcdMode::Generator;
    double generator_efficiency = 0.85;
    double least_work_temperature = 294.75; // [K]
    double permeate_density = 1000.0;       // [kg/m^3]
    int log_every = 20;                     // steps between time-series rows

    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Plant state at one instant, as seen by the feasibility predicate.
struct StateSnapshot {
    double t = 0.0;
    double p_accum = 0.0;
    double liquid_volume = 0.0;
    double shaft_speed = 0.0;
    double area_main = 0.0;
    double area_kidney = 0.0;
    double q_main = 0.0;
    double q_kidney = 0.0;
    double p_turbine_inlet = 0.0;
    double feed_pressure = 0.0;
    double bulk_salinity = 0.0;
    double area_main_max = 0.0; // saturation limit the predicate checks against
};

struct FeasibilityFlag {
    ErrorKind kind = ErrorKind::InfeasibleSeaState;
    std::string message;
};

/// Hard constraints: kidney flow >= 0, turbine-inlet pressure > 0, and a
/// main FCD that still has pressure drop to work with. A valve driven to
/// its maximum area is the bounded-model form of that drop reaching zero.
std::vector<FeasibilityFlag> check_feasibility(const StateSnapshot& s);

/// Thrown by run() at the first hard violation.
class SimulationError : public Error {
public:
    SimulationError(ErrorKind kind, const std::string& what, StateSnapshot snapshot)
        : Error(kind, what), snapshot_(snapshot) {}
    const StateSnapshot& snapshot() const noexcept { return snapshot_; }

private:
    StateSnapshot snapshot_;
};

struct TimeSeriesRow {
    double t, eta, theta, omega, p_accum, v_liq, n_shaft, a_main, a_kidney, q_main, q_kidney;
    double p_f, pi, c_bulk, q_p;
    double p_wec, p_turbine, p_kidney, p_main_fcd, p_cp, p_hp;
};

/// Column names in TimeSeriesRow order.
const std::vector<std::string>& time_series_columns();

struct Diagnostics {
    double shaft_speed_min = 0.0;
    double shaft_speed_max = 0.0;
    double shaft_speed_mean = 0.0;
    double p_accum_min = 0.0;
    double p_accum_max = 0.0;
    double p_accum_mean = 0.0;
    double main_fcd_power_min = 0.0;
    double q_kidney_min = 0.0;
    double sec_least = 0.0;
};

struct SimSummary {
    double sec = 0.0;          // valve FCDs [kWh/m^3]
    double sec_with_gen = 0.0; // generator FCDs [kWh/m^3]
    double eta_II = 0.0;       // against the SEC of the configured fcd_mode
    double permeate_per_day = 0.0;
    double lcow = 0.0;
    int cycles_completed = 0;  // resets after warm-up
    std::vector<std::string> feasibility_flags;
    double energy_audit_residual = 0.0;
    econ::EnergyLedger ledger;
    Diagnostics diagnostics;
};

struct RunResult {
    SimSummary summary;
    std::vector<TimeSeriesRow> series;
};

struct RunOptions {
    bool record_series = false;
};

RunResult run(const Scenario& sc, const RunOptions& opts = {});

/// Constant-speed batch RO with an ideal shaft drive: isolates the
/// membrane-side SEC (HP pump + circulation pump) from the wave chain.
struct BroOnlyResult {
    double sec = 0.0;
    double avg_q_permeate = 0.0;
    double avg_feed_pressure = 0.0;
    double max_feed_pressure = 0.0;
    int cycles_completed = 0;
};

BroOnlyResult run_bro_only(const bro::BroConfig& cfg, double shaft_speed, double duration,
                           double dt);

/// Sea state plus the plant sizing that goes with it.
struct SeaStateCase {
    std::string name;
    wave::SeaState sea;
    std::optional<double> mean_flow;
    std::optional<int> modules;
    std::optional<double> turbine_displacement;
    std::optional<double> pump_displacement;
    std::optional<double> tank_volume;
};

/// Applies a sea-state case to a base scenario.
Scenario apply_case(const Scenario& base, const SeaStateCase& c);

/// Sets the parallel module count, scaling pump displacement and tank
/// volume in proportion so the design flux and cycle length are held.
Scenario with_modules(const Scenario& base, int modules);

struct SweepAxes {
    std::vector<SeaStateCase> sea_states; // empty = base sea state only
    std::vector<int> modules;             // empty = base module count only
    std::vector<FcdMode> fcd_modes;       // empty = base fcd_mode only
};

struct SweepRow {
    std::string sea_name;
    double hs = 0.0;
    double tp = 0.0;
    int modules = 0;
    FcdMode fcd_mode = FcdMode::Valve;
    bool feasible = false;
    std::string failure; // error kind when infeasible
    SimSummary summary;
};

/// One row per grid point; infeasible points are recorded, not fatal.
/// Scenarios run concurrently on up to `threads` workers (0 = hardware).
std::vector<SweepRow> sweep(const Scenario& base, const SweepAxes& axes, unsigned threads = 0);

/// Largest feasible module count in [lo, hi] on a grid of `step`, assuming
/// feasibility is monotone in module count. Returns lo - step when even lo
/// is infeasible.
int max_feasible_modules(const Scenario& base, int lo, int hi, int step);

} // namespace wpbro::sim
