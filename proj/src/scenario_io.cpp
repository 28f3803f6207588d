#include "wpbro/scenario_io.hpp"

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace wpbro::io {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Config, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

[[noreturn]] void config_error(const std::string& key, const YAML::Node& at,
                               const std::string& what) {
    fail(ErrorKind::Config, "key '" + key + "' (line " + std::to_string(line_of(at)) + "): " + what);
}

// Shortest decimal text that reads back to the same double.
std::string format_double(double x) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x)
            break;
    }
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos)
        s += ".0";
    return s;
}

template <class E>
using Choices = std::initializer_list<std::pair<const char*, E>>;

const Choices<wave::WaveKind> kWaveKinds = {{"regular", wave::WaveKind::Regular},
                                            {"irregular", wave::WaveKind::Irregular}};
const Choices<wave::SpectrumFamily> kSpectra = {
    {"pierson_moskowitz", wave::SpectrumFamily::PiersonMoskowitz},
    {"jonswap", wave::SpectrumFamily::Jonswap}};
const Choices<sim::WecMode> kWecModes = {{"calibrated_source", sim::WecMode::CalibratedSource},
                                         {"physics", sim::WecMode::Physics}};
const Choices<sim::FcdMode> kFcdModes = {{"valve", sim::FcdMode::Valve},
                                         {"generator", sim::FcdMode::Generator}};
const Choices<econ::OpexRule> kOpexRules = {
    {"per_m3", econ::OpexRule::PerCubicMeter},
    {"per_head", econ::OpexRule::PerHead},
    {"fraction_of_bro_capex", econ::OpexRule::FractionOfBroCapex},
    {"fixed_annual", econ::OpexRule::FixedAnnual}};

// Reads keys into an existing object, tracking which keys were consumed so
// leftovers can be reported.
class Reader {
public:
    Reader(YAML::Node node, std::string path) {
        require_map(node, path);
        frames_.push_back({std::move(node), std::move(path), {}});
    }

    template <class Body>
    void section(const char* key, Body body) {
        const YAML::Node n = child(key);
        if (!n)
            return;
        const std::string path = qualify(key);
        require_map(n, path);
        frames_.push_back({n, path, {}});
        body();
        finish();
    }

    template <class T>
    void field(const char* key, T& out) {
        const YAML::Node n = child(key);
        if (!n)
            return;
        if (!n.IsScalar())
            config_error(qualify(key), n, "expected a scalar");
        try {
            out = n.as<T>();
        } catch (const YAML::BadConversion&) {
            config_error(qualify(key), n, "cannot convert '" + n.Scalar() + "'");
        }
        if constexpr (std::is_floating_point_v<T>)
            if (!std::isfinite(out))
                config_error(qualify(key), n, "must be finite");
    }

    template <class E>
    void choice(const char* key, E& out, Choices<E> options) {
        const YAML::Node n = child(key);
        if (!n)
            return;
        const std::string text = n.IsScalar() ? n.Scalar() : std::string();
        for (const auto& [name, value] : options)
            if (text == name) {
                out = value;
                return;
            }
        std::string allowed;
        for (const auto& [name, value] : options)
            allowed += (allowed.empty() ? "" : ", ") + std::string(name);
        config_error(qualify(key), n, "'" + text + "' is not one of: " + allowed);
    }

    void opex_items(const char* key, std::vector<econ::OpexItem>& out) {
        const YAML::Node n = child(key);
        if (!n)
            return;
        if (!n.IsSequence())
            config_error(qualify(key), n, "expected a list");
        out.clear();
        for (std::size_t i = 0; i < n.size(); ++i) {
            const std::string path = qualify(key) + "[" + std::to_string(i) + "]";
            require_map(n[i], path);
            frames_.push_back({n[i], path, {}});
            econ::OpexItem item;
            field("name", item.name);
            choice("rule", item.rule, kOpexRules);
            field("value", item.value);
            field("count", item.count);
            finish();
            out.push_back(item);
        }
    }

    void skip(const char* key) { frames_.back().seen.insert(key); }

    void finish() {
        const Frame& f = frames_.back();
        for (const auto& kv : f.node) {
            const std::string k = kv.first.as<std::string>();
            if (!f.seen.count(k))
                config_error(f.path.empty() ? k : f.path + "." + k, kv.first, "unknown key");
        }
        frames_.pop_back();
    }

private:
    struct Frame {
        YAML::Node node;
        std::string path;
        std::set<std::string> seen;
    };

    static void require_map(const YAML::Node& n, const std::string& path) {
        if (!n.IsMap())
            config_error(path.empty() ? "<document>" : path, n, "expected a mapping");
    }

    std::string qualify(const char* key) const {
        const std::string& p = frames_.back().path;
        return p.empty() ? std::string(key) : p + "." + key;
    }

    YAML::Node child(const char* key) {
        Frame& f = frames_.back();
        f.seen.insert(key);
        const YAML::Node& cnode = f.node;
        YAML::Node n = cnode[key];
        if (!n.IsDefined() || n.IsNull())
            return YAML::Node(YAML::NodeType::Undefined);
        return n;
    }

    std::vector<Frame> frames_;
};

class Writer {
public:
    Writer() { out_ << YAML::BeginMap; }

    template <class Body>
    void section(const char* key, Body body) {
        out_ << YAML::Key << key << YAML::Value << YAML::BeginMap;
        body();
        out_ << YAML::EndMap;
    }

    void field(const char* key, const double& x) {
        out_ << YAML::Key << key << YAML::Value << format_double(x);
    }
    void field(const char* key, const int& x) { out_ << YAML::Key << key << YAML::Value << x; }
    void field(const char* key, const std::uint64_t& x) {
        out_ << YAML::Key << key << YAML::Value << x;
    }
    void field(const char* key, const std::string& x) {
        out_ << YAML::Key << key << YAML::Value << YAML::DoubleQuoted << x;
    }

    template <class E>
    void choice(const char* key, const E& value, Choices<E> options) {
        for (const auto& [name, v] : options)
            if (v == value)
                out_ << YAML::Key << key << YAML::Value << name;
    }

    void opex_items(const char* key, const std::vector<econ::OpexItem>& items) {
        out_ << YAML::Key << key << YAML::Value << YAML::BeginSeq;
        for (const auto& item : items) {
            out_ << YAML::BeginMap;
            field("name", item.name);
            choice("rule", item.rule, kOpexRules);
            field("value", item.value);
            field("count", item.count);
            out_ << YAML::EndMap;
        }
        out_ << YAML::EndSeq;
    }

    std::string str() {
        out_ << YAML::EndMap;
        return std::string(out_.c_str()) + "\n";
    }

    YAML::Emitter& emitter() { return out_; }

private:
    YAML::Emitter out_;
};

template <class V, class SC>
void visit_sea(V& v, SC& sea) {
    v.choice("kind", sea.kind, kWaveKinds);
    v.field("significant_height", sea.significant_height);
    v.field("peak_period", sea.peak_period);
    v.choice("spectrum", sea.spectrum, kSpectra);
    v.field("jonswap_gamma", sea.jonswap_gamma);
    v.field("n_components", sea.n_components);
    v.field("freq_min", sea.freq_min);
    v.field("freq_max", sea.freq_max);
    v.field("seed", sea.rng_seed);
}

template <class V, class PD>
void visit_pd(V& v, PD& c) {
    v.field("kp", c.kp);
    v.field("kd", c.kd);
    v.field("sample_period", c.sample_period);
    v.field("filter_time_constant", c.filter_time_constant);
    v.field("area_min", c.area_min);
    v.field("area_max", c.area_max);
    v.field("setpoint", c.setpoint);
}

// Single key map shared by the reader and the writer, so the two cannot
// drift apart. SC is Scenario or const Scenario.
template <class V, class SC>
void visit_scenario(V& v, SC& sc) {
    v.section("sea", [&] { visit_sea(v, sc.sea); });
    v.section("wec", [&] {
        v.choice("mode", sc.wec_mode, kWecModes);
        v.field("mass", sc.wec.mass);
        v.field("height", sc.wec.height);
        v.field("width", sc.wec.width);
        v.field("thickness", sc.wec.thickness);
        v.field("pitch_inertia", sc.wec.pitch_inertia);
        v.field("added_inertia", sc.wec.added_inertia);
        v.field("radiation_damping", sc.wec.radiation_damping);
        v.field("hydrostatic_stiffness", sc.wec.hydrostatic_stiffness);
        v.field("excitation_gain", sc.wec.excitation_gain);
        v.field("max_pitch", sc.wec.max_pitch);
    });
    v.section("source", [&] {
        v.field("mean_flow", sc.source.mean_flow);
        v.field("modulation_depth", sc.source.modulation_depth);
    });
    v.section("slider_crank", [&] {
        v.field("crank_length", sc.slider_crank.crank_length);
        v.field("rod_length", sc.slider_crank.rod_length);
        v.field("offset", sc.slider_crank.offset);
        v.field("piston_area", sc.slider_crank.piston_area);
    });
    v.section("accumulator", [&] {
        v.field("total_gas_volume", sc.pto.accumulator.total_gas_volume);
        v.field("precharge", sc.pto.accumulator.precharge);
        v.field("rated_pressure", sc.pto.accumulator.rated_pressure);
        v.field("adiabatic_n", sc.pto.accumulator.adiabatic_n);
    });
    v.section("pto", [&] {
        v.field("turbine_displacement", sc.pto.turbine_displacement);
        v.field("turbine_efficiency", sc.pto.turbine_efficiency);
        v.field("shaft_inertia", sc.pto.shaft_inertia);
        v.field("flow_coeff", sc.pto.flow_coeff);
        v.field("density", sc.pto.density);
    });
    v.section("main_loop", [&] { visit_pd(v, sc.main_loop); });
    v.section("kidney_loop", [&] { visit_pd(v, sc.kidney_loop); });
    v.section("membrane", [&] {
        auto& m = sc.bro.membrane;
        v.field("permeability", m.permeability);
        v.field("area_per_module", m.area_per_module);
        v.field("module_length", m.module_length);
        v.field("spacer_thickness", m.spacer_thickness);
        v.field("modules_series", m.modules_series);
        v.field("modules_parallel", m.modules_parallel);
        v.field("osmotic_coeff", m.osmotic_coeff);
        v.field("vant_hoff", m.vant_hoff);
        v.field("molar_mass", m.molar_mass);
        v.field("gas_const", m.gas_const);
        v.field("temperature", m.temperature);
        v.field("diffusivity", m.diffusivity);
        v.field("kinematic_viscosity", m.kinematic_viscosity);
        v.field("density", m.density);
        v.field("friction_k", m.friction_k);
        v.field("friction_n", m.friction_n);
        v.field("sherwood_a", m.sherwood_a);
        v.field("sherwood_b", m.sherwood_b);
        v.field("sherwood_c", m.sherwood_c);
    });
    v.section("bro_pump", [&] {
        auto& p = sc.bro.pump;
        v.field("displacement", p.displacement);
        v.field("hp_efficiency", p.hp_efficiency);
        v.field("circ_efficiency", p.circ_efficiency);
        v.field("recovery_per_pass", p.recovery_per_pass);
        v.field("total_recovery", p.total_recovery);
        v.field("tank_volume", p.tank_volume);
        v.field("feed_salinity", p.feed_salinity);
    });
    v.section("econ", [&] {
        v.field("wec_capex", sc.econ.wec_capex);
        v.field("bro_capex_per_100m3day", sc.econ.bro_capex_per_100m3day);
        v.field("wec_opex", sc.econ.wec_opex);
        v.field("fcr", sc.econ.fcr);
        v.field("capacity_factor", sc.econ.capacity_factor);
        v.opex_items("bro_opex_items", sc.econ.bro_opex_items);
    });
    v.section("gibbs", [&] {
        v.field("vant_hoff", sc.gibbs.vant_hoff);
        v.field("osmotic_coeff", sc.gibbs.osmotic_coeff);
        v.field("salt_molar_mass", sc.gibbs.salt_molar_mass);
        v.field("water_molar_mass", sc.gibbs.water_molar_mass);
        v.field("gas_const", sc.gibbs.gas_const);
    });
    v.section("run", [&] {
        v.field("dt", sc.dt);
        v.field("duration", sc.duration);
        v.field("warmup", sc.warmup);
        v.choice("fcd_mode", sc.fcd_mode, kFcdModes);
        v.field("generator_efficiency", sc.generator_efficiency);
        v.field("least_work_temperature", sc.least_work_temperature);
        v.field("permeate_density", sc.permeate_density);
        v.field("log_every", sc.log_every);
    });
}

YAML::Node load_yaml(const std::string& text) {
    try {
        return YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        fail(ErrorKind::Config, std::string("malformed YAML: ") + e.what());
    }
}

void check_schema(const YAML::Node& root) {
    if (!root.IsMap())
        fail(ErrorKind::Config, "document must be a mapping");
    const YAML::Node& croot = root;
    const YAML::Node v = croot["schema_version"];
    if (!v.IsDefined())
        fail(ErrorKind::Config, "key 'schema_version' is missing");
    int version = 0;
    try {
        version = v.as<int>();
    } catch (const YAML::BadConversion&) {
        config_error("schema_version", v, "expected an integer");
    }
    if (version != kSchemaVersion)
        config_error("schema_version", v,
                     "unsupported version " + std::to_string(version) + " (expected " +
                         std::to_string(kSchemaVersion) + ")");
}

} // namespace

sim::Scenario parse_scenario(const std::string& text) {
    const YAML::Node root = load_yaml(text);
    check_schema(root);
    sim::Scenario sc;
    Reader r(root, "");
    r.skip("schema_version");
    visit_scenario(r, sc);
    r.finish();
    return sc;
}

sim::Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

std::string serialize_scenario(const sim::Scenario& sc) {
    Writer w;
    w.emitter() << YAML::Key << "schema_version" << YAML::Value << kSchemaVersion;
    visit_scenario(w, sc);
    return w.str();
}

std::string scenario_hash(const sim::Scenario& sc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_scenario(sc)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::vector<sim::SeaStateCase> parse_sea_states(const std::string& text,
                                                const wave::SeaState& base) {
    const YAML::Node root = load_yaml(text);
    check_schema(root);
    const YAML::Node& croot = root;
    const YAML::Node list = croot["sea_states"];
    if (!list.IsDefined() || !list.IsSequence() || list.size() == 0)
        fail(ErrorKind::Config, "key 'sea_states' must be a non-empty list");
    Reader top(root, "");
    top.skip("schema_version");
    top.skip("sea_states");
    top.finish();

    std::vector<sim::SeaStateCase> cases;
    for (std::size_t i = 0; i < list.size(); ++i) {
        sim::SeaStateCase c;
        c.sea = base;
        Reader r(list[i], "sea_states[" + std::to_string(i) + "]");
        r.field("name", c.name);
        visit_sea(r, c.sea);
        auto opt = [&](const char* key, auto& slot) {
            typename std::remove_reference_t<decltype(slot)>::value_type x{};
            bool present = false;
            {
                const YAML::Node& cn = list[i];
                present = cn[key].IsDefined() && !cn[key].IsNull();
            }
            r.field(key, x);
            if (present)
                slot = x;
        };
        opt("mean_flow", c.mean_flow);
        opt("modules", c.modules);
        opt("turbine_displacement", c.turbine_displacement);
        opt("pump_displacement", c.pump_displacement);
        opt("tank_volume", c.tank_volume);
        r.finish();
        if (c.name.empty())
            c.name = "sea_state_" + std::to_string(i);
        cases.push_back(std::move(c));
    }
    return cases;
}

std::vector<sim::SeaStateCase> load_sea_states(const std::string& path,
                                               const wave::SeaState& base) {
    return parse_sea_states(read_file(path), base);
}

namespace {

void put(std::ostream& os, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    os << buf;
}

} // namespace

void write_time_series_csv(std::ostream& os, const std::vector<sim::TimeSeriesRow>& rows) {
    const auto& cols = sim::time_series_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : rows) {
        const double v[] = {r.t,        r.eta,     r.theta,   r.omega,      r.p_accum,
                            r.v_liq,    r.n_shaft, r.a_main,  r.a_kidney,   r.q_main,
                            r.q_kidney, r.p_f,     r.pi,      r.c_bulk,     r.q_p,
                            r.p_wec,    r.p_turbine, r.p_kidney, r.p_main_fcd, r.p_cp,
                            r.p_hp};
        for (std::size_t i = 0; i < std::size(v); ++i) {
            if (i)
                os << ',';
            put(os, v[i]);
        }
        os << '\n';
    }
}

void write_summary_json(std::ostream& os, const sim::Scenario& sc, const sim::SimSummary& s) {
    const econ::EconReport econ = econ::evaluate_economics(sc.econ, s.permeate_per_day);
    nlohmann::ordered_json j;
    j["scenario_hash"] = scenario_hash(sc);
    j["fcd_mode"] = sim::to_string(sc.fcd_mode);
    j["sec"] = s.sec;
    j["sec_with_gen"] = s.sec_with_gen;
    j["eta_II"] = s.eta_II;
    j["permeate_per_day"] = s.permeate_per_day;
    j["lcow"] = s.lcow;
    j["cycles_completed"] = s.cycles_completed;
    j["feasibility_flags"] = s.feasibility_flags;
    j["energy_audit_residual"] = s.energy_audit_residual;
    j["awp"] = econ.awp;
    j["capex_usd"] = econ.capex.dollars();
    j["opex_usd_per_year"] = econ.opex.dollars();
    j["ledger"] = {{"avg_p_wec", s.ledger.avg_p_wec},
                   {"avg_p_cp", s.ledger.avg_p_cp},
                   {"avg_p_kidney", s.ledger.avg_p_kidney},
                   {"avg_p_main_fcd", s.ledger.avg_p_main_fcd},
                   {"avg_p_turbine", s.ledger.avg_p_turbine},
                   {"avg_q_permeate", s.ledger.avg_q_permeate},
                   {"t_begin", s.ledger.t_begin},
                   {"t_end", s.ledger.t_end}};
    const auto& d = s.diagnostics;
    j["diagnostics"] = {{"shaft_speed_min", d.shaft_speed_min},
                        {"shaft_speed_max", d.shaft_speed_max},
                        {"shaft_speed_mean", d.shaft_speed_mean},
                        {"p_accum_min", d.p_accum_min},
                        {"p_accum_max", d.p_accum_max},
                        {"p_accum_mean", d.p_accum_mean},
                        {"main_fcd_power_min", d.main_fcd_power_min},
                        {"q_kidney_min", d.q_kidney_min},
                        {"sec_least", d.sec_least}};
    os << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<sim::SweepRow>& rows) {
    os << "sea_state,hs,tp,modules,fcd_mode,feasible,failure,sec,sec_with_gen,eta_II,lcow,"
          "permeate_per_day,cycles_completed\n";
    for (const auto& r : rows) {
        os << r.sea_name << ',';
        put(os, r.hs);
        os << ',';
        put(os, r.tp);
        os << ',' << r.modules << ',' << sim::to_string(r.fcd_mode) << ','
           << (r.feasible ? "true" : "false") << ',' << r.failure;
        if (r.feasible) {
            for (double x : {r.summary.sec, r.summary.sec_with_gen, r.summary.eta_II,
                             r.summary.lcow, r.summary.permeate_per_day}) {
                os << ',';
                put(os, x);
            }
            os << ',' << r.summary.cycles_completed;
        } else {
            os << ",,,,,,";
        }
        os << '\n';
    }
}

} // namespace wpbro::io
