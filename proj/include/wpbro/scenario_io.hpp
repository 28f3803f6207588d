#pragma once

// Scenario files (YAML, schema_version 1), sea-state libraries, and the
// CSV/JSON report writers.

#include "wpbro/sim_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wpbro::io {

inline constexpr int kSchemaVersion = 1;

/// Parses a scenario document. Keys absent from the document keep their
/// defaults; unknown keys, wrong types and a missing or unsupported
/// schema_version throw ErrorKind::Config naming the key and line.
sim::Scenario parse_scenario(const std::string& text);
sim::Scenario load_scenario(const std::string& path);

/// Emits every key, so parse(serialize(sc)) == sc.
std::string serialize_scenario(const sim::Scenario& sc);

/// 64-bit FNV-1a of the serialized scenario, as 16 hex digits.
std::string scenario_hash(const sim::Scenario& sc);

/// Sea-state library: a `sea_states` list whose entries carry name,
/// significant_height, peak_period and optional sizing overrides.
/// Wave kind, spectrum and seed default to those of `base`.
std::vector<sim::SeaStateCase> parse_sea_states(const std::string& text,
                                                const wave::SeaState& base);
std::vector<sim::SeaStateCase> load_sea_states(const std::string& path,
                                               const wave::SeaState& base);

void write_time_series_csv(std::ostream& os, const std::vector<sim::TimeSeriesRow>& rows);
void write_summary_json(std::ostream& os, const sim::Scenario& sc, const sim::SimSummary& s);
void write_sweep_csv(std::ostream& os, const std::vector<sim::SweepRow>& rows);

} // namespace wpbro::io
