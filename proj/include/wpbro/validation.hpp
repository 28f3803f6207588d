#pragma once

// Built-in self-check suite behind `wpbro validate`: closed-form oracles,
// invariants, and the full-system acceptance scenarios, all evaluated
// against a caller-supplied base scenario so perturbed parameters surface
// as failures.

#include "wpbro/sim_engine.hpp"

#include <string>
#include <vector>

namespace wpbro::validation {

struct Check {
    std::string group; // "oracle", "invariant" or "acceptance"
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Options {
    sim::Scenario base;                       // 3 m / 11 s benchmark plant
    std::vector<sim::SeaStateCase> sea_states; // five-state library; empty skips the trend check
    bool include_system = true;               // full-system runs (seconds to minutes)
};

std::vector<Check> run_suite(const Options& opts);

/// Directory holding the bundled scenario files: $WPBRO_DATA_DIR if set,
/// otherwise the source-tree data directory.
std::string bundled_data_dir();

} // namespace wpbro::validation
