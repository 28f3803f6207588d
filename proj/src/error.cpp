#include "wpbro/error.hpp"

namespace wpbro {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Mechanism: return "mechanism";
    case ErrorKind::AccumulatorEmpty: return "accumulator-empty";
    case ErrorKind::AccumulatorOverfill: return "accumulator-overfill";
    case ErrorKind::Backflow: return "backflow-infeasible";
    case ErrorKind::IntegrationDiverged: return "integration-diverged";
    case ErrorKind::InfeasibleSeaState: return "infeasible-seastate";
    case ErrorKind::Overload: return "overload";
    case ErrorKind::CycleAccounting: return "cycle-accounting";
    case ErrorKind::UndefinedSec: return "undefined-sec";
    case ErrorKind::UndefinedLcow: return "undefined-lcow";
    case ErrorKind::Config: return "config";
    }
    return "unknown";
}

} // namespace wpbro
