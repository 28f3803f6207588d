#pragma once

#include <stdexcept>
#include <string>

namespace wpbro {

enum class ErrorKind {
    Domain,              // argument outside a function's domain
    Mechanism,           // slider-crank lockup
    AccumulatorEmpty,    // pressure below precharge
    AccumulatorOverfill, // liquid volume reached total gas volume
    Backflow,            // negative pressure drop across an orifice
    IntegrationDiverged, // non-finite state
    InfeasibleSeaState,  // kidney-loop flow would have to go negative
    Overload,            // main-loop FCD lost its pressure margin
    CycleAccounting,     // batch volume underflow before reset
    UndefinedSec,        // zero permeate
    UndefinedLcow,       // zero annual water production
    Config,              // scenario file / configuration error
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace wpbro
