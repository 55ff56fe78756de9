#pragma once

#include <stdexcept>

namespace rln {

// Simulation data became unusable (non-finite state, corrupt input file).
struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace rln
