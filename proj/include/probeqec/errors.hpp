#pragma once

#include <stdexcept>
#include <string>

namespace probeqec {

// Base for all simulator-domain failures. Plumbing misuse (bad qubit index,
// malformed arguments) throws std::invalid_argument instead.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State construction or comparison input is not normalized to 1 within 1e-10.
struct NormalizationError : SimError {
    using SimError::SimError;
};

// A gate or conditional phase targeted a qubit flagged as lost.
struct LostQubitError : SimError {
    using SimError::SimError;
};

// A probe read-out found a branch phase far from every expected phase value.
struct WrongFootprintError : SimError {
    using SimError::SimError;
};

// fidelity()/to_dense()/extract_qubits() called on states they cannot compare
// (probes still attached, mismatched register sizes, entangled extraction cut).
struct UnsupportedComparisonError : SimError {
    using SimError::SimError;
};

// Erasure recovery asked to do something the code distance cannot support
// (e.g. both qubits of a Bell pair lost, or no pairs left).
struct UnrecoverableError : SimError {
    using SimError::SimError;
};

}  // namespace probeqec
