#pragma once

#include <string>
#include <vector>

#include "probeqec/state.hpp"

namespace probeqec {

enum class PauliKind { X, Z, Y };

// Independent per-qubit error channel applied at scheduled protocol steps.
struct NoiseSpec {
    double p_x = 0.0;
    double p_z = 0.0;
    double p_loss = 0.0;
    double theta_jitter = 0.0;  // relative sigma of theta per interaction
    std::vector<std::string> schedule{"after_encode"};
};

struct NoiseEvent {
    enum class Kind { X, Z, Y, Loss };
    int qubit = 0;
    Kind kind = Kind::X;
};

// Apply a deterministic Pauli. Y is realized as Z·X (global phase ignored).
void inject_pauli(HybridState& s, PauliKind p, int qubit);

// Draw one round of the channel over `qubits`: X with p_x and Z with p_z
// (both firing yields Y), then loss with p_loss. Three uniforms are consumed
// per qubit regardless of outcome, so streams stay aligned across configs.
std::vector<NoiseEvent> sample_channel(const std::vector<int>& qubits, const NoiseSpec& spec,
                                       Rng& rng);

// Trajectory realization of tracing out a qubit: measure it in the
// computational basis, discard the outcome, and flag the qubit lost. Further
// gates on it throw LostQubitError.
void lose_qubit(HybridState& s, int qubit, Rng& rng);

// theta * (1 + delta), delta ~ N(0, jitter^2). jitter == 0 returns theta
// without consuming randomness.
double jittered_theta(double theta, double jitter, Rng& rng);

// Reference model of an ancilla-mediated syndrome extraction fault: with
// probability eps a failed entangling pair propagates X onto both data
// qubits. Returns whether it fired. Exists so sweeps can contrast probe-based
// extraction (no such correlated mechanism) against the conventional circuit.
bool apply_correlated_xx(HybridState& s, int q1, int q2, double eps, Rng& rng);

}  // namespace probeqec
