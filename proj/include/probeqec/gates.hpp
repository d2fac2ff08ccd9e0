#pragma once

#include "probeqec/measurement.hpp"
#include "probeqec/state.hpp"

namespace probeqec {

// Two-qubit parity gate: attach a probe, imprint +theta conditioned on q1 and
// -theta conditioned on q2 (each application independently jittered when
// theta_jitter > 0), apply the probe-loss back-action if eta2 > 0, then read
// the probe out. Even branches {00, 11} leave the probe at phase 0, odd
// branches at ±theta. With convert_to_even, an Odd outcome is followed by X
// on q2, mapping the odd subspace onto the even one.
//
// The eta2 > 0 back-action is a stochastic phase-flip kick on q1 with
// probability (1 - exp(-gamma)) / 2, gamma = eta2 |alpha|^2 (1 - cos theta):
// the ensemble coherence between branches separated by one interaction decays
// by exp(-gamma), which for small theta is the usual eta2 |alpha|^2 theta^2/2.
ParityOutcome parity_gate(HybridState& s, int q1, int q2, const ProbeMode& probe, double theta,
                          Rng& rng, bool convert_to_even = false, double theta_jitter = 0.0);

// Parity gate conjugated by H ⊗ H: measures parity in the ± basis.
ParityOutcome parity_gate_pm(HybridState& s, int q1, int q2, const ProbeMode& probe, double theta,
                             Rng& rng, bool convert_to_even = false, double theta_jitter = 0.0);

// Symmetrizer: H⊗H, parity gate with the odd outcome converted to even (X on
// q2), H⊗H. On a basis input |xy> the output is (|xy> + |x̄ȳ>)/sqrt(2) for
// either record (global phase aside): a +1 eigenstate of X1 X2. On entangled
// inputs the Odd record leaves a known Z byproduct on the *partner* system of
// whatever the pair was entangled with; protocol code undoes it using the
// returned record.
ParityOutcome symmetrizer_gate(HybridState& s, int q1, int q2, const ProbeMode& probe,
                               double theta, Rng& rng, double theta_jitter = 0.0);

// Single-probe mod-4 syndrome gate: one probe picks up theta1, theta2, theta3
// conditioned on q1, q2, q3 and is read out four-way. Returns the syndrome in
// {0 = none, 2 = qubit 1, 3 = qubit 2, 1 = qubit 3}. With the default config
// {theta, 2 theta, -3 theta} a no-error code state leaves the probe at phase
// theta1 + theta2 + theta3 = 0, so the code space is untouched. When
// eta2 > 0 the general loss dephasing is applied to the final footprint
// before read-out (full noisy mod-4 discrimination is out of scope).
int syndrome_gate_mod4(HybridState& s, int q1, int q2, int q3, const ProbeMode& probe,
                       const Mod4Config& cfg, Rng& rng, double theta_jitter = 0.0);

}  // namespace probeqec
