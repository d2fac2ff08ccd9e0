#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "probeqec/rng.hpp"

namespace probeqec {

using Complex = std::complex<double>;
using ProbeId = std::uint32_t;

// Branches with |amplitude| below this are dropped during canonicalization.
inline constexpr double kBranchPruneTol = 1e-14;
// Probe phases closer than this (circular distance, radians) are identified.
inline constexpr double kPhaseMergeTol = 1e-9;
// States handed to builders/comparators must be normalized within this.
inline constexpr double kNormTol = 1e-10;

enum class Backend { Ideal, Homodyne, PhotonNumber };

// Parameters of one coherent probe mode. The probe is never represented as a
// Fock vector: interactions are diagonal in the computational basis, so each
// branch just records the accumulated phase of its |alpha e^{i phi}> factor.
struct ProbeMode {
    double alpha = 0.0;  // coherent amplitude, real and >= 0
    double eta2 = 0.0;   // fraction of probe photons lost in transit, [0, 1)
    Backend backend = Backend::Ideal;
};

// One computational-basis branch of the register, together with the phase its
// copy of each attached probe has accumulated.
struct BasisBranch {
    std::uint64_t bits = 0;  // qubit q stored at bit (1 << q)
    Complex amplitude{0.0, 0.0};
    std::vector<std::pair<ProbeId, double>> phases;  // sorted by probe id

    double phase_of(ProbeId id) const;
};

// Sparse hybrid register: a sum of basis branches, each carrying per-probe
// coherent phases. Canonical form (maintained by every operation): branches
// sorted by (bits, phases), equal branches merged, near-zero branches pruned.
//
// Treat the fields as read-only outside the operation layer below; mutating
// them directly bypasses canonicalization.
struct HybridState {
    int n_qubits = 0;
    std::vector<BasisBranch> branches;
    std::map<ProbeId, ProbeMode> probes;  // currently attached probes
    std::uint64_t lost_mask = 0;          // qubits traced out by loss
    ProbeId next_probe = 0;

    int num_qubits() const { return n_qubits; }
    bool is_lost(int qubit) const { return (lost_mask >> qubit) & 1; }
    double norm() const;  // sqrt(sum |amplitude|^2)
};

// Initial single-qubit factor for init_state. Use the named factories; the
// amplitudes constructor validates normalization (1e-10).
struct QubitInit {
    Complex c0{1.0, 0.0};
    Complex c1{0.0, 0.0};

    static QubitInit zero() { return {{1, 0}, {0, 0}}; }
    static QubitInit one() { return {{0, 0}, {1, 0}}; }
    static QubitInit plus();
    static QubitInit minus();
    static QubitInit amplitudes(Complex c0, Complex c1);  // throws NormalizationError
};

enum class Gate1Q { X, Z, H };
enum class MeasureBasis { Computational, PlusMinus };

// --- construction -----------------------------------------------------------

// Product state over the listed qubits (qubit 0 first, leftmost in kets).
HybridState init_state(const std::vector<QubitInit>& qubits);

// Direct sparse construction from (bits, amplitude) pairs; must be normalized
// within 1e-10. Used for reference states and tests.
HybridState state_from_amplitudes(int num_qubits,
                                  const std::vector<std::pair<std::uint64_t, Complex>>& amps);

// --- probe plumbing ---------------------------------------------------------

// Attach a fresh probe; every branch starts at phase 0. Returns its id.
ProbeId attach_probe(HybridState& s, const ProbeMode& probe);

// exp(i theta |1><1| ⊗ n), i.e. |1>|a e^{i phi}> -> |1>|a e^{i(phi+theta)}>.
// theta is the full accumulated interaction phase; it is never split into a
// coupling and a time. Throws LostQubitError if the qubit is lost.
void apply_conditional_phase(HybridState& s, int qubit, ProbeId probe, double theta);

// Remove a probe's phase entries without any measurement. Only valid when all
// branches agree on the phase (no which-path information); otherwise the
// probe must be measured. Used internally after read-out.
void detach_probe(HybridState& s, ProbeId probe);

// --- qubit operations -------------------------------------------------------

void apply_1q_gate(HybridState& s, Gate1Q g, int qubit);

// Projective measurement; returns 0/1 (PlusMinus: 0 = |+>, 1 = |->). The
// measured qubit stays in the register in the post-measurement state.
// Measuring a lost qubit is allowed: that is how loss trajectories realize
// the trace.
int measure_qubit(HybridState& s, int qubit, MeasureBasis basis, Rng& rng);

// --- probe-loss dephasing ---------------------------------------------------

// Trajectory realization of losing a fraction eta2 of the probe's photons:
// draws one integer k ~ Skellam(c/2, c/2), c = eta2 |alpha|^2, and multiplies
// each branch by e^{i k phi_b}. Over the ensemble every pairwise coherence
// decays by exp(-c (1 - cos(phi_b - phi_b'))), exactly.
void apply_probe_dephasing(HybridState& s, ProbeId probe, Rng& rng);

// --- comparison / conversion ------------------------------------------------

// |<reference|state>|^2. Both states must be probe-free and the same size;
// global phase is irrelevant. Throws UnsupportedComparisonError otherwise.
double fidelity(const HybridState& state, const HybridState& reference);

// Dense 2^n amplitude vector (qubit 0 most significant). Probe-free only.
Eigen::VectorXcd to_dense(const HybridState& s);

// Pure state of a subset of qubits, in the listed order. The state must be a
// product across the cut (it is after the complement has been measured out);
// throws UnsupportedComparisonError if not. Global phase is arbitrary.
HybridState extract_qubits(const HybridState& s, const std::vector<int>& qubits);

// Branch-per-line rendering, amplitudes rounded to `decimals` places.
std::string format_state(const HybridState& s, int decimals = 6);

namespace detail {
// Canonical wrap to [0, 2pi), with values within half a merge tolerance of
// 2pi folded to ~0 so equal phases sort adjacently.
double wrap_phase(double phi);
// Circular distance |a - b| mod 2pi, in [0, pi].
double phase_distance(double a, double b);
// Signed circular difference a - b in (-pi, pi].
double phase_difference(double a, double b);
// Restore canonical form: sort, merge tolerance-equal branches, prune.
void canonicalize(HybridState& s);
// One Skellam(c/2, c/2) draw: difference of two Poisson counts.
std::int64_t sample_skellam(double c, Rng& rng);
// Strip a probe's phase entries unconditionally (read-out has already
// projected/kicked the branches). Prefer detach_probe outside measurement.
void remove_probe_entries(HybridState& s, ProbeId id);
}  // namespace detail

}  // namespace probeqec
