#pragma once

#include <cstdint>
#include <optional>

#include "probeqec/state.hpp"

namespace probeqec {

enum class Parity { Even, Odd };

struct ParityOutcome {
    Parity parity = Parity::Even;
    // Raw read-out, present iff the back-end produced one.
    std::optional<double> quadrature;         // Homodyne sample
    std::optional<std::uint64_t> photons;     // PhotonNumber count
};

// Phases of the three interactions of a single-probe mod-4 syndrome gate.
// Requirements: |theta1|, |theta2|, |theta3| pairwise distinct; the sum is 0
// within 1e-12; the seven expected phases {0, ±theta1, ±theta2, ±theta3} are
// pairwise distinct mod 2pi.
struct Mod4Config {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;

    void validate() const;  // throws std::invalid_argument
};

// The worked configuration: {theta, 2 theta, -3 theta}.
Mod4Config mod4_default_config(double theta);

// Probability that one odd-parity branch is declared even by a homodyne
// read-out with unit-variance noise: erfc(alpha sin(theta) / sqrt(2)) / 2.
double p_err(double alpha, double theta);

// Probability that a photon-number read-out sees zero counts on a displaced
// odd branch: exp(-4 alpha^2 sin^2(theta/2)).
double p_miss_photon(double alpha, double theta);

// Parity read-out of a probe whose branch phases all sit near {0, +theta,
// -theta}. Declares Even/Odd per the probe's back-end, projects the register
// onto the *declared* parity group (misclassification therefore injects
// exactly the intrinsic error), renormalizes, and detaches the probe.
//
//  - Ideal: Born sampling between the even and odd phase groups.
//  - Homodyne: sample x ~ N(2 alpha sin(phi_b), 1) for a Born-sampled branch;
//    Even iff |x| < alpha sin(theta). Which of ±theta produced an odd sample
//    is deliberately not resolved, and no residual collapse phase is kept.
//  - PhotonNumber: displace by -alpha, count ~ Poisson(4 alpha^2
//    sin^2(phi_b/2)); Even iff the count is zero.
//
// If the probe's eta2 was nonzero the caller is expected to have applied the
// loss dephasing first (the gates layer does). Phases are classified to the
// nearest expected value; a branch farther than half the footprint spacing
// from every value throws WrongFootprintError.
ParityOutcome measure_probe_parity(HybridState& s, ProbeId probe, double theta, Rng& rng);

// Four-way phase-group read-out for the single-probe syndrome gate. Groups
// {0}, {±theta1}, {±theta2}, {±theta3} map to syndrome values 0, 2, 3, 1
// (i.e. no error / qubit 1 / qubit 2 / qubit 3). Ideal back-end only; the
// register is projected onto the sampled group and the probe detached.
int measure_probe_phase_mod4(HybridState& s, ProbeId probe, const Mod4Config& cfg, Rng& rng);

}  // namespace probeqec
