#include "probeqec/gates.hpp"

#include <cmath>
#include <stdexcept>

#include "probeqec/noise.hpp"

namespace probeqec {

namespace {

void check_distinct(int a, int b) {
    if (a == b) throw std::invalid_argument("parity gate needs two distinct qubits");
}

}  // namespace

ParityOutcome parity_gate(HybridState& s, int q1, int q2, const ProbeMode& probe, double theta,
                          Rng& rng, bool convert_to_even, double theta_jitter) {
    check_distinct(q1, q2);
    const ProbeId pid = attach_probe(s, probe);
    apply_conditional_phase(s, q1, pid, jittered_theta(theta, theta_jitter, rng));
    apply_conditional_phase(s, q2, pid, -jittered_theta(theta, theta_jitter, rng));
    if (probe.eta2 > 0.0) {
        // Loss back-action: branches one interaction apart lose exp(-gamma)
        // of their coherence; a Z kick on q1 with matching probability is the
        // trajectory realization.
        const double gamma = probe.eta2 * probe.alpha * probe.alpha * (1.0 - std::cos(theta));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        if (uni(rng) < 0.5 * (1.0 - std::exp(-gamma))) apply_1q_gate(s, Gate1Q::Z, q1);
    }
    ParityOutcome out = measure_probe_parity(s, pid, theta, rng);
    if (convert_to_even && out.parity == Parity::Odd) apply_1q_gate(s, Gate1Q::X, q2);
    return out;
}

ParityOutcome parity_gate_pm(HybridState& s, int q1, int q2, const ProbeMode& probe, double theta,
                             Rng& rng, bool convert_to_even, double theta_jitter) {
    check_distinct(q1, q2);
    apply_1q_gate(s, Gate1Q::H, q1);
    apply_1q_gate(s, Gate1Q::H, q2);
    ParityOutcome out = parity_gate(s, q1, q2, probe, theta, rng, convert_to_even, theta_jitter);
    apply_1q_gate(s, Gate1Q::H, q1);
    apply_1q_gate(s, Gate1Q::H, q2);
    return out;
}

ParityOutcome symmetrizer_gate(HybridState& s, int q1, int q2, const ProbeMode& probe,
                               double theta, Rng& rng, double theta_jitter) {
    return parity_gate_pm(s, q1, q2, probe, theta, rng, /*convert_to_even=*/true, theta_jitter);
}

int syndrome_gate_mod4(HybridState& s, int q1, int q2, int q3, const ProbeMode& probe,
                       const Mod4Config& cfg, Rng& rng, double theta_jitter) {
    if (q1 == q2 || q1 == q3 || q2 == q3)
        throw std::invalid_argument("syndrome gate needs three distinct qubits");
    cfg.validate();
    const ProbeId pid = attach_probe(s, probe);
    apply_conditional_phase(s, q1, pid, jittered_theta(cfg.theta1, theta_jitter, rng));
    apply_conditional_phase(s, q2, pid, jittered_theta(cfg.theta2, theta_jitter, rng));
    apply_conditional_phase(s, q3, pid, jittered_theta(cfg.theta3, theta_jitter, rng));
    if (probe.eta2 > 0.0) apply_probe_dephasing(s, pid, rng);
    return measure_probe_phase_mod4(s, pid, cfg, rng);
}

}  // namespace probeqec
