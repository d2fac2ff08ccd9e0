#include "probeqec/noise.hpp"

#include <stdexcept>

#include "probeqec/errors.hpp"

namespace probeqec {

void inject_pauli(HybridState& s, PauliKind p, int qubit) {
    switch (p) {
        case PauliKind::X:
            apply_1q_gate(s, Gate1Q::X, qubit);
            break;
        case PauliKind::Z:
            apply_1q_gate(s, Gate1Q::Z, qubit);
            break;
        case PauliKind::Y:
            apply_1q_gate(s, Gate1Q::X, qubit);
            apply_1q_gate(s, Gate1Q::Z, qubit);
            break;
    }
}

std::vector<NoiseEvent> sample_channel(const std::vector<int>& qubits, const NoiseSpec& spec,
                                       Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<NoiseEvent> events;
    for (int q : qubits) {
        const bool fx = uni(rng) < spec.p_x;
        const bool fz = uni(rng) < spec.p_z;
        const bool fl = uni(rng) < spec.p_loss;
        if (fx && fz)
            events.push_back({q, NoiseEvent::Kind::Y});
        else if (fx)
            events.push_back({q, NoiseEvent::Kind::X});
        else if (fz)
            events.push_back({q, NoiseEvent::Kind::Z});
        if (fl) events.push_back({q, NoiseEvent::Kind::Loss});
    }
    return events;
}

void lose_qubit(HybridState& s, int qubit, Rng& rng) {
    if (qubit < 0 || qubit >= s.n_qubits)
        throw std::invalid_argument("qubit index out of range");
    if (s.is_lost(qubit))
        throw LostQubitError("qubit " + std::to_string(qubit) + " is already lost");
    // The environment learns the qubit's value: measure, discard the outcome.
    measure_qubit(s, qubit, MeasureBasis::Computational, rng);
    s.lost_mask |= 1ull << qubit;
}

double jittered_theta(double theta, double jitter, Rng& rng) {
    if (jitter < 0.0) throw std::invalid_argument("theta jitter must be >= 0");
    if (jitter == 0.0) return theta;
    std::normal_distribution<double> gauss(0.0, jitter);
    return theta * (1.0 + gauss(rng));
}

bool apply_correlated_xx(HybridState& s, int q1, int q2, double eps, Rng& rng) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("eps must lie in [0, 1]");
    if (eps == 0.0) return false;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    if (uni(rng) >= eps) return false;
    apply_1q_gate(s, Gate1Q::X, q1);
    apply_1q_gate(s, Gate1Q::X, q2);
    return true;
}

}  // namespace probeqec
