#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "probeqec/errors.hpp"
#include "probeqec/noise.hpp"
#include "probeqec/state.hpp"

using namespace probeqec;
using oracle::overlap2;

namespace {

constexpr double kInv = std::numbers::sqrt2 / 2.0;

Eigen::Vector2cd vec2(Complex c0, Complex c1) { return {c0, c1}; }

HybridState bell00() {
    return state_from_amplitudes(2, {{0b00, kInv}, {0b11, kInv}});
}

}  // namespace

TEST_CASE("init_state matches the dense product oracle") {
    const auto q0 = QubitInit::amplitudes({0.6, 0.0}, {0.0, 0.8});
    const auto q1 = QubitInit::plus();
    const auto q2 = QubitInit::amplitudes({0.0, -1.0}, {0.0, 0.0});
    const HybridState s = init_state({q0, q1, q2});

    const Eigen::VectorXcd want = oracle::product_state(
        {vec2({0.6, 0.0}, {0.0, 0.8}), vec2(kInv, kInv), vec2({0.0, -1.0}, {0.0, 0.0})});
    CHECK((to_dense(s) - want).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.norm() == doctest::Approx(1.0));
}

TEST_CASE("init_state prunes zero-amplitude factors") {
    const HybridState s = init_state({QubitInit::zero(), QubitInit::one()});
    REQUIRE(s.branches.size() == 1);
    CHECK(s.branches[0].bits == 0b10);  // qubit 1 set
}

TEST_CASE("state_from_amplitudes validates its input") {
    CHECK_THROWS_AS(state_from_amplitudes(2, {{0b00, 1.0}, {0b00, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(state_from_amplitudes(2, {{0b100, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(state_from_amplitudes(1, {{0b0, 0.9}}), NormalizationError);
    CHECK_THROWS_AS(QubitInit::amplitudes({0.6, 0.0}, {0.7, 0.0}), NormalizationError);
}

TEST_CASE("single-qubit gates match the dense oracle over random circuits") {
    std::mt19937_64 seq(7);
    std::uniform_int_distribution<int> pick_gate(0, 2);
    std::uniform_int_distribution<int> pick_qubit(0, 2);
    const Gate1Q gates[3] = {Gate1Q::X, Gate1Q::Z, Gate1Q::H};

    HybridState s = init_state(
        {QubitInit::amplitudes({0.6, 0.0}, {0.8, 0.0}), QubitInit::plus(), QubitInit::minus()});
    Eigen::VectorXcd v = to_dense(s);
    for (int step = 0; step < 60; ++step) {
        const Gate1Q g = gates[pick_gate(seq)];
        const int q = pick_qubit(seq);
        apply_1q_gate(s, g, q);
        oracle::apply_1q(v, 3, q, oracle::mat1q(g));
        REQUIRE((to_dense(s) - v).norm() < 1e-12);
    }
}

TEST_CASE("H H and Z Z are identities, including amplitudes") {
    HybridState s = bell00();
    const Eigen::VectorXcd before = to_dense(s);
    apply_1q_gate(s, Gate1Q::H, 1);
    apply_1q_gate(s, Gate1Q::H, 1);
    apply_1q_gate(s, Gate1Q::Z, 0);
    apply_1q_gate(s, Gate1Q::Z, 0);
    CHECK((to_dense(s) - before).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("computational measurement collapses and renormalizes") {
    Rng rng(11);
    int ones = 0;
    const int n = 4000;
    for (int t = 0; t < n; ++t) {
        HybridState s = bell00();
        const int m = measure_qubit(s, 0, MeasureBasis::Computational, rng);
        ones += m;
        REQUIRE(s.branches.size() == 1);
        CHECK(s.branches[0].bits == (m ? 0b11u : 0b00u));
        CHECK(s.norm() == doctest::Approx(1.0));
    }
    CHECK(oracle::binom_3sigma(static_cast<std::uint64_t>(ones), n, 0.5));
}

TEST_CASE("plus-minus measurement is deterministic on |+> and |->") {
    Rng rng(3);
    HybridState sp = init_state({QubitInit::plus()});
    HybridState sm = init_state({QubitInit::minus()});
    for (int t = 0; t < 20; ++t) {
        CHECK(measure_qubit(sp, 0, MeasureBasis::PlusMinus, rng) == 0);
        CHECK(measure_qubit(sm, 0, MeasureBasis::PlusMinus, rng) == 1);
    }
    // The measured qubit stays in the register, in its eigenstate.
    CHECK(fidelity(sp, init_state({QubitInit::plus()})) == doctest::Approx(1.0));
    CHECK(fidelity(sm, init_state({QubitInit::minus()})) == doctest::Approx(1.0));
}

TEST_CASE("conditional phase acts only on set branches and wraps") {
    HybridState s = init_state({QubitInit::plus()});
    const ProbeId p = attach_probe(s, {2.0, 0.0, Backend::Ideal});
    apply_conditional_phase(s, 0, p, 0.3);
    REQUIRE(s.branches.size() == 2);
    CHECK(s.branches[0].phase_of(p) == doctest::Approx(0.0));
    CHECK(s.branches[1].phase_of(p) == doctest::Approx(0.3));

    apply_conditional_phase(s, 0, p, 4.0 * std::numbers::pi - 0.3);
    // Wrapped back onto phase 0: the probe factors out and can detach.
    CHECK(s.branches[1].phase_of(p) == doctest::Approx(0.0));
    detach_probe(s, p);
    CHECK(fidelity(s, init_state({QubitInit::plus()})) == doctest::Approx(1.0));
}

TEST_CASE("detaching an entangled probe is refused") {
    HybridState s = init_state({QubitInit::plus()});
    const ProbeId p = attach_probe(s, {2.0, 0.0, Backend::Ideal});
    apply_conditional_phase(s, 0, p, 0.4);
    CHECK_THROWS_AS(detach_probe(s, p), SimError);
    CHECK_THROWS_AS(to_dense(s), UnsupportedComparisonError);
    CHECK_THROWS_AS(fidelity(s, s), UnsupportedComparisonError);
}

TEST_CASE("a second probe detaches cleanly while the first is entangled") {
    HybridState s = init_state({QubitInit::plus()});
    const ProbeId a = attach_probe(s, {2.0, 0.0, Backend::Ideal});
    const ProbeId b = attach_probe(s, {1.0, 0.0, Backend::Ideal});
    apply_conditional_phase(s, 0, a, 0.7);
    detach_probe(s, b);
    CHECK(s.probes.size() == 1);
    CHECK(s.branches[1].phase_of(a) == doctest::Approx(0.7));
}

TEST_CASE("phases merge within tolerance across the 2pi seam") {
    HybridState s = init_state({QubitInit::plus()});
    const ProbeId p = attach_probe(s, {1.0, 0.0, Backend::Ideal});
    apply_conditional_phase(s, 0, p, 2.0 * std::numbers::pi - 1e-12);
    // The imprinted phase folds onto ~0, so H's recombination treats the two
    // branches as phase-equal and the interference survives: back to |0>.
    apply_1q_gate(s, Gate1Q::H, 0);
    REQUIRE(s.branches.size() == 1);
    CHECK(s.branches[0].bits == 0);
    detach_probe(s, p);
}

TEST_CASE("fidelity is a squared overlap, global phase blind") {
    const HybridState a = bell00();
    const HybridState b = state_from_amplitudes(2, {{0b00, {0.0, kInv}}, {0b11, {0.0, kInv}}});
    const HybridState c = state_from_amplitudes(2, {{0b01, kInv}, {0b10, kInv}});
    CHECK(fidelity(a, b) == doctest::Approx(1.0));
    CHECK(fidelity(a, c) == doctest::Approx(0.0));
    const HybridState mixed = state_from_amplitudes(2, {{0b00, 0.6}, {0b01, 0.8}});
    CHECK(fidelity(mixed, a) == doctest::Approx(0.36 * 0.5));
    CHECK_THROWS_AS(fidelity(a, init_state({QubitInit::zero()})), UnsupportedComparisonError);
}

TEST_CASE("extract_qubits pulls a product factor in the requested order") {
    // (0.6|0> + 0.8|1>) on qubit 1, |1> on qubit 0, |+> on qubit 2.
    HybridState s = init_state(
        {QubitInit::one(), QubitInit::amplitudes({0.6, 0.0}, {0.8, 0.0}), QubitInit::plus()});
    const HybridState sub = extract_qubits(s, {1});
    CHECK(fidelity(sub, init_state({QubitInit::amplitudes({0.6, 0.0}, {0.8, 0.0})})) ==
          doctest::Approx(1.0));

    const HybridState pair = extract_qubits(s, {2, 1});
    const HybridState want = init_state(
        {QubitInit::plus(), QubitInit::amplitudes({0.6, 0.0}, {0.8, 0.0})});
    CHECK(fidelity(pair, want) == doctest::Approx(1.0));
}

TEST_CASE("extract_qubits keeps entangled groups together and rejects cuts") {
    // Bell(0,1) ⊗ |+> on qubit 2.
    HybridState s = state_from_amplitudes(3, {{0b000, 0.5}, {0b011, 0.5}, {0b100, 0.5},
                                              {0b111, 0.5}});
    CHECK(fidelity(extract_qubits(s, {0, 1}), bell00()) == doctest::Approx(1.0));
    CHECK_THROWS_AS(extract_qubits(s, {0}), UnsupportedComparisonError);
    CHECK_THROWS_AS(extract_qubits(s, {0, 2}), UnsupportedComparisonError);
    CHECK_THROWS_AS(extract_qubits(s, {0, 0}), std::invalid_argument);
}

TEST_CASE("extract_qubits tolerates a measured-out complement") {
    HybridState s = state_from_amplitudes(3, {{0b000, 0.5}, {0b011, 0.5}, {0b100, 0.5},
                                              {0b111, 0.5}});
    Rng rng(9);
    measure_qubit(s, 2, MeasureBasis::Computational, rng);
    CHECK(fidelity(extract_qubits(s, {0, 1}), bell00()) == doctest::Approx(1.0));
}

TEST_CASE("probe dephasing damps pairwise coherence at the exact rate") {
    // Two branches one phase step apart; ensemble coherence must decay by
    // exp(-c (1 - cos dphi)), c = eta2 alpha^2.
    const double alpha = 4.0, eta2 = 0.2, dphi = 0.35;
    const double c = eta2 * alpha * alpha;
    const double want = std::exp(-c * (1.0 - std::cos(dphi)));
    Rng rng(17);
    const int n = 200000;
    std::complex<double> acc{0.0, 0.0};
    for (int t = 0; t < n; ++t) {
        HybridState s = init_state({QubitInit::plus()});
        const ProbeId p = attach_probe(s, {alpha, eta2, Backend::Ideal});
        apply_conditional_phase(s, 0, p, dphi);
        apply_probe_dephasing(s, p, rng);
        // 2 a0 conj(a1) e^{i k dphi}; the phase entries themselves are intact.
        acc += 2.0 * s.branches[1].amplitude * std::conj(s.branches[0].amplitude);
    }
    const double est = (acc / static_cast<double>(n)).real();
    // Var of cos(k dphi) is below 1; 3 sigma with a conservative bound.
    CHECK(std::fabs(est - want) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("lost qubits refuse gates but still measure") {
    HybridState s = bell00();
    Rng rng(23);
    lose_qubit(s, 1, rng);
    CHECK(s.is_lost(1));
    CHECK_THROWS_AS(apply_1q_gate(s, Gate1Q::X, 1), LostQubitError);
    const ProbeId p = attach_probe(s, {1.0, 0.0, Backend::Ideal});
    CHECK_THROWS_AS(apply_conditional_phase(s, 1, p, 0.1), LostQubitError);
    detach_probe(s, p);
    CHECK_NOTHROW(measure_qubit(s, 1, MeasureBasis::Computational, rng));
    CHECK_THROWS_AS(extract_qubits(s, {1}), UnsupportedComparisonError);
}

TEST_CASE("format_state renders branches and probe phases") {
    HybridState s = state_from_amplitudes(2, {{0b01, kInv}, {0b10, -kInv}});
    CHECK(format_state(s, 3) == "|10>  +0.707+0.000i\n|01>  -0.707+0.000i\n");
    const ProbeId p = attach_probe(s, {1.0, 0.0, Backend::Ideal});
    apply_conditional_phase(s, 0, p, 0.25);
    CHECK(format_state(s, 2) ==
          "|10>  +0.71+0.00i  [probe 0 phase +0.25]\n|01>  -0.71+0.00i  [probe 0 phase +0.00]\n");
}

TEST_CASE("wrap and distance helpers behave at the seam") {
    using detail::phase_difference;
    using detail::phase_distance;
    using detail::wrap_phase;
    CHECK(wrap_phase(-0.1) == doctest::Approx(2.0 * std::numbers::pi - 0.1));
    CHECK(wrap_phase(2.0 * std::numbers::pi) == doctest::Approx(0.0));
    CHECK(phase_distance(0.05, 2.0 * std::numbers::pi - 0.05) == doctest::Approx(0.1));
    CHECK(phase_difference(0.05, 2.0 * std::numbers::pi - 0.05) == doctest::Approx(0.1));
    CHECK(phase_difference(-0.05, 0.05) == doctest::Approx(-0.1));
}
