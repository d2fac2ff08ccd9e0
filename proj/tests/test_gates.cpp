#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "probeqec/errors.hpp"
#include "probeqec/gates.hpp"

using namespace probeqec;

namespace {

const ProbeMode kIdeal{30.9, 0.0, Backend::Ideal};
constexpr double kTheta = 0.1;
constexpr double kInv = std::numbers::sqrt2 / 2.0;

Eigen::VectorXcd dense_xx(const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w = v;
    oracle::apply_1q(w, 2, 0, oracle::mat1q(Gate1Q::X));
    oracle::apply_1q(w, 2, 1, oracle::mat1q(Gate1Q::X));
    return w;
}

}  // namespace

TEST_CASE("parity gate preserves both parity subspaces exactly") {
    Rng rng(101);
    for (int t = 0; t < 40; ++t) {
        const double a = 0.1 + 0.02 * t;
        const Complex c0 = {std::cos(a), 0.0}, c1 = {0.0, std::sin(a)};

        HybridState even = state_from_amplitudes(2, {{0b00, c0}, {0b11, c1}});
        const Eigen::VectorXcd ev = to_dense(even);
        CHECK(parity_gate(even, 0, 1, kIdeal, kTheta, rng).parity == Parity::Even);
        CHECK((to_dense(even) - ev).norm() < 1e-12);

        HybridState odd = state_from_amplitudes(2, {{0b01, c0}, {0b10, c1}});
        const Eigen::VectorXcd ov = to_dense(odd);
        CHECK(parity_gate(odd, 0, 1, kIdeal, kTheta, rng).parity == Parity::Odd);
        CHECK((to_dense(odd) - ov).norm() < 1e-12);
    }
}

TEST_CASE("parity gate projects mixed-parity inputs onto the declared subspace") {
    Rng rng(103);
    int odd = 0;
    const int n = 2000;
    for (int t = 0; t < n; ++t) {
        HybridState s = state_from_amplitudes(
            2, {{0b00, 0.5}, {0b11, 0.5}, {0b01, 0.5}, {0b10, 0.5}});
        const Eigen::VectorXcd before = to_dense(s);
        const auto o = parity_gate(s, 0, 1, kIdeal, kTheta, rng);
        Eigen::VectorXcd want = before;
        if (o.parity == Parity::Odd) {
            ++odd;
            want[0b00] = want[0b11] = 0.0;
        } else {
            want[0b01] = want[0b10] = 0.0;
        }
        want.normalize();
        CHECK((to_dense(s) - want).norm() < 1e-12);
    }
    CHECK(oracle::binom_3sigma(static_cast<std::uint64_t>(odd), n, 0.5));
}

TEST_CASE("convert_to_even maps the odd subspace onto the even one") {
    Rng rng(107);
    HybridState s = state_from_amplitudes(2, {{0b01, 1.0}});  // |10>
    const auto o = parity_gate(s, 0, 1, kIdeal, kTheta, rng, /*convert_to_even=*/true);
    CHECK(o.parity == Parity::Odd);
    REQUIRE(s.branches.size() == 1);
    CHECK(s.branches[0].bits == 0b11);  // X on q2: |10> -> |11>
}

TEST_CASE("plus-minus parity gate distinguishes |++>-type from |+->-type") {
    Rng rng(109);
    for (int t = 0; t < 20; ++t) {
        HybridState pp = init_state({QubitInit::plus(), QubitInit::plus()});
        CHECK(parity_gate_pm(pp, 0, 1, kIdeal, kTheta, rng).parity == Parity::Even);
        CHECK(fidelity(pp, init_state({QubitInit::plus(), QubitInit::plus()})) ==
              doctest::Approx(1.0));

        HybridState pm = init_state({QubitInit::plus(), QubitInit::minus()});
        CHECK(parity_gate_pm(pm, 0, 1, kIdeal, kTheta, rng).parity == Parity::Odd);
        CHECK(fidelity(pm, init_state({QubitInit::plus(), QubitInit::minus()})) ==
              doctest::Approx(1.0));
    }
}

TEST_CASE("symmetrizer output is a +1 eigenstate of X1 X2 on every basis input") {
    Rng rng(113);
    const Eigen::VectorXcd inputs[4] = {
        to_dense(state_from_amplitudes(2, {{0b00, 1.0}})),
        to_dense(state_from_amplitudes(2, {{0b01, 1.0}})),
        to_dense(state_from_amplitudes(2, {{0b10, 1.0}})),
        to_dense(state_from_amplitudes(2, {{0b11, 1.0}})),
    };
    for (int x = 0; x < 4; ++x) {
        for (int t = 0; t < 16; ++t) {  // both records must appear
            HybridState s = state_from_amplitudes(2, {{static_cast<std::uint64_t>(x), 1.0}});
            symmetrizer_gate(s, 0, 1, kIdeal, kTheta, rng);
            const Eigen::VectorXcd v = to_dense(s);
            // <X1 X2> = +1 within 1e-10.
            const Complex xx = (v.adjoint() * dense_xx(v))(0);
            CHECK(xx.real() == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(std::fabs(xx.imag()) < 1e-10);
            // And the output is (|xy> + |x̄ȳ>)/sqrt 2 up to global phase.
            Eigen::VectorXcd want = (inputs[x] + dense_xx(inputs[x])) / std::numbers::sqrt2;
            CHECK(oracle::overlap2(v, want) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("symmetrizer on a GHZ-entangled block leaves the known head byproduct") {
    Rng rng(127);
    bool saw_even = false, saw_odd = false;
    for (int t = 0; t < 64; ++t) {
        // 0.6 |000> + 0.8 |111>: qubit 0 plays the role of the block head.
        HybridState s = state_from_amplitudes(3, {{0b000, 0.6}, {0b111, 0.8}});
        const auto o = symmetrizer_gate(s, 1, 2, kIdeal, kTheta, rng);
        if (o.parity == Parity::Odd) {
            saw_odd = true;
            apply_1q_gate(s, Gate1Q::Z, 0);  // undo the recorded byproduct
        } else {
            saw_even = true;
        }
        const HybridState want = state_from_amplitudes(
            3, {{0b000, 0.6 * kInv}, {0b110, 0.6 * kInv},
                {0b001, 0.8 * kInv}, {0b111, 0.8 * kInv}});
        CHECK(fidelity(s, want) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(saw_even);
    CHECK(saw_odd);
}

TEST_CASE("symmetrizer on half-fresh pairs needs no byproduct") {
    Rng rng(131);
    bool saw_even = false, saw_odd = false;
    for (int t = 0; t < 64; ++t) {
        // 0.6 |00> + 0.8 |10> (second qubit fresh): both records land on
        // 0.6 Phi+ + 0.8 Psi+ directly.
        HybridState s = state_from_amplitudes(2, {{0b00, 0.6}, {0b01, 0.8}});
        const auto o = symmetrizer_gate(s, 0, 1, kIdeal, kTheta, rng);
        (o.parity == Parity::Odd ? saw_odd : saw_even) = true;
        const HybridState want = state_from_amplitudes(
            2, {{0b00, 0.6 * kInv}, {0b11, 0.6 * kInv},
                {0b01, 0.8 * kInv}, {0b10, 0.8 * kInv}});
        CHECK(fidelity(s, want) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(saw_even);
    CHECK(saw_odd);
}

TEST_CASE("syndrome gate reproduces the single-error table") {
    const Mod4Config cfg = mod4_default_config(kTheta);
    Rng rng(137);
    const int want[4] = {0, 2, 3, 1};  // none, X1, X2, X3
    for (int e = 0; e < 4; ++e) {
        for (int t = 0; t < 10; ++t) {
            HybridState s = state_from_amplitudes(3, {{0b000, 0.6}, {0b111, 0.8}});
            if (e > 0) apply_1q_gate(s, Gate1Q::X, e - 1);
            CHECK(syndrome_gate_mod4(s, 0, 1, 2, kIdeal, cfg, rng) == want[e]);
            // The code space is untouched: undo the error, state is exact.
            if (e > 0) apply_1q_gate(s, Gate1Q::X, e - 1);
            CHECK(fidelity(s, state_from_amplitudes(3, {{0b000, 0.6}, {0b111, 0.8}})) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("syndrome gate stays accurate under small theta jitter") {
    const Mod4Config cfg = mod4_default_config(kTheta);
    Rng rng(139);
    for (int t = 0; t < 200; ++t) {
        HybridState s = state_from_amplitudes(3, {{0b000, 0.6}, {0b111, 0.8}});
        apply_1q_gate(s, Gate1Q::X, 1);
        CHECK(syndrome_gate_mod4(s, 0, 1, 2, kIdeal, cfg, rng, /*jitter=*/0.01) == 3);
    }
}

TEST_CASE("probe loss applies the advertised phase-flip back-action") {
    // Coherence of (|01> + |10>)/sqrt 2 decays by exp(-gamma),
    // gamma = eta2 alpha^2 (1 - cos theta), realized as a Z kick on q1.
    const double eta2 = 0.035 * 0.035;
    const ProbeMode lossy{30.9, eta2, Backend::Ideal};
    const double gamma = eta2 * 30.9 * 30.9 * (1.0 - std::cos(kTheta));
    Rng rng(149);
    const int n = 100000;
    double acc = 0.0;
    for (int t = 0; t < n; ++t) {
        HybridState s = state_from_amplitudes(2, {{0b01, kInv}, {0b10, kInv}});
        const auto o = parity_gate(s, 0, 1, lossy, kTheta, rng);
        CHECK(o.parity == Parity::Odd);
        // 2 Re(a01 conj(a10)) = ±1 per trajectory.
        acc += 2.0 * (s.branches[0].amplitude * std::conj(s.branches[1].amplitude)).real();
    }
    const double est = acc / n;
    const double want = std::exp(-gamma);
    const double sigma = std::sqrt((1.0 - want * want) / n);
    CHECK(std::fabs(est - want) < 3.0 * sigma + 1e-9);
}

TEST_CASE("gate argument validation") {
    Rng rng(151);
    HybridState s = init_state({QubitInit::plus(), QubitInit::plus()});
    CHECK_THROWS_AS(parity_gate(s, 1, 1, kIdeal, kTheta, rng), std::invalid_argument);
    CHECK_THROWS_AS(syndrome_gate_mod4(s, 0, 1, 1, kIdeal, mod4_default_config(kTheta), rng),
                    std::invalid_argument);
}
