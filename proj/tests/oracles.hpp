#pragma once

// Independent reference implementations the tests compare the library
// against. Everything here is deliberately brute force: dense vectors, a
// truncated Fock ladder for the probe, and scalar references evaluated in
// long double. None of it reuses the code under test.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "probeqec/state.hpp"

namespace oracle {

// --- dense register (qubit 0 = most significant index bit) -------------------

Eigen::Matrix2cd mat1q(probeqec::Gate1Q g);
Eigen::VectorXcd product_state(const std::vector<Eigen::Vector2cd>& qubits);
void apply_1q(Eigen::VectorXcd& v, int n_qubits, int qubit, const Eigen::Matrix2cd& u);
double overlap2(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);  // |<a|b>|^2

// Reduced density matrix after tracing out `qubit`; the remaining qubits keep
// their order.
Eigen::MatrixXcd partial_trace(const Eigen::VectorXcd& v, int n_qubits, int qubit);

// --- truncated-Fock probe ------------------------------------------------------

// Joint register ⊗ mode state: row = computational index (same bit convention
// as above), column = Fock occupation.
struct FockJoint {
    int n_qubits = 0;
    double alpha = 0.0;
    Eigen::MatrixXcd amps;  // 2^n x dim
};

int fock_dim(double alpha);  // truncation with negligible tail: a^2 + 10a + 20
Eigen::VectorXcd coherent(double alpha, double phase, int dim);
FockJoint make_fock_joint(const Eigen::VectorXcd& reg, double alpha, int dim = 0);
void fock_conditional_phase(FockJoint& j, int qubit, double theta);
void fock_1q(FockJoint& j, int qubit, const Eigen::Matrix2cd& u);

// |<oracle|state>| with the branch representation expanded onto the same Fock
// ladder. Both sides are unit norm up to the truncation tail.
double fock_overlap(const FockJoint& j, const probeqec::HybridState& s, probeqec::ProbeId probe);

// --- scalar references ----------------------------------------------------------

// erfc via an all-positive power series (x < 2) and a Lentz continued
// fraction (x >= 2), in long double. Shares nothing with std::erfc.
long double erfc_ref(long double x);
long double p_err_ref(long double alpha_sin_theta);  // erfc(z/sqrt 2)/2

// --- statistics helpers -----------------------------------------------------------

// |k/n - p| <= 3 sqrt(p(1-p)/n): the acceptance band used everywhere a test
// checks an empirical rate against a known probability.
bool binom_3sigma(std::uint64_t k, std::uint64_t n, double p);

}  // namespace oracle
