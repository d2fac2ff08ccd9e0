#include "probeqec/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "probeqec/errors.hpp"

namespace probeqec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void check_qubit(const HybridState& s, int qubit) {
    if (qubit < 0 || qubit >= s.n_qubits)
        throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                    " out of range for " + std::to_string(s.n_qubits) +
                                    "-qubit register");
}

void check_not_lost(const HybridState& s, int qubit) {
    if (s.is_lost(qubit))
        throw LostQubitError("operation on lost qubit " + std::to_string(qubit));
}

const ProbeMode& find_probe(const HybridState& s, ProbeId id) {
    auto it = s.probes.find(id);
    if (it == s.probes.end())
        throw std::invalid_argument("probe " + std::to_string(id) + " is not attached");
    return it->second;
}

// Branch ordering: bits, then phase values (all branches carry the same probe
// id set, so comparing values positionally is well defined).
bool branch_less(const BasisBranch& a, const BasisBranch& b) {
    if (a.bits != b.bits) return a.bits < b.bits;
    const std::size_t m = std::min(a.phases.size(), b.phases.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (a.phases[i].second != b.phases[i].second)
            return a.phases[i].second < b.phases[i].second;
    }
    return a.phases.size() < b.phases.size();
}

bool phases_equal(const BasisBranch& a, const BasisBranch& b) {
    if (a.phases.size() != b.phases.size()) return false;
    for (std::size_t i = 0; i < a.phases.size(); ++i) {
        if (a.phases[i].first != b.phases[i].first) return false;
        if (detail::phase_distance(a.phases[i].second, b.phases[i].second) >= kPhaseMergeTol)
            return false;
    }
    return true;
}

}  // namespace

namespace detail {

double wrap_phase(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // Fold values hugging 2pi onto ~0 so tolerance-equal phases sort adjacent.
    if (r >= kTwoPi - 0.5 * kPhaseMergeTol) r -= kTwoPi;
    return r;
}

double phase_distance(double a, double b) { return std::fabs(std::remainder(a - b, kTwoPi)); }

double phase_difference(double a, double b) { return std::remainder(a - b, kTwoPi); }

void canonicalize(HybridState& s) {
    std::sort(s.branches.begin(), s.branches.end(), branch_less);
    std::vector<BasisBranch> out;
    out.reserve(s.branches.size());
    for (auto& b : s.branches) {
        if (!out.empty() && out.back().bits == b.bits && phases_equal(out.back(), b)) {
            out.back().amplitude += b.amplitude;
        } else {
            out.push_back(std::move(b));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const BasisBranch& b) {
                                 return std::abs(b.amplitude) < kBranchPruneTol;
                             }),
              out.end());
    s.branches = std::move(out);
}

std::int64_t sample_skellam(double c, Rng& rng) {
    std::poisson_distribution<std::int64_t> pois(0.5 * c);
    const std::int64_t plus = pois(rng);
    const std::int64_t minus = pois(rng);
    return plus - minus;
}

void remove_probe_entries(HybridState& s, ProbeId id) {
    for (auto& b : s.branches) {
        auto it = std::find_if(b.phases.begin(), b.phases.end(),
                               [id](const auto& p) { return p.first == id; });
        if (it != b.phases.end()) b.phases.erase(it);
    }
    s.probes.erase(id);
    canonicalize(s);
}

}  // namespace detail

double BasisBranch::phase_of(ProbeId id) const {
    for (const auto& [pid, phi] : phases)
        if (pid == id) return phi;
    throw std::invalid_argument("branch carries no phase for probe " + std::to_string(id));
}

double HybridState::norm() const {
    double s2 = 0.0;
    for (const auto& b : branches) s2 += std::norm(b.amplitude);
    return std::sqrt(s2);
}

QubitInit QubitInit::plus() { return {{kInvSqrt2, 0}, {kInvSqrt2, 0}}; }
QubitInit QubitInit::minus() { return {{kInvSqrt2, 0}, {-kInvSqrt2, 0}}; }

QubitInit QubitInit::amplitudes(Complex c0, Complex c1) {
    const double n2 = std::norm(c0) + std::norm(c1);
    if (std::fabs(n2 - 1.0) > kNormTol)
        throw NormalizationError("qubit amplitudes not normalized: |c0|^2 + |c1|^2 = " +
                                 std::to_string(n2));
    return {c0, c1};
}

HybridState init_state(const std::vector<QubitInit>& qubits) {
    if (qubits.empty() || qubits.size() > 64)
        throw std::invalid_argument("register size must be 1..64 qubits");
    HybridState s;
    s.n_qubits = static_cast<int>(qubits.size());
    s.branches.push_back({0, {1.0, 0.0}, {}});
    for (std::size_t q = 0; q < qubits.size(); ++q) {
        const auto& init = qubits[q];
        std::vector<BasisBranch> next;
        next.reserve(s.branches.size() * 2);
        for (const auto& b : s.branches) {
            if (std::abs(init.c0) != 0.0) {
                next.push_back({b.bits, b.amplitude * init.c0, {}});
            }
            if (std::abs(init.c1) != 0.0) {
                next.push_back({b.bits | (1ull << q), b.amplitude * init.c1, {}});
            }
        }
        s.branches = std::move(next);
    }
    detail::canonicalize(s);
    return s;
}

HybridState state_from_amplitudes(int num_qubits,
                                  const std::vector<std::pair<std::uint64_t, Complex>>& amps) {
    if (num_qubits < 1 || num_qubits > 64)
        throw std::invalid_argument("register size must be 1..64 qubits");
    HybridState s;
    s.n_qubits = num_qubits;
    double n2 = 0.0;
    for (const auto& [bits, amp] : amps) {
        if (num_qubits < 64 && bits >> num_qubits)
            throw std::invalid_argument("basis label exceeds register width");
        s.branches.push_back({bits, amp, {}});
        n2 += std::norm(amp);
    }
    std::sort(s.branches.begin(), s.branches.end(), branch_less);
    for (std::size_t i = 1; i < s.branches.size(); ++i)
        if (s.branches[i].bits == s.branches[i - 1].bits)
            throw std::invalid_argument("duplicate basis label in amplitude list");
    if (std::fabs(n2 - 1.0) > kNormTol)
        throw NormalizationError("amplitude list not normalized: sum |a|^2 = " +
                                 std::to_string(n2));
    detail::canonicalize(s);
    return s;
}

ProbeId attach_probe(HybridState& s, const ProbeMode& probe) {
    if (probe.alpha < 0.0) throw std::invalid_argument("probe alpha must be >= 0");
    if (probe.eta2 < 0.0 || probe.eta2 >= 1.0)
        throw std::invalid_argument("probe eta2 must lie in [0, 1)");
    const ProbeId id = s.next_probe++;
    s.probes.emplace(id, probe);
    for (auto& b : s.branches) b.phases.emplace_back(id, 0.0);  // ids ascend, stays sorted
    return id;
}

void apply_conditional_phase(HybridState& s, int qubit, ProbeId probe, double theta) {
    check_qubit(s, qubit);
    check_not_lost(s, qubit);
    find_probe(s, probe);
    const std::uint64_t mask = 1ull << qubit;
    for (auto& b : s.branches) {
        if (!(b.bits & mask)) continue;
        for (auto& [pid, phi] : b.phases) {
            if (pid == probe) {
                phi = detail::wrap_phase(phi + theta);
                break;
            }
        }
    }
    detail::canonicalize(s);
}

void detach_probe(HybridState& s, ProbeId probe) {
    find_probe(s, probe);
    // Legal only when the probe carries no which-path information: all
    // branches must agree on its phase, so the coherent factor is global.
    for (std::size_t i = 1; i < s.branches.size(); ++i) {
        if (detail::phase_distance(s.branches[i].phase_of(probe),
                                   s.branches[0].phase_of(probe)) >= kPhaseMergeTol)
            throw SimError("probe " + std::to_string(probe) +
                           " is entangled with the register; measure it instead of detaching");
    }
    detail::remove_probe_entries(s, probe);
}

void apply_1q_gate(HybridState& s, Gate1Q g, int qubit) {
    check_qubit(s, qubit);
    check_not_lost(s, qubit);
    const std::uint64_t mask = 1ull << qubit;
    switch (g) {
        case Gate1Q::X:
            for (auto& b : s.branches) b.bits ^= mask;
            detail::canonicalize(s);
            break;
        case Gate1Q::Z:
            for (auto& b : s.branches)
                if (b.bits & mask) b.amplitude = -b.amplitude;
            break;
        case Gate1Q::H: {
            std::vector<BasisBranch> next;
            next.reserve(s.branches.size() * 2);
            for (const auto& b : s.branches) {
                const Complex a = b.amplitude * kInvSqrt2;
                BasisBranch lo = b, hi = b;
                lo.bits = b.bits & ~mask;
                lo.amplitude = a;
                hi.bits = b.bits | mask;
                hi.amplitude = (b.bits & mask) ? -a : a;
                next.push_back(std::move(lo));
                next.push_back(std::move(hi));
            }
            s.branches = std::move(next);
            detail::canonicalize(s);
            break;
        }
    }
}

int measure_qubit(HybridState& s, int qubit, MeasureBasis basis, Rng& rng) {
    check_qubit(s, qubit);
    if (basis == MeasureBasis::PlusMinus) {
        apply_1q_gate(s, Gate1Q::H, qubit);
        const int outcome = measure_qubit(s, qubit, MeasureBasis::Computational, rng);
        apply_1q_gate(s, Gate1Q::H, qubit);  // leave the qubit in |+>/|->
        return outcome;
    }
    const std::uint64_t mask = 1ull << qubit;
    double total = 0.0, p1 = 0.0;
    for (const auto& b : s.branches) {
        const double w = std::norm(b.amplitude);
        total += w;
        if (b.bits & mask) p1 += w;
    }
    if (total <= 0.0) throw SimError("measurement on a null state");
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int outcome = (uni(rng) * total < p1) ? 1 : 0;
    const double kept = outcome ? p1 : total - p1;
    const double scale = 1.0 / std::sqrt(kept);
    std::vector<BasisBranch> next;
    next.reserve(s.branches.size());
    for (auto& b : s.branches) {
        if (((b.bits & mask) != 0) == (outcome == 1)) {
            b.amplitude *= scale;
            next.push_back(std::move(b));
        }
    }
    s.branches = std::move(next);
    detail::canonicalize(s);
    return outcome;
}

void apply_probe_dephasing(HybridState& s, ProbeId probe, Rng& rng) {
    const ProbeMode& mode = find_probe(s, probe);
    const double c = mode.eta2 * mode.alpha * mode.alpha;
    if (c <= 0.0 || s.branches.size() < 2) return;
    const std::int64_t k = detail::sample_skellam(c, rng);
    if (k == 0) return;
    for (auto& b : s.branches) {
        const double phi = b.phase_of(probe);
        b.amplitude *= std::polar(1.0, static_cast<double>(k) * phi);
    }
    detail::canonicalize(s);
}

double fidelity(const HybridState& state, const HybridState& reference) {
    if (!state.probes.empty() || !reference.probes.empty())
        throw UnsupportedComparisonError("fidelity requires probe-free states");
    if (state.n_qubits != reference.n_qubits)
        throw UnsupportedComparisonError("fidelity requires equal register sizes");
    // Branches are sorted by bits (probe-free), so a two-pointer walk works.
    Complex overlap{0.0, 0.0};
    std::size_t i = 0, j = 0;
    while (i < state.branches.size() && j < reference.branches.size()) {
        const auto bi = state.branches[i].bits, bj = reference.branches[j].bits;
        if (bi == bj) {
            overlap += std::conj(reference.branches[j].amplitude) * state.branches[i].amplitude;
            ++i;
            ++j;
        } else if (bi < bj) {
            ++i;
        } else {
            ++j;
        }
    }
    return std::norm(overlap);
}

Eigen::VectorXcd to_dense(const HybridState& s) {
    if (!s.probes.empty())
        throw UnsupportedComparisonError("to_dense requires a probe-free state");
    if (s.n_qubits > 24) throw std::invalid_argument("to_dense limited to 24 qubits");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1ll << s.n_qubits);
    for (const auto& b : s.branches) {
        std::uint64_t idx = 0;
        for (int q = 0; q < s.n_qubits; ++q)
            if (b.bits & (1ull << q)) idx |= 1ull << (s.n_qubits - 1 - q);
        v[static_cast<Eigen::Index>(idx)] = b.amplitude;
    }
    return v;
}

HybridState extract_qubits(const HybridState& s, const std::vector<int>& qubits) {
    if (!s.probes.empty())
        throw UnsupportedComparisonError("extract_qubits requires a probe-free state");
    std::uint64_t keep_mask = 0;
    for (int q : qubits) {
        check_qubit(s, q);
        if (s.is_lost(q))
            throw UnsupportedComparisonError("cannot extract lost qubit " + std::to_string(q));
        if (keep_mask & (1ull << q))
            throw std::invalid_argument("duplicate qubit in extraction list");
        keep_mask |= 1ull << q;
    }
    if (qubits.empty()) throw std::invalid_argument("extraction list is empty");

    // Group branch amplitudes by the complement pattern; a product state has
    // all groups proportional to one sub-state.
    std::map<std::uint64_t, std::map<std::uint64_t, Complex>> groups;
    for (const auto& b : s.branches) {
        std::uint64_t sub = 0;
        for (std::size_t i = 0; i < qubits.size(); ++i)
            if (b.bits & (1ull << qubits[i])) sub |= 1ull << i;
        groups[b.bits & ~keep_mask][sub] += b.amplitude;
    }

    const std::map<std::uint64_t, Complex>* ref = nullptr;
    double best = -1.0;
    for (const auto& [pattern, vec] : groups) {
        double m = 0.0;
        for (const auto& [sub, a] : vec) m += std::norm(a);
        if (m > best) {
            best = m;
            ref = &vec;
        }
    }
    if (!ref || best <= 0.0) throw SimError("extraction of a null state");

    const double ref_norm = std::sqrt(best);
    for (const auto& [pattern, vec] : groups) {
        // mu = <ref|vec> / ||ref||; require vec == mu * ref/||ref|| within 1e-9.
        Complex mu{0.0, 0.0};
        for (const auto& [sub, a] : vec) {
            auto it = ref->find(sub);
            if (it != ref->end()) mu += std::conj(it->second) * a;
        }
        mu /= ref_norm;
        double dev2 = 0.0;
        for (const auto& [sub, a] : *ref) {
            Complex expect = mu * a / ref_norm;
            Complex actual{0.0, 0.0};
            auto it = vec.find(sub);
            if (it != vec.end()) actual = it->second;
            dev2 += std::norm(actual - expect);
        }
        for (const auto& [sub, a] : vec)
            if (!ref->count(sub)) dev2 += std::norm(a);
        if (std::sqrt(dev2) > 1e-9)
            throw UnsupportedComparisonError(
                "requested qubits are entangled with the rest of the register");
    }

    HybridState out;
    out.n_qubits = static_cast<int>(qubits.size());
    for (const auto& [sub, a] : *ref) out.branches.push_back({sub, a / ref_norm, {}});
    detail::canonicalize(out);
    return out;
}

std::string format_state(const HybridState& s, int decimals) {
    std::string out;
    char buf[128];
    for (const auto& b : s.branches) {
        std::string ket(static_cast<std::size_t>(s.n_qubits), '0');
        for (int q = 0; q < s.n_qubits; ++q)
            if (b.bits & (1ull << q)) ket[static_cast<std::size_t>(q)] = '1';
        std::snprintf(buf, sizeof buf, "|%s>  %+.*f%+.*fi", ket.c_str(), decimals,
                      b.amplitude.real(), decimals, b.amplitude.imag());
        out += buf;
        for (const auto& [pid, phi] : b.phases) {
            std::snprintf(buf, sizeof buf, "  [probe %u phase %+.*f]", pid, decimals, phi);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace probeqec
