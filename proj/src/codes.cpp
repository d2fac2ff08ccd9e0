#include "probeqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "probeqec/errors.hpp"

namespace probeqec {

namespace {

void expect_layout(const CodeLayout& l, CodeKind k, std::size_t size, const char* what) {
    if (l.code != k || l.qubits.size() != size)
        throw std::invalid_argument(std::string(what) + ": layout does not match the code");
}

void expect_erasure_layout(const CodeLayout& l, const char* what) {
    if (l.code != CodeKind::Erasure || l.n < 1 ||
        l.qubits.size() != 2 * static_cast<std::size_t>(l.n))
        throw std::invalid_argument(std::string(what) + ": layout is not a valid pair code");
}

// One three-qubit bit-flip syndrome extraction in {0 none, 2 q1, 3 q2, 1 q3}.
int extract3(HybridState& s, int q1, int q2, int q3, const ProbeSettings& ps, Rng& rng) {
    if (ps.syndrome_mode == SyndromeMode::OneProbeMod4)
        return syndrome_gate_mod4(s, q1, q2, q3, ps.probe, ps.mod4(), rng, ps.theta_jitter);
    const auto o12 = parity_gate(s, q1, q2, ps.probe, ps.theta, rng, false, ps.theta_jitter);
    const auto o23 = parity_gate(s, q2, q3, ps.probe, ps.theta, rng, false, ps.theta_jitter);
    const bool odd12 = o12.parity == Parity::Odd;
    const bool odd23 = o23.parity == Parity::Odd;
    if (odd12) return odd23 ? 3 : 2;
    return odd23 ? 1 : 0;
}

void correct_feedforward(HybridState& s, int syn, int q1, int q2, int q3) {
    switch (syn) {
        case 0:
            break;
        case 2:
            apply_1q_gate(s, Gate1Q::X, q1);
            break;
        case 3:
            apply_1q_gate(s, Gate1Q::X, q2);
            break;
        case 1:
            apply_1q_gate(s, Gate1Q::X, q3);
            break;
        default:
            throw SimError("unexpected syndrome value " + std::to_string(syn));
    }
}

// Encode interpretation of the same syndromes: ancillas started in |+>, so
// the "qubit 1" record must be resolved without touching the data qubit.
void encode_feedforward(HybridState& s, int syn, int q2, int q3) {
    switch (syn) {
        case 0:
            break;
        case 2:
            apply_1q_gate(s, Gate1Q::X, q2);
            apply_1q_gate(s, Gate1Q::X, q3);
            break;
        case 3:
            apply_1q_gate(s, Gate1Q::X, q2);
            break;
        case 1:
            apply_1q_gate(s, Gate1Q::X, q3);
            break;
        default:
            throw SimError("unexpected syndrome value " + std::to_string(syn));
    }
}

int encode3(HybridState& s, int q1, int q2, int q3, const ProbeSettings& ps, Rng& rng) {
    const int syn = extract3(s, q1, q2, q3, ps, rng);
    encode_feedforward(s, syn, q2, q3);
    return syn;
}

}  // namespace

std::vector<std::pair<int, int>> CodeLayout::pairs() const {
    if (code != CodeKind::Erasure)
        throw std::logic_error("pairs() is defined for the erasure layout only");
    if (qubits.size() != 2 * static_cast<std::size_t>(n))
        throw std::logic_error("erasure layout is inconsistent");
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.emplace_back(qubits[2 * k], qubits[2 * k + 1]);
    return out;
}

CodeLayout make_layout(CodeKind code, int first_qubit, int erasure_n) {
    if (first_qubit < 0) throw std::invalid_argument("first_qubit must be >= 0");
    CodeLayout l;
    l.code = code;
    std::size_t count = 0;
    switch (code) {
        case CodeKind::BitFlip3:
        case CodeKind::PhaseFlip3:
            count = 3;
            break;
        case CodeKind::Shor9:
            count = 9;
            break;
        case CodeKind::Erasure:
            if (erasure_n < 1 || erasure_n > 31)
                throw std::invalid_argument("erasure pair count must lie in 1..31");
            l.n = erasure_n;
            count = 2 * static_cast<std::size_t>(erasure_n);
            break;
    }
    l.qubits.resize(count);
    for (std::size_t i = 0; i < count; ++i) l.qubits[i] = first_qubit + static_cast<int>(i);
    return l;
}

void SyndromeRecord::add(std::string label, std::vector<int> values) {
    entries.push_back({std::move(label), std::move(values)});
}

void SyndromeRecord::append(const SyndromeRecord& other, const std::string& prefix) {
    for (const auto& e : other.entries) entries.push_back({prefix + e.label, e.values});
}

std::string SyndromeRecord::str() const {
    std::string out;
    for (const auto& e : entries) {
        if (!out.empty()) out += '|';
        out += e.label;
        out += '=';
        for (std::size_t i = 0; i < e.values.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(e.values[i]);
        }
    }
    return out;
}

HybridState logical_reference(CodeKind code, Complex c0, Complex c1, int erasure_n) {
    std::vector<std::pair<std::uint64_t, Complex>> amps;
    switch (code) {
        case CodeKind::BitFlip3:
            amps = {{0b000, c0}, {0b111, c1}};
            return state_from_amplitudes(3, amps);
        case CodeKind::PhaseFlip3: {
            const double w = 0.5 / std::numbers::sqrt2;
            for (std::uint64_t b = 0; b < 8; ++b) {
                const double sign = (std::popcount(b) % 2) ? -1.0 : 1.0;
                amps.push_back({b, (c0 + sign * c1) * w});
            }
            return state_from_amplitudes(3, amps);
        }
        case CodeKind::Shor9: {
            const double w = 0.5 / std::numbers::sqrt2;
            for (std::uint64_t p = 0; p < 8; ++p) {
                std::uint64_t bits = 0;
                for (int blk = 0; blk < 3; ++blk)
                    if ((p >> blk) & 1) bits |= 0b111ull << (3 * blk);
                const double sign = (std::popcount(p) % 2) ? -1.0 : 1.0;
                amps.push_back({bits, (c0 + sign * c1) * w});
            }
            return state_from_amplitudes(9, amps);
        }
        case CodeKind::Erasure: {
            if (erasure_n < 1 || erasure_n > 31)
                throw std::invalid_argument("erasure pair count must lie in 1..31");
            const int n = erasure_n;
            const double w = std::pow(0.5, 0.5 * n);
            for (std::uint64_t pattern = 0; pattern < (1ull << n); ++pattern) {
                std::uint64_t even = 0, odd = 0;
                for (int k = 0; k < n; ++k) {
                    if ((pattern >> k) & 1) {
                        even |= 0b11ull << (2 * k);      // pair |11>
                        odd |= 1ull << (2 * k);          // pair |10>
                    } else {
                        odd |= 1ull << (2 * k + 1);      // pair |01>
                    }
                }
                amps.push_back({even, c0 * w});
                amps.push_back({odd, c1 * w});
            }
            return state_from_amplitudes(2 * n, amps);
        }
    }
    throw std::invalid_argument("unknown code");
}

// --- three-qubit codes --------------------------------------------------------

SyndromeRecord bitflip3_encode(HybridState& s, const CodeLayout& layout,
                               const ProbeSettings& probes, Rng& rng) {
    expect_layout(layout, CodeKind::BitFlip3, 3, "bitflip3_encode");
    SyndromeRecord rec;
    rec.add("encode", {encode3(s, layout.qubits[0], layout.qubits[1], layout.qubits[2], probes,
                               rng)});
    return rec;
}

SyndromeRecord bitflip3_correct(HybridState& s, const CodeLayout& layout,
                                const ProbeSettings& probes, Rng& rng) {
    expect_layout(layout, CodeKind::BitFlip3, 3, "bitflip3_correct");
    const int q1 = layout.qubits[0], q2 = layout.qubits[1], q3 = layout.qubits[2];
    const int syn = extract3(s, q1, q2, q3, probes, rng);
    correct_feedforward(s, syn, q1, q2, q3);
    SyndromeRecord rec;
    rec.add("bitflip", {syn});
    return rec;
}

SyndromeRecord phaseflip3_encode(HybridState& s, const CodeLayout& layout,
                                 const ProbeSettings& probes, Rng& rng) {
    expect_layout(layout, CodeKind::PhaseFlip3, 3, "phaseflip3_encode");
    // Bit-flip encode followed by H^⊗3 is gate-for-gate the same circuit as
    // the ±-basis extraction with Z feed-forward (the Hadamards commute
    // through), and lands on c0|+++> + c1|--->.
    SyndromeRecord rec;
    rec.add("encode", {encode3(s, layout.qubits[0], layout.qubits[1], layout.qubits[2], probes,
                               rng)});
    for (int q : layout.qubits) apply_1q_gate(s, Gate1Q::H, q);
    return rec;
}

SyndromeRecord phaseflip3_correct(HybridState& s, const CodeLayout& layout,
                                  const ProbeSettings& probes, Rng& rng) {
    expect_layout(layout, CodeKind::PhaseFlip3, 3, "phaseflip3_correct");
    const int q1 = layout.qubits[0], q2 = layout.qubits[1], q3 = layout.qubits[2];
    for (int q : layout.qubits) apply_1q_gate(s, Gate1Q::H, q);
    const int syn = extract3(s, q1, q2, q3, probes, rng);
    correct_feedforward(s, syn, q1, q2, q3);
    for (int q : layout.qubits) apply_1q_gate(s, Gate1Q::H, q);
    SyndromeRecord rec;
    rec.add("phaseflip", {syn});
    return rec;
}

// --- nine-qubit code ------------------------------------------------------------

SyndromeRecord shor_encode(HybridState& s, const CodeLayout& layout, const ProbeSettings& probes,
                           Rng& rng) {
    expect_layout(layout, CodeKind::Shor9, 9, "shor_encode");
    const auto& L = layout.qubits;
    SyndromeRecord rec;
    // Phase-flip encode across the heads (bit-flip encode + H on heads only),
    // then bit-flip encode within each block.
    rec.add("encode_heads", {encode3(s, L[0], L[3], L[6], probes, rng)});
    for (int h : {L[0], L[3], L[6]}) apply_1q_gate(s, Gate1Q::H, h);
    std::vector<int> blocks;
    for (int b = 0; b < 9; b += 3)
        blocks.push_back(encode3(s, L[b], L[b + 1], L[b + 2], probes, rng));
    rec.add("encode_blocks", std::move(blocks));
    return rec;
}

SyndromeRecord shor_correct_cycle(HybridState& s, const CodeLayout& layout,
                                  const ProbeSettings& probes, Rng& rng) {
    expect_layout(layout, CodeKind::Shor9, 9, "shor_correct_cycle");
    const auto& L = layout.qubits;
    SyndromeRecord rec;

    std::vector<int> bf;
    for (int b = 0; b < 9; b += 3) {
        const int syn = extract3(s, L[b], L[b + 1], L[b + 2], probes, rng);
        correct_feedforward(s, syn, L[b], L[b + 1], L[b + 2]);
        bf.push_back(syn);
    }
    rec.add("bitflip", std::move(bf));

    // Disentangle each block: |000> ± |111>  ->  |±>_head ⊗ (|00> + |11>).
    // The Odd symmetrizer record flips the head's relative sign; undo it.
    std::vector<int> symm;
    for (int b = 0; b < 9; b += 3) {
        const auto o =
            symmetrizer_gate(s, L[b + 1], L[b + 2], probes.probe, probes.theta, rng,
                             probes.theta_jitter);
        if (o.parity == Parity::Odd) apply_1q_gate(s, Gate1Q::Z, L[b]);
        symm.push_back(o.parity == Parity::Odd ? 1 : 0);
    }
    rec.add("symmetrize", std::move(symm));

    // The heads now hold the three-qubit phase-flip code; correct it.
    for (int h : {L[0], L[3], L[6]}) apply_1q_gate(s, Gate1Q::H, h);
    const int head_syn = extract3(s, L[0], L[3], L[6], probes, rng);
    correct_feedforward(s, head_syn, L[0], L[3], L[6]);
    for (int h : {L[0], L[3], L[6]}) apply_1q_gate(s, Gate1Q::H, h);
    rec.add("phaseflip", {head_syn});

    // Re-expand each block from its head and Bell pair. Only the `none` and
    // `qubit 1` records can occur here, each with probability 1/2.
    std::vector<int> re;
    for (int b = 0; b < 9; b += 3)
        re.push_back(encode3(s, L[b], L[b + 1], L[b + 2], probes, rng));
    rec.add("reencode", std::move(re));
    return rec;
}

// --- erasure (Bell-pair) code ----------------------------------------------------

SyndromeRecord erasure_encode(HybridState& s, CodeLayout& layout, const ProbeSettings& probes,
                              Rng& rng) {
    expect_erasure_layout(layout, "erasure_encode");
    const auto& Q = layout.qubits;
    SyndromeRecord rec;
    // Copy the logical value across the first qubit of every pair (a GHZ
    // chain); either parity record extends the chain, no byproduct.
    std::vector<int> chain;
    for (int k = 1; k < layout.n; ++k) {
        apply_1q_gate(s, Gate1Q::H, Q[2 * k]);
        const auto o = parity_gate(s, Q[2 * k - 2], Q[2 * k], probes.probe, probes.theta, rng,
                                   /*convert_to_even=*/true, probes.theta_jitter);
        chain.push_back(o.parity == Parity::Odd ? 1 : 0);
    }
    if (!chain.empty()) rec.add("chain", std::move(chain));
    // Turn every |x0> pair into (|x0> + |x̄1>)/sqrt(2).
    std::vector<int> symm;
    for (const auto& [a, b] : layout.pairs()) {
        const auto o = symmetrizer_gate(s, a, b, probes.probe, probes.theta, rng,
                                        probes.theta_jitter);
        symm.push_back(o.parity == Parity::Odd ? 1 : 0);
    }
    rec.add("symmetrize", std::move(symm));
    return rec;
}

SyndromeRecord erasure_grow(HybridState& s, CodeLayout& layout, int fresh_a, int fresh_b,
                            const ProbeSettings& probes, Rng& rng) {
    expect_erasure_layout(layout, "erasure_grow");
    if (fresh_a == fresh_b) throw std::invalid_argument("erasure_grow: fresh qubits must differ");
    for (int f : {fresh_a, fresh_b}) {
        if (f < 0 || f >= s.n_qubits)
            throw std::invalid_argument("erasure_grow: fresh qubit out of range");
        if (s.is_lost(f)) throw LostQubitError("erasure_grow: fresh qubit is lost");
        if (std::find(layout.qubits.begin(), layout.qubits.end(), f) != layout.qubits.end())
            throw std::invalid_argument("erasure_grow: fresh qubit already belongs to the code");
    }
    const int a = layout.qubits[2 * layout.n - 2];
    const int b = layout.qubits[2 * layout.n - 1];
    SyndromeRecord rec;

    // Sacrifice the last pair's second qubit; the first then holds the bare
    // logical value (up to the known outcome, undone with X).
    const int m = measure_qubit(s, b, MeasureBasis::Computational, rng);
    if (m == 1) {
        apply_1q_gate(s, Gate1Q::X, a);
        apply_1q_gate(s, Gate1Q::X, b);
    }
    rec.add("sacrifice", {m});

    apply_1q_gate(s, Gate1Q::H, fresh_a);
    const auto oc = parity_gate(s, a, fresh_a, probes.probe, probes.theta, rng,
                                /*convert_to_even=*/true, probes.theta_jitter);
    rec.add("chain", {oc.parity == Parity::Odd ? 1 : 0});

    const auto o1 = symmetrizer_gate(s, a, b, probes.probe, probes.theta, rng,
                                     probes.theta_jitter);
    const auto o2 = symmetrizer_gate(s, fresh_a, fresh_b, probes.probe, probes.theta, rng,
                                     probes.theta_jitter);
    rec.add("symmetrize", {o1.parity == Parity::Odd ? 1 : 0, o2.parity == Parity::Odd ? 1 : 0});

    layout.qubits.push_back(fresh_a);
    layout.qubits.push_back(fresh_b);
    layout.n += 1;
    return rec;
}

SyndromeRecord erasure_recover(HybridState& s, CodeLayout& layout, int lost_qubit,
                               const ProbeSettings&, Rng& rng) {
    expect_erasure_layout(layout, "erasure_recover");
    int pair_index = -1, partner = -1;
    for (int k = 0; k < layout.n; ++k) {
        if (layout.qubits[2 * k] == lost_qubit) {
            pair_index = k;
            partner = layout.qubits[2 * k + 1];
        } else if (layout.qubits[2 * k + 1] == lost_qubit) {
            pair_index = k;
            partner = layout.qubits[2 * k];
        }
    }
    if (pair_index < 0)
        throw std::invalid_argument("erasure_recover: qubit is not part of the code");
    if (!s.is_lost(lost_qubit))
        throw std::invalid_argument("erasure_recover: qubit is not flagged lost");
    if (s.is_lost(partner))
        throw UnrecoverableError("both qubits of a Bell pair are lost");
    if (layout.n < 2) throw UnrecoverableError("no pair would survive the recovery");

    // The partner holds |m> or |m̄> correlated with the logical value; a ±
    // measurement erases the which-value information. The - outcome imprints
    // a logical Z, undone by Z⊗Z on the first surviving pair. A loss-collapsed
    // qubit has a definite value, so Z on it is a global phase and is skipped
    // (its pair may still be awaiting its own recovery).
    const int outcome = measure_qubit(s, partner, MeasureBasis::PlusMinus, rng);
    layout.qubits.erase(layout.qubits.begin() + 2 * pair_index,
                        layout.qubits.begin() + 2 * pair_index + 2);
    layout.n -= 1;
    if (outcome == 1) {
        for (int q : {layout.qubits[0], layout.qubits[1]})
            if (!s.is_lost(q)) apply_1q_gate(s, Gate1Q::Z, q);
    }
    SyndromeRecord rec;
    rec.add("recover", {outcome});
    return rec;
}

void erasure_discard_pair(HybridState& s, CodeLayout& layout, int pair_index) {
    expect_erasure_layout(layout, "erasure_discard_pair");
    if (pair_index < 0 || pair_index >= layout.n)
        throw std::invalid_argument("erasure_discard_pair: pair index out of range");
    const int a = layout.qubits[2 * pair_index];
    const int b = layout.qubits[2 * pair_index + 1];
    if (!s.is_lost(a) || !s.is_lost(b))
        throw std::invalid_argument(
            "erasure_discard_pair: only a pair whose qubits are both lost may be discarded");
    layout.qubits.erase(layout.qubits.begin() + 2 * pair_index,
                        layout.qubits.begin() + 2 * pair_index + 2);
    layout.n -= 1;
}

}  // namespace probeqec
