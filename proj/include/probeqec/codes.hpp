#pragma once

#include <string>
#include <utility>
#include <vector>

#include "probeqec/gates.hpp"
#include "probeqec/state.hpp"

namespace probeqec {

enum class CodeKind { BitFlip3, PhaseFlip3, Shor9, Erasure };

enum class SyndromeMode {
    TwoProbeBinary,  // two parity gates per block: Z1Z2 then Z2Z3
    OneProbeMod4,    // one probe, four-way phase read-out
};

// Probe parameters shared by every syndrome extraction a protocol performs.
// A fresh probe with these parameters is attached per gate call.
struct ProbeSettings {
    ProbeMode probe;
    double theta = 0.1;
    SyndromeMode syndrome_mode = SyndromeMode::OneProbeMod4;
    double theta_jitter = 0.0;

    Mod4Config mod4() const { return mod4_default_config(theta); }
};

// Which physical qubits hold the code, in code order. For Erasure, qubits
// come in Bell pairs: (qubits[0], qubits[1]), (qubits[2], qubits[3]), ...
struct CodeLayout {
    CodeKind code = CodeKind::BitFlip3;
    std::vector<int> qubits;
    int n = 0;  // Erasure only: number of Bell pairs

    std::vector<std::pair<int, int>> pairs() const;  // Erasure pairing
};

CodeLayout make_layout(CodeKind code, int first_qubit = 0, int erasure_n = 2);

// Ordered log of every syndrome a protocol extracted, plus feed-forward
// relevant records (symmetrizer parities, recovery outcomes).
struct SyndromeRecord {
    struct Entry {
        std::string label;
        std::vector<int> values;
    };
    std::vector<Entry> entries;

    void add(std::string label, std::vector<int> values);
    void append(const SyndromeRecord& other, const std::string& prefix);
    std::string str() const;  // "label=v,v|label=v" — histogram key
};

// Ideal encoded state c0|0_L> + c1|1_L> over layout.qubits.size() qubits in
// code order, built by direct construction (no gates). Compare against a
// register with fidelity(extract_qubits(state, layout.qubits), reference).
HybridState logical_reference(CodeKind code, Complex c0, Complex c1, int erasure_n = 2);

// --- three-qubit bit-flip code ----------------------------------------------
//
// Syndrome convention (binary (Z1Z2, Z2Z3) / mod-4 value):
//   no error    (+1, +1) / 0
//   qubit 1     (-1, +1) / 2
//   qubit 2     (-1, -1) / 3
//   qubit 3     (+1, -1) / 1

// Encode by running the correction procedure on (data, |+>, |+>): every
// syndrome occurs with probability 1/4 and the feed-forward maps each onto
// the code space — the "qubit 1" syndrome is reinterpreted as X on qubits 2
// and 3 (X on qubit 1 would flip the data instead).
SyndromeRecord bitflip3_encode(HybridState& s, const CodeLayout& layout,
                               const ProbeSettings& probes, Rng& rng);

// One extraction + feed-forward round; corrects any single X error.
SyndromeRecord bitflip3_correct(HybridState& s, const CodeLayout& layout,
                                const ProbeSettings& probes, Rng& rng);

// --- three-qubit phase-flip code (H-conjugated bit-flip) ---------------------

// Pre: data on qubit 1, qubits 2 and 3 in |+> (same as bitflip3_encode).
// Output: c0|+++> + c1|--->.
SyndromeRecord phaseflip3_encode(HybridState& s, const CodeLayout& layout,
                                 const ProbeSettings& probes, Rng& rng);

// Corrects any single Z error on the phase-flip code space.
SyndromeRecord phaseflip3_correct(HybridState& s, const CodeLayout& layout,
                                  const ProbeSettings& probes, Rng& rng);

// --- nine-qubit code ----------------------------------------------------------
//
// Blocks (1,2,3), (4,5,6), (7,8,9) with heads 1, 4, 7. |0_L> =
// [(|000> + |111>)/sqrt(2)]^⊗3.

// Pre: data on the first layout qubit, the other eight in |+>.
SyndromeRecord shor_encode(HybridState& s, const CodeLayout& layout, const ProbeSettings& probes,
                           Rng& rng);

// Full cycle: per-block bit-flip correction; symmetrizer on each block's pair
// (disentangling |000> ± |111> -> |±>(|00> + |11>), with the Odd-record Z
// byproduct undone on the block head); phase-flip correction across the
// heads; re-encode each block. Corrects any single-qubit Pauli error.
SyndromeRecord shor_correct_cycle(HybridState& s, const CodeLayout& layout,
                                  const ProbeSettings& probes, Rng& rng);

// --- erasure (Bell-pair) code --------------------------------------------------
//
// |0_L^(n)> = [(|00> + |11>)/sqrt(2)]^⊗n,  |1_L^(n)> = [(|01> + |10>)/sqrt(2)]^⊗n.

// Pre: data on the first layout qubit, the remaining 2n-1 qubits in |0>.
SyndromeRecord erasure_encode(HybridState& s, CodeLayout& layout, const ProbeSettings& probes,
                              Rng& rng);

// Grow n-1 -> n using two fresh |0> qubits already present in the register:
// sacrificially measure the second qubit of the last pair, re-entangle, and
// symmetrize both boundary pairs. Appends (fresh_a, fresh_b) to the layout.
SyndromeRecord erasure_grow(HybridState& s, CodeLayout& layout, int fresh_a, int fresh_b,
                            const ProbeSettings& probes, Rng& rng);

// Recover from the loss of `lost_qubit` (already flagged lost): measure its
// Bell partner in the ± basis, apply the logical-Z fix-up (Z on both qubits
// of the lowest-indexed surviving pair) on a |-> outcome, and drop the
// consumed pair from the layout. Throws UnrecoverableError if the partner is
// also lost or no pair would survive.
SyndromeRecord erasure_recover(HybridState& s, CodeLayout& layout, int lost_qubit,
                               const ProbeSettings& probes, Rng& rng);

// Experimental: drop a doubly-lost pair from the layout without recovery.
// The pair's values reveal the logical bit, so superposed logical states
// decohere — only basis-state logicals survive this. Kept for studying the
// failure mode.
void erasure_discard_pair(HybridState& s, CodeLayout& layout, int pair_index);

}  // namespace probeqec
