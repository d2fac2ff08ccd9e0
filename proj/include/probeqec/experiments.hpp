#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "probeqec/codes.hpp"
#include "probeqec/noise.hpp"

namespace probeqec {

// What a trial runs. ParityBench skips codes entirely: it measures one
// parity gate on a pure-odd input and counts misclassifications.
enum class ExperimentCode { BitFlip3, PhaseFlip3, Shor9, Erasure, ParityBench };

std::string experiment_code_name(ExperimentCode c);

struct ExperimentConfig {
    ExperimentCode code = ExperimentCode::BitFlip3;
    SyndromeMode syndrome_mode = SyndromeMode::OneProbeMod4;
    int erasure_n = 2;

    double alpha = 30.9;
    double theta = 0.1;
    double eta2 = 0.0;
    Backend backend = Backend::Ideal;

    NoiseSpec noise;
    double ancilla_eps = 0.0;  // reference correlated-XX comparison channel

    std::uint64_t trials = 1000;
    std::uint64_t seed = 12345;
    bool haar_input = false;  // default: fixed input c0 = 0.6, c1 = 0.8
};

// Canonical fixed input amplitudes used when haar_input is false.
inline constexpr double kDefaultC0 = 0.6;
inline constexpr double kDefaultC1 = 0.8;
// A trial fails when the final fidelity drops below this.
inline constexpr double kFidelityFailThreshold = 1.0 - 1e-6;

struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double logical_error_rate = 0.0;
    double mean_fidelity = 0.0;
    double wilson_lo = 0.0;  // 95% Wilson interval on the failure rate
    double wilson_hi = 0.0;
    std::map<std::string, std::uint64_t> syndrome_histogram;
};

// 95% Wilson score interval for failures/trials.
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials);

// Validate a config without running anything. Throws std::invalid_argument
// describing the offending field.
void validate(const ExperimentConfig& cfg);

// Monte Carlo over trials. Trial t draws everything from make_trial_rng(seed,
// t), so results are bit-identical for a given (config, seed) regardless of
// `jobs`. Trials run the code's encode -> inject -> correct -> fidelity cycle.
TrialStats run_trials(const ExperimentConfig& cfg, int jobs = 1);

struct SweepAxis {
    std::string name;  // alpha|theta|eta2|p_x|p_z|p_loss|theta_jitter|trials
    std::vector<double> values;
};

// One run_trials per axis value; row i uses seed + i. Rows keep axis order.
std::vector<std::pair<ExperimentConfig, TrialStats>> sweep(const ExperimentConfig& base,
                                                           const SweepAxis& axis, int jobs = 1);

// Fixed CSV schema; floats carry 9 significant digits.
std::string csv_header();
std::string csv_row(const ExperimentConfig& cfg, const TrialStats& stats);

}  // namespace probeqec
