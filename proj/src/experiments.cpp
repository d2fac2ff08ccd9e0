#include "probeqec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "probeqec/errors.hpp"

namespace probeqec {

namespace {

constexpr std::uint64_t kChunk = 1024;  // reduction unit; independent of jobs

struct TrialResult {
    bool failed = false;
    double fid = 0.0;
    std::string key;
};

ProbeSettings probe_settings(const ExperimentConfig& cfg) {
    return {ProbeMode{cfg.alpha, cfg.eta2, cfg.backend}, cfg.theta, cfg.syndrome_mode,
            cfg.noise.theta_jitter};
}

std::pair<Complex, Complex> draw_input(const ExperimentConfig& cfg, Rng& rng) {
    if (!cfg.haar_input) return {Complex{kDefaultC0, 0.0}, Complex{kDefaultC1, 0.0}};
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        const Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 1e-6) return {a / n, b / n};
    }
}

void apply_noise_round(HybridState& s, const std::vector<int>& qubits, const NoiseSpec& spec,
                       Rng& rng, std::vector<int>* lost_out) {
    for (const auto& e : sample_channel(qubits, spec, rng)) {
        switch (e.kind) {
            case NoiseEvent::Kind::X:
                inject_pauli(s, PauliKind::X, e.qubit);
                break;
            case NoiseEvent::Kind::Z:
                inject_pauli(s, PauliKind::Z, e.qubit);
                break;
            case NoiseEvent::Kind::Y:
                inject_pauli(s, PauliKind::Y, e.qubit);
                break;
            case NoiseEvent::Kind::Loss:
                lose_qubit(s, e.qubit, rng);
                if (lost_out) lost_out->push_back(e.qubit);
                break;
        }
    }
}

// Reference comparison channel: one correlated-XX opportunity per entangling
// pair a conventional ancilla circuit would use. Applied right after encode.
void apply_xx_faults(HybridState& s, const std::vector<std::pair<int, int>>& pairs, double eps,
                     Rng& rng, SyndromeRecord& rec) {
    if (eps <= 0.0) return;
    std::vector<int> fired;
    fired.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        fired.push_back(apply_correlated_xx(s, a, b, eps, rng) ? 1 : 0);
    rec.add("xx_fault", std::move(fired));
}

TrialResult finish(const HybridState& s, const CodeLayout& lay, const HybridState& reference,
                   SyndromeRecord& rec) {
    const double fid = fidelity(extract_qubits(s, lay.qubits), reference);
    return {fid < kFidelityFailThreshold, fid, rec.str()};
}

TrialResult trial_three(const ExperimentConfig& cfg, CodeKind kind, Rng& rng) {
    const auto [c0, c1] = draw_input(cfg, rng);
    HybridState s =
        init_state({QubitInit::amplitudes(c0, c1), QubitInit::plus(), QubitInit::plus()});
    const CodeLayout lay = make_layout(kind);
    const ProbeSettings ps = probe_settings(cfg);
    const int q1 = lay.qubits[0], q2 = lay.qubits[1], q3 = lay.qubits[2];

    SyndromeRecord rec = (kind == CodeKind::BitFlip3) ? bitflip3_encode(s, lay, ps, rng)
                                                      : phaseflip3_encode(s, lay, ps, rng);
    apply_xx_faults(s, {{q1, q2}, {q2, q3}}, cfg.ancilla_eps, rng, rec);
    for (std::size_t i = 0; i < cfg.noise.schedule.size(); ++i)
        apply_noise_round(s, lay.qubits, cfg.noise, rng, nullptr);
    rec.append((kind == CodeKind::BitFlip3) ? bitflip3_correct(s, lay, ps, rng)
                                            : phaseflip3_correct(s, lay, ps, rng),
               "");
    return finish(s, lay, logical_reference(kind, c0, c1), rec);
}

TrialResult trial_shor(const ExperimentConfig& cfg, Rng& rng) {
    const auto [c0, c1] = draw_input(cfg, rng);
    std::vector<QubitInit> init(9, QubitInit::plus());
    init[0] = QubitInit::amplitudes(c0, c1);
    HybridState s = init_state(init);
    const CodeLayout lay = make_layout(CodeKind::Shor9);
    const ProbeSettings ps = probe_settings(cfg);
    const auto& L = lay.qubits;

    SyndromeRecord rec = shor_encode(s, lay, ps, rng);
    std::vector<std::pair<int, int>> checks;
    for (int b = 0; b < 9; b += 3) {
        checks.emplace_back(L[b], L[b + 1]);
        checks.emplace_back(L[b + 1], L[b + 2]);
    }
    checks.emplace_back(L[0], L[3]);
    checks.emplace_back(L[3], L[6]);
    apply_xx_faults(s, checks, cfg.ancilla_eps, rng, rec);
    for (std::size_t i = 0; i < cfg.noise.schedule.size(); ++i)
        apply_noise_round(s, lay.qubits, cfg.noise, rng, nullptr);
    rec.append(shor_correct_cycle(s, lay, ps, rng), "");
    return finish(s, lay, logical_reference(CodeKind::Shor9, c0, c1), rec);
}

TrialResult trial_erasure(const ExperimentConfig& cfg, Rng& rng) {
    const auto [c0, c1] = draw_input(cfg, rng);
    std::vector<QubitInit> init(2 * static_cast<std::size_t>(cfg.erasure_n), QubitInit::zero());
    init[0] = QubitInit::amplitudes(c0, c1);
    HybridState s = init_state(init);
    CodeLayout lay = make_layout(CodeKind::Erasure, 0, cfg.erasure_n);
    const ProbeSettings ps = probe_settings(cfg);

    SyndromeRecord rec = erasure_encode(s, lay, ps, rng);
    apply_xx_faults(s, lay.pairs(), cfg.ancilla_eps, rng, rec);
    for (std::size_t i = 0; i < cfg.noise.schedule.size(); ++i) {
        std::vector<int> lost;
        apply_noise_round(s, lay.qubits, cfg.noise, rng, &lost);
        for (int q : lost)
            if (std::find(lay.qubits.begin(), lay.qubits.end(), q) != lay.qubits.end())
                rec.append(erasure_recover(s, lay, q, ps, rng), "");
    }
    return finish(s, lay, logical_reference(CodeKind::Erasure, c0, c1, lay.n), rec);
}

TrialResult trial_parity_bench(const ExperimentConfig& cfg, Rng& rng) {
    // Pure-odd input: an Even declaration is exactly one misclassification.
    HybridState s = init_state({QubitInit::one(), QubitInit::zero()});
    const ProbeMode probe{cfg.alpha, cfg.eta2, cfg.backend};
    const auto o = parity_gate(s, 0, 1, probe, cfg.theta, rng, false, cfg.noise.theta_jitter);
    const bool wrong = o.parity == Parity::Even;
    SyndromeRecord rec;
    rec.add("parity", {o.parity == Parity::Odd ? 1 : 0});
    return {wrong, wrong ? 0.0 : 1.0, rec.str()};
}

TrialResult run_one_trial(const ExperimentConfig& cfg, std::uint64_t t) {
    Rng rng = make_trial_rng(cfg.seed, t);
    try {
        switch (cfg.code) {
            case ExperimentCode::BitFlip3:
                return trial_three(cfg, CodeKind::BitFlip3, rng);
            case ExperimentCode::PhaseFlip3:
                return trial_three(cfg, CodeKind::PhaseFlip3, rng);
            case ExperimentCode::Shor9:
                return trial_shor(cfg, rng);
            case ExperimentCode::Erasure:
                return trial_erasure(cfg, rng);
            case ExperimentCode::ParityBench:
                return trial_parity_bench(cfg, rng);
        }
        throw std::invalid_argument("unknown experiment code");
    } catch (const UnrecoverableError&) {
        return {true, 0.0, "unrecoverable"};
    } catch (const WrongFootprintError&) {
        return {true, 0.0, "wrong_footprint"};
    }
}

const char* syndrome_mode_name(SyndromeMode m) {
    return m == SyndromeMode::TwoProbeBinary ? "two_probe_binary" : "one_probe_mod4";
}

}  // namespace

std::string experiment_code_name(ExperimentCode c) {
    switch (c) {
        case ExperimentCode::BitFlip3:
            return "bitflip3";
        case ExperimentCode::PhaseFlip3:
            return "phaseflip3";
        case ExperimentCode::Shor9:
            return "shor9";
        case ExperimentCode::Erasure:
            return "erasure";
        case ExperimentCode::ParityBench:
            return "parity_bench";
    }
    return "unknown";
}

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5th normal percentile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // At the boundaries center == half exactly, so pin the endpoints there
    // rather than leaving round-off residue.
    const double lo = (failures == 0) ? 0.0 : std::max(0.0, center - half);
    const double hi = (failures == trials) ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (!(cfg.theta > 0.0) || !(cfg.theta < std::numbers::pi))
        throw std::invalid_argument("theta must lie in (0, pi)");
    if (cfg.eta2 < 0.0 || cfg.eta2 >= 1.0)
        throw std::invalid_argument("eta2 must lie in [0, 1)");
    if (cfg.syndrome_mode == SyndromeMode::OneProbeMod4) {
        mod4_default_config(cfg.theta).validate();
        if (cfg.backend != Backend::Ideal && cfg.code != ExperimentCode::ParityBench)
            throw std::invalid_argument(
                "the one-probe mod-4 read-out needs backend=ideal; use "
                "syndrome_mode=two_probe_binary with homodyne or photon back-ends");
    }
    if (cfg.noise.p_x < 0.0 || cfg.noise.p_x > 1.0)
        throw std::invalid_argument("p_x must lie in [0, 1]");
    if (cfg.noise.p_z < 0.0 || cfg.noise.p_z > 1.0)
        throw std::invalid_argument("p_z must lie in [0, 1]");
    if (cfg.noise.p_loss < 0.0 || cfg.noise.p_loss > 1.0)
        throw std::invalid_argument("p_loss must lie in [0, 1]");
    if (cfg.noise.p_loss > 0.0 && cfg.code != ExperimentCode::Erasure)
        throw std::invalid_argument(
            "p_loss models qubit loss of the pair code; set it only for code=erasure");
    if (cfg.noise.theta_jitter < 0.0)
        throw std::invalid_argument("theta_jitter must be >= 0");
    if (cfg.ancilla_eps < 0.0 || cfg.ancilla_eps > 1.0)
        throw std::invalid_argument("ancilla_eps must lie in [0, 1]");
    if (cfg.code == ExperimentCode::Erasure && (cfg.erasure_n < 1 || cfg.erasure_n > 31))
        throw std::invalid_argument("erasure_n must lie in 1..31");
    for (const auto& entry : cfg.noise.schedule)
        if (entry != "after_encode")
            throw std::invalid_argument("unknown noise schedule step: " + entry);
}

TrialStats run_trials(const ExperimentConfig& cfg, int jobs) {
    validate(cfg);
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");

    struct Partial {
        std::uint64_t failures = 0;
        double fid_sum = 0.0;
        std::map<std::string, std::uint64_t> hist;
    };
    const std::uint64_t n_chunks = (cfg.trials + kChunk - 1) / kChunk;
    std::vector<Partial> parts(n_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        Partial& p = parts[c];
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(cfg.trials, lo + kChunk);
        for (std::uint64_t t = lo; t < hi; ++t) {
            const TrialResult r = run_one_trial(cfg, t);
            if (r.failed) ++p.failures;
            p.fid_sum += r.fid;
            ++p.hist[r.key];
        }
    };

    const int workers = static_cast<int>(std::min<std::uint64_t>(
        static_cast<std::uint64_t>(jobs), n_chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (;;) {
                        const std::uint64_t c = next.fetch_add(1);
                        if (c >= n_chunks) return;
                        run_chunk(c);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Merge in chunk order so sums do not depend on the worker count.
    TrialStats st;
    st.trials = cfg.trials;
    double fid_sum = 0.0;
    for (const auto& p : parts) {
        st.failures += p.failures;
        fid_sum += p.fid_sum;
        for (const auto& [k, v] : p.hist) st.syndrome_histogram[k] += v;
    }
    st.logical_error_rate = static_cast<double>(st.failures) / static_cast<double>(st.trials);
    st.mean_fidelity = fid_sum / static_cast<double>(st.trials);
    std::tie(st.wilson_lo, st.wilson_hi) = wilson_interval(st.failures, st.trials);
    return st;
}

std::vector<std::pair<ExperimentConfig, TrialStats>> sweep(const ExperimentConfig& base,
                                                           const SweepAxis& axis, int jobs) {
    if (axis.values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<std::pair<ExperimentConfig, TrialStats>> rows;
    rows.reserve(axis.values.size());
    for (std::size_t i = 0; i < axis.values.size(); ++i) {
        ExperimentConfig cfg = base;
        const double v = axis.values[i];
        if (axis.name == "alpha")
            cfg.alpha = v;
        else if (axis.name == "theta")
            cfg.theta = v;
        else if (axis.name == "eta2")
            cfg.eta2 = v;
        else if (axis.name == "p_x")
            cfg.noise.p_x = v;
        else if (axis.name == "p_z")
            cfg.noise.p_z = v;
        else if (axis.name == "p_loss")
            cfg.noise.p_loss = v;
        else if (axis.name == "theta_jitter")
            cfg.noise.theta_jitter = v;
        else if (axis.name == "trials") {
            if (v < 1.0 || v != std::floor(v))
                throw std::invalid_argument("trials axis values must be positive integers");
            cfg.trials = static_cast<std::uint64_t>(v);
        } else {
            throw std::invalid_argument("unknown sweep axis: " + axis.name);
        }
        cfg.seed = base.seed + i;
        rows.emplace_back(cfg, run_trials(cfg, jobs));
    }
    return rows;
}

std::string csv_header() {
    return "code,syndrome_mode,alpha,theta,eta2,p_x,p_z,p_loss,theta_jitter,trials,seed,"
           "failures,logical_error_rate,wilson_lo,wilson_hi,mean_fidelity";
}

std::string csv_row(const ExperimentConfig& cfg, const TrialStats& stats) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%s,%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%llu,%llu,%llu,%.9g,%.9g,%.9g,%.9g",
                  experiment_code_name(cfg.code).c_str(), syndrome_mode_name(cfg.syndrome_mode),
                  cfg.alpha, cfg.theta, cfg.eta2, cfg.noise.p_x, cfg.noise.p_z, cfg.noise.p_loss,
                  cfg.noise.theta_jitter, static_cast<unsigned long long>(cfg.trials),
                  static_cast<unsigned long long>(cfg.seed),
                  static_cast<unsigned long long>(stats.failures), stats.logical_error_rate,
                  stats.wilson_lo, stats.wilson_hi, stats.mean_fidelity);
    return buf;
}

}  // namespace probeqec
