// Command-line front end: named demo walkthroughs, config-driven runs and
// sweeps with CSV output.
//
// Exit codes: 0 success; 1 demo fidelity failure; 2 usage/parse/validation
// error; 3 I/O failure.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "probeqec/codes.hpp"
#include "probeqec/config.hpp"
#include "probeqec/errors.hpp"
#include "probeqec/experiments.hpp"
#include "probeqec/noise.hpp"

namespace {

constexpr const char* kVersion = "probeqec 0.1.0";

using namespace probeqec;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed, bool config_set,
                           std::uint64_t config_seed) {
    if (cli_seed) return *cli_seed;
    if (config_set) return config_seed;
    if (const char* env = std::getenv("PROBEQEC_SEED")) {
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(env, &pos);
            if (pos != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("PROBEQEC_SEED is not a valid seed: '") + env + "'");
        }
    }
    return 12345;
}

// "X:2" -> (PauliKind::X, qubit index 1). Qubits are 1-indexed on the CLI.
std::pair<PauliKind, int> parse_error_spec(const std::string& spec, int n_qubits) {
    const auto colon = spec.find(':');
    if (colon != 1 || spec.size() < 3)
        throw UsageError("--error expects P:q with P in {X,Y,Z}, got '" + spec + "'");
    PauliKind p;
    switch (std::toupper(static_cast<unsigned char>(spec[0]))) {
        case 'X': p = PauliKind::X; break;
        case 'Y': p = PauliKind::Y; break;
        case 'Z': p = PauliKind::Z; break;
        default: throw UsageError("--error expects P in {X,Y,Z}, got '" + spec + "'");
    }
    int q = 0;
    try {
        std::size_t pos = 0;
        q = std::stoi(spec.substr(colon + 1), &pos);
        if (pos != spec.size() - colon - 1) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw UsageError("--error expects an integer qubit, got '" + spec + "'");
    }
    if (q < 1 || q > n_qubits)
        throw UsageError("--error qubit must lie in 1.." + std::to_string(n_qubits));
    return {p, q - 1};
}

void print_state(const HybridState& s) { std::cout << format_state(s); }

void print_record(const char* what, const SyndromeRecord& rec) {
    std::cout << what << " record: " << rec.str() << "\n";
}

int run_demo(const std::string& code_name, const std::vector<std::string>& error_specs,
             const std::vector<int>& lose, int erasure_n, const std::string& mode_name,
             std::uint64_t seed) {
    SyndromeMode mode;
    if (mode_name == "one_probe_mod4")
        mode = SyndromeMode::OneProbeMod4;
    else if (mode_name == "two_probe_binary")
        mode = SyndromeMode::TwoProbeBinary;
    else
        throw UsageError("--mode expects one_probe_mod4 or two_probe_binary");

    CodeKind kind;
    if (code_name == "bitflip3")
        kind = CodeKind::BitFlip3;
    else if (code_name == "phaseflip3")
        kind = CodeKind::PhaseFlip3;
    else if (code_name == "shor9")
        kind = CodeKind::Shor9;
    else if (code_name == "erasure")
        kind = CodeKind::Erasure;
    else
        throw UsageError("unknown demo code '" + code_name +
                         "' (expected bitflip3, phaseflip3, shor9 or erasure)");
    if (!lose.empty() && kind != CodeKind::Erasure)
        throw UsageError("--lose applies to the erasure demo only");

    const Complex c0{kDefaultC0, 0.0}, c1{kDefaultC1, 0.0};
    Rng rng = make_trial_rng(seed, 0);
    ProbeSettings ps;
    ps.probe = ProbeMode{30.9, 0.0, Backend::Ideal};
    ps.syndrome_mode = mode;

    CodeLayout lay = make_layout(kind, 0, erasure_n);
    const int n = static_cast<int>(lay.qubits.size());

    std::vector<QubitInit> init;
    if (kind == CodeKind::Erasure) {
        init.assign(static_cast<std::size_t>(n), QubitInit::zero());
    } else {
        init.assign(static_cast<std::size_t>(n), QubitInit::plus());
    }
    init[0] = QubitInit::amplitudes(c0, c1);
    HybridState s = init_state(init);

    std::cout << "# " << code_name << " demo  (seed " << seed << ", " << mode_name << ")\n";
    std::cout << "logical input: " << kDefaultC0 << "|0> + " << kDefaultC1 << "|1>\n\n";

    SyndromeRecord rec;
    switch (kind) {
        case CodeKind::BitFlip3: rec = bitflip3_encode(s, lay, ps, rng); break;
        case CodeKind::PhaseFlip3: rec = phaseflip3_encode(s, lay, ps, rng); break;
        case CodeKind::Shor9: rec = shor_encode(s, lay, ps, rng); break;
        case CodeKind::Erasure: rec = erasure_encode(s, lay, ps, rng); break;
    }
    print_record("encode", rec);
    std::cout << "encoded state:\n";
    print_state(s);

    for (const std::string& spec : error_specs) {
        const auto [p, q] = parse_error_spec(spec, n);
        const char* name = (p == PauliKind::X) ? "X" : (p == PauliKind::Z) ? "Z" : "Y";
        std::cout << "\ninject " << name << " on qubit " << (q + 1) << ":\n";
        inject_pauli(s, p, q);
        print_state(s);
    }

    try {
        if (kind == CodeKind::Erasure) {
            for (int q : lose) {
                if (q < 1 || q > n)
                    throw UsageError("--lose qubit must lie in 1.." + std::to_string(n));
                std::cout << "\nlose qubit " << q << ":\n";
                lose_qubit(s, q - 1, rng);
                print_state(s);
                const SyndromeRecord rrec = erasure_recover(s, lay, q - 1, ps, rng);
                print_record("recover", rrec);
                std::cout << "recovered state (" << lay.n << " pairs):\n";
                print_state(s);
            }
        } else if (kind == CodeKind::Shor9) {
            std::cout << "\ncorrection cycle:\n";
            const SyndromeRecord crec = shor_correct_cycle(s, lay, ps, rng);
            print_record("cycle", crec);
            print_state(s);
        } else {
            std::cout << "\ncorrection:\n";
            const SyndromeRecord crec = (kind == CodeKind::BitFlip3)
                                            ? bitflip3_correct(s, lay, ps, rng)
                                            : phaseflip3_correct(s, lay, ps, rng);
            print_record("correct", crec);
            print_state(s);
        }
    } catch (const UnrecoverableError& e) {
        std::cout << "\nunrecoverable: " << e.what() << "\n";
        return 1;
    }

    const int ref_n = (kind == CodeKind::Erasure) ? lay.n : erasure_n;
    const double fid =
        fidelity(extract_qubits(s, lay.qubits), logical_reference(kind, c0, c1, ref_n));
    std::printf("\nfidelity vs ideal codeword: %.9f\n", fid);
    return (fid > 1.0 - 1e-9) ? 0 : 1;
}

int emit_csv(const std::vector<std::pair<ExperimentConfig, TrialStats>>& rows,
             const std::string& out_path) {
    std::string text = csv_header();
    text += '\n';
    for (const auto& [cfg, stats] : rows) {
        text += csv_row(cfg, stats);
        text += '\n';
    }
    if (out_path.empty()) {
        std::cout << text;
        if (!std::cout) {
            std::cerr << "error: failed writing to stdout\n";
            return 3;
        }
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return 3;
    }
    out << text;
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing '" << out_path << "'\n";
        return 3;
    }
    return 0;
}

int run_from_config(const std::string& path, bool require_sweep,
                    const std::optional<std::uint64_t>& cli_seed, int jobs,
                    const std::string& out_path) {
    {
        std::ifstream probe_file(path);
        if (!probe_file) {
            std::cerr << "error: cannot read '" << path << "'\n";
            return 3;
        }
    }
    ParsedConfig parsed = parse_config_file(path);
    parsed.experiment.seed = resolve_seed(cli_seed, parsed.seed_was_set, parsed.experiment.seed);

    if (require_sweep && !parsed.sweep_axis)
        throw UsageError(path + ": sweep subcommand needs a [sweep] section");

    std::vector<std::pair<ExperimentConfig, TrialStats>> rows;
    if (parsed.sweep_axis) {
        rows = sweep(parsed.experiment, *parsed.sweep_axis, jobs);
    } else {
        rows.emplace_back(parsed.experiment, run_trials(parsed.experiment, jobs));
    }
    return emit_csv(rows, out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-probe error-correction simulator"};
    app.require_subcommand(1);

    std::string demo_code;
    std::vector<std::string> demo_errors;
    std::vector<int> demo_lose;
    int demo_n = 2;
    std::string demo_mode = "one_probe_mod4";
    std::optional<std::uint64_t> cli_seed;

    CLI::App* demo = app.add_subcommand("demo", "noiseless encode/inject/correct walkthrough");
    demo->add_option("code", demo_code, "bitflip3|phaseflip3|shor9|erasure")->required();
    demo->add_option("--error", demo_errors, "inject Pauli P on 1-indexed qubit q (format P:q)");
    demo->add_option("--lose", demo_lose, "lose 1-indexed qubit (erasure only)");
    demo->add_option("--n", demo_n, "Bell-pair count (erasure only)")
        ->check(CLI::Range(1, 31));
    demo->add_option("--mode", demo_mode, "one_probe_mod4|two_probe_binary");
    demo->add_option("--seed", cli_seed, "RNG seed");

    std::string config_path, out_path, format = "csv";
    int jobs = 1;

    CLI::App* run = app.add_subcommand("run", "run trials from a config file, emit CSV");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option("--out", out_path, "write CSV here instead of stdout");
    run->add_option("--seed", cli_seed, "override the config seed");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--format", format, "output format (csv)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a sweep config, one CSV row per value");
    sweep_cmd->add_option("config", config_path, "config file path")->required();
    sweep_cmd->add_option("--out", out_path, "write CSV here instead of stdout");
    sweep_cmd->add_option("--seed", cli_seed, "override the config seed");
    sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--format", format, "output format (csv)");

    CLI::App* version = app.add_subcommand("version", "print version and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (version->parsed()) {
            std::cout << kVersion << "\n";
            return 0;
        }
        if (format != "csv") {
            std::cerr << "error: unsupported --format '" << format << "' (only csv)\n";
            return 2;
        }
        if (demo->parsed()) {
            const std::uint64_t seed = resolve_seed(cli_seed, false, 0);
            return run_demo(demo_code, demo_errors, demo_lose, demo_n, demo_mode, seed);
        }
        return run_from_config(config_path, sweep_cmd->parsed(), cli_seed, jobs, out_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
