#include "probeqec/config.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>

namespace probeqec {

namespace {

struct Ctx {
    const std::string& filename;
    int line;

    std::string where() const { return filename + ":" + std::to_string(line); }
};

[[noreturn]] void fail(const Ctx& ctx, const std::string& msg) {
    throw ConfigError(ctx.where() + ": " + msg);
}

std::string trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return std::string(v);
}

double parse_double(const Ctx& ctx, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(ctx, "'" + key + "' expects a number, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const Ctx& ctx, const std::string& key, const std::string& v) {
    try {
        if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
        std::size_t pos = 0;
        const std::uint64_t n = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        fail(ctx, "'" + key + "' expects a non-negative integer, got '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        const std::size_t comma = v.find(',', start);
        const std::size_t end = (comma == std::string::npos) ? v.size() : comma;
        const std::string item = trim(std::string_view(v).substr(start, end - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

ExperimentCode parse_code(const Ctx& ctx, const std::string& v) {
    if (v == "bitflip3") return ExperimentCode::BitFlip3;
    if (v == "phaseflip3") return ExperimentCode::PhaseFlip3;
    if (v == "shor9") return ExperimentCode::Shor9;
    if (v == "erasure") return ExperimentCode::Erasure;
    if (v == "parity_bench") return ExperimentCode::ParityBench;
    fail(ctx, "unknown code '" + v +
                  "' (expected bitflip3, phaseflip3, shor9, erasure or parity_bench)");
}

SyndromeMode parse_mode(const Ctx& ctx, const std::string& v) {
    if (v == "one_probe_mod4") return SyndromeMode::OneProbeMod4;
    if (v == "two_probe_binary") return SyndromeMode::TwoProbeBinary;
    fail(ctx, "unknown syndrome_mode '" + v +
                  "' (expected one_probe_mod4 or two_probe_binary)");
}

Backend parse_backend(const Ctx& ctx, const std::string& v) {
    if (v == "ideal") return Backend::Ideal;
    if (v == "homodyne") return Backend::Homodyne;
    if (v == "photon") return Backend::PhotonNumber;
    fail(ctx, "unknown backend '" + v + "' (expected ideal, homodyne or photon)");
}

bool is_known_axis(const std::string& name) {
    static const char* kAxes[] = {"alpha",  "theta",  "eta2",        "p_x",
                                  "p_z",    "p_loss", "theta_jitter", "trials"};
    for (const char* a : kAxes)
        if (name == a) return true;
    return false;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text, const std::string& filename) {
    ParsedConfig out;
    ExperimentConfig& exp = out.experiment;

    std::string section;
    bool saw_sweep = false;
    std::string sweep_axis_name;
    std::vector<double> sweep_values;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const Ctx ctx{filename, lineno};
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(ctx, "malformed section header '" + line + "'");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section != "experiment" && section != "probe" && section != "noise" &&
                section != "sweep")
                fail(ctx, "unknown section [" + section + "]");
            if (section == "sweep") saw_sweep = true;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(ctx, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) fail(ctx, "missing key before '='");
        if (value.empty()) fail(ctx, "empty value for '" + key + "'");
        if (section.empty()) fail(ctx, "key '" + key + "' appears outside any [section]");

        if (section == "experiment") {
            if (key == "code")
                exp.code = parse_code(ctx, value);
            else if (key == "syndrome_mode")
                exp.syndrome_mode = parse_mode(ctx, value);
            else if (key == "trials")
                exp.trials = parse_u64(ctx, key, value);
            else if (key == "seed") {
                exp.seed = parse_u64(ctx, key, value);
                out.seed_was_set = true;
            } else if (key == "input") {
                if (value == "fixed")
                    exp.haar_input = false;
                else if (value == "haar")
                    exp.haar_input = true;
                else
                    fail(ctx, "input must be 'fixed' or 'haar', got '" + value + "'");
            } else if (key == "erasure_n") {
                exp.erasure_n = static_cast<int>(parse_u64(ctx, key, value));
            } else {
                fail(ctx, "unknown key '" + key + "' in [experiment]");
            }
        } else if (section == "probe") {
            if (key == "alpha")
                exp.alpha = parse_double(ctx, key, value);
            else if (key == "theta")
                exp.theta = parse_double(ctx, key, value);
            else if (key == "eta2")
                exp.eta2 = parse_double(ctx, key, value);
            else if (key == "backend")
                exp.backend = parse_backend(ctx, value);
            else
                fail(ctx, "unknown key '" + key + "' in [probe]");
        } else if (section == "noise") {
            if (key == "p_x")
                exp.noise.p_x = parse_double(ctx, key, value);
            else if (key == "p_z")
                exp.noise.p_z = parse_double(ctx, key, value);
            else if (key == "p_loss")
                exp.noise.p_loss = parse_double(ctx, key, value);
            else if (key == "theta_jitter")
                exp.noise.theta_jitter = parse_double(ctx, key, value);
            else if (key == "ancilla_eps")
                exp.ancilla_eps = parse_double(ctx, key, value);
            else if (key == "schedule") {
                if (value == "none")
                    exp.noise.schedule.clear();
                else
                    exp.noise.schedule = split_list(value);
            } else {
                fail(ctx, "unknown key '" + key + "' in [noise]");
            }
        } else {  // sweep
            if (key == "axis") {
                if (!is_known_axis(value)) fail(ctx, "unknown sweep axis '" + value + "'");
                sweep_axis_name = value;
            } else if (key == "values") {
                sweep_values.clear();
                for (const std::string& item : split_list(value))
                    sweep_values.push_back(parse_double(ctx, key, item));
                if (sweep_values.empty()) fail(ctx, "'values' needs at least one number");
            } else {
                fail(ctx, "unknown key '" + key + "' in [sweep]");
            }
        }
    }

    if (saw_sweep) {
        if (sweep_axis_name.empty() || sweep_values.empty())
            throw ConfigError(filename + ": [sweep] needs both 'axis' and 'values'");
        out.sweep_axis = SweepAxis{sweep_axis_name, std::move(sweep_values)};
    }

    try {
        validate(exp);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(filename + ": " + e.what());
    }
    return out;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": " + std::strerror(errno));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace probeqec
