#include "probeqec/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "probeqec/errors.hpp"

namespace probeqec {

namespace {

// Expected phase footprint of a read-out: a list of centers, each belonging
// to one outcome group.
struct Footprint {
    std::vector<double> centers;
    std::vector<int> group;  // outcome group per center
};

double min_center_separation(const std::vector<double>& centers) {
    double sep = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            sep = std::min(sep, detail::phase_distance(centers[i], centers[j]));
    return sep;
}

// Nearest-center classification of every branch. Branches farther than half
// (0.499x) the minimum center spacing from every center are outside the
// expected footprint: a wired-up-wrong circuit, not a statistical fluke.
void classify_branches(const HybridState& s, ProbeId probe, const Footprint& fp,
                       std::vector<int>& branch_group, std::vector<double>& branch_residual) {
    const double limit = 0.499 * min_center_separation(fp.centers);
    branch_group.clear();
    branch_residual.clear();
    branch_group.reserve(s.branches.size());
    branch_residual.reserve(s.branches.size());
    for (const auto& b : s.branches) {
        const double phi = b.phase_of(probe);
        std::size_t best = 0;
        double best_d = detail::phase_distance(phi, fp.centers[0]);
        for (std::size_t k = 1; k < fp.centers.size(); ++k) {
            const double d = detail::phase_distance(phi, fp.centers[k]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        if (best_d > limit)
            throw WrongFootprintError("probe phase " + std::to_string(phi) +
                                      " lies outside the expected read-out footprint");
        branch_group.push_back(fp.group[best]);
        branch_residual.push_back(detail::phase_difference(phi, fp.centers[best]));
    }
}

// Project onto the declared outcome group, renormalize, decohere within-group
// phase residuals (one Skellam kick at the probe's full photon number), and
// strip the probe. If the declared group is empty -- a misreport with no
// branch to collapse onto -- the register is left unchanged.
void project_and_strip(HybridState& s, ProbeId probe, int declared,
                       const std::vector<int>& branch_group,
                       const std::vector<double>& branch_residual, double alpha, Rng& rng) {
    double kept = 0.0;
    for (std::size_t i = 0; i < s.branches.size(); ++i)
        if (branch_group[i] == declared) kept += std::norm(s.branches[i].amplitude);

    std::vector<BasisBranch> next;
    std::vector<double> residuals;
    if (kept > 0.0) {
        const double scale = 1.0 / std::sqrt(kept);
        for (std::size_t i = 0; i < s.branches.size(); ++i) {
            if (branch_group[i] != declared) continue;
            BasisBranch b = std::move(s.branches[i]);
            b.amplitude *= scale;
            next.push_back(std::move(b));
            residuals.push_back(branch_residual[i]);
        }
        s.branches = std::move(next);
    } else {
        residuals = branch_residual;
    }

    const auto [lo, hi] = std::minmax_element(residuals.begin(), residuals.end());
    if (residuals.size() > 1 && *hi - *lo >= 1e-12) {
        // Within-group phases differ, so the probe still carries which-path
        // information at the residual scale; tracing it out damps those
        // coherences by exp(-|alpha|^2 (1 - cos dr)), realized per trajectory
        // as a random integer kick on the residuals.
        const std::int64_t k = detail::sample_skellam(alpha * alpha, rng);
        if (k != 0)
            for (std::size_t i = 0; i < s.branches.size(); ++i)
                s.branches[i].amplitude *=
                    std::polar(1.0, static_cast<double>(k) * residuals[i]);
    }
    detail::remove_probe_entries(s, probe);
}

std::size_t born_pick(const HybridState& s, double total, Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u = uni(rng) * total;
    for (std::size_t i = 0; i < s.branches.size(); ++i) {
        u -= std::norm(s.branches[i].amplitude);
        if (u < 0.0) return i;
    }
    return s.branches.size() - 1;
}

const ProbeMode& probe_mode(const HybridState& s, ProbeId probe) {
    auto it = s.probes.find(probe);
    if (it == s.probes.end())
        throw std::invalid_argument("probe " + std::to_string(probe) + " is not attached");
    return it->second;
}

}  // namespace

void Mod4Config::validate() const {
    if (std::fabs(theta1 + theta2 + theta3) > 1e-12)
        throw std::invalid_argument("mod-4 interaction phases must sum to zero");
    const double centers[7] = {0.0, theta1, -theta1, theta2, -theta2, theta3, -theta3};
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            if (detail::phase_distance(centers[i], centers[j]) < 1e-9)
                throw std::invalid_argument(
                    "mod-4 phase footprint is degenerate: two expected phases coincide");
}

Mod4Config mod4_default_config(double theta) { return {theta, 2.0 * theta, -3.0 * theta}; }

double p_err(double alpha, double theta) {
    return 0.5 * std::erfc(alpha * std::sin(theta) / std::numbers::sqrt2);
}

double p_miss_photon(double alpha, double theta) {
    const double s = std::sin(0.5 * theta);
    return std::exp(-4.0 * alpha * alpha * s * s);
}

ParityOutcome measure_probe_parity(HybridState& s, ProbeId probe, double theta, Rng& rng) {
    const ProbeMode mode = probe_mode(s, probe);
    if (!(theta > 0.0) || !(theta < std::numbers::pi))
        throw std::invalid_argument("parity read-out needs theta in (0, pi)");

    const Footprint fp{{0.0, theta, -theta}, {0, 1, 1}};  // group 0 even, 1 odd
    std::vector<int> bgroup;
    std::vector<double> bres;
    classify_branches(s, probe, fp, bgroup, bres);

    double total = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < s.branches.size(); ++i) {
        const double w = std::norm(s.branches[i].amplitude);
        total += w;
        if (bgroup[i] == 1) odd += w;
    }
    if (total <= 0.0) throw SimError("parity read-out on a null state");

    ParityOutcome out;
    int declared = 0;
    switch (mode.backend) {
        case Backend::Ideal: {
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            declared = (uni(rng) * total < odd) ? 1 : 0;
            break;
        }
        case Backend::Homodyne: {
            // One quadrature sample from the Born-selected branch; the sign
            // of x is not used, so +theta and -theta stay unresolved.
            const std::size_t i = born_pick(s, total, rng);
            const double mean = 2.0 * mode.alpha * std::sin(s.branches[i].phase_of(probe));
            std::normal_distribution<double> gauss(mean, 1.0);
            const double x = gauss(rng);
            out.quadrature = x;
            declared = (std::fabs(x) < mode.alpha * std::sin(theta)) ? 0 : 1;
            break;
        }
        case Backend::PhotonNumber: {
            // Displace by -alpha and count; an undisturbed probe is dark.
            const std::size_t i = born_pick(s, total, rng);
            const double half = 0.5 * s.branches[i].phase_of(probe);
            const double mean = 4.0 * mode.alpha * mode.alpha * std::sin(half) * std::sin(half);
            std::uint64_t n = 0;
            if (mean > 0.0) {
                std::poisson_distribution<std::uint64_t> pois(mean);
                n = pois(rng);
            }
            out.photons = n;
            declared = (n == 0) ? 0 : 1;
            break;
        }
    }
    out.parity = declared ? Parity::Odd : Parity::Even;
    project_and_strip(s, probe, declared, bgroup, bres, mode.alpha, rng);
    return out;
}

int measure_probe_phase_mod4(HybridState& s, ProbeId probe, const Mod4Config& cfg, Rng& rng) {
    const ProbeMode mode = probe_mode(s, probe);
    if (mode.backend != Backend::Ideal)
        throw std::invalid_argument(
            "four-way phase read-out is only defined for the ideal back-end");
    cfg.validate();

    const Footprint fp{{0.0, cfg.theta1, -cfg.theta1, cfg.theta2, -cfg.theta2, cfg.theta3,
                        -cfg.theta3},
                       {0, 1, 1, 2, 2, 3, 3}};
    std::vector<int> bgroup;
    std::vector<double> bres;
    classify_branches(s, probe, fp, bgroup, bres);

    double w[4] = {0.0, 0.0, 0.0, 0.0};
    double total = 0.0;
    for (std::size_t i = 0; i < s.branches.size(); ++i) {
        const double m = std::norm(s.branches[i].amplitude);
        w[bgroup[i]] += m;
        total += m;
    }
    if (total <= 0.0) throw SimError("phase read-out on a null state");

    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u = uni(rng) * total;
    int declared = 3;
    for (int g = 0; g < 3; ++g) {
        u -= w[g];
        if (u < 0.0) {
            declared = g;
            break;
        }
    }
    project_and_strip(s, probe, declared, bgroup, bres, mode.alpha, rng);

    // Phase groups {0}, {+-theta1}, {+-theta2}, {+-theta3} announce, in that
    // order: no error, flip on qubit 1, qubit 2, qubit 3.
    static constexpr int kSyndrome[4] = {0, 2, 3, 1};
    return kSyndrome[declared];
}

}  // namespace probeqec
