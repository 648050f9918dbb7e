#include "cocycle_lab/cocycles/uniformity.hpp"

#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace cocycle_lab::cocycles {

const char* to_string(UniformityVerdict v) noexcept {
    switch (v) {
        case UniformityVerdict::uniform_consistent: return "uniform-consistent";
        case UniformityVerdict::non_uniform_evidence: return "non-uniform-evidence";
        case UniformityVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

ConvergenceReport uniformity_probe(const MatrixGenerator& gen, const System& system, const std::vector<Point>& probes,
                                   const std::vector<std::int64_t>& n_schedule, double tol,
                                   const ProbeOptions& options) {
    if (probes.size() < 2) throw InvalidArgument("uniformity_probe: need at least two probes");
    if (n_schedule.size() < 2) throw InvalidArgument("uniformity_probe: need at least two horizons");
    for (std::size_t i = 0; i < n_schedule.size(); ++i)
        if (n_schedule[i] < 1 || (i && n_schedule[i] <= n_schedule[i - 1]))
            throw InvalidArgument("uniformity_probe: horizons must be positive and strictly increasing");
    if (n_schedule.back() < 16 * n_schedule.front())
        throw InvalidArgument("uniformity_probe: last horizon must be at least 16 times the first");
    if (!(tol > 0.0)) throw InvalidArgument("uniformity_probe: tol must be positive");
    for (const auto& x : probes) system.check_point(x);
    system.check_budget(n_schedule.back());

    const std::int64_t last = n_schedule.back();
    const std::int64_t half = last / 2;
    std::vector<std::int64_t> merged = n_schedule;
    merged.push_back(half);
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    const auto half_index = static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), half) - merged.begin());

    const std::size_t k = n_schedule.size();
    ConvergenceReport report;
    report.horizons = n_schedule;
    report.tol = tol;
    report.values.assign(probes.size(), {});
    report.last_gaps.assign(probes.size(), 0.0);
    report.oscillations.assign(probes.size(), 0.0);

    util::parallel_for(probes.size(), options.threads, [&](std::size_t p) {
        const auto logs = log_norm_series(gen, system, probes[p], merged, options.norm);
        std::vector<double> v;
        v.reserve(k);
        for (std::size_t j = 0, m = 0; j < k; ++j) {
            while (merged[m] != n_schedule[j]) ++m;
            v.push_back(logs[m] / static_cast<double>(merged[m]));
        }
        const double v_half = logs[half_index] / static_cast<double>(half);
        report.last_gaps[p] = std::fabs(v.back() - v_half);
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        report.oscillations[p] = *hi - *lo;
        report.values[p] = std::move(v);
    });

    // Reduction in probe order keeps the report independent of threading.
    double running = INFINITY;
    for (std::size_t j = 0; j < k; ++j) {
        HorizonStats s;
        s.n = n_schedule[j];
        s.min = INFINITY;
        s.max = -INFINITY;
        double sum = 0.0;
        for (const auto& v : report.values) {
            s.min = std::min(s.min, v[j]);
            s.max = std::max(s.max, v[j]);
            sum += v[j];
        }
        s.mean = sum / static_cast<double>(report.values.size());
        s.mean = std::clamp(s.mean, s.min, s.max);
        s.spread = s.max - s.min;
        running = std::min(running, s.mean);
        s.lambda_est = options.lambda_reference.value_or(running);
        report.stats.push_back(s);
    }
    report.lambda_estimate = options.lambda_reference.value_or(running);

    for (std::size_t p = 0; p < probes.size(); ++p)
        if (report.values[p].back() > report.lambda_estimate + 5.0 * tol) report.furman_violations.push_back(p);

    const double final_spread = report.stats.back().spread;
    const double worst_osc = *std::max_element(report.oscillations.begin(), report.oscillations.end());
    const double worst_gap = *std::max_element(report.last_gaps.begin(), report.last_gaps.end());
    if (worst_osc >= 10.0 * tol || final_spread >= 10.0 * tol)
        report.verdict = UniformityVerdict::non_uniform_evidence;
    else if (final_spread <= tol && worst_gap <= tol)
        report.verdict = UniformityVerdict::uniform_consistent;
    else
        report.verdict = UniformityVerdict::inconclusive;
    return report;
}

std::string report_csv(const ConvergenceReport& report) {
    std::string out = "n,min,max,mean,spread,lambda_est\n";
    for (const auto& s : report.stats)
        out += fmt::format("{},{},{},{},{},{}\n", s.n, s.min, s.max, s.mean, s.spread, s.lambda_est);
    return out;
}

std::string report_summary(const ConvergenceReport& report) {
    const double worst_osc = *std::max_element(report.oscillations.begin(), report.oscillations.end());
    const double worst_gap = *std::max_element(report.last_gaps.begin(), report.last_gaps.end());
    return fmt::format(
        "verdict = {}\nprobes = {}\nfinal_spread = {}\nmax_last_gap = {}\nmax_oscillation = {}\nlambda_estimate = "
        "{}\nfurman_violations = {}\ntol = {}\n",
        to_string(report.verdict), report.values.size(), report.stats.back().spread, worst_gap, worst_osc,
        report.lambda_estimate, report.furman_violations.size(), report.tol);
}

}  // namespace cocycle_lab::cocycles
