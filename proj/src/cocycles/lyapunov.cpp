#include "cocycle_lab/cocycles/lyapunov.hpp"

#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace cocycle_lab::cocycles {

namespace {

constexpr double kRoundingSlack = 1e-12;

}  // namespace

LambdaEstimate lambda_estimate(const MatrixGenerator& gen, const System& system, std::uint64_t seed,
                               std::size_t mc_count, const std::vector<std::int64_t>& n_schedule,
                               const LambdaOptions& options) {
    if (mc_count < 1) throw InvalidArgument("lambda_estimate: mc_count must be >= 1");
    if (n_schedule.empty()) throw InvalidArgument("lambda_estimate: empty horizon schedule");
    for (std::size_t i = 0; i < n_schedule.size(); ++i)
        if (n_schedule[i] < 1 || (i && n_schedule[i] <= n_schedule[i - 1]))
            throw InvalidArgument("lambda_estimate: horizons must be positive and strictly increasing");
    system.check_budget(n_schedule.back());

    const auto points = system.sample(seed, mc_count);
    const std::size_t k = n_schedule.size();
    std::vector<std::vector<double>> per_point(mc_count);
    util::parallel_for(mc_count, options.threads, [&](std::size_t i) {
        auto logs = log_norm_series(gen, system, points[i], n_schedule, options.norm);
        for (std::size_t j = 0; j < k; ++j) logs[j] /= static_cast<double>(n_schedule[j]);
        per_point[i] = std::move(logs);
    });

    LambdaEstimate est;
    est.horizons = n_schedule;
    est.means.assign(k, 0.0);
    est.error_bars.assign(k, 0.0);
    const std::size_t batches = std::min<std::size_t>(static_cast<std::size_t>(std::max(options.batches, 1)), mc_count);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> batch_means(batches, 0.0);
        double total = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            const std::size_t lo = mc_count * b / batches;
            const std::size_t hi = mc_count * (b + 1) / batches;
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += per_point[i][j];
            total += s;
            batch_means[b] = s / static_cast<double>(hi - lo);
        }
        const double mean = total / static_cast<double>(mc_count);
        est.means[j] = mean;
        if (batches > 1) {
            double ss = 0.0;
            for (double m : batch_means) ss += (m - mean) * (m - mean);
            const auto nb = static_cast<double>(batches);
            est.error_bars[j] = std::sqrt(ss / (nb - 1.0) / nb);
        }
    }
    const auto best = static_cast<std::size_t>(std::distance(est.means.begin(), std::min_element(est.means.begin(), est.means.end())));
    est.estimate = est.means[best];
    est.estimate_error = est.error_bars[best];

    est.max_violation = -INFINITY;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            const std::int64_t sum = n_schedule[a] + n_schedule[b];
            const auto it = std::lower_bound(n_schedule.begin(), n_schedule.end(), sum);
            if (it == n_schedule.end() || *it != sum) continue;
            const auto c = static_cast<std::size_t>(std::distance(n_schedule.begin(), it));
            const double na = static_cast<double>(n_schedule[a]);
            const double nb = static_cast<double>(n_schedule[b]);
            const double violation = est.means[c] - (na * est.means[a] + nb * est.means[b]) / (na + nb);
            const double bound =
                est.error_bars[c] + (na * est.error_bars[a] + nb * est.error_bars[b]) / (na + nb) + kRoundingSlack;
            ++est.pairs_checked;
            if (violation > bound) est.violations_within_error = false;
            if (violation > est.max_violation) {
                est.max_violation = violation;
                est.violation_bound = bound;
            }
        }
    if (est.pairs_checked == 0) est.max_violation = 0.0;
    return est;
}

std::string lambda_csv(const LambdaEstimate& est) {
    std::string out = "n,a_n,error_bar\n";
    for (std::size_t j = 0; j < est.horizons.size(); ++j)
        out += fmt::format("{},{},{}\n", est.horizons[j], est.means[j], est.error_bars[j]);
    return out;
}

}  // namespace cocycle_lab::cocycles
