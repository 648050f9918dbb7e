#include "cocycle_lab/cli/experiments.hpp"

#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/measures/empirical.hpp"
#include "cocycle_lab/util/rng.hpp"

#include <fmt/format.h>
#include <fstream>
#include <ostream>

namespace cocycle_lab::cli {

int exit_code(cocycles::UniformityVerdict v) noexcept {
    switch (v) {
        case cocycles::UniformityVerdict::uniform_consistent: return kExitOk;
        case cocycles::UniformityVerdict::non_uniform_evidence: return kExitNonUniform;
        case cocycles::UniformityVerdict::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw Error("cannot write " + path.string());
}

std::filesystem::path output_dir(const Config& config, const std::optional<std::string>& flag) {
    if (flag) return *flag;
    return config.string("output.dir", "out");
}

namespace {

void log(const RunContext& ctx, const std::string& text) {
    if (ctx.log) *ctx.log << text;
}

double tolerance(const Config& config, const std::string& key, double fallback) {
    const double t = config.real(key, fallback);
    if (!(t > 0.0)) config.fail(key, "tolerance must be positive");
    return t;
}

}  // namespace

cocycles::ConvergenceReport run_probe(const Config& config, const RunContext& ctx) {
    const auto system = build_system(config);
    const auto gen = build_cocycle(config, system);
    const auto probes = build_probes(config, system);
    if (probes.size() < 2) config.fail("probe.count", "at least two probes are required");
    const auto schedule = horizons(config, "horizons");
    if (schedule.size() < 2 || schedule.back() < 16 * schedule.front())
        config.fail("horizons", "need at least two horizons with last >= 16 * first");
    cocycles::ProbeOptions opts;
    opts.norm = norm(config);
    opts.threads = ctx.threads;
    if (config.has("probe.lambda_reference")) opts.lambda_reference = config.real("probe.lambda_reference", 0.0);
    const auto report = cocycles::uniformity_probe(gen, *system, probes, schedule, tolerance(config, "tol", 0.01), opts);
    write_file(ctx.out_dir / "probe.csv", cocycles::report_csv(report));
    const auto summary = cocycles::report_summary(report) +
                         fmt::format("system = {}\ncocycle = {}\n", system->name(), gen.description());
    write_file(ctx.out_dir / "probe_summary.txt", summary);
    log(ctx, summary);
    return report;
}

measures::PrimeScanReport run_decompose(const Config& config, const RunContext& ctx) {
    const auto system = build_system(config);
    if (!config.has("decompose.d")) config.fail("decompose.d", "d is required");
    const auto d = config.integer("decompose.d", 0);
    if (d < 2) config.fail("decompose.d", "d must be >= 2");
    const auto n = config.integer("decompose.n", 100000);
    if (n < 1) config.fail("decompose.n", "n must be >= 1");
    const auto x0 = point_or_sample(config, "decompose.x0", system, 0xdc);
    const auto partition = build_partition(config, *system);
    const auto report =
        measures::prime_power_scan(*system, d, x0, n, partition, tolerance(config, "decompose.tol", 0.05));
    write_file(ctx.out_dir / "decompose.csv", measures::prime_scan_csv(report));
    std::string summary = fmt::format("d = {}\nn = {}\nx0 = {}\nsystem = {}\npartition = {}\n", d, n,
                                      dynsys::format_point(x0), system->name(), partition.describe());
    for (const auto& e : report.primes)
        summary += fmt::format("p{}.verdict = {}\n", e.prime, measures::to_string(e.report.verdict));
    summary += fmt::format("d.verdict = {}\nsound = {}\n", measures::to_string(report.full.verdict), report.sound);
    write_file(ctx.out_dir / "decompose_summary.txt", summary);
    log(ctx, summary);
    return report;
}

void run_empirical(const Config& config, const RunContext& ctx) {
    const auto system = build_system(config);
    const auto n = config.integer("empirical.n", 100000);
    const auto q = config.integer("empirical.q", 1);
    if (n < 1) config.fail("empirical.n", "n must be >= 1");
    if (q < 1) config.fail("empirical.q", "q must be >= 1");
    const auto x0 = point_or_sample(config, "empirical.x0", system, 0xe1);
    const auto partition = build_partition(config, *system);
    const auto hist = measures::empirical(*system, x0, n, q, partition);
    write_file(ctx.out_dir / "empirical.csv", measures::histogram_csv(hist));
    std::string summary = fmt::format("n = {}\nq = {}\nx0 = {}\npartition = {}\n", n, q, dynsys::format_point(x0),
                                      partition.describe());
    if (config.has("empirical.horizons")) {
        const auto verdict = measures::generic_diagnostic(*system, x0, q, partition, horizons(config, "empirical.horizons"),
                                                          tolerance(config, "empirical.tol", 0.01));
        summary += measures::verdict_record(verdict);
    }
    write_file(ctx.out_dir / "empirical_summary.txt", summary);
    log(ctx, summary);
}

std::string lambda_summary(const cocycles::LambdaEstimate& est) {
    return fmt::format(
        "lambda_estimate = {}\nestimate_error = {}\nmax_violation = {}\nviolation_bound = {}\npairs_checked = "
        "{}\nviolations_within_error = {}\n",
        est.estimate, est.estimate_error, est.max_violation, est.violation_bound, est.pairs_checked,
        est.violations_within_error);
}

cocycles::LambdaEstimate run_lyapunov(const Config& config, const RunContext& ctx) {
    const auto system = build_system(config);
    const auto gen = build_cocycle(config, system);
    const auto mc = config.integer("lyapunov.mc", 100);
    if (mc < 1 || mc > 10'000'000) config.fail("lyapunov.mc", "must be in [1, 10^7]");
    const auto schedule = horizons(config, config.has("lyapunov.horizons") ? "lyapunov.horizons" : "horizons");
    cocycles::LambdaOptions opts;
    opts.norm = norm(config);
    opts.threads = ctx.threads;
    const auto est = cocycles::lambda_estimate(gen, *system, util::derive_seed(config.seed(), 0x1a), static_cast<std::size_t>(mc), schedule, opts);
    write_file(ctx.out_dir / "lyapunov.csv", cocycles::lambda_csv(est));
    const auto summary = lambda_summary(est) + fmt::format("cocycle = {}\nsystem = {}\n", gen.description(), system->name());
    write_file(ctx.out_dir / "lyapunov_summary.txt", summary);
    log(ctx, summary);
    return est;
}

}  // namespace cocycle_lab::cli
