#pragma once

#include "cocycle_lab/cli/config.hpp"
#include "cocycle_lab/cocycles/lyapunov.hpp"
#include "cocycle_lab/cocycles/uniformity.hpp"
#include "cocycle_lab/measures/decomposition.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cocycle_lab::cli {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitNonUniform = 10;
inline constexpr int kExitInconclusive = 11;

struct RunContext {
    std::filesystem::path out_dir;
    unsigned threads = 1;
    std::ostream* log = nullptr;  // human-readable summaries; may be null
};

int exit_code(cocycles::UniformityVerdict v) noexcept;

void write_file(const std::filesystem::path& path, const std::string& content);

// Each runner writes its CSV (and a key = value summary) under ctx.out_dir.
// probe.csv / probe_summary.txt
cocycles::ConvergenceReport run_probe(const Config& config, const RunContext& ctx);
// decompose.csv / decompose_summary.txt
measures::PrimeScanReport run_decompose(const Config& config, const RunContext& ctx);
// empirical.csv (+ empirical_summary.txt when empirical.horizons is set)
void run_empirical(const Config& config, const RunContext& ctx);
// lyapunov.csv / lyapunov_summary.txt
cocycles::LambdaEstimate run_lyapunov(const Config& config, const RunContext& ctx);

std::string lambda_summary(const cocycles::LambdaEstimate& est);

// Resolves --out, output.dir and the default "out".
std::filesystem::path output_dir(const Config& config, const std::optional<std::string>& flag);

}  // namespace cocycle_lab::cli
