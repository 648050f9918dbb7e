#pragma once

#include "cocycle_lab/cocycles/cocycle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocycle_lab::cocycles {

// Finite horizons can only gather evidence; the verdict names say so.
enum class UniformityVerdict { uniform_consistent, non_uniform_evidence, inconclusive };

const char* to_string(UniformityVerdict v) noexcept;

struct HorizonStats {
    std::int64_t n = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double spread = 0.0;
    double lambda_est = 0.0;  // running min of the means (or the supplied reference)
};

// Statistics of v_x(n) = (1/n) log||A(n,x)|| over a probe set.
struct ConvergenceReport {
    std::vector<std::int64_t> horizons;
    std::vector<HorizonStats> stats;
    std::vector<std::vector<double>> values;  // values[probe][horizon]
    std::vector<double> last_gaps;            // |v(N) - v(floor(N/2))| per probe, N = last horizon
    std::vector<double> oscillations;         // max - min of v over the schedule, per probe
    double lambda_estimate = 0.0;
    double tol = 0.0;
    // Probes whose final value exceeds lambda_estimate + 5 tol (upper bound
    // expected for uniquely ergodic bases, heuristic margin).
    std::vector<std::size_t> furman_violations;
    UniformityVerdict verdict = UniformityVerdict::inconclusive;
};

struct ProbeOptions {
    Norm norm = Norm::inf;
    unsigned threads = 1;
    std::optional<double> lambda_reference;
};

// Verdict rules:
//   non-uniform-evidence : some probe oscillates by >= 10 tol, or final spread >= 10 tol
//   uniform-consistent   : final spread <= tol and every last gap <= tol
//   inconclusive         : otherwise
ConvergenceReport uniformity_probe(const MatrixGenerator& gen, const System& system, const std::vector<Point>& probes,
                                   const std::vector<std::int64_t>& n_schedule, double tol,
                                   const ProbeOptions& options = {});

// CSV: n,min,max,mean,spread,lambda_est
std::string report_csv(const ConvergenceReport& report);
std::string report_summary(const ConvergenceReport& report);

}  // namespace cocycle_lab::cocycles
