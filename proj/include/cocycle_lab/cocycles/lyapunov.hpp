#pragma once

#include "cocycle_lab/cocycles/cocycle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cocycle_lab::cocycles {

// Monte Carlo estimate of the top exponent
//   Lambda = lim (1/n) int log||A(n,x)|| dmu = inf_n (1/n) int log||A(n,x)|| dmu.
struct LambdaEstimate {
    std::vector<std::int64_t> horizons;
    std::vector<double> means;       // a_n
    std::vector<double> error_bars;  // batch-means standard error of a_n
    double estimate = 0.0;           // min over horizons of a_n
    double estimate_error = 0.0;     // error bar at the minimizing horizon

    // Subadditivity: (n+m) a_{n+m} <= n a_n + m a_m for every schedule pair
    // with n+m in the schedule. Violations are compared against the
    // propagated error bars (plus 1e-12 of rounding slack).
    double max_violation = 0.0;     // max of a_{n+m} - (n a_n + m a_m)/(n+m)
    double violation_bound = 0.0;   // error bar budget at the worst pair
    bool violations_within_error = true;
    std::size_t pairs_checked = 0;
};

struct LambdaOptions {
    Norm norm = Norm::inf;
    unsigned threads = 1;
    int batches = 10;
};

LambdaEstimate lambda_estimate(const MatrixGenerator& gen, const System& system, std::uint64_t seed,
                               std::size_t mc_count, const std::vector<std::int64_t>& n_schedule,
                               const LambdaOptions& options = {});

// CSV: n,a_n,error_bar
std::string lambda_csv(const LambdaEstimate& est);

}  // namespace cocycle_lab::cocycles
