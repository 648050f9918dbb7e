#pragma once

#include "cocycle_lab/measures/empirical.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cocycle_lab::measures {

enum class ComponentVerdict {
    distinct,  // every pair of phase components is more than tol apart
    single,    // every pair is within tol: f^p looks uniquely ergodic
    mixed,
};

const char* to_string(ComponentVerdict v) noexcept;

// Empirical check of the ergodic decomposition of f^p along the orbit of x0:
//   nu_i  = empirical measure of the f^p orbit of f^i x0 (length n), 0 <= i < p
//   mu    = empirical measure of the f orbit of x0 (length n p)
// mu should equal (1/p) sum nu_i, and the nu_i are either pairwise distinct
// (p ergodic components permuted by f) or all equal.
struct PowerDecompositionReport {
    std::int64_t p = 0;
    std::vector<EmpiricalHistogram> components;
    EmpiricalHistogram mu_hat;
    EmpiricalHistogram reconstruction;
    double reconstruction_error = 0.0;
    bool reconstruction_ok = false;
    double min_pairwise = 0.0;
    double max_pairwise = 0.0;
    ComponentVerdict verdict = ComponentVerdict::mixed;
};

PowerDecompositionReport power_decomposition_check(const System& system, std::int64_t p, const Point& x0,
                                                   std::int64_t n, const Partition& partition, double tol);

std::vector<std::int64_t> prime_divisors(std::int64_t d);

struct PrimeScanEntry {
    std::int64_t prime = 0;
    PowerDecompositionReport report;
};

// Runs the check for every prime p | d and for d itself. If the d-power
// splits into distinct components then some prime power must too; `sound`
// records whether the scan agrees with that.
struct PrimeScanReport {
    std::int64_t d = 0;
    std::vector<PrimeScanEntry> primes;
    PowerDecompositionReport full;
    bool sound = true;
};

PrimeScanReport prime_power_scan(const System& system, std::int64_t d, const Point& x0, std::int64_t n,
                                 const Partition& partition, double tol);

// CSV: p,reconstruction_error,min_pairwise_component_distance,verdict
std::string prime_scan_csv(const PrimeScanReport& report);

}  // namespace cocycle_lab::measures
