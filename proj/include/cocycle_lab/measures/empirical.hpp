#pragma once

#include "cocycle_lab/measures/partition.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cocycle_lab::measures {

using dynsys::ScalarField;
using dynsys::System;

// Empirical measure (1/n) sum_{i<n} delta_{f^{qi} x} projected on a
// partition. Integer counts are kept so that sums of histograms built from
// the same orbit stay exact.
struct EmpiricalHistogram {
    Partition partition;
    std::vector<std::uint64_t> counts;
    std::vector<double> weights;
    std::int64_t n = 0;  // total mass in visits
    std::int64_t q = 1;

    static EmpiricalHistogram from_counts(Partition partition, std::vector<std::uint64_t> counts, std::int64_t q);
    static EmpiricalHistogram from_weights(Partition partition, std::vector<double> weights, std::int64_t n,
                                           std::int64_t q);
};

EmpiricalHistogram empirical(const System& system, const Point& x, std::int64_t n, std::int64_t q,
                             const Partition& partition);

// Half L1 distance, in [0, 1]. Throws PartitionMismatch.
double measure_distance(const EmpiricalHistogram& a, const EmpiricalHistogram& b);

// Uniform mixture (1/k) sum h_i. Computed from counts when every input has
// the same n, which makes it exact.
EmpiricalHistogram mixture(std::span<const EmpiricalHistogram> parts);

// S_n phi(x) / n along the f^q orbit.
double birkhoff(const System& system, const ScalarField& phi, const Point& x, std::int64_t n, std::int64_t q = 1);

enum class GenericStatus { convergent, oscillating, inconclusive };

const char* to_string(GenericStatus s) noexcept;

struct GenericVerdict {
    GenericStatus status = GenericStatus::inconclusive;
    std::vector<std::int64_t> horizons;
    std::vector<EmpiricalHistogram> histograms;  // one per horizon
    std::vector<double> successive_gaps;        // distance(h_i, h_{i+1})
    std::optional<EmpiricalHistogram> limit;
    // Horizon indices (i, j) of two histograms more than 10*tol apart with a
    // later return below tol.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    double max_gap = 0.0;
};

// Convergent: every successive gap <= tol.
// Oscillating: indices i < j < k with d(h_i,h_j) > 10 tol, d(h_j,h_k) > 10 tol
// and d(h_i,h_k) <= tol (the orbit leaves a measure and comes back).
GenericVerdict generic_diagnostic(const System& system, const Point& x, std::int64_t q, const Partition& partition,
                                  const std::vector<std::int64_t>& horizons, double tol);

// CSV with header "cell_label,weight".
std::string histogram_csv(const EmpiricalHistogram& h);
// "key = value" lines.
std::string verdict_record(const GenericVerdict& v);

}  // namespace cocycle_lab::measures
