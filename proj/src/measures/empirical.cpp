#include "cocycle_lab/measures/empirical.hpp"

#include "cocycle_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <sstream>

namespace cocycle_lab::measures {

EmpiricalHistogram EmpiricalHistogram::from_counts(Partition partition, std::vector<std::uint64_t> counts,
                                                   std::int64_t q) {
    if (counts.size() != partition.size()) throw InvalidArgument("histogram: count vector does not match partition");
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) throw InvalidArgument("histogram: n must be >= 1");
    EmpiricalHistogram h{std::move(partition), std::move(counts), {}, static_cast<std::int64_t>(total), q};
    h.weights.resize(h.counts.size());
    const auto n = static_cast<double>(total);
    for (std::size_t i = 0; i < h.counts.size(); ++i) h.weights[i] = static_cast<double>(h.counts[i]) / n;
    return h;
}

EmpiricalHistogram EmpiricalHistogram::from_weights(Partition partition, std::vector<double> weights, std::int64_t n,
                                                    std::int64_t q) {
    if (weights.size() != partition.size()) throw InvalidArgument("histogram: weight vector does not match partition");
    if (n < 1) throw InvalidArgument("histogram: n must be >= 1");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw InvalidArgument("histogram: negative weight");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) throw InvalidArgument("histogram: weights must sum to 1");
    return EmpiricalHistogram{std::move(partition), {}, std::move(weights), n, q};
}

EmpiricalHistogram empirical(const System& system, const Point& x, std::int64_t n, std::int64_t q,
                             const Partition& partition) {
    if (n < 1) throw InvalidArgument("empirical: n must be >= 1");
    if (q < 1) throw InvalidArgument("empirical: q must be >= 1");
    if (n > system.budget() / q) throw BudgetExceeded(n > INT64_MAX / q ? INT64_MAX : n * q, system.budget());
    std::vector<std::uint64_t> counts(partition.size(), 0);
    auto orbit = system.cursor(x, q);
    for (std::int64_t i = 0; i < n; ++i) {
        ++counts[partition.locate(orbit->current())];
        if (i + 1 < n) orbit->advance();
    }
    return EmpiricalHistogram::from_counts(partition, std::move(counts), q);
}

double measure_distance(const EmpiricalHistogram& a, const EmpiricalHistogram& b) {
    if (!(a.partition == b.partition))
        throw PartitionMismatch("histograms over " + a.partition.describe() + " and " + b.partition.describe());
    if (!a.counts.empty() && !b.counts.empty() && a.n == b.n) {
        std::uint64_t diff = 0;
        for (std::size_t i = 0; i < a.counts.size(); ++i)
            diff += a.counts[i] > b.counts[i] ? a.counts[i] - b.counts[i] : b.counts[i] - a.counts[i];
        return static_cast<double>(diff) / (2.0 * static_cast<double>(a.n));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.weights.size(); ++i) sum += std::fabs(a.weights[i] - b.weights[i]);
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

EmpiricalHistogram mixture(std::span<const EmpiricalHistogram> parts) {
    if (parts.empty()) throw InvalidArgument("mixture: no components");
    const auto& first = parts.front();
    for (const auto& h : parts)
        if (!(h.partition == first.partition)) throw PartitionMismatch("mixture: components over different partitions");
    const bool exact = std::all_of(parts.begin(), parts.end(),
                                   [&](const auto& h) { return !h.counts.empty() && h.n == first.n; });
    if (exact) {
        std::vector<std::uint64_t> counts(first.counts.size(), 0);
        for (const auto& h : parts)
            for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += h.counts[i];
        return EmpiricalHistogram::from_counts(first.partition, std::move(counts), first.q);
    }
    std::vector<double> w(first.weights.size(), 0.0);
    std::int64_t n = 0;
    for (const auto& h : parts) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += h.weights[i];
        n += h.n;
    }
    for (auto& v : w) v /= static_cast<double>(parts.size());
    return EmpiricalHistogram{first.partition, {}, std::move(w), n, first.q};
}

double birkhoff(const System& system, const ScalarField& phi, const Point& x, std::int64_t n, std::int64_t q) {
    if (n < 1) throw InvalidArgument("birkhoff: n must be >= 1");
    if (q < 1) throw InvalidArgument("birkhoff: q must be >= 1");
    if (n > system.budget() / q) throw BudgetExceeded(n > INT64_MAX / q ? INT64_MAX : n * q, system.budget());
    auto orbit = system.cursor(x, q);
    // Neumaier summation keeps long averages accurate to a few ulps.
    double sum = 0.0;
    double comp = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = phi(orbit->current());
        const double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
        if (i + 1 < n) orbit->advance();
    }
    return (sum + comp) / static_cast<double>(n);
}

const char* to_string(GenericStatus s) noexcept {
    switch (s) {
        case GenericStatus::convergent: return "convergent";
        case GenericStatus::oscillating: return "oscillating";
        case GenericStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

GenericVerdict generic_diagnostic(const System& system, const Point& x, std::int64_t q, const Partition& partition,
                                  const std::vector<std::int64_t>& horizons, double tol) {
    if (horizons.size() < 2) throw InvalidArgument("generic_diagnostic: need at least two horizons");
    if (q < 1) throw InvalidArgument("generic_diagnostic: q must be >= 1");
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1]))
            throw InvalidArgument("generic_diagnostic: horizons must be positive and strictly increasing");
    }
    const std::int64_t last = horizons.back();
    if (last > system.budget() / q) throw BudgetExceeded(last > INT64_MAX / q ? INT64_MAX : last * q, system.budget());

    GenericVerdict v;
    v.horizons = horizons;
    std::vector<std::uint64_t> counts(partition.size(), 0);
    auto orbit = system.cursor(x, q);
    std::size_t next = 0;
    for (std::int64_t i = 1; i <= last; ++i) {
        ++counts[partition.locate(orbit->current())];
        if (i == horizons[next]) {
            v.histograms.push_back(EmpiricalHistogram::from_counts(partition, counts, q));
            ++next;
        }
        if (i < last) orbit->advance();
    }

    const std::size_t k = v.histograms.size();
    for (std::size_t i = 0; i + 1 < k; ++i) {
        v.successive_gaps.push_back(measure_distance(v.histograms[i], v.histograms[i + 1]));
        v.max_gap = std::max(v.max_gap, v.successive_gaps.back());
    }
    if (v.max_gap <= tol) {
        v.status = GenericStatus::convergent;
        v.limit = v.histograms.back();
        return v;
    }
    std::vector<double> d(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) d[i * k + j] = d[j * k + i] = measure_distance(v.histograms[i], v.histograms[j]);
    for (std::size_t i = 0; i < k && !v.witness; ++i)
        for (std::size_t j = i + 1; j < k && !v.witness; ++j) {
            if (d[i * k + j] <= 10.0 * tol) continue;
            for (std::size_t l = j + 1; l < k; ++l) {
                if (d[j * k + l] > 10.0 * tol && d[i * k + l] <= tol) {
                    v.witness = std::make_pair(i, j);
                    break;
                }
            }
        }
    v.status = v.witness ? GenericStatus::oscillating : GenericStatus::inconclusive;
    return v;
}

std::string histogram_csv(const EmpiricalHistogram& h) {
    std::string out = "cell_label,weight\n";
    for (std::size_t i = 0; i < h.weights.size(); ++i) out += fmt::format("{},{}\n", h.partition.label(i), h.weights[i]);
    return out;
}

std::string verdict_record(const GenericVerdict& v) {
    std::ostringstream os;
    os << "status = " << to_string(v.status) << '\n';
    os << "horizons = ";
    for (std::size_t i = 0; i < v.horizons.size(); ++i) os << (i ? "," : "") << v.horizons[i];
    os << '\n' << "successive_gaps = ";
    for (std::size_t i = 0; i < v.successive_gaps.size(); ++i) os << (i ? "," : "") << fmt::format("{}", v.successive_gaps[i]);
    os << '\n' << fmt::format("max_gap = {}\n", v.max_gap);
    if (v.witness)
        os << "witness = " << v.horizons[v.witness->first] << "," << v.horizons[v.witness->second] << '\n';
    return os.str();
}

}  // namespace cocycle_lab::measures
