#include "cocycle_lab/measures/decomposition.hpp"

#include "cocycle_lab/errors.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <limits>

namespace cocycle_lab::measures {

const char* to_string(ComponentVerdict v) noexcept {
    switch (v) {
        case ComponentVerdict::distinct: return "distinct";
        case ComponentVerdict::single: return "single";
        case ComponentVerdict::mixed: return "mixed";
    }
    return "?";
}

PowerDecompositionReport power_decomposition_check(const System& system, std::int64_t p, const Point& x0,
                                                   std::int64_t n, const Partition& partition, double tol) {
    if (p < 2) throw InvalidArgument("power_decomposition_check: p must be >= 2");
    if (n < 1) throw InvalidArgument("power_decomposition_check: n must be >= 1");
    if (n > system.budget() / p - 1) throw BudgetExceeded(n > INT64_MAX / p ? INT64_MAX : n * p + p, system.budget());

    std::vector<EmpiricalHistogram> components;
    components.reserve(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) components.push_back(empirical(system, system.step(x0, i), n, p, partition));
    auto mu_hat = empirical(system, x0, n * p, 1, partition);
    auto recon = mixture(components);
    const double err = measure_distance(mu_hat, recon);

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = i + 1; j < components.size(); ++j) {
            const double d = measure_distance(components[i], components[j]);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    ComponentVerdict verdict = ComponentVerdict::mixed;
    if (lo > tol) verdict = ComponentVerdict::distinct;
    else if (hi <= tol) verdict = ComponentVerdict::single;

    return PowerDecompositionReport{p, std::move(components), std::move(mu_hat), std::move(recon), err, err <= tol,
                                    lo, hi, verdict};
}

std::vector<std::int64_t> prime_divisors(std::int64_t d) {
    std::vector<std::int64_t> out;
    for (std::int64_t f = 2; f * f <= d; ++f) {
        if (d % f) continue;
        out.push_back(f);
        while (d % f == 0) d /= f;
    }
    if (d > 1) out.push_back(d);
    return out;
}

PrimeScanReport prime_power_scan(const System& system, std::int64_t d, const Point& x0, std::int64_t n,
                                 const Partition& partition, double tol) {
    if (d < 2) throw InvalidArgument("prime_power_scan: d must be >= 2");
    PrimeScanReport report;
    report.d = d;
    for (std::int64_t p : prime_divisors(d))
        report.primes.push_back({p, power_decomposition_check(system, p, x0, n, partition, tol)});
    report.full = power_decomposition_check(system, d, x0, n, partition, tol);
    if (report.full.verdict == ComponentVerdict::distinct)
        report.sound = std::any_of(report.primes.begin(), report.primes.end(),
                                   [](const auto& e) { return e.report.verdict == ComponentVerdict::distinct; });
    return report;
}

std::string prime_scan_csv(const PrimeScanReport& report) {
    std::string out = "p,reconstruction_error,min_pairwise_component_distance,verdict\n";
    for (const auto& e : report.primes)
        out += fmt::format("{},{},{},{}\n", e.prime, e.report.reconstruction_error, e.report.min_pairwise,
                           to_string(e.report.verdict));
    return out;
}

}  // namespace cocycle_lab::measures
