#include <doctest.h>

#include "cocycle_lab/cocycles/cocycle.hpp"
#include "cocycle_lab/constructions/companion.hpp"
#include "cocycle_lab/constructions/separating.hpp"
#include "cocycle_lab/constructions/witness.hpp"
#include "cocycle_lab/measures/empirical.hpp"
#include "oracles/goldens.hpp"
#include "oracles/oracles.hpp"

#include <cmath>

using namespace cocycle_lab;
using namespace cocycle_lab::dynsys;

namespace {

std::function<int(std::int64_t)> symbols_of(const Point& x) {
    return [x](std::int64_t k) { return static_cast<int>(x.as<ShiftPoint>().at(k)); };
}

}  // namespace

TEST_CASE("witness oracle reproduces the frozen trace") {
    const auto seq = oracle::oscillating_sequence(4, 8, 200);
    const auto v = oracle::companion_trace(seq, 65536);
    double hi = -1.0, lo = 2.0;
    std::int64_t arg_hi = 0, arg_lo = 0;
    for (std::int64_t t = 16384; t <= 65536; ++t) {
        const double x = v[static_cast<std::size_t>(t)];
        if (x > hi) hi = x, arg_hi = t;
        if (x < lo) lo = x, arg_lo = t;
    }
    CHECK(hi == doctest::Approx(golden::kWitnessMax).epsilon(1e-14));
    CHECK(lo == doctest::Approx(golden::kWitnessMin).epsilon(1e-14));
    CHECK(arg_hi == golden::kWitnessArgMax);
    CHECK(arg_lo == golden::kWitnessArgMin);
}

TEST_CASE("library witness trace matches the oracle") {
    const auto seq = oracle::oscillating_sequence(4, 8, 200);
    const auto v = oracle::companion_trace(seq, 65536);
    auto shift = make_shift();
    const auto gen = constructions::companion_cocycle(constructions::shift_testbed_separating(shift).field(), 2);
    const auto x = constructions::oscillating_point(constructions::BlockSchedule::geometric(4, 8));
    cocycles::CocycleWalker walker(gen, *shift, x);
    double worst = 0.0;
    for (std::int64_t t = 1; t <= 65536; ++t) {
        walker.advance(2);
        worst = std::max(worst, std::fabs(walker.log_norm() / static_cast<double>(2 * t) - v[static_cast<std::size_t>(t)]));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("separating function matches enumeration") {
    auto shift = make_shift();
    const auto phi = constructions::shift_testbed_separating(shift);
    auto pts = constructions::eventually_periodic_points(17, 64);
    pts.push_back(constructions::oscillating_point(constructions::BlockSchedule::geometric(4, 3)));
    pts.push_back(constructions::testbed_reference_point());
    for (const auto& p : pts)
        for (std::int64_t k = -80; k <= 80; ++k) {
            const auto y = step(*shift, p, k);
            CHECK(phi(y) == doctest::Approx(oracle::testbed_phi(symbols_of(y))).epsilon(1e-15));
        }
}

TEST_CASE("golden rotation histogram matches exact counts") {
    auto rot = make_rotation();
    const auto h = measures::empirical(*rot, Point::circle(0.0), 1'000'000, 1, measures::Partition::circle_bins(100));
    const auto exact = oracle::rotation_counts(kGoldenAlpha, 1'000'000, 100);
    std::uint64_t moved = 0, peak = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        moved += h.counts[i] > exact[i] ? h.counts[i] - exact[i] : exact[i] - h.counts[i];
        peak = std::max(peak, exact[i]);
    }
    // A point within rounding of a bin edge may land on either side.
    CHECK(moved <= 4);
    CHECK(static_cast<double>(peak) / 1e6 == doctest::Approx(golden::kRotationPeakWeight).epsilon(1e-9));
}
