#include <doctest.h>

#include "cocycle_lab/constructions/witness.hpp"
#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/measures/decomposition.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

using namespace cocycle_lab;
using namespace cocycle_lab::dynsys;
using namespace cocycle_lab::measures;

namespace {

double total(const EmpiricalHistogram& h) { return std::accumulate(h.weights.begin(), h.weights.end(), 0.0); }

}  // namespace

TEST_CASE("empirical examples on cycles") {
    auto c2 = make_cycle(2);
    const auto part = Partition::cycle_cells(2);
    auto h = empirical(*c2, Point::cycle(0, 2), 10, 2, part);
    CHECK(h.weights == std::vector<double>{1.0, 0.0});
    h = empirical(*c2, Point::cycle(0, 2), 10, 1, part);
    CHECK(h.weights == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(empirical(*c2, Point::cycle(0, 2), 0, 1, part), InvalidArgument);
    CHECK_THROWS_AS(empirical(*make_cycle(2, 100), Point::cycle(0, 2), 60, 2, part), BudgetExceeded);
}

TEST_CASE("golden rotation histogram") {
    auto rot = make_rotation();
    const auto h = empirical(*rot, Point::circle(0.0), 1000000, 1, Partition::circle_bins(100));
    const double max_weight = *std::max_element(h.weights.begin(), h.weights.end());
    // Golden value frozen from the first run.
    CHECK(max_weight == doctest::Approx(0.010002).epsilon(1e-9));
    CHECK(std::fabs(max_weight - 0.0101) <= 0.0005);
    CHECK(std::fabs(total(h) - 1.0) <= 1e-12);
}

TEST_CASE("measure_distance") {
    const auto part = Partition::cycle_cells(2);
    const auto a = EmpiricalHistogram::from_weights(part, {1.0, 0.0}, 1, 1);
    const auto b = EmpiricalHistogram::from_weights(part, {0.0, 1.0}, 1, 1);
    const auto c = EmpiricalHistogram::from_weights(part, {0.5, 0.5}, 1, 1);
    CHECK(measure_distance(a, a) == 0.0);
    CHECK(measure_distance(a, b) == 1.0);
    CHECK(measure_distance(c, a) == 0.5);
    const auto other = EmpiricalHistogram::from_weights(Partition::cycle_cells(3), {1.0, 0.0, 0.0}, 1, 1);
    CHECK_THROWS_AS(measure_distance(a, other), PartitionMismatch);
}

TEST_CASE("measure_distance is a metric") {
    auto cat = make_torus();
    const auto part = Partition::torus_grid(3, 3);
    std::vector<EmpiricalHistogram> hs;
    for (const auto& x : cat->sample(3, 6)) hs.push_back(empirical(*cat, x, 97, 1, part));
    for (const auto& a : hs)
        for (const auto& b : hs) {
            CHECK(measure_distance(a, b) == measure_distance(b, a));
            CHECK(measure_distance(a, b) >= 0.0);
            CHECK(measure_distance(a, b) <= 1.0);
            for (const auto& c : hs) CHECK(measure_distance(a, c) <= measure_distance(a, b) + measure_distance(b, c));
        }
}

TEST_CASE("weights sum to one") {
    std::vector<SystemDescriptor> systems{make_rotation(), make_torus(), make_shift(), make_cycle(5),
                                          make_product(make_rotation(), make_cycle(2))};
    for (const auto& s : systems) {
        const auto part = default_partition(*s);
        for (const auto& x : s->sample(1, 3))
            for (std::int64_t q : {1, 2, 3}) CHECK(std::fabs(total(empirical(*s, x, 1237, q, part)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("pushforward consistency on cycles") {
    auto c5 = make_cycle(5);
    const auto part = Partition::cycle_cells(5);
    for (std::int64_t i = 0; i < 5; ++i) {
        const auto x = Point::cycle(i, 5);
        // The orbit of f x is the orbit of x relabeled by one step.
        const auto a = empirical(*c5, step(*c5, x, 1), 13, 2, part);
        const auto b = empirical(*c5, x, 13, 2, part);
        for (std::size_t k = 0; k < 5; ++k) CHECK(a.counts[(k + 1) % 5] == b.counts[k]);
    }
}

TEST_CASE("birkhoff") {
    auto rot = make_rotation();
    CHECK(birkhoff(*rot, [](const Point&) { return 3.5; }, Point::circle(0.2), 1000) == 3.5);
    auto c2 = make_cycle(2);
    CHECK(birkhoff(*c2, [](const Point& x) { return static_cast<double>(x.as<CyclePoint>().index); }, Point::cycle(0, 2), 20) == 0.5);
    const double v = birkhoff(*rot, [](const Point& x) { return std::cos(2.0 * std::numbers::pi * x.as<CirclePoint>().angle); },
                              Point::circle(0.0), 1000000);
    CHECK(std::fabs(v) <= 0.002);
}

TEST_CASE("generic diagnostic") {
    auto c3 = make_cycle(3);
    const auto v = generic_diagnostic(*c3, Point::cycle(1, 3), 1, Partition::cycle_cells(3), {3, 9, 27}, 0.01);
    CHECK(v.status == GenericStatus::convergent);
    REQUIRE(v.limit);
    for (double w : v.limit->weights) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    auto rot = make_rotation();
    CHECK(generic_diagnostic(*rot, Point::circle(0.0), 1, Partition::circle_bins(100), {10000, 100000, 1000000}, 0.02)
              .status == GenericStatus::convergent);

    auto shift = make_shift();
    std::vector<std::int64_t> horizons;
    for (std::int64_t n = 16; n <= 65536; n *= 4) horizons.push_back(n);
    const auto witness = constructions::oscillating_point(constructions::BlockSchedule::geometric(4, 8));
    const auto w = generic_diagnostic(*shift, witness, 2, Partition::shift_cylinders(3), horizons, 0.02);
    CHECK(w.status == GenericStatus::oscillating);
    CHECK(w.witness.has_value());

    // Single block: eventually periodic, converges to the orbit measure.
    const auto single = constructions::oscillating_point(constructions::BlockSchedule({64}));
    CHECK(generic_diagnostic(*shift, single, 2, Partition::shift_cylinders(3), horizons, 0.02).status ==
          GenericStatus::convergent);
    CHECK_THROWS_AS(generic_diagnostic(*c3, Point::cycle(1, 3), 1, Partition::cycle_cells(3), {9}, 0.01), InvalidArgument);
}

TEST_CASE("power decomposition on cycles is exact") {
    auto c2 = make_cycle(2);
    const auto r = power_decomposition_check(*c2, 2, Point::cycle(0, 2), 50, Partition::cycle_cells(2), 0.01);
    CHECK(r.components[0].weights == std::vector<double>{1.0, 0.0});
    CHECK(r.components[1].weights == std::vector<double>{0.0, 1.0});
    CHECK(r.mu_hat.weights == std::vector<double>{0.5, 0.5});
    CHECK(r.reconstruction_error == 0.0);
    CHECK(r.verdict == ComponentVerdict::distinct);
    for (std::int64_t p : {2, 3, 4, 6}) {
        auto c12 = make_cycle(12);
        const auto q = power_decomposition_check(*c12, p, Point::cycle(5, 12), 37, Partition::cycle_cells(12), 0.01);
        CHECK(q.reconstruction_error == 0.0);
    }
    CHECK_THROWS_AS(power_decomposition_check(*c2, 1, Point::cycle(0, 2), 50, Partition::cycle_cells(2), 0.01), InvalidArgument);
}

TEST_CASE("power decomposition on products and rotations") {
    auto prod = make_product(make_rotation(), make_cycle(3));
    const auto part = Partition::product(Partition::circle_bins(100), Partition::cycle_cells(3));
    const auto x0 = Point::product(Point::circle(0.0), Point::cycle(0, 3));
    const auto r = power_decomposition_check(*prod, 3, x0, 100000, part, 0.02);
    CHECK(r.reconstruction_error <= 0.02);
    CHECK(r.min_pairwise == doctest::Approx(1.0));
    CHECK(r.verdict == ComponentVerdict::distinct);

    auto rot = make_rotation();
    const auto g = power_decomposition_check(*rot, 2, Point::circle(0.0), 1000000, Partition::circle_bins(100), 0.02);
    CHECK(g.max_pairwise <= 0.02);
    CHECK(g.verdict == ComponentVerdict::single);
}

TEST_CASE("prime power scan") {
    CHECK(prime_divisors(6) == std::vector<std::int64_t>{2, 3});
    CHECK(prime_divisors(8) == std::vector<std::int64_t>{2});
    CHECK(prime_divisors(97) == std::vector<std::int64_t>{97});

    auto c6 = make_cycle(6);
    const auto s = prime_power_scan(*c6, 6, Point::cycle(0, 6), 60, Partition::cycle_cells(6), 0.01);
    REQUIRE(s.primes.size() == 2);
    CHECK(s.primes[0].report.verdict == ComponentVerdict::distinct);
    CHECK(s.primes[1].report.verdict == ComponentVerdict::distinct);
    CHECK(s.primes[0].report.reconstruction_error == 0.0);
    CHECK(s.sound);

    auto prod = make_product(make_rotation(), make_cycle(2));
    const auto part = Partition::product(Partition::circle_bins(100), Partition::cycle_cells(2));
    const auto t = prime_power_scan(*prod, 6, Point::product(Point::circle(0.0), Point::cycle(0, 2)), 100000, part, 0.02);
    CHECK(t.primes[0].report.verdict == ComponentVerdict::distinct);
    CHECK(t.primes[1].report.verdict == ComponentVerdict::single);
    CHECK(t.sound);
    const auto csv = prime_scan_csv(t);
    CHECK(csv.rfind("p,reconstruction_error,min_pairwise_component_distance,verdict\n", 0) == 0);

    auto rot = make_rotation();
    const auto u = prime_power_scan(*rot, 4, Point::circle(0.1), 100000, Partition::circle_bins(100), 0.02);
    REQUIRE(u.primes.size() == 1);
    CHECK(u.primes[0].report.verdict != ComponentVerdict::distinct);
    CHECK_THROWS_AS(prime_power_scan(*rot, 1, Point::circle(0.1), 10, Partition::circle_bins(10), 0.02), InvalidArgument);
}

TEST_CASE("csv export") {
    const auto h = empirical(*make_cycle(2), Point::cycle(0, 2), 4, 1, Partition::cycle_cells(2));
    const auto csv = histogram_csv(h);
    CHECK(csv.rfind("cell_label,weight\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
