#pragma once

#include "cocycle_lab/dynsys/system.hpp"

#include <memory>
#include <vector>

namespace cocycle_lab::constructions {

using dynsys::Point;
using dynsys::ScalarField;
using dynsys::System;
using dynsys::SystemDescriptor;

// Closed subset of the phase space, given either by finitely many sample
// points or, on the shift, as the complement of a cylinder ball:
//   { y : y_k != c_k for some |k| <= radius } = { y : d(y, c) >= 2^-radius }.
class ClosedSet {
public:
    static ClosedSet samples(std::vector<Point> points);
    static ClosedSet cylinder_complement(Point center, int radius);

    // Point-to-set distance under the system metric.
    double distance(const System& system, const Point& x) const;

    bool is_sampled() const noexcept { return !cylinder_; }
    const std::vector<Point>& points() const noexcept { return points_; }

private:
    std::vector<Point> points_;
    bool cylinder_ = false;
    int radius_ = 0;
};

// phi(x) = d(x, F) / (d(x, F) + d(x, E)); equals 1 on E, 0 on F, values in [0, 1].
class SeparatingFunction {
public:
    SeparatingFunction(ClosedSet e, ClosedSet f, SystemDescriptor system);

    double operator()(const Point& x) const;
    ScalarField field() const;

    const ClosedSet& e_set() const noexcept { return *e_; }
    const ClosedSet& f_set() const noexcept { return *f_; }

private:
    std::shared_ptr<const ClosedSet> e_;
    std::shared_ptr<const ClosedSet> f_;
    SystemDescriptor system_;
};

// Throws InvalidArgument when E or F is empty or the sets touch.
SeparatingFunction separating_function(ClosedSet e, ClosedSet f, SystemDescriptor system);

// The exact shift testbed: w = (01)^inf, E = {w}, F = {y : d(y, w) >= 1/4}.
// phi(w) = 1, phi(sigma w) = 0, and phi(y) = (1/4) / (1/4 + d(y, w)) otherwise.
Point testbed_reference_point();
SeparatingFunction shift_testbed_separating(SystemDescriptor shift_system);

}  // namespace cocycle_lab::constructions
