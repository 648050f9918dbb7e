#include "cocycle_lab/constructions/separating.hpp"

#include "cocycle_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cocycle_lab::constructions {

using namespace dynsys;

ClosedSet ClosedSet::samples(std::vector<Point> points) {
    ClosedSet s;
    s.points_ = std::move(points);
    return s;
}

ClosedSet ClosedSet::cylinder_complement(Point center, int radius) {
    if (!center.is<ShiftPoint>()) throw InvalidArgument("cylinder complement needs a shift point as center");
    if (radius < 0) throw InvalidArgument("cylinder complement radius must be >= 0");
    ClosedSet s;
    s.points_.push_back(std::move(center));
    s.cylinder_ = true;
    s.radius_ = radius;
    return s;
}

double ClosedSet::distance(const System& system, const Point& x) const {
    if (cylinder_) {
        if (!x.is<ShiftPoint>()) throw KindMismatch("cylinder complement distance needs a shift point");
        const auto& y = x.as<ShiftPoint>();
        const auto& c = points_.front().as<ShiftPoint>();
        for (int k = -radius_; k <= radius_; ++k)
            if (y.at(k) != c.at(k)) return 0.0;
        // Flipping y at |k| = radius reaches the set; nothing closer can.
        return std::ldexp(1.0, -radius_);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points_) {
        best = std::min(best, system.metric(x, p));
        if (best == 0.0) break;
    }
    return best;
}

SeparatingFunction::SeparatingFunction(ClosedSet e, ClosedSet f, SystemDescriptor system)
    : e_(std::make_shared<const ClosedSet>(std::move(e))),
      f_(std::make_shared<const ClosedSet>(std::move(f))),
      system_(std::move(system)) {}

double SeparatingFunction::operator()(const Point& x) const {
    const double df = f_->distance(*system_, x);
    if (df == 0.0) return 0.0;
    const double de = e_->distance(*system_, x);
    return df / (df + de);
}

ScalarField SeparatingFunction::field() const {
    return [self = *this](const Point& x) { return self(x); };
}

SeparatingFunction separating_function(ClosedSet e, ClosedSet f, SystemDescriptor system) {
    if (!system) throw InvalidArgument("separating_function: system is required");
    if (e.points().empty() || f.points().empty()) throw InvalidArgument("separating_function: E and F must be nonempty");
    if (!e.is_sampled() && !f.is_sampled())
        throw InvalidArgument("separating_function: at most one set may be given by a predicate");
    // Cross distance between the two sets, measured from the sampled side.
    const ClosedSet& sampled = e.is_sampled() ? e : f;
    const ClosedSet& other = e.is_sampled() ? f : e;
    double cross = std::numeric_limits<double>::infinity();
    for (const auto& p : sampled.points()) {
        system->check_point(p);
        cross = std::min(cross, other.distance(*system, p));
    }
    if (!(cross > 0.0)) throw InvalidArgument("separating_function: E and F overlap (cross distance 0)");
    return SeparatingFunction(std::move(e), std::move(f), std::move(system));
}

Point testbed_reference_point() { return Point::shift(ShiftProgram::periodic({0, 1}), 0); }

SeparatingFunction shift_testbed_separating(SystemDescriptor shift_system) {
    if (!shift_system || shift_system->kind() != SystemKind::shift)
        throw InvalidArgument("shift testbed needs a shift system");
    const Point w = testbed_reference_point();
    return separating_function(ClosedSet::samples({w}), ClosedSet::cylinder_complement(w, 2), std::move(shift_system));
}

}  // namespace cocycle_lab::constructions
