#include "cocycle_lab/constructions/herman.hpp"

#include "cocycle_lab/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace cocycle_lab::constructions {

using cocycles::Matrix;
using dynsys::CirclePoint;
using dynsys::Point;

cocycles::MatrixGenerator herman_reference(double lambda) {
    if (!std::isfinite(lambda) || lambda < 1.0)
        throw InvalidArgument(fmt::format("herman_reference: lambda must be finite and >= 1, got {}", lambda));
    auto angle_of = [](const Point& x) {
        if (!x.is<CirclePoint>()) throw KindMismatch("herman_reference is defined over circle points");
        return 2.0 * std::numbers::pi * x.as<CirclePoint>().angle;
    };
    auto forward = [lambda, angle_of](const Point& x, Matrix& out) {
        const double t = angle_of(x);
        const double c = std::cos(t), s = std::sin(t);
        out.resize(2, 2);
        out << lambda * c, -lambda * s, s / lambda, c / lambda;
    };
    // R(-t) diag(1/lambda, lambda)
    auto inverse = [lambda, angle_of](const Point& x, Matrix& out) {
        const double t = angle_of(x);
        const double c = std::cos(t), s = std::sin(t);
        out.resize(2, 2);
        out << c / lambda, s * lambda, -s / lambda, c * lambda;
    };
    return cocycles::MatrixGenerator(2, std::move(forward), std::move(inverse),
                                     fmt::format("herman(lambda={})", lambda));
}

}  // namespace cocycle_lab::constructions
