#include "cocycle_lab/constructions/factor.hpp"

#include "cocycle_lab/constructions/herman.hpp"
#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/rng.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace cocycle_lab::constructions {

namespace {

constexpr double kVanishing = 1e-12;

double angle_of(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) < kVanishing)
        throw InvalidArgument("circle_factor: eigen_map vanishes (or is not finite) at a probe point");
    double t = std::arg(z) / (2.0 * std::numbers::pi);
    t -= std::floor(t);
    return t < 1.0 ? t : 0.0;
}

}  // namespace

CircleFactor circle_factor(const SystemDescriptor& system, EigenMap eigen_map, const CircleFactorOptions& options) {
    if (!system) throw InvalidArgument("circle_factor: system is required");
    if (!eigen_map) throw InvalidArgument("circle_factor: eigen_map is required");
    if (options.validation_count < 1) throw InvalidArgument("circle_factor: validation_count must be >= 1");

    const auto probe = system->sample(options.seed, 1).front();
    double alpha = angle_of(eigen_map(system->step(probe, 1))) - angle_of(eigen_map(probe));
    alpha -= std::floor(alpha);
    if (alpha >= 1.0) alpha = 0.0;
    if (std::min(alpha, 1.0 - alpha) <= options.tolerance)
        throw InvalidArgument("circle_factor: fitted alpha is 0; a constant eigenfunction gives a degenerate factor");

    CircleFactor out;
    out.alpha = alpha;
    out.rotation = dynsys::make_rotation(alpha, system->budget());
    out.map = [eigen_map](const Point& x) { return Point::circle(angle_of(eigen_map(x))); };

    const auto points = system->sample(util::derive_seed(options.seed, 1), options.validation_count);
    out.defect = cocycles::semiconjugacy_defect(out.map, *system, *out.rotation, points);
    if (!(out.defect <= options.tolerance))
        throw ValidationError(fmt::format("circle_factor: semiconjugacy defect {} exceeds {}", out.defect,
                                          options.tolerance),
                              out.defect);
    return out;
}

cocycles::MatrixGenerator herman_pullback(const SystemDescriptor& system, const CircleFactor& factor, double lambda) {
    return cocycles::pullback(herman_reference(lambda), factor.map, *system, *factor.rotation);
}

}  // namespace cocycle_lab::constructions
