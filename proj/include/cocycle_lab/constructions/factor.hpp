#pragma once

#include "cocycle_lab/cocycles/transforms.hpp"

#include <complex>
#include <functional>

namespace cocycle_lab::constructions {

using dynsys::Point;
using dynsys::System;
using dynsys::SystemDescriptor;

using EigenMap = std::function<std::complex<double>(const Point&)>;

struct CircleFactorOptions {
    std::uint64_t seed = 0xc1fc;
    std::size_t validation_count = 64;
    double tolerance = 1e-9;
};

// pi = e / |e| read as an angle in [0, 1), together with the rotation R_alpha
// it semiconjugates onto (pi o f = R_alpha o pi).
struct CircleFactor {
    cocycles::FactorMap map;
    double alpha = 0.0;
    SystemDescriptor rotation;
    double defect = 0.0;  // largest validation defect
};

// alpha is fitted from one probe pair (x, f x) and then validated on a sample.
// Errors: vanishing eigen_map, a constant eigenfunction (alpha == 0), or a
// semiconjugacy defect above tolerance.
CircleFactor circle_factor(const SystemDescriptor& system, EigenMap eigen_map, const CircleFactorOptions& options = {});

// herman_reference(lambda) pulled back along the factor map.
cocycles::MatrixGenerator herman_pullback(const SystemDescriptor& system, const CircleFactor& factor, double lambda);

}  // namespace cocycle_lab::constructions
