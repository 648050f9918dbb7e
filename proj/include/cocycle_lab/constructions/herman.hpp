#pragma once

#include "cocycle_lab/cocycles/matrix_generator.hpp"

namespace cocycle_lab::constructions {

// A(theta) = diag(lambda, 1/lambda) R(2 pi theta) over circle points, with R
// the planar rotation. det A == 1. lambda == 1 gives the pure rotation;
// lambda < 1 is rejected.
cocycles::MatrixGenerator herman_reference(double lambda);

}  // namespace cocycle_lab::constructions
