#pragma once

#include "cocycle_lab/cocycles/matrix_generator.hpp"

#include <cstdint>
#include <functional>

namespace cocycle_lab::cocycles {

// A~(x) = A(x) / |det A(x)|^{1/m}, so |det A~| == 1 and
//   (1/n) log||A~(n,x)|| = (1/n) log||A(n,x)|| - (1/m) (1/n) sum_{i<n} log|det A(f^i x)|.
MatrixGenerator normalize_det(const MatrixGenerator& gen);

// log|det A(x)|; the Birkhoff sum of this field relates A and normalize_det(A).
ScalarField log_abs_det(const MatrixGenerator& gen);

// B = diag(A~, I_{p-m}). For |det A~| == 1 every A~(n,x) has inf-norm >= 1,
// hence ||B(n,x)||_inf = ||A~(n,x)||_inf. Evaluating B where |det A~(x)|
// deviates from 1 by more than 1e-8 throws NumericError.
MatrixGenerator pad(const MatrixGenerator& gen, int p);

using FactorMap = std::function<Point(const Point&)>;

struct PullbackOptions {
    std::uint64_t seed = 0x5eed;
    std::size_t sample_count = 64;
    double tolerance = 1e-9;
};

// B = A o pi for a factor map pi: X -> Y with pi o f = g o pi. The
// semiconjugacy is validated on a sample of X (distance measured in Y);
// failure throws ValidationError carrying the largest defect.
MatrixGenerator pullback(const MatrixGenerator& gen_on_y, FactorMap pi, const System& system_x,
                         const System& system_y, const PullbackOptions& options = {});

// Largest d_Y(pi(f x), g(pi x)) over the given points.
double semiconjugacy_defect(const FactorMap& pi, const System& system_x, const System& system_y,
                            const std::vector<Point>& points);

}  // namespace cocycle_lab::cocycles
