#pragma once

#include "cocycle_lab/cocycles/matrix_generator.hpp"

#include <cstdint>
#include <vector>

namespace cocycle_lab::constructions {

using cocycles::MatrixGenerator;
using dynsys::Point;
using dynsys::ScalarField;
using dynsys::System;

// A(x) = [[0, I_{p-1}], [e^{phi(x)}, 0]]. Its p-th iterate is
//   A(p, x) = diag(e^{phi(x)}, e^{phi(f x)}, ..., e^{phi(f^{p-1} x)}).
MatrixGenerator companion_cocycle(ScalarField phi, int p);

// The p residue-class Birkhoff averages (1/n) sum_{i<n} phi(f^{ip+j} x), j < p.
std::vector<double> phase_averages(const ScalarField& phi, const System& system, const Point& x, std::int64_t n,
                                   int p);

// (1/p) max_j of the phase averages; equals (1/np) log||A(np, x)||_inf for the
// companion cocycle.
double phase_average(const ScalarField& phi, const System& system, const Point& x, std::int64_t n, int p);

}  // namespace cocycle_lab::constructions
