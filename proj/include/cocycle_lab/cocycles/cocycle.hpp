#pragma once

#include "cocycle_lab/cocycles/matrix_generator.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace cocycle_lab::cocycles {

enum class Norm { inf, two, one };

const char* to_string(Norm n) noexcept;
Norm parse_norm(const std::string& text);

double matrix_norm(const Matrix& m, Norm norm);

// A(n, x) = unit * diag(2^e_0, ..., 2^e_{d-1}) where every column of unit has
// largest entry in [1, 2). Rescaling each column by its own power of two is
// exact, and a small column is never flushed to zero against a large one.
struct CocycleValue {
    Matrix unit;
    std::vector<std::int64_t> column_exponents;
    std::int64_t n = 0;

    // The represented matrix; overflows or underflows for extreme exponents.
    Matrix matrix() const;
};

double log_norm(const CocycleValue& v, Norm norm = Norm::inf);

// Incremental evaluation of A(n, x) for n = 0, 1, 2, ... (direction +1) or
// n = 0, -1, -2, ... (direction -1):
//   A(n, x)  = A(f^{n-1} x) ... A(x)                 n > 0
//   A(0, x)  = I
//   A(n, x)  = A^{-1}(f^n x) ... A^{-1}(f^{-1} x)    n < 0
// Each column of the running product is rescaled by a power of two whenever
// its largest entry leaves [2^-512, 2^512]. Left multiplication never mixes
// columns, so the per-column scales are exact.
class CocycleWalker {
public:
    CocycleWalker(const MatrixGenerator& gen, const System& system, const Point& x, int direction = +1);

    void advance();
    void advance(std::int64_t steps);

    std::int64_t n() const noexcept { return n_; }
    double log_norm(Norm norm = Norm::inf) const;
    CocycleValue value() const;

private:
    void renormalize();

    const MatrixGenerator& gen_;
    std::unique_ptr<dynsys::OrbitCursor> orbit_;
    int direction_;
    std::int64_t n_ = 0;
    std::vector<std::int64_t> exponents_;
    Matrix product_;
    Matrix factor_;
    Matrix scratch_;
};

// Checks |n| against the system budget, then evaluates A(n, x).
CocycleValue evaluate(const MatrixGenerator& gen, const System& system, const Point& x, std::int64_t n);

// log ||A(n, x)|| at each of the given positive, strictly increasing
// horizons, computed in one pass.
std::vector<double> log_norm_series(const MatrixGenerator& gen, const System& system, const Point& x,
                                    const std::vector<std::int64_t>& horizons, Norm norm = Norm::inf);

}  // namespace cocycle_lab::cocycles
