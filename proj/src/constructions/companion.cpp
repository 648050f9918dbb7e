#include "cocycle_lab/constructions/companion.hpp"

#include "cocycle_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace cocycle_lab::constructions {

MatrixGenerator companion_cocycle(ScalarField phi, int p) {
    if (p < 2) throw InvalidArgument("companion_cocycle: p must be >= 2");
    if (!phi) throw InvalidArgument("companion_cocycle: phi is required");
    auto forward = [phi, p](const Point& x, cocycles::Matrix& out) {
        out.setZero(p, p);
        for (int i = 0; i + 1 < p; ++i) out(i, i + 1) = 1.0;
        out(p - 1, 0) = std::exp(phi(x));
    };
    auto inverse = [phi, p](const Point& x, cocycles::Matrix& out) {
        out.setZero(p, p);
        for (int j = 1; j < p; ++j) out(j, j - 1) = 1.0;
        out(0, p - 1) = std::exp(-phi(x));
    };
    return MatrixGenerator(p, std::move(forward), std::move(inverse), fmt::format("companion(p={})", p));
}

std::vector<double> phase_averages(const ScalarField& phi, const System& system, const Point& x, std::int64_t n,
                                   int p) {
    if (n < 1) throw InvalidArgument("phase_average: n must be >= 1");
    if (p < 2) throw InvalidArgument("phase_average: p must be >= 2");
    if (n > system.budget() / p) throw BudgetExceeded(n * p, system.budget());
    system.check_point(x);
    std::vector<double> sums(static_cast<std::size_t>(p), 0.0);
    auto cursor = system.cursor(x, 1);
    for (std::int64_t i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) {
            sums[static_cast<std::size_t>(j)] += phi(cursor->current());
            cursor->advance();
        }
    for (auto& s : sums) s /= static_cast<double>(n);
    return sums;
}

double phase_average(const ScalarField& phi, const System& system, const Point& x, std::int64_t n, int p) {
    const auto avg = phase_averages(phi, system, x, n, p);
    return *std::max_element(avg.begin(), avg.end()) / static_cast<double>(p);
}

}  // namespace cocycle_lab::constructions
