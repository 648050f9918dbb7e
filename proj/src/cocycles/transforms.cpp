#include "cocycle_lab/cocycles/transforms.hpp"

#include "cocycle_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace cocycle_lab::cocycles {

MatrixGenerator normalize_det(const MatrixGenerator& gen) {
    const int m = gen.dim();
    const double inv_m = 1.0 / static_cast<double>(m);
    auto scale = [inv_m](const Matrix& a) {
        const double det = std::fabs(a.determinant());
        if (!(det > 0.0) || !std::isfinite(det)) throw NumericError("normalize_det: singular generator value", 0);
        return std::pow(det, inv_m);
    };
    return MatrixGenerator(
        m,
        [gen, scale](const Point& x, Matrix& out) {
            gen.forward(x, out);
            out /= scale(out);
        },
        [gen, scale](const Point& x, Matrix& out) {
            gen.forward(x, out);
            const double s = scale(out);
            gen.inverse(x, out);
            out *= s;
        },
        "normalized(" + gen.description() + ")");
}

ScalarField log_abs_det(const MatrixGenerator& gen) {
    return [gen](const Point& x) { return std::log(std::fabs(gen.at(x).determinant())); };
}

MatrixGenerator pad(const MatrixGenerator& gen, int p) {
    const int m = gen.dim();
    if (p < m) throw InvalidArgument(fmt::format("pad: target dimension {} is below generator dimension {}", p, m));
    if (p == m) return gen;
    auto embed = [m, p](const Matrix& block, Matrix& out) {
        out.setIdentity(p, p);
        out.topLeftCorner(m, m) = block;
    };
    return MatrixGenerator(
        p,
        [gen, embed](const Point& x, Matrix& out) {
            const Matrix a = gen.at(x);
            const double det = std::fabs(a.determinant());
            if (std::fabs(det - 1.0) > 1e-8)
                throw NumericError(fmt::format("pad: |det| = {} at {}, expected 1", det, dynsys::format_point(x)), 0);
            embed(a, out);
        },
        [gen, embed](const Point& x, Matrix& out) { embed(gen.inverse_at(x), out); },
        fmt::format("pad({}, {})", gen.description(), p));
}

double semiconjugacy_defect(const FactorMap& pi, const System& system_x, const System& system_y,
                            const std::vector<Point>& points) {
    double worst = 0.0;
    for (const auto& x : points) {
        const Point lhs = pi(system_x.step(x, 1));
        const Point rhs = system_y.step(pi(x), 1);
        worst = std::max(worst, system_y.metric(lhs, rhs));
    }
    return worst;
}

MatrixGenerator pullback(const MatrixGenerator& gen_on_y, FactorMap pi, const System& system_x,
                         const System& system_y, const PullbackOptions& options) {
    if (!pi) throw InvalidArgument("pullback: factor map is required");
    const auto probes = system_x.sample(options.seed, options.sample_count);
    const double defect = semiconjugacy_defect(pi, system_x, system_y, probes);
    if (!(defect <= options.tolerance))
        throw ValidationError(fmt::format("pullback: factor map is not a semiconjugacy (max defect {})", defect), defect);
    return MatrixGenerator(
        gen_on_y.dim(), [gen_on_y, pi](const Point& x, Matrix& out) { gen_on_y.forward(pi(x), out); },
        [gen_on_y, pi](const Point& x, Matrix& out) { gen_on_y.inverse(pi(x), out); },
        "pullback(" + gen_on_y.description() + ")");
}

}  // namespace cocycle_lab::cocycles
