#include "cocycle_lab/cocycles/cocycle.hpp"

#include "cocycle_lab/errors.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace cocycle_lab::cocycles {

namespace {

constexpr double kUpper = 0x1.0p512;
constexpr double kLower = 0x1.0p-512;

}  // namespace

const char* to_string(Norm n) noexcept {
    switch (n) {
        case Norm::inf: return "inf";
        case Norm::two: return "two";
        case Norm::one: return "one";
    }
    return "?";
}

Norm parse_norm(const std::string& text) {
    if (text == "inf") return Norm::inf;
    if (text == "two") return Norm::two;
    if (text == "one") return Norm::one;
    throw InvalidArgument("unknown norm '" + text + "' (expected inf, two or one)");
}

double matrix_norm(const Matrix& m, Norm norm) {
    switch (norm) {
        case Norm::inf: return m.cwiseAbs().rowwise().sum().maxCoeff();
        case Norm::one: return m.cwiseAbs().colwise().sum().maxCoeff();
        case Norm::two: {
            if (m.rows() == 1) return std::fabs(m(0, 0));
            Eigen::JacobiSVD<Matrix> svd(m);
            return svd.singularValues()(0);
        }
    }
    return 0.0;
}

namespace {

// log ||U diag(2^e)|| without forming the (possibly unrepresentable) product.
double scaled_log_norm(const Matrix& unit, const std::vector<std::int64_t>& e, Norm norm) {
    const std::int64_t top = *std::max_element(e.begin(), e.end());
    Matrix m(unit.rows(), unit.cols());
    for (Eigen::Index j = 0; j < unit.cols(); ++j) {
        const std::int64_t shift = std::max<std::int64_t>(e[static_cast<std::size_t>(j)] - top, -2000);
        m.col(j) = unit.col(j) * std::ldexp(1.0, static_cast<int>(shift));
    }
    return static_cast<double>(top) * std::numbers::ln2 + std::log(matrix_norm(m, norm));
}

double column_max(const Matrix& m, Eigen::Index j) { return m.col(j).cwiseAbs().maxCoeff(); }

}  // namespace

Matrix CocycleValue::matrix() const {
    Matrix m = unit;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            m(i, j) = std::ldexp(m(i, j), static_cast<int>(column_exponents[static_cast<std::size_t>(j)]));
    return m;
}

double log_norm(const CocycleValue& v, Norm norm) { return scaled_log_norm(v.unit, v.column_exponents, norm); }

CocycleWalker::CocycleWalker(const MatrixGenerator& gen, const System& system, const Point& x, int direction)
    : gen_(gen), orbit_(system.cursor(x, direction >= 0 ? 1 : -1)), direction_(direction >= 0 ? 1 : -1) {
    const int d = gen.dim();
    product_ = Matrix::Identity(d, d);
    exponents_.assign(static_cast<std::size_t>(d), 0);
    factor_.resize(d, d);
    scratch_.resize(d, d);
}

void CocycleWalker::advance() {
    if (direction_ > 0) {
        gen_.forward(orbit_->current(), factor_);
        orbit_->advance();
    } else {
        orbit_->advance();
        gen_.inverse(orbit_->current(), factor_);
    }
    n_ += direction_;
    if (!factor_.allFinite()) throw NumericError("generator returned a non-finite matrix", n_);
    scratch_.noalias() = factor_ * product_;
    product_.swap(scratch_);
    renormalize();
}

void CocycleWalker::advance(std::int64_t steps) {
    for (std::int64_t i = 0; i < steps; ++i) advance();
}

void CocycleWalker::renormalize() {
    for (Eigen::Index j = 0; j < product_.cols(); ++j) {
        const double m = column_max(product_, j);
        if (!std::isfinite(m)) throw NumericError("cocycle product overflowed", n_);
        if (m == 0.0) throw NumericError("singular matrix in cocycle product", n_);
        if (m > kUpper || m < kLower) {
            const int e = std::ilogb(m);
            product_.col(j) *= std::ldexp(1.0, -e);
            exponents_[static_cast<std::size_t>(j)] += e;
        }
    }
}

double CocycleWalker::log_norm(Norm norm) const { return scaled_log_norm(product_, exponents_, norm); }

CocycleValue CocycleWalker::value() const {
    CocycleValue v{product_, exponents_, n_};
    for (Eigen::Index j = 0; j < v.unit.cols(); ++j) {
        const int e = std::ilogb(column_max(v.unit, j));
        v.unit.col(j) *= std::ldexp(1.0, -e);
        v.column_exponents[static_cast<std::size_t>(j)] += e;
    }
    return v;
}

CocycleValue evaluate(const MatrixGenerator& gen, const System& system, const Point& x, std::int64_t n) {
    system.check_point(x);
    system.check_budget(n < 0 ? -n : n);
    CocycleWalker walker(gen, system, x, n >= 0 ? 1 : -1);
    walker.advance(n < 0 ? -n : n);
    return walker.value();
}

std::vector<double> log_norm_series(const MatrixGenerator& gen, const System& system, const Point& x,
                                    const std::vector<std::int64_t>& horizons, Norm norm) {
    for (std::size_t i = 0; i < horizons.size(); ++i)
        if (horizons[i] < 1 || (i && horizons[i] <= horizons[i - 1]))
            throw InvalidArgument("log_norm_series: horizons must be positive and strictly increasing");
    std::vector<double> out;
    if (horizons.empty()) return out;
    system.check_point(x);
    system.check_budget(horizons.back());
    out.reserve(horizons.size());
    CocycleWalker walker(gen, system, x);
    for (std::int64_t h : horizons) {
        walker.advance(h - walker.n());
        out.push_back(walker.log_norm(norm));
    }
    return out;
}

}  // namespace cocycle_lab::cocycles
