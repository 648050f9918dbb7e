#include "cocycle_lab/cocycles/matrix_generator.hpp"

#include "cocycle_lab/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace cocycle_lab::cocycles {

MatrixGenerator::MatrixGenerator(int dim, Field forward, Field inverse, std::string description)
    : dim_(dim), forward_(std::move(forward)), inverse_(std::move(inverse)), description_(std::move(description)) {
    if (dim < 1) throw InvalidArgument("matrix generator: dimension must be >= 1");
    if (!forward_ || !inverse_) throw InvalidArgument("matrix generator: both fields are required");
}

void MatrixGenerator::forward(const Point& x, Matrix& out) const {
    out.resize(dim_, dim_);
    forward_(x, out);
}

void MatrixGenerator::inverse(const Point& x, Matrix& out) const {
    out.resize(dim_, dim_);
    inverse_(x, out);
}

Matrix MatrixGenerator::at(const Point& x) const {
    Matrix m(dim_, dim_);
    forward_(x, m);
    return m;
}

Matrix MatrixGenerator::inverse_at(const Point& x) const {
    Matrix m(dim_, dim_);
    inverse_(x, m);
    return m;
}

MatrixGenerator MatrixGenerator::constant(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) throw InvalidArgument("constant generator needs a square matrix");
    // Only exact zero pivots count as singular: diag(e^50, e^-50) is fine.
    Eigen::FullPivLU<Matrix> lu(m);
    lu.setThreshold(0.0);
    if (!lu.isInvertible()) throw InvalidArgument("constant generator: matrix is singular");
    Matrix inv = lu.inverse();
    if (!inv.allFinite()) throw InvalidArgument("constant generator: inverse is not finite");
    std::string desc = "constant[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) desc += ";";
        for (Eigen::Index j = 0; j < m.cols(); ++j) desc += fmt::format("{}{}", j ? " " : "", m(i, j));
    }
    desc += "]";
    return MatrixGenerator(
        static_cast<int>(m.rows()), [m](const Point&, Matrix& out) { out = m; },
        [inv](const Point&, Matrix& out) { out = inv; }, desc);
}

MatrixGenerator MatrixGenerator::diagonal_exp(std::vector<ScalarField> exponents, std::string description) {
    if (exponents.empty()) throw InvalidArgument("diagonal generator needs at least one entry");
    const int d = static_cast<int>(exponents.size());
    auto shared = std::make_shared<const std::vector<ScalarField>>(std::move(exponents));
    return MatrixGenerator(
        d,
        [shared](const Point& x, Matrix& out) {
            out.setZero();
            for (std::size_t i = 0; i < shared->size(); ++i) out(i, i) = std::exp((*shared)[i](x));
        },
        [shared](const Point& x, Matrix& out) {
            out.setZero();
            for (std::size_t i = 0; i < shared->size(); ++i) out(i, i) = std::exp(-(*shared)[i](x));
        },
        std::move(description));
}

MatrixGenerator MatrixGenerator::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scaled: factor must be positive and finite");
    auto fwd = forward_;
    auto inv = inverse_;
    return MatrixGenerator(
        dim_,
        [fwd, c](const Point& x, Matrix& out) {
            fwd(x, out);
            out *= c;
        },
        [inv, c](const Point& x, Matrix& out) {
            inv(x, out);
            out /= c;
        },
        fmt::format("{}*{}", c, description_));
}

}  // namespace cocycle_lab::cocycles
