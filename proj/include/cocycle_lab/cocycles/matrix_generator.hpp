#pragma once

#include "cocycle_lab/dynsys/system.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace cocycle_lab::cocycles {

using dynsys::Point;
using dynsys::ScalarField;
using dynsys::System;
using Matrix = Eigen::MatrixXd;

// Continuous map x -> A(x) in GL(d) together with x -> A(x)^{-1}.
// Fields write into a caller-provided d x d matrix so hot loops do not
// allocate.
class MatrixGenerator {
public:
    using Field = std::function<void(const Point&, Matrix&)>;

    MatrixGenerator(int dim, Field forward, Field inverse, std::string description);

    int dim() const noexcept { return dim_; }
    const std::string& description() const noexcept { return description_; }

    void forward(const Point& x, Matrix& out) const;
    void inverse(const Point& x, Matrix& out) const;
    Matrix at(const Point& x) const;
    Matrix inverse_at(const Point& x) const;

    static MatrixGenerator constant(const Matrix& m);
    // diag(e^{h_1(x)}, ..., e^{h_d(x)})
    static MatrixGenerator diagonal_exp(std::vector<ScalarField> exponents, std::string description = "diagonal");

    // x -> c A(x), c > 0.
    MatrixGenerator scaled(double c) const;

private:
    int dim_;
    Field forward_;
    Field inverse_;
    std::string description_;
};

}  // namespace cocycle_lab::cocycles
