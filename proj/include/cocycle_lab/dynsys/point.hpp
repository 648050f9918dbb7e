#pragma once

#include "cocycle_lab/dynsys/shift_program.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace cocycle_lab::dynsys {

class Point;

struct CirclePoint {
    double angle = 0.0;  // in [0, 1)
};

struct CyclePoint {
    std::int64_t index = 0;  // in [0, modulus)
    std::int64_t modulus = 1;
};

// Torus points live on the dyadic lattice (2^-48 Z)^2 / Z^2. Integer
// automorphisms act on that lattice exactly, so orbits carry no rounding
// error in either time direction.
struct TorusPoint {
    static constexpr int kBits = 48;
    static constexpr std::uint64_t kMask = (std::uint64_t{1} << kBits) - 1;

    std::uint64_t u = 0;
    std::uint64_t v = 0;

    double a() const noexcept { return static_cast<double>(u) * 0x1.0p-48; }
    double b() const noexcept { return static_cast<double>(v) * 0x1.0p-48; }

    // Nearest lattice point to (a, b) mod 1.
    static TorusPoint from_reals(double a, double b);
};

struct ShiftPoint {
    std::shared_ptr<const ShiftProgram> program;
    std::int64_t offset = 0;

    // Symbol x_k of the represented sequence x = sigma^offset(program).
    Symbol at(std::int64_t k) const noexcept { return program->symbol(k + offset); }
};

struct ProductPoint {
    std::shared_ptr<const Point> left;
    std::shared_ptr<const Point> right;
};

enum class PointKind { circle, cycle, torus, shift, product };

const char* to_string(PointKind kind) noexcept;

class Point {
public:
    using Variant = std::variant<CirclePoint, CyclePoint, TorusPoint, ShiftPoint, ProductPoint>;

    Point() = default;
    explicit Point(Variant v) : value_(std::move(v)) {}

    static Point circle(double angle);
    static Point cycle(std::int64_t index, std::int64_t modulus);
    static Point torus(double a, double b);
    static Point torus_lattice(std::uint64_t u, std::uint64_t v);
    static Point shift(std::shared_ptr<const ShiftProgram> program, std::int64_t offset = 0);
    static Point product(Point left, Point right);

    PointKind kind() const noexcept { return static_cast<PointKind>(value_.index()); }
    const Variant& value() const noexcept { return value_; }

    template <class T>
    const T& as() const {
        return std::get<T>(value_);
    }
    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(value_);
    }

    // Accessors for products; throw KindMismatch on other kinds.
    const Point& left() const;
    const Point& right() const;

    // Same represented state (shift points compare as sequences).
    friend bool operator==(const Point& a, const Point& b);

private:
    Variant value_;
};

// Literal grammar, also used by configuration files:
//   circle(0.25)  cycle(2/3)  torus(0.1,0.2)  shift(PROGRAM[@OFFSET])  pair(P;Q)
std::string format_point(const Point& x);
Point parse_point(const std::string& text);

}  // namespace cocycle_lab::dynsys
