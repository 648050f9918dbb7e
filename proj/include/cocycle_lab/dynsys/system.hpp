#pragma once

#include "cocycle_lab/dynsys/point.hpp"
#include "cocycle_lab/errors.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cocycle_lab::dynsys {

// Flat key/value description of a system ("kind = rotation", "alpha = ...",
// nested products under "left." and "right.").
using ParameterRecord = std::map<std::string, std::string>;

// Real-valued observable on a phase space.
using ScalarField = std::function<double(const Point&)>;

// Thrown by make_system; names the offending key so configuration readers
// can point at the right line.
class RecordError : public InvalidArgument {
public:
    RecordError(std::string key, const std::string& what) : InvalidArgument(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

inline constexpr std::int64_t kDefaultBudget = 1'000'000'000;

// Walks x, f^s x, f^{2s} x, ... for a fixed stride s.
class OrbitCursor {
public:
    virtual ~OrbitCursor() = default;
    virtual const Point& current() const = 0;
    virtual void advance() = 0;
};

enum class SystemKind { rotation, cycle, torus, shift, product };

// An invertible dynamical system (X, d, f) with a reference measure sampler.
// Instances are immutable; share them through SystemDescriptor.
class System {
public:
    virtual ~System() = default;

    virtual SystemKind kind() const noexcept = 0;
    virtual std::string name() const = 0;
    virtual ParameterRecord record() const = 0;

    // Checked entry points: kind mismatch -> KindMismatch, |k| above the
    // budget -> BudgetExceeded.
    Point step(const Point& x, std::int64_t k) const;
    double metric(const Point& x, const Point& y) const;
    std::vector<Point> sample(std::uint64_t seed, std::size_t count) const;
    std::unique_ptr<OrbitCursor> cursor(const Point& x, std::int64_t stride) const;

    virtual bool accepts(const Point& x) const noexcept = 0;

    std::int64_t budget() const noexcept { return budget_; }
    void check_budget(std::int64_t steps) const;
    void check_point(const Point& x) const;

    // Unchecked implementations; used by composite systems on components
    // already validated by the caller.
    virtual Point do_step(const Point& x, std::int64_t k) const = 0;
    virtual double do_metric(const Point& x, const Point& y) const = 0;
    virtual std::vector<Point> do_sample(std::uint64_t seed, std::size_t count) const = 0;
    virtual std::unique_ptr<OrbitCursor> do_cursor(const Point& x, std::int64_t stride) const;

protected:
    explicit System(std::int64_t budget) : budget_(budget) {}

private:
    std::int64_t budget_;
};

using SystemDescriptor = std::shared_ptr<const System>;

// R_alpha on T^1 = [0,1). Rational alpha is accepted as a degenerate case.
class RotationSystem final : public System {
public:
    RotationSystem(double alpha, std::int64_t budget);

    SystemKind kind() const noexcept override { return SystemKind::rotation; }
    std::string name() const override;
    ParameterRecord record() const override;
    bool accepts(const Point& x) const noexcept override;
    double alpha() const noexcept { return alpha_; }

    // frac(k * alpha) using an exact product split, so that no error builds
    // up over long orbits.
    double rotation_angle(std::int64_t k) const noexcept;

    Point do_step(const Point& x, std::int64_t k) const override;
    double do_metric(const Point& x, const Point& y) const override;
    std::vector<Point> do_sample(std::uint64_t seed, std::size_t count) const override;
    std::unique_ptr<OrbitCursor> do_cursor(const Point& x, std::int64_t stride) const override;

private:
    double alpha_;
};

// i -> i + 1 mod p with discrete metric and uniform measure.
class CycleSystem final : public System {
public:
    CycleSystem(std::int64_t p, std::int64_t budget);

    SystemKind kind() const noexcept override { return SystemKind::cycle; }
    std::string name() const override;
    ParameterRecord record() const override;
    bool accepts(const Point& x) const noexcept override;
    std::int64_t period() const noexcept { return p_; }

    Point do_step(const Point& x, std::int64_t k) const override;
    double do_metric(const Point& x, const Point& y) const override;
    std::vector<Point> do_sample(std::uint64_t seed, std::size_t count) const override;

private:
    std::int64_t p_;
};

// Hyperbolic toral automorphism x -> M x mod 1 with sup-arc metric and
// Lebesgue reference measure.
class TorusSystem final : public System {
public:
    using IntMatrix = std::array<std::int64_t, 4>;  // row-major [[a,b],[c,d]]

    TorusSystem(IntMatrix m, std::int64_t budget);

    SystemKind kind() const noexcept override { return SystemKind::torus; }
    std::string name() const override;
    ParameterRecord record() const override;
    bool accepts(const Point& x) const noexcept override;
    const IntMatrix& matrix() const noexcept { return m_; }

    Point do_step(const Point& x, std::int64_t k) const override;
    double do_metric(const Point& x, const Point& y) const override;
    std::vector<Point> do_sample(std::uint64_t seed, std::size_t count) const override;
    std::unique_ptr<OrbitCursor> do_cursor(const Point& x, std::int64_t stride) const override;

    // M^k reduced mod 2^64 (enough for the 48-bit lattice).
    std::array<std::uint64_t, 4> power(std::int64_t k) const noexcept;

private:
    IntMatrix m_;
    IntMatrix inverse_;
};

// Two-sided full shift on {0,1}^Z, sigma(x)_k = x_{k+1}.
//
// Metric: 2^-m with m = min{|k| : x_k != y_k}. The search stops at |k| = window;
// sequences agreeing there are at distance 0 if identical, else 2^-(window+1).
// Reference measure: uniform Bernoulli on the core [-core_radius, core_radius),
// pseudo-random periodic tails outside.
class ShiftSystem final : public System {
public:
    ShiftSystem(int window, std::int64_t core_radius, std::int64_t budget);

    SystemKind kind() const noexcept override { return SystemKind::shift; }
    std::string name() const override;
    ParameterRecord record() const override;
    bool accepts(const Point& x) const noexcept override;
    int window() const noexcept { return window_; }
    std::int64_t core_radius() const noexcept { return core_radius_; }

    // Smallest |k| <= window with x_k != y_k, or -1 if none.
    int first_disagreement(const ShiftPoint& x, const ShiftPoint& y) const noexcept;

    Point do_step(const Point& x, std::int64_t k) const override;
    double do_metric(const Point& x, const Point& y) const override;
    std::vector<Point> do_sample(std::uint64_t seed, std::size_t count) const override;

private:
    int window_;
    std::int64_t core_radius_;
};

// f x g on X x Y with max metric and product reference measure.
class ProductSystem final : public System {
public:
    ProductSystem(SystemDescriptor left, SystemDescriptor right, std::int64_t budget);

    SystemKind kind() const noexcept override { return SystemKind::product; }
    std::string name() const override;
    ParameterRecord record() const override;
    bool accepts(const Point& x) const noexcept override;
    const SystemDescriptor& left() const noexcept { return left_; }
    const SystemDescriptor& right() const noexcept { return right_; }

    Point do_step(const Point& x, std::int64_t k) const override;
    double do_metric(const Point& x, const Point& y) const override;
    std::vector<Point> do_sample(std::uint64_t seed, std::size_t count) const override;
    std::unique_ptr<OrbitCursor> do_cursor(const Point& x, std::int64_t stride) const override;

private:
    SystemDescriptor left_;
    SystemDescriptor right_;
};

inline constexpr double kGoldenAlpha = 0.6180339887498949;  // (sqrt(5) - 1) / 2

SystemDescriptor make_rotation(double alpha = kGoldenAlpha, std::int64_t budget = kDefaultBudget);
SystemDescriptor make_cycle(std::int64_t p, std::int64_t budget = kDefaultBudget);
SystemDescriptor make_torus(TorusSystem::IntMatrix m = {2, 1, 1, 1}, std::int64_t budget = kDefaultBudget);
SystemDescriptor make_shift(int window = 64, std::int64_t core_radius = 4096, std::int64_t budget = kDefaultBudget);
SystemDescriptor make_product(SystemDescriptor left, SystemDescriptor right, std::int64_t budget = kDefaultBudget);

// Builds a system from a record; throws RecordError naming the violated
// condition. Keys: kind, alpha, p, matrix ("a b c d"), window, core_radius,
// budget, left.*, right.*.
SystemDescriptor make_system(const ParameterRecord& spec);

// Free-function spellings of the checked operations.
inline Point step(const System& s, const Point& x, std::int64_t k) { return s.step(x, k); }
inline double metric(const System& s, const Point& x, const Point& y) { return s.metric(x, y); }
inline std::vector<Point> sample(const System& s, std::uint64_t seed, std::size_t count) {
    return s.sample(seed, count);
}

}  // namespace cocycle_lab::dynsys
