#include "cocycle_lab/dynsys/system.hpp"

#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/rng.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>
#include <sstream>

namespace cocycle_lab::dynsys {

// ---------------------------------------------------------------- System

Point System::step(const Point& x, std::int64_t k) const {
    check_point(x);
    check_budget(k < 0 ? -k : k);
    return do_step(x, k);
}

double System::metric(const Point& x, const Point& y) const {
    check_point(x);
    check_point(y);
    return do_metric(x, y);
}

std::vector<Point> System::sample(std::uint64_t seed, std::size_t count) const {
    if (count < 1) throw InvalidArgument("sample: count must be >= 1");
    return do_sample(seed, count);
}

std::unique_ptr<OrbitCursor> System::cursor(const Point& x, std::int64_t stride) const {
    check_point(x);
    return do_cursor(x, stride);
}

void System::check_budget(std::int64_t steps) const {
    if (steps > budget_ || steps < 0) throw BudgetExceeded(steps, budget_);
}

void System::check_point(const Point& x) const {
    if (!accepts(x)) throw KindMismatch("point " + format_point(x) + " does not belong to " + name());
}

namespace {

class SteppingCursor final : public OrbitCursor {
public:
    SteppingCursor(const System& sys, Point x, std::int64_t stride) : sys_(sys), x_(std::move(x)), stride_(stride) {}
    const Point& current() const override { return x_; }
    void advance() override { x_ = sys_.do_step(x_, stride_); }

private:
    const System& sys_;
    Point x_;
    std::int64_t stride_;
};

double arc_distance(double a, double b) {
    const double d = std::fabs(a - b);
    return std::fmin(d, 1.0 - d);
}

double lattice_arc(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t d = (a - b) & TorusPoint::kMask;
    const std::uint64_t e = (b - a) & TorusPoint::kMask;
    return static_cast<double>(std::min(d, e)) * 0x1.0p-48;
}

}  // namespace

std::unique_ptr<OrbitCursor> System::do_cursor(const Point& x, std::int64_t stride) const {
    return std::make_unique<SteppingCursor>(*this, x, stride);
}

// -------------------------------------------------------------- Rotation

RotationSystem::RotationSystem(double alpha, std::int64_t budget) : System(budget), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw RecordError("alpha", "rotation number must lie in (0,1)");
}

std::string RotationSystem::name() const { return fmt::format("rotation(alpha={})", alpha_); }

ParameterRecord RotationSystem::record() const {
    return {{"kind", "rotation"}, {"alpha", fmt::format("{}", alpha_)}, {"budget", std::to_string(budget())}};
}

bool RotationSystem::accepts(const Point& x) const noexcept { return x.is<CirclePoint>(); }

double RotationSystem::rotation_angle(std::int64_t k) const noexcept {
    const double kd = static_cast<double>(k);  // exact for |k| < 2^53
    const double hi = kd * alpha_;
    const double lo = std::fma(kd, alpha_, -hi);  // k*alpha == hi + lo exactly
    double r = (hi - std::floor(hi)) + lo;
    r -= std::floor(r);
    return r >= 1.0 ? 0.0 : r;
}

Point RotationSystem::do_step(const Point& x, std::int64_t k) const {
    return Point::circle(x.as<CirclePoint>().angle + rotation_angle(k));
}

double RotationSystem::do_metric(const Point& x, const Point& y) const {
    return arc_distance(x.as<CirclePoint>().angle, y.as<CirclePoint>().angle);
}

std::vector<Point> RotationSystem::do_sample(std::uint64_t seed, std::size_t count) const {
    util::Engine engine(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(Point::circle(util::uniform01(engine)));
    return out;
}

namespace {

class RotationCursor final : public OrbitCursor {
public:
    RotationCursor(const RotationSystem& sys, double start, std::int64_t stride)
        : sys_(sys), start_(start), stride_(stride), x_(Point::circle(start)) {}
    const Point& current() const override { return x_; }
    void advance() override {
        ++i_;
        x_ = Point::circle(start_ + sys_.rotation_angle(i_ * stride_));
    }

private:
    const RotationSystem& sys_;
    double start_;
    std::int64_t stride_;
    std::int64_t i_ = 0;
    Point x_;
};

}  // namespace

std::unique_ptr<OrbitCursor> RotationSystem::do_cursor(const Point& x, std::int64_t stride) const {
    return std::make_unique<RotationCursor>(*this, x.as<CirclePoint>().angle, stride);
}

// ----------------------------------------------------------------- Cycle

CycleSystem::CycleSystem(std::int64_t p, std::int64_t budget) : System(budget), p_(p) {
    if (p < 1) throw RecordError("p", "cycle length must be >= 1");
}

std::string CycleSystem::name() const { return fmt::format("cycle(p={})", p_); }

ParameterRecord CycleSystem::record() const {
    return {{"kind", "cycle"}, {"p", std::to_string(p_)}, {"budget", std::to_string(budget())}};
}

bool CycleSystem::accepts(const Point& x) const noexcept {
    return x.is<CyclePoint>() && x.as<CyclePoint>().modulus == p_;
}

Point CycleSystem::do_step(const Point& x, std::int64_t k) const {
    return Point::cycle(x.as<CyclePoint>().index + k % p_, p_);
}

double CycleSystem::do_metric(const Point& x, const Point& y) const {
    return x.as<CyclePoint>().index == y.as<CyclePoint>().index ? 0.0 : 1.0;
}

std::vector<Point> CycleSystem::do_sample(std::uint64_t seed, std::size_t count) const {
    util::Engine engine(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(Point::cycle(static_cast<std::int64_t>(util::uniform_index(engine, static_cast<std::uint64_t>(p_))), p_));
    return out;
}

// ----------------------------------------------------------------- Torus

namespace {

using U4 = std::array<std::uint64_t, 4>;

U4 mul(const U4& a, const U4& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

U4 to_unsigned(const TorusSystem::IntMatrix& m) {
    return {static_cast<std::uint64_t>(m[0]), static_cast<std::uint64_t>(m[1]), static_cast<std::uint64_t>(m[2]),
            static_cast<std::uint64_t>(m[3])};
}

TorusPoint apply_matrix(const U4& m, const TorusPoint& x) {
    return TorusPoint{(m[0] * x.u + m[1] * x.v) & TorusPoint::kMask, (m[2] * x.u + m[3] * x.v) & TorusPoint::kMask};
}

}  // namespace

TorusSystem::TorusSystem(IntMatrix m, std::int64_t budget) : System(budget), m_(m) {
    const std::int64_t det = m[0] * m[3] - m[1] * m[2];
    const std::int64_t trace = m[0] + m[3];
    if (det != 1 && det != -1) throw RecordError("matrix", "toral automorphism needs |det| = 1, got det = " + std::to_string(det));
    // Eigenvalues solve t^2 - trace t + det = 0; they avoid the unit circle
    // iff |trace| > 2 (det = 1) or trace != 0 (det = -1).
    const bool hyperbolic = det == 1 ? (trace > 2 || trace < -2) : trace != 0;
    if (!hyperbolic) throw RecordError("matrix", "toral automorphism has an eigenvalue on the unit circle (trace " + std::to_string(trace) + ", det " + std::to_string(det) + ")");
    inverse_ = {det * m[3], -det * m[1], -det * m[2], det * m[0]};
}

std::string TorusSystem::name() const {
    return fmt::format("torus(matrix=[[{},{}],[{},{}]])", m_[0], m_[1], m_[2], m_[3]);
}

ParameterRecord TorusSystem::record() const {
    return {{"kind", "torus"},
            {"matrix", fmt::format("{} {} {} {}", m_[0], m_[1], m_[2], m_[3])},
            {"budget", std::to_string(budget())}};
}

bool TorusSystem::accepts(const Point& x) const noexcept { return x.is<TorusPoint>(); }

std::array<std::uint64_t, 4> TorusSystem::power(std::int64_t k) const noexcept {
    U4 base = to_unsigned(k >= 0 ? m_ : inverse_);
    auto e = static_cast<std::uint64_t>(k >= 0 ? k : -k);
    U4 acc{1, 0, 0, 1};
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

Point TorusSystem::do_step(const Point& x, std::int64_t k) const {
    return Point(apply_matrix(power(k), x.as<TorusPoint>()));
}

double TorusSystem::do_metric(const Point& x, const Point& y) const {
    const auto& p = x.as<TorusPoint>();
    const auto& q = y.as<TorusPoint>();
    return std::fmax(lattice_arc(p.u, q.u), lattice_arc(p.v, q.v));
}

std::vector<Point> TorusSystem::do_sample(std::uint64_t seed, std::size_t count) const {
    util::Engine engine(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t u = engine() >> (64 - TorusPoint::kBits);
        const std::uint64_t v = engine() >> (64 - TorusPoint::kBits);
        out.push_back(Point::torus_lattice(u, v));
    }
    return out;
}

namespace {

class TorusCursor final : public OrbitCursor {
public:
    TorusCursor(const U4& m, const TorusPoint& x) : m_(m), x_(Point(x)) {}
    const Point& current() const override { return x_; }
    void advance() override { x_ = Point(apply_matrix(m_, x_.as<TorusPoint>())); }

private:
    U4 m_;
    Point x_;
};

}  // namespace

std::unique_ptr<OrbitCursor> TorusSystem::do_cursor(const Point& x, std::int64_t stride) const {
    return std::make_unique<TorusCursor>(power(stride), x.as<TorusPoint>());
}

// ----------------------------------------------------------------- Shift

ShiftSystem::ShiftSystem(int window, std::int64_t core_radius, std::int64_t budget)
    : System(budget), window_(window), core_radius_(core_radius) {
    if (window < 1 || window > 1000) throw RecordError("window", "metric window must lie in [1, 1000]");
    if (core_radius < 1) throw RecordError("core_radius", "sampler core radius must be >= 1");
}

std::string ShiftSystem::name() const { return fmt::format("shift(window={})", window_); }

ParameterRecord ShiftSystem::record() const {
    return {{"kind", "shift"},
            {"window", std::to_string(window_)},
            {"core_radius", std::to_string(core_radius_)},
            {"budget", std::to_string(budget())}};
}

bool ShiftSystem::accepts(const Point& x) const noexcept { return x.is<ShiftPoint>(); }

Point ShiftSystem::do_step(const Point& x, std::int64_t k) const {
    const auto& s = x.as<ShiftPoint>();
    return Point::shift(s.program, s.offset + k);
}

int ShiftSystem::first_disagreement(const ShiftPoint& x, const ShiftPoint& y) const noexcept {
    if (x.at(0) != y.at(0)) return 0;
    for (int m = 1; m <= window_; ++m)
        if (x.at(m) != y.at(m) || x.at(-m) != y.at(-m)) return m;
    return -1;
}

double ShiftSystem::do_metric(const Point& x, const Point& y) const {
    const auto& a = x.as<ShiftPoint>();
    const auto& b = y.as<ShiftPoint>();
    const int m = first_disagreement(a, b);
    if (m >= 0) return std::ldexp(1.0, -m);
    if (ShiftProgram::same_sequence(*a.program, a.offset, *b.program, b.offset)) return 0.0;
    return std::ldexp(1.0, -(window_ + 1));
}

std::vector<Point> ShiftSystem::do_sample(std::uint64_t seed, std::size_t count) const {
    util::Engine engine(seed);
    std::vector<Point> out;
    out.reserve(count);
    auto tail = [&] {
        Word w(8);
        for (auto& s : w) s = static_cast<Symbol>(engine() >> 63);
        return w;
    };
    for (std::size_t i = 0; i < count; ++i) {
        Word left = tail();
        Word right = tail();
        std::vector<ShiftBlock> core{ShiftBlock::pseudo_random(engine(), 2 * core_radius_)};
        out.push_back(Point::shift(ShiftProgram::make(std::move(left), std::move(core), std::move(right), -core_radius_)));
    }
    return out;
}

// --------------------------------------------------------------- Product

ProductSystem::ProductSystem(SystemDescriptor left, SystemDescriptor right, std::int64_t budget)
    : System(budget), left_(std::move(left)), right_(std::move(right)) {
    if (!left_ || !right_) throw InvalidArgument("product: both factors are required");
}

std::string ProductSystem::name() const { return fmt::format("product({}, {})", left_->name(), right_->name()); }

ParameterRecord ProductSystem::record() const {
    ParameterRecord r{{"kind", "product"}, {"budget", std::to_string(budget())}};
    for (const auto& [k, v] : left_->record()) r["left." + k] = v;
    for (const auto& [k, v] : right_->record()) r["right." + k] = v;
    return r;
}

bool ProductSystem::accepts(const Point& x) const noexcept {
    if (!x.is<ProductPoint>()) return false;
    const auto& p = x.as<ProductPoint>();
    return left_->accepts(*p.left) && right_->accepts(*p.right);
}

Point ProductSystem::do_step(const Point& x, std::int64_t k) const {
    return Point::product(left_->do_step(x.left(), k), right_->do_step(x.right(), k));
}

double ProductSystem::do_metric(const Point& x, const Point& y) const {
    return std::fmax(left_->do_metric(x.left(), y.left()), right_->do_metric(x.right(), y.right()));
}

std::vector<Point> ProductSystem::do_sample(std::uint64_t seed, std::size_t count) const {
    auto l = left_->do_sample(util::derive_seed(seed, 1), count);
    auto r = right_->do_sample(util::derive_seed(seed, 2), count);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(Point::product(std::move(l[i]), std::move(r[i])));
    return out;
}

namespace {

class ProductCursor final : public OrbitCursor {
public:
    ProductCursor(std::unique_ptr<OrbitCursor> l, std::unique_ptr<OrbitCursor> r)
        : l_(std::move(l)), r_(std::move(r)), x_(Point::product(l_->current(), r_->current())) {}
    const Point& current() const override { return x_; }
    void advance() override {
        l_->advance();
        r_->advance();
        x_ = Point::product(l_->current(), r_->current());
    }

private:
    std::unique_ptr<OrbitCursor> l_;
    std::unique_ptr<OrbitCursor> r_;
    Point x_;
};

}  // namespace

std::unique_ptr<OrbitCursor> ProductSystem::do_cursor(const Point& x, std::int64_t stride) const {
    return std::make_unique<ProductCursor>(left_->do_cursor(x.left(), stride), right_->do_cursor(x.right(), stride));
}

// -------------------------------------------------------------- builders

SystemDescriptor make_rotation(double alpha, std::int64_t budget) {
    return std::make_shared<RotationSystem>(alpha, budget);
}
SystemDescriptor make_cycle(std::int64_t p, std::int64_t budget) { return std::make_shared<CycleSystem>(p, budget); }
SystemDescriptor make_torus(TorusSystem::IntMatrix m, std::int64_t budget) {
    return std::make_shared<TorusSystem>(m, budget);
}
SystemDescriptor make_shift(int window, std::int64_t core_radius, std::int64_t budget) {
    return std::make_shared<ShiftSystem>(window, core_radius, budget);
}
SystemDescriptor make_product(SystemDescriptor left, SystemDescriptor right, std::int64_t budget) {
    return std::make_shared<ProductSystem>(std::move(left), std::move(right), budget);
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) throw RecordError(key, "not a valid number: '" + text + "'");
    return v;
}

template <class T>
T get_or(const ParameterRecord& r, const std::string& prefix, const std::string& key, T fallback) {
    const auto it = r.find(prefix + key);
    if (it == r.end()) return fallback;
    return parse_number<T>(prefix + key, it->second);
}

SystemDescriptor build(const ParameterRecord& r, const std::string& prefix) {
    const auto kind_it = r.find(prefix + "kind");
    if (kind_it == r.end()) throw RecordError(prefix + "kind", "missing system kind");
    const std::string& kind = kind_it->second;
    const auto budget = get_or<std::int64_t>(r, prefix, "budget", kDefaultBudget);
    if (budget < 1) throw RecordError(prefix + "budget", "budget must be >= 1");
    try {
        if (kind == "rotation") return make_rotation(get_or<double>(r, prefix, "alpha", kGoldenAlpha), budget);
        if (kind == "cycle") {
            if (!r.count(prefix + "p")) throw RecordError(prefix + "p", "cycle needs p");
            return make_cycle(get_or<std::int64_t>(r, prefix, "p", 1), budget);
        }
        if (kind == "torus") {
            TorusSystem::IntMatrix m{2, 1, 1, 1};
            if (const auto it = r.find(prefix + "matrix"); it != r.end()) {
                std::istringstream is(it->second);
                std::string tok;
                std::size_t i = 0;
                while (is >> tok) {
                    if (i >= 4) throw RecordError(prefix + "matrix", "expected 4 integers");
                    m[i++] = parse_number<std::int64_t>(prefix + "matrix", tok);
                }
                if (i != 4) throw RecordError(prefix + "matrix", "expected 4 integers");
            }
            return make_torus(m, budget);
        }
        if (kind == "shift")
            return make_shift(get_or<int>(r, prefix, "window", 64), get_or<std::int64_t>(r, prefix, "core_radius", 4096),
                              budget);
        if (kind == "product") return make_product(build(r, prefix + "left."), build(r, prefix + "right."), budget);
    } catch (const RecordError& e) {
        // Re-key errors raised by constructors that only know the local name.
        if (e.key().rfind(prefix, 0) == 0 || prefix.empty()) throw;
        throw RecordError(prefix + e.key(), std::string(e.what()).substr(e.key().size() + 2));
    }
    throw RecordError(prefix + "kind", "unknown system kind '" + kind + "'");
}

// Every key must belong to the system it addresses; product components
// are reached through "left." and "right.".
void validate_keys(const ParameterRecord& r) {
    static const std::map<std::string, std::set<std::string>> allowed{
        {"rotation", {"kind", "budget", "alpha"}},
        {"cycle", {"kind", "budget", "p"}},
        {"torus", {"kind", "budget", "matrix"}},
        {"shift", {"kind", "budget", "window", "core_radius"}},
        {"product", {"kind", "budget"}},
    };
    for (const auto& [key, value] : r) {
        std::string prefix;
        while (true) {
            const auto it = r.find(prefix + "kind");
            if (it == r.end()) throw RecordError(prefix + "kind", "missing system kind");
            const auto rest = key.substr(prefix.size());
            if (it->second == "product" && (rest.rfind("left.", 0) == 0 || rest.rfind("right.", 0) == 0)) {
                prefix += rest.substr(0, rest.find('.') + 1);
                continue;
            }
            const auto a = allowed.find(it->second);
            if (a == allowed.end()) throw RecordError(prefix + "kind", "unknown system kind '" + it->second + "'");
            if (!a->second.count(rest)) throw RecordError(key, "unknown key for a " + it->second + " system");
            break;
        }
    }
}

}  // namespace

SystemDescriptor make_system(const ParameterRecord& spec) {
    validate_keys(spec);
    return build(spec, "");
}

}  // namespace cocycle_lab::dynsys
