#include "cocycle_lab/dynsys/point.hpp"

#include "cocycle_lab/errors.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>

namespace cocycle_lab::dynsys {

namespace {

double reduce_unit(double t) {
    if (!std::isfinite(t)) throw InvalidArgument("non-finite coordinate");
    double r = t - std::floor(t);
    // floor can leave r == 1 when t is a tiny negative number.
    if (r >= 1.0) r = 0.0;
    return r;
}

std::uint64_t to_lattice(double t) {
    const double r = reduce_unit(t);
    return static_cast<std::uint64_t>(std::llround(std::ldexp(r, TorusPoint::kBits))) & TorusPoint::kMask;
}

}  // namespace

TorusPoint TorusPoint::from_reals(double a, double b) { return TorusPoint{to_lattice(a), to_lattice(b)}; }

const char* to_string(PointKind kind) noexcept {
    switch (kind) {
        case PointKind::circle: return "circle";
        case PointKind::cycle: return "cycle";
        case PointKind::torus: return "torus";
        case PointKind::shift: return "shift";
        case PointKind::product: return "product";
    }
    return "?";
}

Point Point::circle(double angle) { return Point(CirclePoint{reduce_unit(angle)}); }

Point Point::cycle(std::int64_t index, std::int64_t modulus) {
    if (modulus < 1) throw InvalidArgument("cycle modulus must be >= 1");
    std::int64_t r = index % modulus;
    if (r < 0) r += modulus;
    return Point(CyclePoint{r, modulus});
}

Point Point::torus(double a, double b) { return Point(TorusPoint::from_reals(a, b)); }

Point Point::torus_lattice(std::uint64_t u, std::uint64_t v) {
    return Point(TorusPoint{u & TorusPoint::kMask, v & TorusPoint::kMask});
}

Point Point::shift(std::shared_ptr<const ShiftProgram> program, std::int64_t offset) {
    if (!program) throw InvalidArgument("shift point needs a program");
    return Point(ShiftPoint{std::move(program), offset});
}

Point Point::product(Point left, Point right) {
    return Point(ProductPoint{std::make_shared<const Point>(std::move(left)),
                              std::make_shared<const Point>(std::move(right))});
}

const Point& Point::left() const {
    if (!is<ProductPoint>()) throw KindMismatch("left(): not a product point");
    return *as<ProductPoint>().left;
}

const Point& Point::right() const {
    if (!is<ProductPoint>()) throw KindMismatch("right(): not a product point");
    return *as<ProductPoint>().right;
}

bool operator==(const Point& a, const Point& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case PointKind::circle: return a.as<CirclePoint>().angle == b.as<CirclePoint>().angle;
        case PointKind::cycle: {
            const auto& x = a.as<CyclePoint>();
            const auto& y = b.as<CyclePoint>();
            return x.index == y.index && x.modulus == y.modulus;
        }
        case PointKind::torus: {
            const auto& x = a.as<TorusPoint>();
            const auto& y = b.as<TorusPoint>();
            return x.u == y.u && x.v == y.v;
        }
        case PointKind::shift: {
            const auto& x = a.as<ShiftPoint>();
            const auto& y = b.as<ShiftPoint>();
            return ShiftProgram::same_sequence(*x.program, x.offset, *y.program, y.offset);
        }
        case PointKind::product: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

std::string format_point(const Point& x) {
    switch (x.kind()) {
        case PointKind::circle: return fmt::format("circle({})", x.as<CirclePoint>().angle);
        case PointKind::cycle: {
            const auto& c = x.as<CyclePoint>();
            return fmt::format("cycle({}/{})", c.index, c.modulus);
        }
        case PointKind::torus: {
            const auto& t = x.as<TorusPoint>();
            return fmt::format("torus({},{})", t.a(), t.b());
        }
        case PointKind::shift: {
            const auto& s = x.as<ShiftPoint>();
            if (s.offset == 0) return fmt::format("shift({})", s.program->describe());
            return fmt::format("shift({}@{})", s.program->describe(), s.offset);
        }
        case PointKind::product: return fmt::format("pair({};{})", format_point(x.left()), format_point(x.right()));
    }
    return {};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s) {
    const std::string t = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw InvalidArgument("bad real number '" + t + "'");
    return v;
}

std::int64_t parse_integer(const std::string& s) {
    const std::string t = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
        throw InvalidArgument("bad integer '" + t + "'");
    return v;
}

// Splits "P;Q" at the top-level ';' (outside parentheses).
std::pair<std::string, std::string> split_pair(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ';' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    throw InvalidArgument("pair(...) needs two points separated by ';'");
}

}  // namespace

Point parse_point(const std::string& text) {
    const std::string t = trim(text);
    const auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')') throw InvalidArgument("malformed point literal '" + t + "'");
    const std::string head = t.substr(0, open);
    const std::string body = t.substr(open + 1, t.size() - open - 2);
    if (head == "circle") return Point::circle(parse_real(body));
    if (head == "cycle") {
        const auto slash = body.find('/');
        if (slash == std::string::npos) throw InvalidArgument("cycle point must be cycle(INDEX/MODULUS)");
        return Point::cycle(parse_integer(body.substr(0, slash)), parse_integer(body.substr(slash + 1)));
    }
    if (head == "torus") {
        const auto comma = body.find(',');
        if (comma == std::string::npos) throw InvalidArgument("torus point must be torus(A,B)");
        return Point::torus(parse_real(body.substr(0, comma)), parse_real(body.substr(comma + 1)));
    }
    if (head == "shift") {
        const auto at = body.find('@');
        const std::string prog = trim(at == std::string::npos ? body : body.substr(0, at));
        const std::int64_t offset = at == std::string::npos ? 0 : parse_integer(body.substr(at + 1));
        return Point::shift(parse_program(prog), offset);
    }
    if (head == "pair") {
        auto [l, r] = split_pair(body);
        return Point::product(parse_point(l), parse_point(r));
    }
    throw InvalidArgument("unknown point kind '" + head + "'");
}

}  // namespace cocycle_lab::dynsys
