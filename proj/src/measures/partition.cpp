#include "cocycle_lab/measures/partition.hpp"

#include "cocycle_lab/errors.hpp"

#include <fmt/format.h>
#include <variant>

namespace cocycle_lab::measures {

using namespace dynsys;

namespace {

struct CircleBins {
    std::size_t bins;
};
struct TorusGrid {
    std::size_t nx, ny;
};
struct CycleCells {
    std::int64_t p;
};
struct ShiftCylinders {
    int radius;
};
struct ProductCells {
    Partition left, right;
};

}  // namespace

struct Partition::Node {
    std::variant<CircleBins, TorusGrid, CycleCells, ShiftCylinders, ProductCells> shape;
    std::size_t size;
    std::string description;
};

Partition Partition::circle_bins(std::size_t bins) {
    if (bins < 1) throw InvalidArgument("circle partition needs >= 1 bin");
    return Partition(std::make_shared<const Node>(Node{CircleBins{bins}, bins, fmt::format("circle[{}]", bins)}));
}

Partition Partition::torus_grid(std::size_t nx, std::size_t ny) {
    if (nx < 1 || ny < 1 || nx > 65536 || ny > 65536) throw InvalidArgument("torus grid sides must lie in [1, 65536]");
    return Partition(std::make_shared<const Node>(Node{TorusGrid{nx, ny}, nx * ny, fmt::format("torus[{}x{}]", nx, ny)}));
}

Partition Partition::cycle_cells(std::int64_t p) {
    if (p < 1) throw InvalidArgument("cycle partition needs p >= 1");
    return Partition(std::make_shared<const Node>(
        Node{CycleCells{p}, static_cast<std::size_t>(p), fmt::format("cycle[{}]", p)}));
}

Partition Partition::shift_cylinders(int radius) {
    if (radius < 0 || radius > 10) throw InvalidArgument("cylinder radius must lie in [0, 10]");
    const std::size_t cells = std::size_t{1} << (2 * radius + 1);
    return Partition(std::make_shared<const Node>(Node{ShiftCylinders{radius}, cells, fmt::format("shift[{}]", radius)}));
}

Partition Partition::product(const Partition& left, const Partition& right) {
    return Partition(std::make_shared<const Node>(Node{ProductCells{left, right}, left.size() * right.size(),
                                                       fmt::format("({})x({})", left.describe(), right.describe())}));
}

std::size_t Partition::size() const noexcept { return node_ ? node_->size : 0; }

const std::string& Partition::describe() const noexcept {
    static const std::string empty = "empty";
    return node_ ? node_->description : empty;
}

std::size_t Partition::locate(const Point& x) const {
    if (!node_) throw InvalidArgument("locate on an empty partition");
    return std::visit(
        [&](const auto& shape) -> std::size_t {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, CircleBins>) {
                if (!x.is<CirclePoint>()) throw KindMismatch("circle partition got " + format_point(x));
                const auto cell = static_cast<std::size_t>(x.as<CirclePoint>().angle * static_cast<double>(shape.bins));
                return cell < shape.bins ? cell : shape.bins - 1;
            } else if constexpr (std::is_same_v<T, TorusGrid>) {
                if (!x.is<TorusPoint>()) throw KindMismatch("torus partition got " + format_point(x));
                const auto& t = x.as<TorusPoint>();
                const std::size_t i = (t.u * shape.nx) >> TorusPoint::kBits;
                const std::size_t j = (t.v * shape.ny) >> TorusPoint::kBits;
                return i * shape.ny + j;
            } else if constexpr (std::is_same_v<T, CycleCells>) {
                if (!x.is<CyclePoint>() || x.as<CyclePoint>().modulus != shape.p)
                    throw KindMismatch("cycle partition got " + format_point(x));
                return static_cast<std::size_t>(x.as<CyclePoint>().index);
            } else if constexpr (std::is_same_v<T, ShiftCylinders>) {
                if (!x.is<ShiftPoint>()) throw KindMismatch("shift partition got " + format_point(x));
                const auto& s = x.as<ShiftPoint>();
                std::size_t cell = 0;
                for (int k = -shape.radius; k <= shape.radius; ++k) cell = (cell << 1) | s.at(k);
                return cell;
            } else {
                if (!x.is<ProductPoint>()) throw KindMismatch("product partition got " + format_point(x));
                return shape.left.locate(x.left()) * shape.right.size() + shape.right.locate(x.right());
            }
        },
        node_->shape);
}

std::string Partition::label(std::size_t cell) const {
    if (cell >= size()) throw InvalidArgument("cell index out of range");
    return std::visit(
        [&](const auto& shape) -> std::string {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, CircleBins>) {
                return fmt::format("[{},{})", static_cast<double>(cell) / static_cast<double>(shape.bins),
                                   static_cast<double>(cell + 1) / static_cast<double>(shape.bins));
            } else if constexpr (std::is_same_v<T, TorusGrid>) {
                return fmt::format("{}:{}", cell / shape.ny, cell % shape.ny);
            } else if constexpr (std::is_same_v<T, CycleCells>) {
                return std::to_string(cell);
            } else if constexpr (std::is_same_v<T, ShiftCylinders>) {
                const int width = 2 * shape.radius + 1;
                std::string w(static_cast<std::size_t>(width), '0');
                for (int i = 0; i < width; ++i)
                    if (cell >> (width - 1 - i) & 1) w[static_cast<std::size_t>(i)] = '1';
                return w;
            } else {
                return shape.left.label(cell / shape.right.size()) + "|" + shape.right.label(cell % shape.right.size());
            }
        },
        node_->shape);
}

Partition default_partition(const System& system) {
    switch (system.kind()) {
        case SystemKind::rotation: return Partition::circle_bins(100);
        case SystemKind::torus: return Partition::torus_grid(50, 50);
        case SystemKind::cycle: return Partition::cycle_cells(static_cast<const CycleSystem&>(system).period());
        case SystemKind::shift: return Partition::shift_cylinders(3);
        case SystemKind::product: {
            const auto& p = static_cast<const ProductSystem&>(system);
            return Partition::product(default_partition(*p.left()), default_partition(*p.right()));
        }
    }
    throw InvalidArgument("unknown system kind");
}

}  // namespace cocycle_lab::measures
