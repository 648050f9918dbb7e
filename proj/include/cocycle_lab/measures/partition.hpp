#pragma once

#include "cocycle_lab/dynsys/system.hpp"

#include <cstddef>
#include <memory>
#include <string>

namespace cocycle_lab::measures {

using dynsys::Point;

// Finite measurable partition used as a proxy for the weak* topology.
// Cells are indexed 0..size()-1; every point of the matching kind lies in
// exactly one cell.
class Partition {
public:
    // Empty partition with no cells; placeholder until assigned.
    Partition() = default;

    static Partition circle_bins(std::size_t bins);
    static Partition torus_grid(std::size_t nx, std::size_t ny);
    static Partition cycle_cells(std::int64_t p);
    // Cylinders fixed by the symbols x_{-radius}..x_{radius}.
    static Partition shift_cylinders(int radius);
    // Cell (i, j) has index i * right.size() + j.
    static Partition product(const Partition& left, const Partition& right);

    std::size_t size() const noexcept;
    std::size_t locate(const Point& x) const;
    std::string label(std::size_t cell) const;

    // Structural description; two partitions are equal iff these match.
    const std::string& describe() const noexcept;

    friend bool operator==(const Partition& a, const Partition& b) { return a.describe() == b.describe(); }

    struct Node;

private:
    explicit Partition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// 100 bins on the circle, 50x50 on the torus, window [-3,3] on the shift,
// singletons on cycles, products componentwise.
Partition default_partition(const dynsys::System& system);

}  // namespace cocycle_lab::measures
