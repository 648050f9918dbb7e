#pragma once

#include "cocycle_lab/dynsys/system.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cocycle_lab::constructions {

using dynsys::ParameterRecord;
using dynsys::Point;

// Phase block lengths n_1 < n_2 < ..., counted in sigma^2-steps. Requires
// n_{k+1} >= 2 (n_1 + ... + n_k) so each block dominates its history.
class BlockSchedule {
public:
    explicit BlockSchedule(std::vector<std::int64_t> lengths);

    // base^1, ..., base^levels.
    static BlockSchedule geometric(std::int64_t base, int levels);

    const std::vector<std::int64_t>& lengths() const noexcept { return lengths_; }
    std::size_t size() const noexcept { return lengths_.size(); }
    // Total number of symbols in the blocked region (2 sum n_k).
    std::int64_t total_symbols() const noexcept;
    // sigma^2-time at which block k (0-based) ends.
    std::int64_t block_end(std::size_t k) const;

    // Record form: {"blocks": "4 16 64"} or {"base": "4", "levels": "8"}.
    ParameterRecord record() const;

private:
    std::vector<std::int64_t> lengths_;
    std::int64_t base_ = 0;
    int levels_ = 0;
};

BlockSchedule parse_schedule(const ParameterRecord& record);

// Two-sided sequence ...0101 | (01)^{n_1} (10)^{n_2} (01)^{n_3} ... | continuing
// with the last block's pattern. Each boundary repeats one symbol, which
// flips the sigma^2 phase. Offset 0 is the start of the first block.
Point oscillating_point(const BlockSchedule& schedule);

// Shift points with a pseudo-random core of 8..64 symbols between periodic
// tails of period 1..4; every such orbit is eventually periodic both ways.
std::vector<Point> eventually_periodic_points(std::uint64_t seed, std::size_t count);

}  // namespace cocycle_lab::constructions
