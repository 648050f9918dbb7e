#include "cocycle_lab/constructions/witness.hpp"

#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/rng.hpp"

#include <fmt/format.h>
#include <limits>
#include <sstream>

namespace cocycle_lab::constructions {

using dynsys::ShiftBlock;
using dynsys::ShiftProgram;
using dynsys::Word;

namespace {

constexpr std::int64_t kMaxTotal = std::numeric_limits<std::int64_t>::max() / 8;

}  // namespace

BlockSchedule::BlockSchedule(std::vector<std::int64_t> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw InvalidArgument("block schedule must have at least one block");
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < lengths_.size(); ++k) {
        const auto n = lengths_[k];
        if (n < 1) throw InvalidArgument(fmt::format("block schedule: length {} must be >= 1", n));
        if (k > 0 && n <= lengths_[k - 1])
            throw InvalidArgument("block schedule: lengths must be strictly increasing");
        if (k > 0 && n < 2 * sum)
            throw InvalidArgument(fmt::format("block schedule: block {} has length {} < 2 * {} (sum of previous)",
                                              k + 1, n, sum));
        if (n > kMaxTotal - sum) throw InvalidArgument("block schedule: total length overflows");
        sum += n;
    }
}

BlockSchedule BlockSchedule::geometric(std::int64_t base, int levels) {
    if (base < 3) throw InvalidArgument("geometric block schedule needs base >= 3");
    if (levels < 1) throw InvalidArgument("geometric block schedule needs levels >= 1");
    std::vector<std::int64_t> lengths;
    std::int64_t n = 1;
    for (int k = 0; k < levels; ++k) {
        if (n > kMaxTotal / base) throw InvalidArgument("geometric block schedule overflows");
        n *= base;
        lengths.push_back(n);
    }
    BlockSchedule s(std::move(lengths));
    s.base_ = base;
    s.levels_ = levels;
    return s;
}

std::int64_t BlockSchedule::total_symbols() const noexcept {
    std::int64_t sum = 0;
    for (auto n : lengths_) sum += n;
    return 2 * sum;
}

std::int64_t BlockSchedule::block_end(std::size_t k) const {
    if (k >= lengths_.size()) throw InvalidArgument("block index out of range");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i <= k; ++i) sum += lengths_[i];
    return sum;
}

ParameterRecord BlockSchedule::record() const {
    if (base_ != 0) return {{"base", std::to_string(base_)}, {"levels", std::to_string(levels_)}};
    std::string text;
    for (auto n : lengths_) text += (text.empty() ? "" : " ") + std::to_string(n);
    return {{"blocks", text}};
}

BlockSchedule parse_schedule(const ParameterRecord& record) {
    auto integer = [](const std::string& key, const std::string& text) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size()) throw dynsys::RecordError(key, "expected an integer, got '" + text + "'");
        return static_cast<std::int64_t>(v);
    };
    for (const auto& [key, value] : record)
        if (key != "blocks" && key != "base" && key != "levels") throw dynsys::RecordError(key, "unknown schedule key");
    if (auto it = record.find("blocks"); it != record.end()) {
        if (record.count("base") || record.count("levels"))
            throw dynsys::RecordError("blocks", "give either blocks or base/levels");
        std::istringstream in(it->second);
        std::vector<std::int64_t> lengths;
        std::string tok;
        while (in >> tok) lengths.push_back(integer("blocks", tok));
        return BlockSchedule(std::move(lengths));
    }
    const auto base = record.count("base") ? integer("base", record.at("base")) : 4;
    const auto levels = record.count("levels") ? integer("levels", record.at("levels")) : 8;
    if (levels < 1 || levels > 64) throw dynsys::RecordError("levels", "must be in [1, 64]");
    return BlockSchedule::geometric(base, static_cast<int>(levels));
}

Point oscillating_point(const BlockSchedule& schedule) {
    const Word even_phase{0, 1};
    const Word odd_phase{1, 0};
    std::vector<ShiftBlock> blocks;
    for (std::size_t k = 0; k < schedule.size(); ++k)
        blocks.push_back(ShiftBlock::repeat(k % 2 == 0 ? even_phase : odd_phase, schedule.lengths()[k]));
    const Word& tail = schedule.size() % 2 == 1 ? even_phase : odd_phase;
    return Point::shift(ShiftProgram::make(even_phase, std::move(blocks), tail, 0), 0);
}

std::vector<Point> eventually_periodic_points(std::uint64_t seed, std::size_t count) {
    util::Engine engine(util::derive_seed(seed, 0xe9));
    auto tail = [&engine] {
        Word w(1 + util::uniform_index(engine, 4));
        for (auto& s : w) s = static_cast<dynsys::Symbol>(engine() & 1);
        return w;
    };
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Word left = tail();
        Word right = tail();
        const auto core = static_cast<std::int64_t>(8 + util::uniform_index(engine, 57));
        const auto start = -static_cast<std::int64_t>(util::uniform_index(engine, static_cast<std::uint64_t>(core)));
        std::vector<ShiftBlock> blocks{ShiftBlock::pseudo_random(engine(), core)};
        out.push_back(Point::shift(ShiftProgram::make(std::move(left), std::move(blocks), std::move(right), start), 0));
    }
    return out;
}

}  // namespace cocycle_lab::constructions
