#include "cocycle_lab/dynsys/shift_program.hpp"

#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/rng.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace cocycle_lab::dynsys {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Smallest d dividing |w| such that w is invariant under cyclic shift by d.
std::int64_t minimal_cyclic_period(const Word& w) {
    const auto n = static_cast<std::int64_t>(w.size());
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::int64_t i = 0; i + d < n && ok; ++i) ok = w[i] == w[i + d];
        if (ok) return d;
    }
    return n;
}

void check_word(const Word& w, const char* what) {
    if (w.empty()) throw InvalidArgument(std::string("shift program: empty ") + what);
    for (Symbol s : w)
        if (s > 1) throw InvalidArgument(std::string("shift program: non-binary symbol in ") + what);
}

}  // namespace

ShiftBlock ShiftBlock::repeat(Word word, std::int64_t count) {
    check_word(word, "block word");
    if (count < 1) throw InvalidArgument("shift block: repeat count must be >= 1");
    ShiftBlock b;
    b.length_ = static_cast<std::int64_t>(word.size()) * count;
    b.word_ = std::move(word);
    b.count_ = count;
    return b;
}

ShiftBlock ShiftBlock::pseudo_random(std::uint64_t seed, std::int64_t length) {
    if (length < 1) throw InvalidArgument("shift block: random length must be >= 1");
    ShiftBlock b;
    b.random_ = true;
    b.seed_ = seed;
    b.length_ = length;
    return b;
}

Symbol ShiftBlock::at(std::int64_t i) const noexcept {
    if (random_) return static_cast<Symbol>(util::mix64(seed_ ^ util::mix64(static_cast<std::uint64_t>(i))) >> 63);
    return word_[static_cast<std::size_t>(i % static_cast<std::int64_t>(word_.size()))];
}

ShiftProgram::ShiftProgram(Word left, std::vector<ShiftBlock> blocks, Word right, std::int64_t start)
    : left_(std::move(left)), blocks_(std::move(blocks)), right_(std::move(right)), start_(start) {
    check_word(left_, "left tail");
    check_word(right_, "right tail");
    block_starts_.reserve(blocks_.size());
    std::int64_t pos = start_;
    for (const auto& b : blocks_) {
        block_starts_.push_back(pos);
        pos += b.length();
    }
    end_ = pos;
    detect_periodicity();
}

std::shared_ptr<const ShiftProgram> ShiftProgram::periodic(Word word) {
    Word copy = word;
    return std::shared_ptr<const ShiftProgram>(new ShiftProgram(std::move(word), {}, std::move(copy), 0));
}

std::shared_ptr<const ShiftProgram> ShiftProgram::make(Word left, std::vector<ShiftBlock> blocks, Word right,
                                                       std::int64_t start) {
    return std::shared_ptr<const ShiftProgram>(
        new ShiftProgram(std::move(left), std::move(blocks), std::move(right), start));
}

Symbol ShiftProgram::symbol(std::int64_t j) const noexcept {
    if (j < start_) return left_[static_cast<std::size_t>(floor_mod(j - start_, static_cast<std::int64_t>(left_.size())))];
    if (j >= end_) return right_[static_cast<std::size_t>(floor_mod(j - end_, static_cast<std::int64_t>(right_.size())))];
    const auto it = std::upper_bound(block_starts_.begin(), block_starts_.end(), j);
    const auto idx = static_cast<std::size_t>(std::distance(block_starts_.begin(), it) - 1);
    return blocks_[idx].at(j - block_starts_[idx]);
}

void ShiftProgram::detect_periodicity() {
    // A periodic sequence has a period that is a multiple of both tail
    // periods; checking s(j) = s(j+q) across the core settles it.
    const std::int64_t q = std::lcm(minimal_cyclic_period(left_), minimal_cyclic_period(right_));
    for (std::int64_t j = start_ - q; j < end_; ++j) {
        if (symbol(j) != symbol(j + q)) {
            periodic_ = false;
            period_ = 0;
            return;
        }
    }
    periodic_ = true;
    Word window(static_cast<std::size_t>(q));
    for (std::int64_t i = 0; i < q; ++i) window[static_cast<std::size_t>(i)] = symbol(i);
    period_ = minimal_cyclic_period(window);
}

bool ShiftProgram::same_sequence(const ShiftProgram& a, std::int64_t a_offset, const ShiftProgram& b,
                                 std::int64_t b_offset) {
    if (&a == &b && a_offset == b_offset) return true;
    if (a.periodic_ != b.periodic_) return false;
    auto agree = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k)
            if (a.symbol(k + a_offset) != b.symbol(k + b_offset)) return false;
        return true;
    };
    if (a.periodic_) return agree(0, std::lcm(a.period_, b.period_));
    // Neither is periodic, so a shift of one program never equals itself.
    if (&a == &b) return false;
    const std::int64_t lo = std::min(a.start_ - a_offset, b.start_ - b_offset);
    const std::int64_t hi = std::max(a.end_ - a_offset, b.end_ - b_offset);
    const auto ql = std::lcm(static_cast<std::int64_t>(a.left_.size()), static_cast<std::int64_t>(b.left_.size()));
    const auto qr = std::lcm(static_cast<std::int64_t>(a.right_.size()), static_cast<std::int64_t>(b.right_.size()));
    return agree(lo - ql, hi + qr);
}

std::string format_word(const Word& word) {
    std::string s;
    s.reserve(word.size());
    for (Symbol c : word) s.push_back(static_cast<char>('0' + c));
    return s;
}

Word parse_word(const std::string& text) {
    if (text.empty()) throw InvalidArgument("empty binary word");
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw InvalidArgument("binary word contains '" + std::string(1, c) + "'");
        w.push_back(static_cast<Symbol>(c - '0'));
    }
    return w;
}

std::string ShiftProgram::describe() const {
    if (blocks_.empty() && left_ == right_ && start_ == 0) return format_word(left_);
    std::ostringstream os;
    os << format_word(left_) << '|';
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) os << ',';
        const auto& b = blocks_[i];
        if (b.is_random())
            os << "rand:" << b.seed() << ':' << b.length();
        else
            os << format_word(b.word()) << 'x' << b.count();
    }
    os << '|' << format_word(right_) << '|' << start_;
    return os.str();
}

namespace {

template <class Int>
Int parse_int(const std::string& s, const char* what) {
    Int v{};
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw InvalidArgument(std::string("bad integer for ") + what + ": '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::shared_ptr<const ShiftProgram> parse_program(const std::string& text) {
    const auto parts = split(text, '|');
    if (parts.size() == 1) return ShiftProgram::periodic(parse_word(parts[0]));
    if (parts.size() != 3 && parts.size() != 4)
        throw InvalidArgument("shift program must be WORD or LEFT|BLOCKS|RIGHT[|START]: '" + text + "'");
    std::vector<ShiftBlock> blocks;
    if (!parts[1].empty()) {
        for (const auto& item : split(parts[1], ',')) {
            if (item.rfind("rand:", 0) == 0) {
                const auto f = split(item.substr(5), ':');
                if (f.size() != 2) throw InvalidArgument("random block must be rand:SEED:LENGTH");
                blocks.push_back(ShiftBlock::pseudo_random(parse_int<std::uint64_t>(f[0], "seed"),
                                                           parse_int<std::int64_t>(f[1], "length")));
            } else {
                const auto x = item.find('x');
                if (x == std::string::npos) throw InvalidArgument("block must be WORDxCOUNT: '" + item + "'");
                blocks.push_back(ShiftBlock::repeat(parse_word(item.substr(0, x)),
                                                    parse_int<std::int64_t>(item.substr(x + 1), "count")));
            }
        }
    }
    const std::int64_t start = parts.size() == 4 ? parse_int<std::int64_t>(parts[3], "start") : 0;
    return ShiftProgram::make(parse_word(parts[0]), std::move(blocks), parse_word(parts[2]), start);
}

}  // namespace cocycle_lab::dynsys
