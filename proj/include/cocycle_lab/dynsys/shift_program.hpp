#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cocycle_lab::dynsys {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

// A finite run of symbols: either `count` copies of a word, or a
// pseudo-random run whose symbols are hashed from (seed, position).
class ShiftBlock {
public:
    static ShiftBlock repeat(Word word, std::int64_t count);
    static ShiftBlock pseudo_random(std::uint64_t seed, std::int64_t length);

    std::int64_t length() const noexcept { return length_; }
    Symbol at(std::int64_t i) const noexcept;

    bool is_random() const noexcept { return random_; }
    const Word& word() const noexcept { return word_; }
    std::int64_t count() const noexcept { return count_; }
    std::uint64_t seed() const noexcept { return seed_; }

    bool operator==(const ShiftBlock&) const = default;

private:
    Word word_;
    std::int64_t count_ = 0;
    std::uint64_t seed_ = 0;
    std::int64_t length_ = 0;
    bool random_ = false;
};

// Finite description of a two-sided binary sequence s: Z -> {0,1}.
//
//   j <  start : s(j) = left[(j - start) mod |left|]   (so s(start-1) = left.back())
//   start <= j < end : concatenated blocks
//   j >= end   : s(j) = right[(j - end) mod |right|]
//
// Symbol access is O(log #blocks). Programs are immutable and shared
// between points through shared_ptr.
class ShiftProgram {
public:
    static std::shared_ptr<const ShiftProgram> periodic(Word word);
    static std::shared_ptr<const ShiftProgram> make(Word left, std::vector<ShiftBlock> blocks, Word right,
                                                    std::int64_t start = 0);

    Symbol symbol(std::int64_t j) const noexcept;

    std::int64_t core_begin() const noexcept { return start_; }
    std::int64_t core_end() const noexcept { return end_; }
    const Word& left_tail() const noexcept { return left_; }
    const Word& right_tail() const noexcept { return right_; }
    const std::vector<ShiftBlock>& blocks() const noexcept { return blocks_; }

    // True when the whole two-sided sequence is periodic; period() is then
    // its minimal period.
    bool purely_periodic() const noexcept { return periodic_; }
    std::int64_t period() const noexcept { return period_; }

    // Exact test of s_a(k + a_offset) == s_b(k + b_offset) for every k in Z.
    static bool same_sequence(const ShiftProgram& a, std::int64_t a_offset, const ShiftProgram& b,
                              std::int64_t b_offset);

    // Text form "LEFT|BLOCKS|RIGHT|START"; see parse_program.
    std::string describe() const;

private:
    ShiftProgram(Word left, std::vector<ShiftBlock> blocks, Word right, std::int64_t start);
    void detect_periodicity();

    Word left_;
    std::vector<ShiftBlock> blocks_;
    std::vector<std::int64_t> block_starts_;
    Word right_;
    std::int64_t start_ = 0;
    std::int64_t end_ = 0;
    bool periodic_ = false;
    std::int64_t period_ = 0;
};

// Inverse of ShiftProgram::describe. Accepts "WORD" (purely periodic) or
// "LEFT|BLOCKS|RIGHT[|START]" where BLOCKS is a comma-separated list of
// "WORDxCOUNT" or "rand:SEED:LENGTH" (possibly empty). Throws InvalidArgument.
std::shared_ptr<const ShiftProgram> parse_program(const std::string& text);

Word parse_word(const std::string& text);
std::string format_word(const Word& word);

}  // namespace cocycle_lab::dynsys
