#pragma once

// Brute-force reference computations. Nothing here calls into the library:
// sequences are materialized as plain arrays and every quantity is computed
// by direct enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Materialized two-sided binary sequence on [-pad, length + pad).
struct Sequence {
    std::int64_t pad = 0;
    std::vector<int> symbols;
    int at(std::int64_t j) const { return symbols.at(static_cast<std::size_t>(j + pad)); }
};

// ...0101 | (01)^{n_1} (10)^{n_2} (01)^{n_3} ... | then the last block's word.
inline Sequence oscillating_sequence(std::int64_t base, int levels, std::int64_t pad) {
    std::vector<std::int64_t> blocks;
    std::int64_t b = 1;
    for (int k = 0; k < levels; ++k) blocks.push_back(b *= base);
    std::int64_t length = 0;
    for (auto n : blocks) length += 2 * n;
    Sequence s;
    s.pad = pad;
    s.symbols.assign(static_cast<std::size_t>(length + 2 * pad), 0);
    auto set = [&](std::int64_t j, int v) { s.symbols[static_cast<std::size_t>(j + pad)] = v; };
    for (std::int64_t j = -pad; j < 0; ++j) set(j, static_cast<int>(((j % 2) + 2) % 2));
    std::int64_t pos = 0;
    int phase = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        phase = k % 2 == 0 ? 0 : 1;
        for (std::int64_t i = 0; i < 2 * blocks[k]; ++i) set(pos + i, static_cast<int>((i + phase) % 2));
        pos += 2 * blocks[k];
    }
    for (std::int64_t j = length; j < length + pad; ++j) set(j, static_cast<int>((j - length + phase) % 2));
    return s;
}

// Reference word w = (01)^inf with w_0 = 0.
inline int reference_symbol(std::int64_t k) { return static_cast<int>(((k % 2) + 2) % 2); }

// d(y, w) with the library's window convention: sequences that agree on
// |k| <= 64 are treated as 2^-65 apart.
inline double distance_to_reference(const std::function<int(std::int64_t)>& y) {
    for (int m = 0; m <= 64; ++m)
        if (y(m) != reference_symbol(m) || y(-m) != reference_symbol(-m)) return std::ldexp(1.0, -m);
    return std::ldexp(1.0, -65);
}

// d(y, F) for F = {z : z_k != w_k for some |k| <= 2}, by enumerating every
// z that differs from y only on |k| <= 3. Membership in F only depends on
// |k| <= 2, so changes farther out never help.
inline double distance_to_f(const std::function<int(std::int64_t)>& y) {
    double best = INFINITY;
    for (int mask = 0; mask < (1 << 7); ++mask) {
        auto z = [&](std::int64_t k) { return (k >= -3 && k <= 3 && (mask >> (k + 3)) & 1) ? 1 - y(k) : y(k); };
        bool in_f = false;
        for (int k = -2; k <= 2; ++k) in_f |= z(k) != reference_symbol(k);
        if (!in_f) continue;
        double d = 0.0;
        for (int m = 0; m <= 3 && d == 0.0; ++m)
            if (z(m) != y(m) || z(-m) != y(-m)) d = std::ldexp(1.0, -m);
        best = std::min(best, d);
    }
    return best;
}

inline double testbed_phi(const std::function<int(std::int64_t)>& y) {
    const double df = distance_to_f(y);
    if (df == 0.0) return 0.0;
    return df / (df + distance_to_reference(y));
}

// v(t) = (1/2t) log ||A(2t, x)||_inf for the p = 2 companion cocycle, t = 1..steps.
// The product of companion matrices is monomial, so it is tracked as a row
// permutation plus one log-weight per row: left multiplication by
// [[0, 1], [e^phi, 0]] swaps the rows and adds phi to the new second row.
inline std::vector<double> companion_trace(const Sequence& s, std::int64_t steps) {
    std::vector<double> phi(static_cast<std::size_t>(2 * steps));
    for (std::int64_t k = 0; k < 2 * steps; ++k)
        phi[static_cast<std::size_t>(k)] = testbed_phi([&](std::int64_t j) { return s.at(k + j); });
    double row0 = 0.0, row1 = 0.0;
    std::vector<double> v(static_cast<std::size_t>(steps + 1), 0.0);
    for (std::int64_t k = 0; k < 2 * steps; ++k) {
        const double next0 = row1;
        const double next1 = row0 + phi[static_cast<std::size_t>(k)];
        row0 = next0;
        row1 = next1;
        if (k % 2 == 1) {
            const auto t = (k + 1) / 2;
            v[static_cast<std::size_t>(t)] = std::max(row0, row1) / static_cast<double>(2 * t);
        }
    }
    return v;
}

// Visit counts of frac(k alpha), k < n, in `bins` equal bins. alpha is held
// as a 64-bit fixed-point fraction, so the orbit is exact up to the initial
// rounding of alpha (|error| <= n 2^-64).
inline std::vector<std::uint64_t> rotation_counts(double alpha, std::int64_t n, unsigned bins) {
    const auto a = static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(alpha), 64));
    std::vector<std::uint64_t> counts(bins, 0);
    std::uint64_t x = 0;
    for (std::int64_t k = 0; k < n; ++k, x += a)
        ++counts[static_cast<std::size_t>((static_cast<unsigned __int128>(x) * bins) >> 64)];
    return counts;
}

}  // namespace oracle
