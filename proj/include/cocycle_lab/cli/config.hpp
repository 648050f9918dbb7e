#pragma once

#include "cocycle_lab/cocycles/cocycle.hpp"
#include "cocycle_lab/measures/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cocycle_lab::cli {

using dynsys::ParameterRecord;
using dynsys::Point;
using dynsys::SystemDescriptor;

struct Entry {
    std::string value;
    int line = 0;
    int column = 0;        // column of the key
    int value_column = 0;  // column of the value
};

// Flat "key = value" text. '#' starts a comment, "[section]" prefixes the
// following keys with "section.". Unknown or duplicate keys are rejected.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;
    const Entry* find(const std::string& key) const;
    void set(const std::string& key, std::string value);

    std::string string(const std::string& key, const std::string& fallback) const;
    std::int64_t integer(const std::string& key, std::int64_t fallback) const;
    double real(const std::string& key, double fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::uint64_t seed() const;

    // Keys under "prefix." with the prefix stripped.
    ParameterRecord section(const std::string& prefix) const;

    // ParseError pointing at the value of `key` (or 1:1 when absent).
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;

private:
    std::map<std::string, Entry> entries_;
};

bool known_key(const std::string& key);

// "n1 n2 ..." or "geometric:first:last:count" (rounded, deduplicated).
std::vector<std::int64_t> parse_horizons(const std::string& text);

// Builders; every failure is reported as a ParseError located at the
// offending key.
SystemDescriptor build_system(const Config& config);
cocycles::MatrixGenerator build_cocycle(const Config& config, const SystemDescriptor& system,
                                        const std::string& prefix = "cocycle");
std::vector<Point> build_probes(const Config& config, const SystemDescriptor& system);
measures::Partition build_partition(const Config& config, const dynsys::System& system);
std::vector<std::int64_t> horizons(const Config& config, const std::string& key);
cocycles::Norm norm(const Config& config);
// Point from a literal under `key`, or sampled with the config seed on `stream`.
Point point_or_sample(const Config& config, const std::string& key, const SystemDescriptor& system,
                      std::uint64_t stream);

}  // namespace cocycle_lab::cli
