#pragma once

#include "cocycle_lab/dynsys/system.hpp"

#include <cstdint>
#include <string>

namespace cocycle_lab::constructions {

using dynsys::ParameterRecord;
using dynsys::SystemDescriptor;

// g = (cycle p) x base. With a mixing base, g^i is ergodic for p not dividing
// i, and g^p has exactly p ergodic components (one per fiber), permuted by g.
struct ProductTestbed {
    SystemDescriptor system;
    std::int64_t p = 0;
    bool base_mixing = false;
    std::string note;  // empty when the hypotheses hold

    std::int64_t expected_components(std::int64_t power) const;
    ParameterRecord record() const;
};

// p must be prime. The default base is the cat map [[2,1],[1,1]].
ProductTestbed product_testbed(std::int64_t p, SystemDescriptor base = nullptr);

ProductTestbed parse_testbed(const ParameterRecord& record);

}  // namespace cocycle_lab::constructions
