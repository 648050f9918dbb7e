#include "cocycle_lab/constructions/testbed.hpp"

#include "cocycle_lab/errors.hpp"

namespace cocycle_lab::constructions {

using dynsys::ProductSystem;
using dynsys::SystemKind;

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q <= p / q; ++q)
        if (p % q == 0) return false;
    return true;
}

// Hyperbolic toral automorphisms and the full shift are mixing for their
// reference measures; rotations and cycles never are.
bool mixing(const dynsys::System& s) {
    switch (s.kind()) {
        case SystemKind::torus:
        case SystemKind::shift: return true;
        case SystemKind::rotation:
        case SystemKind::cycle: return false;
        case SystemKind::product: {
            const auto& prod = static_cast<const ProductSystem&>(s);
            return mixing(*prod.left()) && mixing(*prod.right());
        }
    }
    return false;
}

}  // namespace

std::int64_t ProductTestbed::expected_components(std::int64_t power) const {
    if (power < 1) throw InvalidArgument("expected_components: power must be >= 1");
    return power % p == 0 ? p : 1;
}

ParameterRecord ProductTestbed::record() const {
    ParameterRecord r{{"p", std::to_string(p)}};
    const auto& prod = static_cast<const ProductSystem&>(*system);
    for (const auto& [k, v] : prod.right()->record()) r["base." + k] = v;
    return r;
}

ProductTestbed product_testbed(std::int64_t p, SystemDescriptor base) {
    if (!is_prime(p)) throw InvalidArgument("product_testbed: p = " + std::to_string(p) + " is not prime");
    if (!base) base = dynsys::make_torus();
    ProductTestbed t;
    t.p = p;
    t.base_mixing = mixing(*base);
    if (!t.base_mixing) t.note = "base not mixing: product ergodicity hypotheses unmet";
    t.system = dynsys::make_product(dynsys::make_cycle(p, base->budget()), base, base->budget());
    return t;
}

ProductTestbed parse_testbed(const ParameterRecord& record) {
    std::int64_t p = 2;
    ParameterRecord base;
    for (const auto& [k, v] : record) {
        if (k == "p") {
            try {
                std::size_t used = 0;
                p = std::stoll(v, &used);
                if (used != v.size()) throw std::invalid_argument(v);
            } catch (const std::exception&) {
                throw dynsys::RecordError("p", "expected an integer, got '" + v + "'");
            }
        } else if (k.rfind("base.", 0) == 0) {
            base[k.substr(5)] = v;
        } else {
            throw dynsys::RecordError(k, "unknown testbed key");
        }
    }
    SystemDescriptor b;
    if (!base.empty()) {
        try {
            b = dynsys::make_system(base);
        } catch (const dynsys::RecordError& e) {
            throw dynsys::RecordError("base." + e.key(), e.what());
        }
    }
    return product_testbed(p, b);
}

}  // namespace cocycle_lab::constructions
