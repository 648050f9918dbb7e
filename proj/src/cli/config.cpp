#include "cocycle_lab/cli/config.hpp"

#include "cocycle_lab/cocycles/transforms.hpp"
#include "cocycle_lab/constructions/companion.hpp"
#include "cocycle_lab/constructions/factor.hpp"
#include "cocycle_lab/constructions/herman.hpp"
#include "cocycle_lab/constructions/separating.hpp"
#include "cocycle_lab/constructions/witness.hpp"
#include "cocycle_lab/errors.hpp"
#include "cocycle_lab/util/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace cocycle_lab::cli {

using namespace dynsys;

namespace {

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        if (lead) *lead = s.size();
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    if (lead) *lead = b;
    return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    return std::all_of(key.begin(), key.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'; });
}

const std::set<std::string> kTopKeys = {
    "seed",           "norm",           "tol",           "horizons",          "probe.count",
    "probe.points",   "probe.sampler",  "probe.witness", "probe.witness.base", "probe.witness.levels",
    "probe.lambda_reference",           "lyapunov.mc",   "lyapunov.horizons", "decompose.d",
    "decompose.n",    "decompose.x0",   "decompose.tol", "empirical.n",       "empirical.q",
    "empirical.x0",   "empirical.horizons",              "empirical.tol",     "partition.bins",
    "partition.grid", "partition.window",                "output.dir",
};

const std::set<std::string> kCocycleKeys = {"kind", "matrix", "exponents", "phi", "p", "lambda", "factor", "normalize", "pad"};

std::vector<std::string> split_ws(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Angle of the first circle coordinate, searching products left to right.
const CirclePoint* find_circle(const Point& x) {
    if (x.is<CirclePoint>()) return &x.as<CirclePoint>();
    if (x.is<ProductPoint>()) {
        if (auto* c = find_circle(x.left())) return c;
        return find_circle(x.right());
    }
    return nullptr;
}

ScalarField build_field(const Config& config, const std::string& key, const std::string& spec,
                        const SystemDescriptor& system) {
    if (spec == "testbed") {
        if (system->kind() != SystemKind::shift) config.fail(key, "field 'testbed' needs a shift system");
        return constructions::shift_testbed_separating(system).field();
    }
    if (spec.rfind("cos:", 0) == 0) {
        double a = 0.0;
        try {
            std::size_t used = 0;
            a = std::stod(spec.substr(4), &used);
            if (used != spec.size() - 4) throw std::invalid_argument(spec);
        } catch (const std::exception&) {
            config.fail(key, "bad amplitude in '" + spec + "'");
        }
        return [a](const Point& x) {
            const auto* c = find_circle(x);
            if (!c) throw KindMismatch("field cos:A needs a circle coordinate");
            return a * std::cos(2.0 * std::numbers::pi * c->angle);
        };
    }
    try {
        std::size_t used = 0;
        const double c = std::stod(spec, &used);
        if (used != spec.size() || !std::isfinite(c)) throw std::invalid_argument(spec);
        return [c](const Point&) { return c; };
    } catch (const std::exception&) {
        config.fail(key, "unknown field '" + spec + "' (expected a number, 'testbed' or 'cos:A')");
    }
}

cocycles::Matrix parse_matrix(const Config& config, const std::string& key, const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string row;
    while (std::getline(in, row, ';')) {
        std::vector<double> r;
        for (const auto& tok : split_ws(row)) {
            try {
                std::size_t used = 0;
                r.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                config.fail(key, "bad matrix entry '" + tok + "'");
            }
        }
        rows.push_back(std::move(r));
    }
    const auto n = rows.size();
    if (n == 0) config.fail(key, "empty matrix");
    cocycles::Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) config.fail(key, "matrix must be square, rows separated by ';'");
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

}  // namespace

bool known_key(const std::string& key) {
    if (kTopKeys.count(key)) return true;
    if (key.rfind("system.", 0) == 0) return key.size() > 7;  // checked by the system builder
    if (key.rfind("cocycle.", 0) == 0) {
        std::string rest = key.substr(8);
        while (rest.rfind("inner.", 0) == 0) rest = rest.substr(6);
        return kCocycleKeys.count(rest) > 0;
    }
    return false;
}

Config Config::parse(const std::string& text) {
    Config config;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::size_t lead = 0;
        const std::string body = trim(line, &lead);
        if (body.empty()) continue;
        const int col0 = static_cast<int>(lead) + 1;
        if (body.front() == '[') {
            if (body.back() != ']') throw ParseError("unterminated section header", line_no, col0);
            section = trim(body.substr(1, body.size() - 2));
            if (!section.empty() && !valid_key(section)) throw ParseError("invalid section name", line_no, col0 + 1);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, col0);
        const std::string key_text = trim(line.substr(0, eq));
        if (!valid_key(key_text)) throw ParseError("invalid key '" + key_text + "'", line_no, col0);
        std::size_t vlead = 0;
        const std::string value = trim(line.substr(eq + 1), &vlead);
        const int vcol = static_cast<int>(eq + 1 + vlead) + 1;
        if (value.empty()) throw ParseError("missing value for '" + key_text + "'", line_no, vcol);
        const std::string key = section.empty() ? key_text : section + "." + key_text;
        if (!known_key(key)) throw ParseError("unknown key '" + key + "'", line_no, col0);
        if (config.entries_.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, col0);
        config.entries_[key] = Entry{value, line_no, col0, vcol};
    }
    return config;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'", 0, 0);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

const Entry* Config::find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void Config::set(const std::string& key, std::string value) {
    auto& e = entries_[key];
    e.value = std::move(value);
}

void Config::fail(const std::string& key, const std::string& what) const {
    if (const auto* e = find(key)) throw ParseError(key + ": " + what, e->line, e->value_column);
    throw ParseError(key + ": " + what, 1, 1);
}

std::string Config::string(const std::string& key, const std::string& fallback) const {
    const auto* e = find(key);
    return e ? e->value : fallback;
}

std::int64_t Config::integer(const std::string& key, std::int64_t fallback) const {
    const auto* e = find(key);
    if (!e) return fallback;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(e->value, &used, 0);
        if (used == e->value.size()) return v;
    } catch (const std::exception&) {
    }
    fail(key, "expected an integer, got '" + e->value + "'");
}

double Config::real(const std::string& key, double fallback) const {
    const auto* e = find(key);
    if (!e) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(e->value, &used);
        if (used == e->value.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    fail(key, "expected a finite number, got '" + e->value + "'");
}

bool Config::boolean(const std::string& key, bool fallback) const {
    const auto* e = find(key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    fail(key, "expected true or false, got '" + e->value + "'");
}

std::uint64_t Config::seed() const {
    const auto* e = find("seed");
    if (!e) return 1;
    try {
        std::size_t used = 0;
        if (!e->value.empty() && e->value.front() != '-') {
            const unsigned long long v = std::stoull(e->value, &used, 0);
            if (used == e->value.size()) return v;
        }
    } catch (const std::exception&) {
    }
    fail("seed", "expected a non-negative integer, got '" + e->value + "'");
}

ParameterRecord Config::section(const std::string& prefix) const {
    ParameterRecord out;
    const std::string p = prefix + ".";
    for (const auto& [k, e] : entries_)
        if (k.rfind(p, 0) == 0) out[k.substr(p.size())] = e.value;
    return out;
}

std::vector<std::int64_t> parse_horizons(const std::string& text) {
    std::vector<std::int64_t> out;
    auto to_int = [](const std::string& tok) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) throw InvalidArgument("bad horizon '" + tok + "'");
        return static_cast<std::int64_t>(v);
    };
    if (text.rfind("geometric:", 0) == 0) {
        std::vector<std::string> parts;
        std::istringstream in(text.substr(10));
        std::string part;
        while (std::getline(in, part, ':')) parts.push_back(part);
        if (parts.size() != 3) throw InvalidArgument("expected geometric:FIRST:LAST:COUNT");
        const auto first = to_int(parts[0]);
        const auto last = to_int(parts[1]);
        const auto count = to_int(parts[2]);
        if (first < 1 || last <= first || count < 2) throw InvalidArgument("geometric schedule needs 1 <= first < last and count >= 2");
        const double ratio = std::log(static_cast<double>(last) / static_cast<double>(first)) / static_cast<double>(count - 1);
        for (std::int64_t i = 0; i < count; ++i) {
            const auto n = i + 1 == count ? last
                                          : static_cast<std::int64_t>(std::llround(static_cast<double>(first) *
                                                                                   std::exp(ratio * static_cast<double>(i))));
            if (out.empty() || n > out.back()) out.push_back(n);
        }
    } else {
        for (const auto& tok : split_ws(text)) out.push_back(to_int(tok));
    }
    if (out.empty()) throw InvalidArgument("empty horizon schedule");
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] < 1 || (i && out[i] <= out[i - 1])) throw InvalidArgument("horizons must be positive and strictly increasing");
    return out;
}

std::vector<std::int64_t> horizons(const Config& config, const std::string& key) {
    if (!config.has(key)) config.fail(key, "horizon schedule is required");
    try {
        return parse_horizons(config.string(key, ""));
    } catch (const InvalidArgument& e) {
        config.fail(key, e.what());
    }
}

cocycles::Norm norm(const Config& config) {
    try {
        return cocycles::parse_norm(config.string("norm", "inf"));
    } catch (const InvalidArgument& e) {
        config.fail("norm", e.what());
    }
}

SystemDescriptor build_system(const Config& config) {
    const auto record = config.section("system");
    if (record.empty()) config.fail("system.kind", "a system section is required");
    try {
        return make_system(record);
    } catch (const RecordError& e) {
        config.fail("system." + e.key(), e.what());
    } catch (const InvalidArgument& e) {
        config.fail("system.kind", e.what());
    }
}

cocycles::MatrixGenerator build_cocycle(const Config& config, const SystemDescriptor& system, const std::string& prefix) {
    const std::string kind_key = prefix + ".kind";
    if (!config.has(kind_key)) config.fail(kind_key, "cocycle kind is required");
    const std::string kind = config.string(kind_key, "");
    std::optional<cocycles::MatrixGenerator> gen;
    try {
        if (kind == "constant") {
            gen = cocycles::MatrixGenerator::constant(parse_matrix(config, prefix + ".matrix", config.string(prefix + ".matrix", "")));
        } else if (kind == "diagonal") {
            std::vector<ScalarField> fields;
            for (const auto& spec : split_ws(config.string(prefix + ".exponents", "")))
                fields.push_back(build_field(config, prefix + ".exponents", spec, system));
            if (fields.empty()) config.fail(prefix + ".exponents", "at least one exponent field is required");
            gen = cocycles::MatrixGenerator::diagonal_exp(std::move(fields));
        } else if (kind == "companion") {
            const auto p = config.integer(prefix + ".p", 2);
            if (p < 2 || p > 64) config.fail(prefix + ".p", "companion dimension must be in [2, 64]");
            gen = constructions::companion_cocycle(
                build_field(config, prefix + ".phi", config.string(prefix + ".phi", "testbed"), system), static_cast<int>(p));
        } else if (kind == "herman") {
            if (system->kind() != SystemKind::rotation) config.fail(kind_key, "herman cocycle needs a rotation system (use pullback otherwise)");
            gen = constructions::herman_reference(config.real(prefix + ".lambda", 2.0));
        } else if (kind == "pullback") {
            const auto factor_kind = config.string(prefix + ".factor", "circle");
            if (factor_kind != "circle") config.fail(prefix + ".factor", "only the 'circle' factor is supported");
            const auto factor = constructions::circle_factor(system, [](const Point& x) {
                const auto* c = find_circle(x);
                if (!c) throw KindMismatch("circle factor needs a circle coordinate");
                return std::polar(1.0, 2.0 * std::numbers::pi * c->angle);
            });
            const auto inner = build_cocycle(config, factor.rotation, prefix + ".inner");
            gen = cocycles::pullback(inner, factor.map, *system, *factor.rotation);
        } else {
            config.fail(kind_key, "unknown cocycle kind '" + kind + "' (constant, diagonal, companion, herman, pullback)");
        }
        if (config.boolean(prefix + ".normalize", false)) gen = cocycles::normalize_det(*gen);
        if (config.has(prefix + ".pad")) {
            const auto p = config.integer(prefix + ".pad", 0);
            if (p < gen->dim() || p > 64) config.fail(prefix + ".pad", "pad dimension must be in [dim, 64]");
            gen = cocycles::pad(*gen, static_cast<int>(p));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        config.fail(kind_key, e.what());
    } catch (const InvalidArgument& e) {
        config.fail(kind_key, e.what());
    } catch (const KindMismatch& e) {
        config.fail(kind_key, e.what());
    }
    return *gen;
}

Point point_or_sample(const Config& config, const std::string& key, const SystemDescriptor& system, std::uint64_t stream) {
    if (!config.has(key)) return system->sample(util::derive_seed(config.seed(), stream), 1).front();
    Point x;
    try {
        x = parse_point(config.string(key, ""));
    } catch (const InvalidArgument& e) {
        config.fail(key, e.what());
    }
    if (!system->accepts(x)) config.fail(key, "point does not belong to the configured system");
    return x;
}

std::vector<Point> build_probes(const Config& config, const SystemDescriptor& system) {
    std::vector<Point> probes;
    if (config.boolean("probe.witness", false)) {
        if (system->kind() != SystemKind::shift) config.fail("probe.witness", "witness probes need a shift system");
        const auto base = config.integer("probe.witness.base", 4);
        const auto levels = config.integer("probe.witness.levels", 8);
        if (levels < 1 || levels > 30) config.fail("probe.witness.levels", "must be in [1, 30]");
        try {
            probes.push_back(constructions::oscillating_point(constructions::BlockSchedule::geometric(base, static_cast<int>(levels))));
        } catch (const InvalidArgument& e) {
            config.fail("probe.witness.base", e.what());
        }
    }
    for (const auto& lit : split_ws(config.string("probe.points", ""))) {
        try {
            probes.push_back(parse_point(lit));
        } catch (const InvalidArgument& e) {
            config.fail("probe.points", e.what());
        }
        if (!system->accepts(probes.back())) config.fail("probe.points", "point '" + lit + "' does not belong to the system");
    }
    const auto count = config.integer("probe.count", 32);
    if (count < 0 || count > 1'000'000) config.fail("probe.count", "must be in [0, 10^6]");
    const auto sampler = config.string("probe.sampler", "reference");
    const auto seed = util::derive_seed(config.seed(), 0x9b);
    std::vector<Point> drawn;
    if (sampler == "reference") {
        if (count > 0) drawn = system->sample(seed, static_cast<std::size_t>(count));
    } else if (sampler == "eventually-periodic") {
        if (system->kind() != SystemKind::shift) config.fail("probe.sampler", "eventually-periodic probes need a shift system");
        drawn = constructions::eventually_periodic_points(seed, static_cast<std::size_t>(count));
    } else {
        config.fail("probe.sampler", "expected 'reference' or 'eventually-periodic'");
    }
    probes.insert(probes.end(), drawn.begin(), drawn.end());
    return probes;
}

measures::Partition build_partition(const Config& config, const System& system) {
    switch (system.kind()) {
        case SystemKind::rotation: {
            const auto bins = config.integer("partition.bins", 100);
            if (bins < 1 || bins > 10'000'000) config.fail("partition.bins", "must be in [1, 10^7]");
            return measures::Partition::circle_bins(static_cast<std::size_t>(bins));
        }
        case SystemKind::torus: {
            const auto side = config.integer("partition.grid", 50);
            if (side < 1 || side > 65536) config.fail("partition.grid", "must be in [1, 65536]");
            return measures::Partition::torus_grid(static_cast<std::size_t>(side), static_cast<std::size_t>(side));
        }
        case SystemKind::cycle:
            return measures::Partition::cycle_cells(static_cast<const CycleSystem&>(system).period());
        case SystemKind::shift: {
            const auto r = config.integer("partition.window", 3);
            if (r < 0 || r > 10) config.fail("partition.window", "must be in [0, 10]");
            return measures::Partition::shift_cylinders(static_cast<int>(r));
        }
        case SystemKind::product: {
            const auto& p = static_cast<const ProductSystem&>(system);
            return measures::Partition::product(build_partition(config, *p.left()), build_partition(config, *p.right()));
        }
    }
    throw InvalidArgument("unknown system kind");
}

}  // namespace cocycle_lab::cli
