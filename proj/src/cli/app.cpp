#include "cocycle_lab/cli/app.hpp"

#include "cocycle_lab/cli/demos.hpp"
#include "cocycle_lab/errors.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace cocycle_lab::cli {

namespace {

// COCYCLE_LAB_BUDGET caps the number of map applications per operation.
void apply_budget_env(Config& config) {
    const char* env = std::getenv("COCYCLE_LAB_BUDGET");
    if (!env || config.has("system.budget")) return;
    const std::string text = env;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size() && v >= 1) {
            config.set("system.budget", text);
            return;
        }
    } catch (const std::exception&) {
    }
    throw ParseError("COCYCLE_LAB_BUDGET must be a positive integer, got '" + text + "'", 0, 0);
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"cocycle_lab: matrix cocycles over concrete dynamical systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_flag;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "configuration file");
        if (needs_config) opt->required();
        sub->add_option("--seed", seed, "override the configured seed");
        sub->add_option("--out", out_flag, "output directory");
        sub->add_option("--threads", threads, "worker threads (never changes output)")->check(CLI::Range(1u, 1024u));
    };
    auto* probe = app.add_subcommand("probe", "uniform convergence probe of (1/n) log||A(n,x)||");
    auto* decompose = app.add_subcommand("decompose", "ergodic decomposition scan over the primes dividing d");
    auto* empirical = app.add_subcommand("empirical", "empirical measure histogram");
    auto* lyapunov = app.add_subcommand("lyapunov", "Monte Carlo estimate of the top Lyapunov exponent");
    auto* demo = app.add_subcommand("demo", "bundled experiments");
    for (auto* sub : {probe, decompose, empirical, lyapunov}) add_common(sub, true);
    add_common(demo, false);
    std::string demo_name;
    demo->add_option("name", demo_name, "theorem-c, herman or theorem-e")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        RunContext ctx;
        ctx.threads = threads;
        ctx.log = &out;
        if (demo->parsed()) {
            const auto& names = demo_names();
            if (std::find(names.begin(), names.end(), demo_name) == names.end()) {
                err << "error: unknown demo '" << demo_name << "' (theorem-c, herman, theorem-e)\n";
                return kExitUsage;
            }
            ctx.out_dir = std::filesystem::path(out_flag.value_or("out")) / demo_name;
            return run_demo(demo_name, ctx, seed);
        }
        auto config = Config::load(config_path);
        if (seed) config.set("seed", std::to_string(*seed));
        apply_budget_env(config);
        ctx.out_dir = output_dir(config, out_flag);
        if (probe->parsed()) return exit_code(run_probe(config, ctx).verdict);
        if (decompose->parsed()) run_decompose(config, ctx);
        if (empirical->parsed()) run_empirical(config, ctx);
        if (lyapunov->parsed()) run_lyapunov(config, ctx);
        return kExitOk;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const KindMismatch& e) {
        err << "kind mismatch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PartitionMismatch& e) {
        err << "partition mismatch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "budget: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace cocycle_lab::cli
