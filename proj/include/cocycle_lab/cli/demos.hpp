#pragma once

#include "cocycle_lab/cli/experiments.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cocycle_lab::cli {

const std::vector<std::string>& demo_names();

// Canned configuration text of a demo; throws InvalidArgument for unknown names.
std::string demo_config(const std::string& name);

// Runs the demo pipelines, writing into ctx.out_dir. Returns kExitOk.
int run_demo(const std::string& name, const RunContext& ctx, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace cocycle_lab::cli
