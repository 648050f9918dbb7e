#pragma once

#include <iosfwd>

namespace cocycle_lab::cli {

// Entry point of the cocycle_lab tool; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cocycle_lab::cli
