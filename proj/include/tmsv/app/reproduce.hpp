#pragma once
// Command execution: runs a parsed configuration end to end (compute, then
// write data files plus manifest.txt into the output directory) and the
// process entry point with the exit-code contract
//   0 success, 2 usage error, 3 numerical failure.

#include <string>
#include <vector>

#include "tmsv/app/config.hpp"

namespace tmsv::app {

// Execute the run; returns the paths of all files written (manifest last).
// Throws usage_error for bad configurations and tmsv::numerical_error when a
// computation fails to converge (message names the failing stage).
std::vector<std::string> run(const RunConfig& config);

// Full front end: parse args (excluding program name), execute, print the
// written paths one per line.  Maps exceptions to the exit-code contract.
int main_entry(const std::vector<std::string>& args);

}  // namespace tmsv::app
