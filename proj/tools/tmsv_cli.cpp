// Command-line front end; all logic lives in the appcore library so tests
// can drive it in-process.  Exit codes: 0 success, 2 usage error,
// 3 numerical failure.
#include <string>
#include <vector>

#include "tmsv/app/reproduce.hpp"

int main(int argc, char** argv) {
  return tmsv::app::main_entry(std::vector<std::string>(argv + 1, argv + argc));
}
