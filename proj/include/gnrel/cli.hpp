#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gnrel {

/// Entry point of the gnrel tool. Exit codes: 0 holds / consistent,
/// 1 fails / inconsistent, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with the program name omitted from `args`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gnrel
