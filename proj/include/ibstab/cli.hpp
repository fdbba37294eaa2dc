#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ibstab {

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on usage errors and 1 on runtime failures.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Scientific notation with 17 significant digits (round-trips exactly).
std::string format_number(double value);

}  // namespace ibstab
