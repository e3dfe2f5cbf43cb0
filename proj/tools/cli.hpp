#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace genent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitConfig = 2;

/// Entry point shared by the executable and the tests. args excludes the
/// program name. CSV goes to --out or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Real formatted with 17 significant digits (round-trip exact).
std::string format_real(double x);

}  // namespace genent::cli
