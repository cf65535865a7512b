#pragma once

// Command-line front end. `run_command` takes the arguments after the program
// name and returns the process exit code: 0 on success, 1 on usage or
// validation errors, 2 when --verify finds a mismatch.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace geosweep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitMismatch = 2;

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Numbers may be given as JSON numbers or as the strings "inf" / "-inf".
double read_number(const nlohmann::json& v);
/// Finite values as numbers, infinities as "inf" / "-inf", NaN as null.
nlohmann::ordered_json write_number(double v);

}  // namespace geosweep::cli
