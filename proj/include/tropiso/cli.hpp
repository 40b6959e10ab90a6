#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropiso::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Exit codes: 0 success, 1 library error (printed as ERROR:<kind>:<message>),
/// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SuiteRow {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass;
};

/// The published worked examples, recomputed.
std::vector<SuiteRow> reference_suite(unsigned jobs = 1);

}  // namespace tropiso::cli
