#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace saw::cli {

enum ExitCode { kOk = 0, kUsage = 2, kInconclusive = 3, kComputation = 4 };

// args excludes the program name. Results go to `out` unless --output is
// given, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Help text of one subcommand, exactly as `saw <name> --help` prints it.
std::string subcommand_help(const std::string& name);
std::vector<std::string> subcommand_names();

// Markdown reference assembled from every subcommand's help text.
std::string docs_markdown();

// "2 0; 0 2" or "2,0;0,2" -> rows.
std::vector<std::vector<std::int64_t>> parse_rows(const std::string& text);

}  // namespace saw::cli
