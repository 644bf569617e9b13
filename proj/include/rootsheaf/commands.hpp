#pragma once

// Command dispatch shared by the command-line tool and the Python module.
// Reports are "key = value" lines, optionally followed by a blank line and a
// witness block. Exit codes: 0 success or property holds, 1 property fails,
// 2 input error or unsupported operation, 3 resource bound exceeded.

#include "rootsheaf/document.hpp"

#include <string>
#include <vector>

namespace rootsheaf {

struct CommandResult {
  int exit_code = 0;
  std::string report;
};

const std::vector<std::string>& command_names();

/// `args` are the positional arguments after the document (declaration
/// names, points). The document text is ignored by "selftest".
CommandResult run_command(const std::string& command, const std::string& document, const std::vector<std::string>& args,
                          const DocumentOptions& options = {});

}  // namespace rootsheaf
