#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "shadowsum/cssum.hpp"

namespace shadowsum {

/// One CLI invocation.  Link commands take algebra/level from the input
/// document unless the flags override them.
struct RunConfig {
  std::string command;  // modular | fusion | shadow | cs-sum | wlo | verify
  std::string algebra;
  int level = 0;
  std::string input_path;
  std::string output_format = "json";  // json | table
  std::optional<double> tolerance;     // overrides the route-agreement/check tolerance
  Int weyl_cap = kDefaultWeylCap;
};

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 check failure, 2 usage/parse error
  nlohmann::ordered_json document;
};

RunResult run(const RunConfig& config);

/// Renders the result per the configured output format.
std::string render(const RunResult& result, const RunConfig& config);

}  // namespace shadowsum
