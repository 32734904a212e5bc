#pragma once

#include <filesystem>
#include <iosfwd>

#include "selfgrav/io.hpp"

namespace selfgrav {

struct RunOutcome {
  /// 0 ok, 1 config, 2 material, 3 existence, 4 numerics
  int exit_code = 0;
  json summary;
};

/// Executes one configuration and writes its artifacts into out_dir.
/// Never throws for model or config errors; they are reported in the outcome.
RunOutcome run(const json& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace selfgrav
