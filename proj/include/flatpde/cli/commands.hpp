#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "flatpde/cli/document.hpp"
#include "flatpde/cli/report.hpp"

namespace flatpde::cli {

enum class Command { check, synthesize, prolong, chern, pi_check, selftest };

/// Throws std::invalid_argument for an unknown name.
Command command_from_string(const std::string& name);
std::string to_string(Command c);

struct RunOptions {
  unsigned max_degree = 2;  // selftest corpus degree
  std::uint64_t seed = 1;   // selftest corpus seed
  std::size_t corpus_size = 20;
  Execution execution = Execution::parallel;
};

/// selftest ignores doc and may be given none. Every other command throws
/// MissingBlock when its block is absent.
Report run(Command command, const std::optional<InputDocument>& doc, const RunOptions& options = {});

}  // namespace flatpde::cli
