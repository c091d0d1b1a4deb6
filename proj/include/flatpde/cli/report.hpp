#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flatpde/residuals.hpp"

namespace flatpde::cli {

struct FamilySummary {
  std::string family;
  std::size_t entries = 0;
  std::size_t nonzero = 0;
};

struct Witness {
  std::string family;
  Index index;
  std::string expression;
};

struct Report {
  std::string command;
  int n = 0;
  std::string verdict;
  std::vector<FamilySummary> residual_summary;
  std::vector<Witness> witnesses;
  /// Named results in the input grammar, e.g. ("F[1][1]", "-2").
  std::vector<std::pair<std::string, std::string>> outputs;
  /// Milliseconds per phase; rendered only on request.
  std::vector<std::pair<std::string, double>> timings;
  /// 0 flat/ok, 1 mathematically negative.
  int exit_code = 0;
};

enum class Format { json, text };

/// Newline-terminated. Timings are included only when with_timings is set.
std::string render_report(const Report& r, Format format, bool with_timings = false);

}  // namespace flatpde::cli
