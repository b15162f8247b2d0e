#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmbv/digraph.hpp"
#include "gmbv/io.hpp"

namespace gmbv {

enum class OutputFormat { Text, Structured, Dot };

struct RunConfig {
  std::string command;
  /// File path or the name of a bundled example (e-r2, e-odo, 2-odometer, ...).
  std::string input;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> width;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> tail;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> level;
  /// Telescoping indices, or the simplicity schedule of bv-check.
  std::vector<std::size_t> levels;
  std::size_t bound = 4;
  Budget budget;
  OutputFormat format = OutputFormat::Text;
  bool wrap = false;
  bool plain = false;
  bool slide = false;
  bool all = false;
  std::int64_t begin = 0;
  /// Level and 1-based vertex of the in-fiber to reverse before verifying.
  std::optional<std::pair<std::size_t, std::size_t>> reverse_fiber;
  std::vector<std::string> walk;
};

enum ExitStatus : int { kPass = 0, kRefuted = 1, kInconclusive = 2, kInputError = 3 };

/// Bundled example directory, then the path as given.
std::string resolve_input(const std::string& input);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gmbv
