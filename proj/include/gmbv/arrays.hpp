#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gmbv/bratteli.hpp"
#include "gmbv/gm.hpp"

namespace gmbv {

/// Rows of vertex symbols x|_n over positions [begin, begin + width).
struct ArrayWindow {
  std::int64_t begin = 0;
  /// rows[n][i] is a vertex of G_n.
  std::vector<std::vector<VertexId>> rows;

  std::size_t width() const { return rows.empty() ? 0 : rows[0].size(); }
};

/// Circuit row of a linked array with its cuts. A label lists every circuit
/// index consistent with the visible data; only the leftmost and rightmost
/// partial blocks can have more than one candidate.
struct LinkedRow {
  std::vector<std::vector<std::size_t>> labels;
  /// Absolute positions i carrying a cut just before i, increasing.
  std::vector<std::int64_t> cuts;
};

/// Finite, fully labelled rectangle: symbols are 1-based circuit indices and
/// cut flags are relative to the left edge. Ordered so windows can be
/// collected into sets.
struct SymbolWindow {
  std::vector<std::vector<std::uint32_t>> symbols;
  std::vector<std::vector<std::uint8_t>> cuts;

  auto operator<=>(const SymbolWindow&) const = default;
};

struct LinkedArrayWindow {
  std::int64_t begin = 0;
  std::size_t width = 0;
  std::vector<LinkedRow> rows;

  bool has_cut(std::size_t level, std::int64_t position) const;
  /// Every label has exactly one candidate.
  bool determined() const;
  std::optional<SymbolWindow> symbols() const;
};

struct LinkedWindowPair {
  ArrayWindow array;
  LinkedArrayWindow linked;
};

/// Array and linked array rows 0..N of a walk in G_N placed at `begin`.
LinkedWindowPair linked_window(const GmCovering& g, std::size_t level, const Walk& walk,
                               std::int64_t begin = 0);

/// Every (n+1)-cut is an n-cut.
bool cuts_monotone(const LinkedArrayWindow& w);

/// Slide amounts s_n = l(c_{n-1,1}) (n >= 2) and their sums S(n), S(0) = S(1) = 0.
class SlideSpec {
 public:
  SlideSpec(const GmCovering& g, std::size_t top_level);

  std::size_t top_level() const { return totals_.size() - 1; }
  std::size_t step(std::size_t n) const { return n < 2 ? 0 : totals_.at(n) - totals_.at(n - 1); }
  std::size_t total(std::size_t n) const { return totals_.at(n); }

 private:
  std::vector<std::size_t> totals_;
};

/// Row n is moved right by S(n): slid row n at i holds original row n at
/// i - S(n). The result covers the common valid window.
LinkedArrayWindow slide(const LinkedArrayWindow& w, const SlideSpec& spec);

/// Square form of c_{n,i}: rows[m] lists the level-m circuits of its expansion.
struct NSymbol {
  std::size_t level = 0;
  std::size_t index = 0;
  std::vector<Word> rows;
  /// widths[m] is the summed circuit length of rows[m].
  std::vector<std::size_t> widths;
};

NSymbol n_symbol(const GmCovering& g, std::size_t n, std::size_t i);

/// Every level n >= 2 has k(n,i) > 2 and a common second letter a(n).
bool is_normalized(const GmCovering& g);
/// a(n) for a normalized covering.
std::size_t common_second_letter(const GmCovering& g, std::size_t n);

struct Normalized {
  GmCovering covering;
  /// Original levels kept by the telescoping.
  std::vector<std::size_t> kept_levels;
};

/// Greedy telescoping: keeps levels 0 and 1, then repeatedly the nearest
/// level (at most `bound` steps up) whose composite words are normalized.
/// Levels that run past the available depth are dropped.
Normalized normalize_for_construction(const GmCovering& g, std::size_t bound = 4);

/// rotated[n][i-1] = (a(n), a(n,i,3), ..., a(n,i,k), 1); level 1 unchanged.
std::vector<std::vector<Word>> rotated_words(const GmCovering& g);

/// V_n = circuits of level n; the in-fiber of c_{n,i} follows its rotated word.
OrderedBratteli build_ordered_bratteli(const GmCovering& g);

struct ConjugacyReport {
  bool equal = false;
  std::size_t top_level = 0;
  std::size_t width = 0;
  std::size_t enumeration_level = 0;
  std::size_t slide_total = 0;
  std::size_t natural_count = 0;
  std::size_t bratteli_count = 0;
  /// First window (in set order) present on one side only.
  std::optional<SymbolWindow> only_natural;
  std::optional<SymbolWindow> only_bratteli;
};

/// Window languages over rows 0..N and width W of the slid linked arrays of
/// the natural extension, and of the BV array rows of `diagram`.
std::vector<SymbolWindow> natural_extension_windows(const GmCovering& g, std::size_t level, std::size_t width,
                                                    std::size_t enumeration_level, const Budget& budget = {});
std::vector<SymbolWindow> bratteli_windows(const OrderedBratteli& d, std::size_t level, std::size_t width,
                                           std::size_t enumeration_level, const Budget& budget = {});
/// Least M >= max(N, 1) with min_i l(M, i) >= W + S(N); needs depth >= M + 2.
std::size_t enumeration_level(const GmCovering& g, std::size_t level, std::size_t width);

ConjugacyReport verify_conjugacy(const GmCovering& g, std::size_t level, std::size_t width,
                                 const Budget& budget = {});
ConjugacyReport verify_conjugacy(const GmCovering& g, const OrderedBratteli& diagram, std::size_t level,
                                 std::size_t width, const Budget& budget = {});

}  // namespace gmbv
