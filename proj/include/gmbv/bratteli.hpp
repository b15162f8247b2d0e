#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmbv/gm.hpp"

namespace gmbv {

struct BratteliEdge {
  std::size_t source = 0;  // index in V_{n-1}
  std::size_t range = 0;   // index in V_n
};

/// Leveled multigraph V_0 = {v0}, V_1, ..., V_D with edge sets E_1, ..., E_D.
class BratteliDiagram {
 public:
  /// `edges[n-1]` is E_n. Throws InvalidDiagram when V_0 is not a singleton,
  /// an endpoint is out of range, a vertex at level >= 1 has no in-edge, or a
  /// vertex below the top level has no out-edge.
  BratteliDiagram(std::vector<std::vector<std::string>> vertex_names,
                  std::vector<std::vector<BratteliEdge>> edges);

  std::size_t depth() const { return names_.size() - 1; }
  std::size_t vertex_count(std::size_t n) const { return names_.at(n).size(); }
  const std::string& name(std::size_t n, std::size_t v) const { return names_.at(n).at(v); }
  const std::vector<std::vector<std::string>>& names() const { return names_; }
  /// E_n, n >= 1.
  const std::vector<BratteliEdge>& edges(std::size_t n) const { return edges_.at(n - 1); }
  const BratteliEdge& edge(std::size_t n, std::size_t e) const { return edges(n).at(e); }

 private:
  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<BratteliEdge>> edges_;
};

/// Diagram plus a linear order on every in-edge fiber r^{-1}(v), stored as
/// ranks 1..#r^{-1}(v).
class OrderedBratteli {
 public:
  /// `ranks[n-1][e]` is the rank of edge e of E_n. Throws InvalidOrder when a
  /// fiber's ranks are not a bijection onto 1..size.
  OrderedBratteli(BratteliDiagram diagram, std::vector<std::vector<std::size_t>> ranks);

  const BratteliDiagram& diagram() const { return diagram_; }
  std::size_t depth() const { return diagram_.depth(); }
  std::size_t rank(std::size_t n, std::size_t e) const { return ranks_.at(n - 1).at(e); }
  const std::vector<std::vector<std::size_t>>& ranks() const { return ranks_; }
  /// r^{-1}(v) for v in V_n, in increasing order.
  const std::vector<std::size_t>& fiber(std::size_t n, std::size_t v) const { return fibers_.at(n - 1).at(v); }
  bool is_max(std::size_t n, std::size_t e) const;
  bool is_min(std::size_t n, std::size_t e) const { return rank(n, e) == 1; }

  /// The same diagram truncated to levels 0..depth.
  OrderedBratteli truncated(std::size_t depth) const;
  /// Copy with the order of r^{-1}(v), v in V_n, reversed.
  OrderedBratteli with_reversed_fiber(std::size_t n, std::size_t v) const;

 private:
  BratteliDiagram diagram_;
  std::vector<std::vector<std::size_t>> ranks_;
  std::vector<std::vector<std::vector<std::size_t>>> fibers_;
};

/// (e_1, ..., e_n) with e_k an index into E_k and r(e_k) = s(e_{k+1}).
struct PathPrefix {
  std::vector<std::size_t> edges;

  std::size_t length() const { return edges.size(); }
  auto operator<=>(const PathPrefix&) const = default;
};

bool is_path(const BratteliDiagram& d, const PathPrefix& p);
/// Vertex of V_n reached by the first n edges (v0 for n = 0).
std::size_t vertex_at(const BratteliDiagram& d, const PathPrefix& p, std::size_t n);

struct TelescopedBratteli {
  OrderedBratteli diagram;
  /// For each new edge of the collapsed block, its path (e_{m+1}, ..., e_n)
  /// in the original diagram.
  std::vector<std::vector<std::size_t>> blocks;
};

/// Collapses levels m+1..n-1: E_{m,n} becomes the set of paths from V_m to
/// V_n, ordered lexicographically from the top edge down.
TelescopedBratteli telescope_bratteli_blocks(const OrderedBratteli& d, std::size_t m, std::size_t n);
OrderedBratteli telescope_bratteli(const OrderedBratteli& d, std::size_t m, std::size_t n);

/// True when every consecutive pair of levels in `schedule` (strictly
/// increasing, starting at 0; empty means every level) is fully connected.
bool check_simple_bratteli(const BratteliDiagram& d, const std::vector<std::size_t>& schedule);

enum class Extreme { Min, Max };

/// All kind-paths to level N whose vertices survive co-extendable pruning
/// (every vertex below the top admits a kind-edge continuation all the way to
/// the diagram's depth).
std::vector<PathPrefix> extreme_paths(const OrderedBratteli& d, Extreme kind, std::size_t level);

struct ProperOrderReport {
  bool simple = false;
  std::size_t max_paths = 0;
  std::size_t min_paths = 0;

  bool passed() const { return simple && max_paths == 1 && min_paths == 1; }
};

ProperOrderReport check_properly_ordered(const OrderedBratteli& d, std::size_t level,
                                         const std::vector<std::size_t>& schedule);

/// Path of kind-edges into vertex v of V_n.
PathPrefix extreme_path_to(const OrderedBratteli& d, Extreme kind, std::size_t n, std::size_t v);

/// Adic successor on full-depth prefixes. The all-max prefix into v maps to
/// the all-min prefix into v when `wrap` is set; otherwise MaxPathAtDepth.
PathPrefix vershik_successor(const OrderedBratteli& d, const PathPrefix& p, bool wrap = false);
/// Inverse of vershik_successor.
PathPrefix vershik_predecessor(const OrderedBratteli& d, const PathPrefix& p, bool wrap = false);

struct BvRow {
  std::size_t level = 0;
  std::int64_t begin = 0;
  /// Vertex index in V_level at each position of [begin, begin + size).
  std::vector<std::size_t> symbols;
  /// Absolute positions carrying a level-cut, increasing.
  std::vector<std::int64_t> cuts;
};

/// Row v_x[n] over positions [begin, end) of the Vershik orbit of p (p at
/// position 0), with n-cuts where e_1, ..., e_n are all minimal.
BvRow bv_array_rows(const OrderedBratteli& d, const PathPrefix& p, std::size_t level,
                    std::int64_t begin, std::int64_t end, bool wrap = false);

RankEstimate bratteli_rank(const BratteliDiagram& d, std::size_t tail_window);

void write_dot(std::ostream& os, const OrderedBratteli& d, const std::string& graph_name = "B");

}  // namespace gmbv
