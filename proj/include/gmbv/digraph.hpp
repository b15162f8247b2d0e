#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gmbv {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Limits for exhaustive enumerations. Exceeding either is an error.
struct Budget {
  std::size_t max_items = 1'000'000;
  std::size_t max_steps = 100'000'000;
};

/// Sequence of vertices (v_0, ..., v_l); length is l.
struct Walk {
  std::vector<VertexId> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  auto operator<=>(const Walk&) const = default;
};

/// Closed walk whose first `length()` vertices are mutually distinct.
using Circuit = Walk;

/// Finite directed graph whose edge relation is surjective: every vertex has
/// at least one in-edge and one out-edge. Vertex ids are positions in the
/// declaration order.
class DiGraph {
 public:
  /// Validates and builds. Throws Error on dangling, duplicate, or
  /// non-surjective input.
  static DiGraph build(std::vector<std::string> vertex_names,
                       const std::vector<std::pair<std::string, std::string>>& edges);
  static DiGraph build_indexed(std::vector<std::string> vertex_names,
                               std::vector<Edge> edges);
  /// The head graph ({v0}, {(v0, v0)}).
  static DiGraph singleton(std::string name = "v0");

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  /// Sorted lexicographically by (source, target).
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const VertexId> out(VertexId v) const;
  std::span<const VertexId> in(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  /// Throws UnknownVertex.
  VertexId id(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.contains(name); }

  bool is_walk(std::span<const VertexId> vertices) const;
  bool is_circuit(std::span<const VertexId> vertices) const;

  bool operator==(const DiGraph& other) const {
    return names_ == other.names_ && edges_ == other.edges_;
  }

 private:
  DiGraph() = default;
  void index_adjacency();

  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<VertexId> out_targets_, in_sources_;
};

/// Every circuit once, rotated to start at its least vertex id; sorted.
std::vector<Circuit> enumerate_circuits(const DiGraph& g, const Budget& budget = {});

/// All walks of length `length` in lexicographic vertex order.
std::vector<Walk> walks_of_length(const DiGraph& g, std::size_t length,
                                  const Budget& budget = {});

std::vector<Edge> walk_edges(std::span<const VertexId> walk);

void write_dot(std::ostream& os, const DiGraph& g, const std::string& graph_name = "G");

}  // namespace gmbv
