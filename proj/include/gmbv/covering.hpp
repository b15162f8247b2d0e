#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "gmbv/digraph.hpp"

namespace gmbv {

using GraphPtr = std::shared_ptr<const DiGraph>;

struct HomClassification {
  bool edge_surjective = false;
  bool plus_directional = false;
  bool bidirectional = false;
  bool is_cover = false;

  auto operator<=>(const HomClassification&) const = default;
};

/// Vertex map between graphs that sends edges to edges. Validity is checked
/// at construction; classification is computed on first request.
class GraphHom {
 public:
  /// Throws NotAHomomorphism with the offending edge, or TypeMismatch when
  /// the map has the wrong size or leaves the target.
  GraphHom(GraphPtr source, GraphPtr target, std::vector<VertexId> map);

  const DiGraph& source() const { return *source_; }
  const DiGraph& target() const { return *target_; }
  const GraphPtr& source_ptr() const { return source_; }
  const GraphPtr& target_ptr() const { return target_; }
  VertexId operator()(VertexId v) const { return map_[v]; }
  const std::vector<VertexId>& map() const { return map_; }

  const HomClassification& classification() const;

  static GraphHom identity(GraphPtr g);

 private:
  struct Cache;
  GraphPtr source_, target_;
  std::vector<VertexId> map_;
  std::shared_ptr<Cache> cache_;
};

HomClassification classify_hom(const GraphHom& h);

/// h1 after h2: first apply h2 : G2 -> G1, then h1 : G1 -> G0.
GraphHom compose(const GraphHom& h2, const GraphHom& h1);

/// Per-level vertices (x_0, ..., x_N) with x_n = phi_{n+1}(x_{n+1}).
using VertexTower = std::vector<VertexId>;

/// Finite prefix G_0 <- G_1 <- ... <- G_N of a graph covering. G_0 is the
/// singleton graph and every phi_n is a cover.
class Covering {
 public:
  /// `homs[k]` is phi_{k+1} : G_{k+1} -> G_k. Throws BadHead, TypeMismatch,
  /// NotACover.
  Covering(std::vector<GraphPtr> graphs, std::vector<GraphHom> homs);

  std::size_t depth() const { return graphs_.size() - 1; }
  const DiGraph& graph(std::size_t n) const { return *graphs_.at(n); }
  const GraphPtr& graph_ptr(std::size_t n) const { return graphs_.at(n); }
  /// phi_n : G_n -> G_{n-1}, n >= 1.
  const GraphHom& hom(std::size_t n) const { return homs_.at(n - 1); }
  const std::vector<GraphHom>& homs() const { return homs_; }

  /// phi_{m,n} = phi_{n+1} o ... o phi_m as a vertex map V(G_m) -> V(G_n).
  std::vector<VertexId> projection(std::size_t m, std::size_t n) const;
  /// phi_{m,n} as a checked graph homomorphism (identity when m == n).
  GraphHom composite(std::size_t m, std::size_t n) const;

  VertexTower tower(std::size_t level, VertexId v) const;
  bool is_tower(const VertexTower& t) const;

  bool operator==(const Covering& other) const;

 private:
  std::vector<GraphPtr> graphs_;
  std::vector<GraphHom> homs_;
};

/// Keeps levels `indices` (strictly increasing, starting at 0).
Covering telescope(const Covering& c, const std::vector<std::size_t>& indices);

/// Least m in (n, horizon] such that every circuit of G_m projects onto all of
/// V(G_n); nullopt if there is none in range.
std::optional<std::size_t> minimality_witness(const Covering& c, std::size_t n,
                                              std::size_t horizon, const Budget& budget = {});

/// Walks of length width-1 in G_N, each vertex lifted to its tower.
std::vector<std::vector<VertexTower>> depth_windows(const Covering& c, std::size_t level,
                                                    std::size_t width, const Budget& budget = {});

}  // namespace gmbv
