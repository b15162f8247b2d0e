#include "gmbv/covering.hpp"

#include <algorithm>
#include <mutex>

#include "gmbv/error.hpp"

namespace gmbv {

struct GraphHom::Cache {
  std::once_flag once;
  HomClassification value;
};

GraphHom::GraphHom(GraphPtr source, GraphPtr target, std::vector<VertexId> map)
    : source_(std::move(source)),
      target_(std::move(target)),
      map_(std::move(map)),
      cache_(std::make_shared<Cache>()) {
  if (map_.size() != source_->vertex_count()) {
    throw Error(ErrorCode::TypeMismatch, "TypeMismatch(map size " + std::to_string(map_.size()) +
                                             " != " + std::to_string(source_->vertex_count()) +
                                             " source vertices)");
  }
  for (VertexId v = 0; v < map_.size(); ++v) {
    if (map_[v] >= target_->vertex_count()) {
      throw Error(ErrorCode::TypeMismatch, "TypeMismatch(vertex " + source_->name(v) +
                                               " mapped outside the target)");
    }
  }
  for (const auto& [u, v] : source_->edges()) {
    if (!target_->has_edge(map_[u], map_[v])) {
      throw Error(ErrorCode::NotAHomomorphism,
                  "NotAHomomorphism(" + source_->name(u) + "," + source_->name(v) + " -> " +
                      target_->name(map_[u]) + "," + target_->name(map_[v]) + ")");
    }
  }
}

const HomClassification& GraphHom::classification() const {
  std::call_once(cache_->once, [this] {
    HomClassification c;
    std::vector<Edge> image;
    image.reserve(source_->edge_count());
    for (const auto& [u, v] : source_->edges()) image.emplace_back(map_[u], map_[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    c.edge_surjective = image == target_->edges();

    auto uniform = [this](std::span<const VertexId> vs) {
      return std::all_of(vs.begin(), vs.end(), [&](VertexId w) { return map_[w] == map_[vs[0]]; });
    };
    c.plus_directional = true;
    bool minus_directional = true;
    for (VertexId v = 0; v < source_->vertex_count(); ++v) {
      c.plus_directional = c.plus_directional && uniform(source_->out(v));
      minus_directional = minus_directional && uniform(source_->in(v));
    }
    c.bidirectional = c.plus_directional && minus_directional;
    c.is_cover = c.plus_directional && c.edge_surjective;
    cache_->value = c;
  });
  return cache_->value;
}

GraphHom GraphHom::identity(GraphPtr g) {
  std::vector<VertexId> map(g->vertex_count());
  for (VertexId v = 0; v < map.size(); ++v) map[v] = v;
  return GraphHom(g, g, std::move(map));
}

HomClassification classify_hom(const GraphHom& h) { return h.classification(); }

GraphHom compose(const GraphHom& h2, const GraphHom& h1) {
  if (h2.target_ptr() != h1.source_ptr() && !(h2.target() == h1.source())) {
    throw Error(ErrorCode::TypeMismatch, "TypeMismatch(middle graphs differ)");
  }
  std::vector<VertexId> map(h2.source().vertex_count());
  for (VertexId v = 0; v < map.size(); ++v) map[v] = h1(h2(v));
  return GraphHom(h2.source_ptr(), h1.target_ptr(), std::move(map));
}

Covering::Covering(std::vector<GraphPtr> graphs, std::vector<GraphHom> homs)
    : graphs_(std::move(graphs)), homs_(std::move(homs)) {
  if (graphs_.empty()) throw Error(ErrorCode::BadHead, "BadHead(no levels)");
  const auto& head = *graphs_[0];
  if (head.vertex_count() != 1 || !head.has_edge(0, 0)) {
    throw Error(ErrorCode::BadHead, "BadHead(G_0 must be the singleton graph with its loop)");
  }
  if (homs_.size() + 1 != graphs_.size()) {
    throw Error(ErrorCode::TypeMismatch, "TypeMismatch(" + std::to_string(graphs_.size()) +
                                             " graphs but " + std::to_string(homs_.size()) + " maps)");
  }
  for (std::size_t n = 1; n < graphs_.size(); ++n) {
    const auto& h = homs_[n - 1];
    if (!(h.source() == *graphs_[n]) || !(h.target() == *graphs_[n - 1])) {
      throw Error(ErrorCode::TypeMismatch,
                  "TypeMismatch(phi_" + std::to_string(n) + " does not map G_" + std::to_string(n) +
                      " to G_" + std::to_string(n - 1) + ")");
    }
    const auto& c = h.classification();
    if (!c.is_cover) {
      throw Error(ErrorCode::NotACover,
                  "NotACover(level " + std::to_string(n) + ": " +
                      (c.plus_directional ? "not edge-surjective" : "not +directional") + ")");
    }
  }
}

std::vector<VertexId> Covering::projection(std::size_t m, std::size_t n) const {
  if (m < n || m > depth()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "IndexOutOfRange(projection " + std::to_string(m) + " -> " + std::to_string(n) + ")");
  }
  std::vector<VertexId> map(graphs_[m]->vertex_count());
  for (VertexId v = 0; v < map.size(); ++v) map[v] = v;
  for (std::size_t k = m; k > n; --k) {
    const auto& h = homs_[k - 1];
    for (auto& x : map) x = h(x);
  }
  return map;
}

GraphHom Covering::composite(std::size_t m, std::size_t n) const {
  return GraphHom(graphs_.at(m), graphs_.at(n), projection(m, n));
}

VertexTower Covering::tower(std::size_t level, VertexId v) const {
  VertexTower t(level + 1);
  t[level] = v;
  for (std::size_t k = level; k > 0; --k) t[k - 1] = homs_[k - 1](t[k]);
  return t;
}

bool Covering::is_tower(const VertexTower& t) const {
  if (t.empty() || t.size() > graphs_.size()) return false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] >= graphs_[k]->vertex_count()) return false;
  }
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (homs_[k - 1](t[k]) != t[k - 1]) return false;
  }
  return true;
}

bool Covering::operator==(const Covering& other) const {
  if (graphs_.size() != other.graphs_.size()) return false;
  for (std::size_t n = 0; n < graphs_.size(); ++n) {
    if (!(*graphs_[n] == *other.graphs_[n])) return false;
  }
  for (std::size_t n = 0; n < homs_.size(); ++n) {
    if (homs_[n].map() != other.homs_[n].map()) return false;
  }
  return true;
}

Covering telescope(const Covering& c, const std::vector<std::size_t>& indices) {
  if (indices.empty() || indices.front() != 0) {
    throw Error(ErrorCode::NotStartingAtZero, "NotStartingAtZero");
  }
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] > c.depth() || (k > 0 && indices[k] <= indices[k - 1])) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "IndexOutOfRange(level " + std::to_string(indices[k]) + ", depth " +
                      std::to_string(c.depth()) + ")");
    }
  }
  std::vector<GraphPtr> graphs;
  std::vector<GraphHom> homs;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    graphs.push_back(c.graph_ptr(indices[k]));
    if (k > 0) homs.push_back(c.composite(indices[k], indices[k - 1]));
  }
  return Covering(std::move(graphs), std::move(homs));
}

std::optional<std::size_t> minimality_witness(const Covering& c, std::size_t n,
                                              std::size_t horizon, const Budget& budget) {
  if (horizon > c.depth()) {
    throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(horizon " + std::to_string(horizon) +
                                                " > depth " + std::to_string(c.depth()) + ")");
  }
  const auto target_size = c.graph(n).vertex_count();
  for (std::size_t m = n + 1; m <= horizon; ++m) {
    auto proj = c.projection(m, n);
    bool all = true;
    for (const auto& circ : enumerate_circuits(c.graph(m), budget)) {
      std::vector<bool> seen(target_size, false);
      std::size_t count = 0;
      for (VertexId v : circ.vertices) {
        if (!seen[proj[v]]) {
          seen[proj[v]] = true;
          ++count;
        }
      }
      if (count != target_size) {
        all = false;
        break;
      }
    }
    if (all) return m;
  }
  return std::nullopt;
}

std::vector<std::vector<VertexTower>> depth_windows(const Covering& c, std::size_t level,
                                                    std::size_t width, const Budget& budget) {
  if (level > c.depth()) {
    throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(level " + std::to_string(level) + ")");
  }
  if (width == 0) return {};
  std::vector<VertexTower> towers;
  towers.reserve(c.graph(level).vertex_count());
  for (VertexId v = 0; v < c.graph(level).vertex_count(); ++v) towers.push_back(c.tower(level, v));
  std::vector<std::vector<VertexTower>> windows;
  for (const auto& walk : walks_of_length(c.graph(level), width - 1, budget)) {
    std::vector<VertexTower> w;
    w.reserve(width);
    for (VertexId v : walk.vertices) w.push_back(towers[v]);
    windows.push_back(std::move(w));
  }
  return windows;
}

}  // namespace gmbv
