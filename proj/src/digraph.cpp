#include "gmbv/digraph.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <tuple>

#include "gmbv/error.hpp"

namespace gmbv {

namespace {

void quote(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

}  // namespace

DiGraph DiGraph::build(std::vector<std::string> vertex_names,
                       const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, VertexId> index;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) {
    if (!index.emplace(vertex_names[i], static_cast<VertexId>(i)).second) {
      throw Error(ErrorCode::DuplicateVertex, "DuplicateVertex(" + vertex_names[i] + ")");
    }
  }
  std::vector<Edge> ids;
  ids.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    auto iu = index.find(u);
    auto iv = index.find(v);
    if (iu == index.end() || iv == index.end()) {
      throw Error(ErrorCode::DanglingEdge, "DanglingEdge(" + u + "," + v + ")");
    }
    ids.emplace_back(iu->second, iv->second);
  }
  return build_indexed(std::move(vertex_names), std::move(ids));
}

DiGraph DiGraph::build_indexed(std::vector<std::string> vertex_names, std::vector<Edge> edges) {
  DiGraph g;
  g.names_ = std::move(vertex_names);
  for (std::size_t i = 0; i < g.names_.size(); ++i) {
    if (!g.index_.emplace(g.names_[i], static_cast<VertexId>(i)).second) {
      throw Error(ErrorCode::DuplicateVertex, "DuplicateVertex(" + g.names_[i] + ")");
    }
  }
  const auto n = g.names_.size();
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorCode::DanglingEdge,
                  "DanglingEdge(" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error(ErrorCode::DuplicateEdge,
                "DuplicateEdge(" + g.names_[dup->first] + "," + g.names_[dup->second] + ")");
  }
  g.edges_ = std::move(edges);
  g.index_adjacency();

  std::ostringstream missing;
  bool any = false;
  for (VertexId v = 0; v < n; ++v) {
    if (g.in(v).empty()) {
      missing << (any ? " and " : "") << "NotSurjective(" << g.names_[v] << ", in)";
      any = true;
    }
    if (g.out(v).empty()) {
      missing << (any ? " and " : "") << "NotSurjective(" << g.names_[v] << ", out)";
      any = true;
    }
  }
  if (any) throw Error(ErrorCode::NotSurjective, missing.str());
  return g;
}

DiGraph DiGraph::singleton(std::string name) {
  return build_indexed({std::move(name)}, {{0, 0}});
}

void DiGraph::index_adjacency() {
  const auto n = names_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++out_offsets_[u + 1];
    ++in_offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_.resize(edges_.size());
  in_sources_.resize(edges_.size());
  auto out_fill = out_offsets_;
  auto in_fill = in_offsets_;
  // edges_ is sorted by source then target, so both lists come out sorted.
  for (const auto& [u, v] : edges_) out_targets_[out_fill[u]++] = v;
  std::vector<Edge> by_target(edges_);
  std::sort(by_target.begin(), by_target.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  for (const auto& [u, v] : by_target) in_sources_[in_fill[v]++] = u;
}

std::span<const VertexId> DiGraph::out(VertexId v) const {
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const VertexId> DiGraph::in(VertexId v) const {
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

bool DiGraph::has_edge(VertexId u, VertexId v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  auto o = out(u);
  return std::binary_search(o.begin(), o.end(), v);
}

VertexId DiGraph::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorCode::UnknownVertex, "UnknownVertex(" + name + ")");
  return it->second;
}

bool DiGraph::is_walk(std::span<const VertexId> vertices) const {
  if (vertices.empty()) return false;
  for (VertexId v : vertices) {
    if (v >= vertex_count()) return false;
  }
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (!has_edge(vertices[i], vertices[i + 1])) return false;
  }
  return true;
}

bool DiGraph::is_circuit(std::span<const VertexId> vertices) const {
  if (vertices.size() < 2 || !is_walk(vertices)) return false;
  if (vertices.front() != vertices.back()) return false;
  std::vector<VertexId> head(vertices.begin(), vertices.end() - 1);
  std::sort(head.begin(), head.end());
  return std::adjacent_find(head.begin(), head.end()) == head.end();
}

namespace {

// Tarjan SCC restricted to vertices >= lo. Returns component id per vertex
// (npos for excluded vertices).
std::vector<std::size_t> components_from(const DiGraph& g, VertexId lo) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  const auto n = g.vertex_count();
  std::vector<std::size_t> comp(n, npos), low(n, 0), order(n, npos);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::size_t counter = 0, next_comp = 0;

  struct Frame {
    VertexId v;
    std::size_t child;
  };
  for (VertexId root = lo; root < n; ++root) {
    if (order[root] != npos) continue;
    std::vector<Frame> call{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& fr = call.back();
      auto succ = g.out(fr.v);
      if (fr.child < succ.size()) {
        VertexId w = succ[fr.child++];
        if (w < lo) continue;
        if (order[w] == npos) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], order[w]);
        }
        continue;
      }
      VertexId v = fr.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == order[v]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<Circuit> enumerate_circuits(const DiGraph& g, const Budget& budget) {
  std::vector<Circuit> result;
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::size_t steps = 0;
  VertexId start = 0;
  while (start < n) {
    // Jump to the least vertex lying on a cycle of the subgraph induced by
    // vertices >= start.
    auto comp = components_from(g, start);
    std::vector<std::size_t> comp_size(n + 1, 0);
    for (VertexId v = start; v < n; ++v) ++comp_size[comp[v]];
    VertexId s = start;
    for (; s < n; ++s) {
      if (comp_size[comp[s]] > 1 || g.has_edge(s, s)) break;
    }
    if (s == n) break;
    const auto c = comp[s];

    std::vector<VertexId> path{s};
    std::vector<bool> on_path(n, false);
    on_path[s] = true;
    std::vector<std::size_t> next_child{0};
    while (!path.empty()) {
      if (++steps > budget.max_steps) {
        throw Error(ErrorCode::BudgetExceeded,
                    "BudgetExceeded(circuit search steps > " + std::to_string(budget.max_steps) + ")");
      }
      VertexId v = path.back();
      auto succ = g.out(v);
      auto& child = next_child.back();
      if (child == succ.size()) {
        on_path[v] = false;
        path.pop_back();
        next_child.pop_back();
        continue;
      }
      VertexId w = succ[child++];
      if (w == s) {
        Circuit circ{path};
        circ.vertices.push_back(s);
        result.push_back(std::move(circ));
        if (result.size() > budget.max_items) {
          throw Error(ErrorCode::BudgetExceeded,
                      "BudgetExceeded(circuits > " + std::to_string(budget.max_items) + ")");
        }
      } else if (w > s && comp[w] == c && !on_path[w]) {
        path.push_back(w);
        on_path[w] = true;
        next_child.push_back(0);
      }
    }
    start = s + 1;
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Walk> walks_of_length(const DiGraph& g, std::size_t length, const Budget& budget) {
  std::vector<Walk> result;
  std::vector<VertexId> path;
  std::vector<std::size_t> next_child;
  std::size_t steps = 0;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    path.assign(1, root);
    next_child.assign(1, 0);
    while (!path.empty()) {
      if (++steps > budget.max_steps) {
        throw Error(ErrorCode::BudgetExceeded,
                    "BudgetExceeded(walk search steps > " + std::to_string(budget.max_steps) + ")");
      }
      if (path.size() == length + 1) {
        result.push_back(Walk{path});
        if (result.size() > budget.max_items) {
          throw Error(ErrorCode::BudgetExceeded,
                      "BudgetExceeded(walks > " + std::to_string(budget.max_items) + ")");
        }
        path.pop_back();
        next_child.pop_back();
        continue;
      }
      auto succ = g.out(path.back());
      auto& child = next_child.back();
      if (child == succ.size()) {
        path.pop_back();
        next_child.pop_back();
        continue;
      }
      path.push_back(succ[child++]);
      next_child.push_back(0);
    }
  }
  return result;
}

std::vector<Edge> walk_edges(std::span<const VertexId> walk) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) edges.emplace_back(walk[i], walk[i + 1]);
  return edges;
}

void write_dot(std::ostream& os, const DiGraph& g, const std::string& graph_name) {
  os << "digraph ";
  quote(os, graph_name);
  os << " {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "  n" << v << " [label=";
    quote(os, g.name(v));
    os << "];\n";
  }
  for (const auto& [u, v] : g.edges()) os << "  n" << u << " -> n" << v << ";\n";
  os << "}\n";
}

}  // namespace gmbv
