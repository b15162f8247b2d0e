#include "gmbv/bratteli.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "gmbv/error.hpp"

namespace gmbv {

BratteliDiagram::BratteliDiagram(std::vector<std::vector<std::string>> vertex_names,
                                 std::vector<std::vector<BratteliEdge>> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  if (names_.empty() || names_[0].size() != 1) {
    throw Error(ErrorCode::InvalidDiagram, "InvalidDiagram(V_0 must be a single vertex)");
  }
  if (edges_.size() + 1 != names_.size()) {
    throw Error(ErrorCode::InvalidDiagram, "InvalidDiagram(edge levels do not match vertex levels)");
  }
  const auto depth = names_.size() - 1;
  std::vector<std::vector<bool>> has_out(names_.size()), has_in(names_.size());
  for (std::size_t n = 0; n <= depth; ++n) {
    if (names_[n].empty()) {
      throw Error(ErrorCode::InvalidDiagram, "InvalidDiagram(V_" + std::to_string(n) + " is empty)");
    }
    has_out[n].assign(names_[n].size(), false);
    has_in[n].assign(names_[n].size(), false);
  }
  for (std::size_t n = 1; n <= depth; ++n) {
    for (const auto& e : edges_[n - 1]) {
      if (e.source >= names_[n - 1].size() || e.range >= names_[n].size()) {
        throw Error(ErrorCode::InvalidDiagram,
                    "InvalidDiagram(edge endpoint out of range at level " + std::to_string(n) + ")");
      }
      has_out[n - 1][e.source] = true;
      has_in[n][e.range] = true;
    }
  }
  for (std::size_t n = 0; n <= depth; ++n) {
    for (std::size_t v = 0; v < names_[n].size(); ++v) {
      if (n >= 1 && !has_in[n][v]) {
        throw Error(ErrorCode::InvalidDiagram, "InvalidDiagram(" + names_[n][v] + " has no in-edge)");
      }
      if (n < depth && !has_out[n][v]) {
        throw Error(ErrorCode::InvalidDiagram, "InvalidDiagram(" + names_[n][v] + " has no out-edge)");
      }
    }
  }
}

OrderedBratteli::OrderedBratteli(BratteliDiagram diagram, std::vector<std::vector<std::size_t>> ranks)
    : diagram_(std::move(diagram)), ranks_(std::move(ranks)) {
  if (ranks_.size() != diagram_.depth()) {
    throw Error(ErrorCode::InvalidOrder, "InvalidOrder(rank levels do not match diagram depth)");
  }
  fibers_.resize(diagram_.depth());
  for (std::size_t n = 1; n <= diagram_.depth(); ++n) {
    const auto& es = diagram_.edges(n);
    if (ranks_[n - 1].size() != es.size()) {
      throw Error(ErrorCode::InvalidOrder, "InvalidOrder(level " + std::to_string(n) + " rank count)");
    }
    auto& fib = fibers_[n - 1];
    fib.assign(diagram_.vertex_count(n), {});
    for (std::size_t e = 0; e < es.size(); ++e) fib[es[e].range].push_back(e);
    for (std::size_t v = 0; v < fib.size(); ++v) {
      auto& f = fib[v];
      std::vector<std::size_t> sorted(f.size(), static_cast<std::size_t>(-1));
      for (auto e : f) {
        auto r = ranks_[n - 1][e];
        if (r < 1 || r > f.size() || sorted[r - 1] != static_cast<std::size_t>(-1)) {
          throw Error(ErrorCode::InvalidOrder, "InvalidOrder(fiber of " + diagram_.name(n, v) +
                                                   " is not ranked 1.." + std::to_string(f.size()) + ")");
        }
        sorted[r - 1] = e;
      }
      f = std::move(sorted);
    }
  }
}

bool OrderedBratteli::is_max(std::size_t n, std::size_t e) const {
  return rank(n, e) == fiber(n, diagram_.edge(n, e).range).size();
}

OrderedBratteli OrderedBratteli::truncated(std::size_t depth) const {
  if (depth < 1 || depth > this->depth()) {
    throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(truncation depth " + std::to_string(depth) + ")");
  }
  std::vector<std::vector<std::string>> names(diagram_.names().begin(),
                                               diagram_.names().begin() + static_cast<std::ptrdiff_t>(depth + 1));
  std::vector<std::vector<BratteliEdge>> edges;
  for (std::size_t n = 1; n <= depth; ++n) edges.push_back(diagram_.edges(n));
  std::vector<std::vector<std::size_t>> ranks(ranks_.begin(), ranks_.begin() + static_cast<std::ptrdiff_t>(depth));
  return OrderedBratteli(BratteliDiagram(std::move(names), std::move(edges)), std::move(ranks));
}

OrderedBratteli OrderedBratteli::with_reversed_fiber(std::size_t n, std::size_t v) const {
  auto ranks = ranks_;
  const auto& f = fiber(n, v);
  for (auto e : f) ranks[n - 1][e] = f.size() + 1 - ranks[n - 1][e];
  return OrderedBratteli(diagram_, std::move(ranks));
}

bool is_path(const BratteliDiagram& d, const PathPrefix& p) {
  if (p.length() > d.depth()) return false;
  std::size_t at = 0;
  for (std::size_t k = 0; k < p.length(); ++k) {
    const auto& es = d.edges(k + 1);
    if (p.edges[k] >= es.size() || es[p.edges[k]].source != at) return false;
    at = es[p.edges[k]].range;
  }
  return true;
}

std::size_t vertex_at(const BratteliDiagram& d, const PathPrefix& p, std::size_t n) {
  return n == 0 ? 0 : d.edge(n, p.edges.at(n - 1)).range;
}

TelescopedBratteli telescope_bratteli_blocks(const OrderedBratteli& d, std::size_t m, std::size_t n) {
  if (m >= n || n > d.depth()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "IndexOutOfRange(telescope " + std::to_string(m) + ".." + std::to_string(n) + ")");
  }
  const auto& dia = d.diagram();
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<BratteliEdge>> edges;
  std::vector<std::vector<std::size_t>> ranks;
  for (std::size_t k = 0; k <= m; ++k) names.push_back(dia.names()[k]);
  for (std::size_t k = 1; k <= m; ++k) {
    edges.push_back(dia.edges(k));
    ranks.push_back(d.ranks()[k - 1]);
  }

  // Enumerating the top edge outermost, in rank order, yields each fiber of
  // E_{m,n} already in lexicographic order.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<BratteliEdge> block_edges;
  std::vector<std::size_t> block_ranks;
  std::vector<std::size_t> suffix;  // edges from the top down
  std::size_t next_rank = 0;
  std::function<void(std::size_t, std::size_t, std::size_t)> descend = [&](std::size_t level, std::size_t v,
                                                                          std::size_t top) {
    if (level == m) {
      std::vector<std::size_t> path(suffix.rbegin(), suffix.rend());
      block_edges.push_back({v, top});
      block_ranks.push_back(++next_rank);
      blocks.push_back(std::move(path));
      return;
    }
    for (auto e : d.fiber(level, v)) {
      suffix.push_back(e);
      descend(level - 1, dia.edge(level, e).source, top);
      suffix.pop_back();
    }
  };
  for (std::size_t v = 0; v < dia.vertex_count(n); ++v) {
    next_rank = 0;
    descend(n, v, v);
  }
  edges.push_back(std::move(block_edges));
  ranks.push_back(std::move(block_ranks));

  for (std::size_t k = n; k <= dia.depth(); ++k) names.push_back(dia.names()[k]);
  for (std::size_t k = n + 1; k <= dia.depth(); ++k) {
    edges.push_back(dia.edges(k));
    ranks.push_back(d.ranks()[k - 1]);
  }
  return {OrderedBratteli(BratteliDiagram(std::move(names), std::move(edges)), std::move(ranks)),
          std::move(blocks)};
}

OrderedBratteli telescope_bratteli(const OrderedBratteli& d, std::size_t m, std::size_t n) {
  return telescope_bratteli_blocks(d, m, n).diagram;
}

bool check_simple_bratteli(const BratteliDiagram& d, const std::vector<std::size_t>& schedule) {
  std::vector<std::size_t> levels = schedule;
  if (levels.empty()) {
    for (std::size_t k = 0; k <= d.depth(); ++k) levels.push_back(k);
  }
  if (levels.front() != 0) throw Error(ErrorCode::NotStartingAtZero, "NotStartingAtZero(schedule)");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] > d.depth() || (k > 0 && levels[k] <= levels[k - 1])) {
      throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(schedule level " + std::to_string(levels[k]) + ")");
    }
  }
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const auto from = levels[k];
    // reach[u][w]: w in the current level is reachable from u in V_from
    std::vector<std::vector<char>> reach(d.vertex_count(from));
    for (std::size_t u = 0; u < reach.size(); ++u) {
      reach[u].assign(d.vertex_count(from), 0);
      reach[u][u] = 1;
    }
    for (std::size_t lvl = from + 1; lvl <= levels[k + 1]; ++lvl) {
      for (auto& row : reach) {
        std::vector<char> next(d.vertex_count(lvl), 0);
        for (const auto& e : d.edges(lvl)) {
          if (row[e.source]) next[e.range] = 1;
        }
        row = std::move(next);
      }
    }
    for (const auto& row : reach) {
      if (std::find(row.begin(), row.end(), 0) != row.end()) return false;
    }
  }
  return true;
}

namespace {

std::size_t kind_in_edge(const OrderedBratteli& d, Extreme kind, std::size_t n, std::size_t v) {
  const auto& f = d.fiber(n, v);
  return kind == Extreme::Min ? f.front() : f.back();
}

}  // namespace

PathPrefix extreme_path_to(const OrderedBratteli& d, Extreme kind, std::size_t n, std::size_t v) {
  PathPrefix p;
  p.edges.resize(n);
  for (std::size_t k = n; k >= 1; --k) {
    auto e = kind_in_edge(d, kind, k, v);
    p.edges[k - 1] = e;
    v = d.diagram().edge(k, e).source;
  }
  return p;
}

std::vector<PathPrefix> extreme_paths(const OrderedBratteli& d, Extreme kind, std::size_t level) {
  const auto& dia = d.diagram();
  if (level > d.depth()) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(level " + std::to_string(level) + ")");
  std::vector<char> alive(dia.vertex_count(d.depth()), 1);
  for (std::size_t k = d.depth(); k > level; --k) {
    std::vector<char> below(dia.vertex_count(k - 1), 0);
    for (std::size_t v = 0; v < alive.size(); ++v) {
      if (alive[v]) below[dia.edge(k, kind_in_edge(d, kind, k, v)).source] = 1;
    }
    alive = std::move(below);
  }
  std::vector<PathPrefix> paths;
  for (std::size_t v = 0; v < alive.size(); ++v) {
    if (alive[v]) paths.push_back(extreme_path_to(d, kind, level, v));
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

ProperOrderReport check_properly_ordered(const OrderedBratteli& d, std::size_t level,
                                         const std::vector<std::size_t>& schedule) {
  ProperOrderReport r;
  r.simple = check_simple_bratteli(d.diagram(), schedule);
  r.max_paths = extreme_paths(d, Extreme::Max, level).size();
  r.min_paths = extreme_paths(d, Extreme::Min, level).size();
  return r;
}

namespace {

PathPrefix adic_step(const OrderedBratteli& d, const PathPrefix& p, bool wrap, bool forward) {
  const auto& dia = d.diagram();
  if (p.length() != d.depth() || !is_path(dia, p)) {
    throw Error(ErrorCode::NotAPath, "NotAPath(prefix must be a path of length " + std::to_string(d.depth()) + ")");
  }
  const Extreme refill = forward ? Extreme::Min : Extreme::Max;
  for (std::size_t k = 1; k <= p.length(); ++k) {
    const auto e = p.edges[k - 1];
    const auto& f = d.fiber(k, dia.edge(k, e).range);
    const auto r = d.rank(k, e);
    const bool extreme = forward ? r == f.size() : r == 1;
    if (extreme) continue;
    PathPrefix q = p;
    const auto next = f[forward ? r : r - 2];
    auto lower = extreme_path_to(d, refill, k - 1, dia.edge(k, next).source);
    std::copy(lower.edges.begin(), lower.edges.end(), q.edges.begin());
    q.edges[k - 1] = next;
    return q;
  }
  if (!wrap) {
    throw forward ? Error(ErrorCode::MaxPathAtDepth, "MaxPathAtDepth(successor needs deeper levels)")
                  : Error(ErrorCode::MinPathAtDepth, "MinPathAtDepth(predecessor needs deeper levels)");
  }
  return extreme_path_to(d, refill, p.length(), vertex_at(dia, p, p.length()));
}

}  // namespace

PathPrefix vershik_successor(const OrderedBratteli& d, const PathPrefix& p, bool wrap) {
  return adic_step(d, p, wrap, true);
}

PathPrefix vershik_predecessor(const OrderedBratteli& d, const PathPrefix& p, bool wrap) {
  return adic_step(d, p, wrap, false);
}

BvRow bv_array_rows(const OrderedBratteli& d, const PathPrefix& p, std::size_t level, std::int64_t begin,
                    std::int64_t end, bool wrap) {
  if (level > d.depth()) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(row " + std::to_string(level) + ")");
  if (p.length() != d.depth() || !is_path(d.diagram(), p)) {
    throw Error(ErrorCode::NotAPath, "NotAPath(prefix must be a path of length " + std::to_string(d.depth()) + ")");
  }
  BvRow row;
  row.level = level;
  row.begin = begin;
  if (end <= begin) return row;
  PathPrefix x = p;
  for (std::int64_t i = 0; i < begin; ++i) x = vershik_successor(d, x, wrap);
  for (std::int64_t i = 0; i > begin; --i) x = vershik_predecessor(d, x, wrap);
  for (std::int64_t i = begin; i < end; ++i) {
    if (i > begin) x = vershik_successor(d, x, wrap);
    row.symbols.push_back(vertex_at(d.diagram(), x, level));
    bool cut = true;
    for (std::size_t k = 1; cut && k <= level; ++k) cut = d.is_min(k, x.edges[k - 1]);
    if (cut) row.cuts.push_back(i);
  }
  return row;
}

RankEstimate bratteli_rank(const BratteliDiagram& d, std::size_t tail_window) {
  std::vector<std::size_t> seq;
  for (std::size_t n = 1; n <= d.depth(); ++n) seq.push_back(d.vertex_count(n));
  return rank_from_sequence(std::move(seq), tail_window);
}

void write_dot(std::ostream& os, const OrderedBratteli& d, const std::string& graph_name) {
  const auto& dia = d.diagram();
  os << "digraph \"" << graph_name << "\" {\n  rankdir=TB;\n";
  for (std::size_t n = 0; n <= dia.depth(); ++n) {
    os << "  { rank=same;";
    for (std::size_t v = 0; v < dia.vertex_count(n); ++v) {
      os << " L" << n << "_" << v << " [label=\"" << dia.name(n, v) << "\"];";
    }
    os << " }\n";
  }
  for (std::size_t n = 1; n <= dia.depth(); ++n) {
    for (std::size_t e = 0; e < dia.edges(n).size(); ++e) {
      const auto& ed = dia.edge(n, e);
      os << "  L" << n - 1 << "_" << ed.source << " -> L" << n << "_" << ed.range << " [label=\"" << d.rank(n, e)
         << "\"];\n";
    }
  }
  os << "}\n";
}

}  // namespace gmbv
