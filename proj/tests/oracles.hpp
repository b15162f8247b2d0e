#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gmbv/arrays.hpp"
#include "gmbv/bratteli.hpp"
#include "gmbv/gm.hpp"

namespace oracle {

using gmbv::VertexId;

inline gmbv::GmCovering repeated(std::vector<std::size_t> lengths, std::vector<gmbv::Word> words,
                                 std::size_t depth) {
  std::vector<std::vector<gmbv::Word>> all(depth - 1, words);
  return gmbv::build_gm_covering(lengths, all);
}

inline gmbv::GmCovering e_r2(std::size_t depth = 10) { return repeated({2, 3}, {{1, 2, 1}, {1, 2, 2}}, depth); }
inline gmbv::GmCovering e_odo(std::size_t depth = 12) { return repeated({2}, {{1, 1}}, depth); }

inline gmbv::OrderedBratteli odometer(std::size_t depth, std::size_t edges = 2) {
  std::vector<std::vector<std::string>> names{{"v0"}};
  std::vector<std::vector<gmbv::BratteliEdge>> es;
  std::vector<std::vector<std::size_t>> ranks;
  for (std::size_t n = 1; n <= depth; ++n) {
    names.push_back({"u" + std::to_string(n)});
    es.emplace_back(edges, gmbv::BratteliEdge{0, 0});
    std::vector<std::size_t> r;
    for (std::size_t k = 1; k <= edges; ++k) r.push_back(k);
    ranks.push_back(r);
  }
  return gmbv::OrderedBratteli(gmbv::BratteliDiagram(names, es), ranks);
}

/// Number of walks with `length` edges: sum of the entries of A^length.
inline std::uint64_t count_walks(const gmbv::DiGraph& g, std::size_t length) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint64_t> v(n, 1);
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<std::uint64_t> next(n, 0);
    for (const auto& [a, b] : g.edges()) next[a] += v[b];
    v = next;
  }
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

/// Literal evaluation of the cover conditions over all edge pairs.
inline gmbv::HomClassification classify(const gmbv::GraphHom& h) {
  const auto& src = h.source();
  const auto& tgt = h.target();
  std::set<gmbv::Edge> image;
  for (const auto& [u, v] : src.edges()) image.insert({h(u), h(v)});
  gmbv::HomClassification c;
  c.edge_surjective = image.size() == tgt.edge_count();
  c.plus_directional = true;
  bool minus = true;
  for (const auto& e1 : src.edges()) {
    for (const auto& e2 : src.edges()) {
      if (e1.first == e2.first && h(e1.second) != h(e2.second)) c.plus_directional = false;
      if (e1.second == e2.second && h(e1.first) != h(e2.first)) minus = false;
    }
  }
  c.bidirectional = c.plus_directional && minus;
  c.is_cover = c.plus_directional && c.edge_surjective;
  return c;
}

/// Every vertex-distinct closed walk, found by trying every vertex sequence.
inline std::vector<gmbv::Circuit> circuits(const gmbv::DiGraph& g) {
  std::set<std::vector<VertexId>> out;
  const auto n = static_cast<VertexId>(g.vertex_count());
  std::vector<VertexId> path;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    const VertexId last = path.back();
    if (g.has_edge(last, path.front())) {
      auto c = path;
      auto least = std::min_element(c.begin(), c.end());
      std::rotate(c.begin(), least, c.end());
      c.push_back(c.front());
      out.insert(c);
    }
    for (VertexId w = 0; w < n; ++w) {
      if (!used[w] && g.has_edge(last, w)) {
        used[w] = true;
        path.push_back(w);
        self(self);
        path.pop_back();
        used[w] = false;
      }
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    used.assign(n, false);
    used[s] = true;
    path = {s};
    rec(rec);
  }
  std::vector<gmbv::Circuit> r;
  for (const auto& c : out) r.push_back(gmbv::Circuit{c});
  return r;
}

/// Every full-depth path of the diagram.
inline std::vector<gmbv::PathPrefix> all_paths(const gmbv::OrderedBratteli& d) {
  const auto& dia = d.diagram();
  std::vector<gmbv::PathPrefix> out{gmbv::PathPrefix{}};
  for (std::size_t n = 1; n <= dia.depth(); ++n) {
    std::vector<gmbv::PathPrefix> next;
    for (const auto& p : out) {
      const std::size_t at = n == 1 ? 0 : dia.edge(n - 1, p.edges.back()).range;
      for (std::size_t e = 0; e < dia.edges(n).size(); ++e) {
        if (dia.edge(n, e).source == at) {
          auto q = p;
          q.edges.push_back(e);
          next.push_back(q);
        }
      }
    }
    out = next;
  }
  return out;
}

/// p < q when they end at the same vertex and the largest index where they
/// differ has the smaller rank in p.
inline bool lex_less(const gmbv::OrderedBratteli& d, const gmbv::PathPrefix& p, const gmbv::PathPrefix& q) {
  for (std::size_t k = p.edges.size(); k-- > 0;) {
    if (p.edges[k] != q.edges[k]) return d.rank(k + 1, p.edges[k]) < d.rank(k + 1, q.edges[k]);
  }
  return false;
}

/// Random words of a GM level over `prev_rank` letters: each starts with 1
/// and together they use every letter.
inline std::vector<gmbv::Word> random_words(std::mt19937_64& rng, std::size_t prev_rank, std::size_t rank,
                                            std::size_t max_len = 4) {
  std::uniform_int_distribution<std::size_t> letter(1, prev_rank), len(1, max_len);
  std::vector<gmbv::Word> ws;
  while (true) {
    ws.clear();
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < rank; ++i) {
      gmbv::Word w{1};
      const std::size_t k = len(rng);
      while (w.size() < k) w.push_back(letter(rng));
      used.insert(w.begin(), w.end());
      ws.push_back(w);
    }
    if (used.size() == prev_rank) return ws;
  }
}

}  // namespace oracle
