#include "gmbv/gm.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "gmbv/error.hpp"

namespace gmbv {

namespace {

std::string at_level(std::size_t n) { return "level " + std::to_string(n) + ": "; }

std::vector<Edge> image_edges(const Circuit& c, const std::vector<VertexId>& proj) {
  std::vector<Edge> edges;
  edges.reserve(c.length());
  for (std::size_t p = 0; p + 1 < c.vertices.size(); ++p) {
    edges.emplace_back(proj[c.vertices[p]], proj[c.vertices[p + 1]]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void check_level_circuits(const GmDeclaration& decl, const DiGraph& g, std::size_t n) {
  if (decl.base >= g.vertex_count()) {
    throw Error(ErrorCode::UnknownVertex, at_level(n) + "base vertex out of range");
  }
  if (decl.circuits.empty()) {
    throw Error(ErrorCode::EdgeNotOnAnyCircuit, at_level(n) + "no circuits declared");
  }
  for (std::size_t i = 0; i < decl.circuits.size(); ++i) {
    const auto& c = decl.circuits[i];
    if (!g.is_circuit(c.vertices) || c.vertices.front() != decl.base) {
      throw Error(ErrorCode::NotACircuit, at_level(n) + "NotACircuit(" + std::to_string(i + 1) +
                                              ") is not a circuit through the base");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (decl.circuits[k] == c) {
        throw Error(ErrorCode::DuplicateCircuit, at_level(n) + "DuplicateCircuit(" +
                                                     std::to_string(k + 1) + "," +
                                                     std::to_string(i + 1) + ")");
      }
    }
  }

  // item (2)
  std::vector<Edge> covered;
  for (const auto& c : decl.circuits) {
    auto e = walk_edges(c.vertices);
    covered.insert(covered.end(), e.begin(), e.end());
  }
  std::sort(covered.begin(), covered.end());
  covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
  if (covered != g.edges()) {
    for (const auto& e : g.edges()) {
      if (!std::binary_search(covered.begin(), covered.end(), e)) {
        throw Error(ErrorCode::EdgeNotOnAnyCircuit, at_level(n) + "EdgeNotOnAnyCircuit(" +
                                                        g.name(e.first) + "," + g.name(e.second) + ")");
      }
    }
  }

  // item (3): once two circuits meet at positions j, j' >= 1 they agree up to
  // a common end.
  std::unordered_map<VertexId, std::pair<std::size_t, std::size_t>> first_seen;
  for (std::size_t i = 0; i < decl.circuits.size(); ++i) {
    const auto& vs = decl.circuits[i].vertices;
    for (std::size_t j = 1; j < vs.size(); ++j) {
      auto [it, fresh] = first_seen.try_emplace(vs[j], i, j);
      if (fresh) continue;
      const auto [i0, j0] = it->second;
      const auto& ws = decl.circuits[i0].vertices;
      bool merges = ws.size() - j0 == vs.size() - j &&
                    std::equal(vs.begin() + static_cast<std::ptrdiff_t>(j), vs.end(),
                               ws.begin() + static_cast<std::ptrdiff_t>(j0));
      if (!merges) {
        throw Error(ErrorCode::MergeViolation,
                    at_level(n) + "MergeViolation(" + std::to_string(i0 + 1) + "," +
                        std::to_string(j0) + "," + std::to_string(i + 1) + "," + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Refuted: return "refuted";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

GmLevel head_level(GraphPtr g0) {
  GmLevel h;
  h.graph = std::move(g0);
  h.base = 0;
  h.circuits = {Circuit{{0, 0}}};
  return h;
}

Word GmCovering::expand(std::size_t m, std::size_t i, std::size_t n) const {
  if (n > m || m > depth()) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(expand)");
  Word current{i};
  for (std::size_t k = m; k > n; --k) {
    Word next;
    for (auto letter : current) {
      const auto& w = word(k, letter);
      next.insert(next.end(), w.begin(), w.end());
    }
    current = std::move(next);
  }
  return current;
}

GmCovering validate_gm(Covering c, std::vector<GmDeclaration> declared) {
  if (declared.size() != c.depth()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "IndexOutOfRange(" + std::to_string(declared.size()) + " GM levels declared for depth " +
                    std::to_string(c.depth()) + ")");
  }
  GmCovering g(std::move(c));
  const auto& cov = g.covering_;
  g.levels_.push_back(head_level(cov.graph_ptr(0)));
  g.words_.emplace_back();

  for (std::size_t n = 1; n <= cov.depth(); ++n) {
    auto& decl = declared[n - 1];
    const auto& graph = cov.graph(n);
    check_level_circuits(decl, graph, n);

    const auto& prev = g.levels_[n - 1];
    const auto& phi = cov.hom(n);
    if (phi(decl.base) != prev.base) {
      throw Error(ErrorCode::BaseNotPreserved, "BaseNotPreserved(" + std::to_string(n) + ")");
    }
    for (std::size_t i = 0; i < decl.circuits.size(); ++i) {
      if (phi(decl.circuits[i].vertices[1]) != prev.first_step(1)) {
        throw Error(ErrorCode::FirstStepMismatch,
                    "FirstStepMismatch(" + std::to_string(n) + ", " + std::to_string(i + 1) + ")");
      }
    }

    // Distinct circuits of a validated level have distinct first steps.
    std::unordered_map<VertexId, std::size_t> by_first_step;
    for (std::size_t t = 1; t <= prev.rank(); ++t) by_first_step.emplace(prev.first_step(t), t);

    std::vector<Word> words;
    for (std::size_t i = 0; i < decl.circuits.size(); ++i) {
      const auto& vs = decl.circuits[i].vertices;
      Word w;
      std::size_t p = 0;
      while (p + 1 < vs.size()) {
        auto it = by_first_step.find(phi(vs[p + 1]));
        bool ok = phi(vs[p]) == prev.base && it != by_first_step.end();
        if (ok) {
          const auto& cv = prev.circuit(it->second).vertices;
          ok = p + cv.size() <= vs.size();
          for (std::size_t q = 0; ok && q < cv.size(); ++q) ok = phi(vs[p + q]) == cv[q];
        }
        if (!ok) {
          throw Error(ErrorCode::WordTraceMismatch,
                      "WordTraceMismatch(" + std::to_string(n) + ", " + std::to_string(i + 1) + ")");
        }
        w.push_back(it->second);
        p += prev.length(it->second);
      }
      words.push_back(std::move(w));
    }

    GmLevel level;
    level.graph = cov.graph_ptr(n);
    level.base = decl.base;
    level.circuits = std::move(decl.circuits);
    g.levels_.push_back(std::move(level));
    g.words_.push_back(std::move(words));
  }
  return g;
}

BuiltLevel build_gm_level_from_words(const GmLevel& prev, std::size_t n,
                                     const std::vector<Word>& words) {
  std::vector<bool> used(prev.rank() + 1, false);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    const auto idx = std::to_string(i + 1);
    if (w.empty()) throw Error(ErrorCode::EmptyWord, at_level(n) + "EmptyWord(" + idx + ")");
    if (w[0] != 1) {
      throw Error(ErrorCode::WordNotStartingWithOne, at_level(n) + "WordNotStartingWithOne(" + idx + ")");
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] < 1 || w[j] > prev.rank()) {
        throw Error(ErrorCode::UnknownLetter,
                    at_level(n) + "UnknownLetter(" + idx + ", " + std::to_string(j + 1) + ")");
      }
      used[w[j]] = true;
    }
  }
  if (words.empty()) throw Error(ErrorCode::EmptyWord, at_level(n) + "EmptyWord(no words)");
  for (std::size_t t = 1; t <= prev.rank(); ++t) {
    if (!used[t]) {
      throw Error(ErrorCode::LetterNeverUsed, at_level(n) + "LetterNeverUsed(" + std::to_string(t) + ")");
    }
  }

  const auto prefix = "v" + std::to_string(n) + "_";
  std::vector<std::string> names{prefix + "0"};
  std::vector<Edge> edges;
  std::vector<VertexId> map{prev.base};
  std::vector<Circuit> circuits;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::vector<VertexId> image;
    for (auto letter : words[i]) {
      const auto& cv = prev.circuit(letter).vertices;
      image.insert(image.end(), cv.begin(), cv.end() - 1);
    }
    image.push_back(prev.base);
    const auto len = image.size() - 1;

    Circuit c{{0}};
    for (std::size_t p = 1; p < len; ++p) {
      auto v = static_cast<VertexId>(names.size());
      names.push_back(prefix + std::to_string(i + 1) + "_" + std::to_string(p));
      map.push_back(image[p]);
      c.vertices.push_back(v);
    }
    c.vertices.push_back(0);
    for (std::size_t p = 0; p < len; ++p) edges.emplace_back(c.vertices[p], c.vertices[p + 1]);
    circuits.push_back(std::move(c));
  }

  auto graph = std::make_shared<const DiGraph>(DiGraph::build_indexed(std::move(names), std::move(edges)));
  GraphHom hom(graph, prev.graph, std::move(map));
  GmLevel level{graph, 0, std::move(circuits)};
  return {std::move(level), std::move(hom)};
}

BuiltLevel build_first_level(const GmLevel& head, const std::vector<std::size_t>& lengths) {
  std::vector<Word> words;
  for (auto l : lengths) words.emplace_back(l, 1);
  return build_gm_level_from_words(head, 1, words);
}

GmCovering build_gm_covering(const std::vector<std::size_t>& lengths,
                             const std::vector<std::vector<Word>>& words) {
  auto g0 = std::make_shared<const DiGraph>(DiGraph::singleton());
  std::vector<GraphPtr> graphs{g0};
  std::vector<GraphHom> homs;
  std::vector<GmDeclaration> decls;
  GmLevel prev = head_level(g0);
  for (std::size_t n = 1; n <= words.size() + 1; ++n) {
    auto built = n == 1 ? build_first_level(prev, lengths) : build_gm_level_from_words(prev, n, words[n - 2]);
    graphs.push_back(built.level.graph);
    homs.push_back(std::move(built.hom));
    decls.push_back({built.level.base, built.level.circuits});
    prev = std::move(built.level);
  }
  return validate_gm(Covering(std::move(graphs), std::move(homs)), std::move(decls));
}

bool SimplicityReport::passed() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const auto& l) { return l.status == CheckStatus::Pass; });
}

bool SimplicityReport::refuted() const {
  return std::any_of(levels.begin(), levels.end(),
                     [](const auto& l) { return l.status == CheckStatus::Refuted; });
}

SimplicityReport check_simplicity(const GmCovering& g, bool strengthened, std::size_t horizon) {
  SimplicityReport report;
  report.strengthened = strengthened;
  const auto& cov = g.covering();
  horizon = std::min(horizon, g.depth());

  auto covers_all = [&](std::size_t m, std::size_t n, std::size_t i, const std::vector<VertexId>& proj) {
    return image_edges(g.level(m).circuit(i), proj).size() == cov.graph(n).edge_count();
  };

  if (strengthened) {
    for (std::size_t n = 1; n <= horizon; ++n) {
      SimplicityLevel entry{n, CheckStatus::Pass, n, {}};
      const auto& proj = cov.hom(n).map();
      for (std::size_t i = 1; i <= g.rank(n); ++i) {
        if (!covers_all(n, n - 1, i, proj)) entry.failing.push_back(i);
      }
      if (!entry.failing.empty()) {
        entry.status = CheckStatus::Refuted;
        entry.witness.reset();
      }
      report.levels.push_back(std::move(entry));
    }
    return report;
  }

  for (std::size_t n = 1; n < std::max<std::size_t>(horizon, 2); ++n) {
    SimplicityLevel entry{n, CheckStatus::Inconclusive, std::nullopt, {}};
    for (std::size_t m = n + 1; m <= horizon; ++m) {
      auto proj = cov.projection(m, n);
      bool all = true;
      for (std::size_t i = 1; all && i <= g.rank(m); ++i) all = covers_all(m, n, i, proj);
      if (all) {
        entry.status = CheckStatus::Pass;
        entry.witness = m;
        break;
      }
    }
    report.levels.push_back(std::move(entry));
  }
  return report;
}

bool IsolationReport::all_witnessed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.witness.has_value(); });
}

IsolationReport check_no_isolated_points(const GmCovering& g, std::size_t horizon) {
  IsolationReport report;
  horizon = std::min(horizon, g.depth());
  report.horizon = horizon;
  const auto& cov = g.covering();
  const auto top = std::max<std::size_t>(1, horizon > 0 ? horizon - 1 : 0);
  for (std::size_t n = 1; n <= std::min(top, g.depth()); ++n) {
    const auto count = cov.graph(n).vertex_count();
    std::vector<std::optional<std::size_t>> witness(count);
    for (std::size_t m = n + 1; m <= horizon; ++m) {
      std::vector<std::size_t> preimages(count, 0);
      for (VertexId v : cov.projection(m, n)) ++preimages[v];
      for (VertexId v = 0; v < count; ++v) {
        if (!witness[v] && preimages[v] >= 2) witness[v] = m;
      }
    }
    for (VertexId v = 0; v < count; ++v) report.entries.push_back({n, v, witness[v]});
  }
  return report;
}

RankEstimate rank_from_sequence(std::vector<std::size_t> sequence, std::size_t tail_window) {
  if (tail_window == 0 || tail_window > sequence.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(tail window " + std::to_string(tail_window) +
                                                " for " + std::to_string(sequence.size()) + " levels)");
  }
  RankEstimate r;
  r.estimate = *std::min_element(sequence.end() - static_cast<std::ptrdiff_t>(tail_window), sequence.end());
  r.sequence = std::move(sequence);
  return r;
}

RankEstimate rank_estimate(const GmCovering& g, std::size_t tail_window) {
  std::vector<std::size_t> seq;
  for (std::size_t n = 1; n <= g.depth(); ++n) seq.push_back(g.rank(n));
  return rank_from_sequence(std::move(seq), tail_window);
}

}  // namespace gmbv
