#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmbv/covering.hpp"

namespace gmbv {

/// Circuit letters are 1-based, as c_{n,1}, ..., c_{n,r_n}.
using Word = std::vector<std::size_t>;

/// One level of a GM-covering: the graph, its base vertex and the ordered
/// circuit family c_{n,1}, ..., c_{n,r_n}, each starting and ending at base.
struct GmLevel {
  GraphPtr graph;
  VertexId base = 0;
  std::vector<Circuit> circuits;

  std::size_t rank() const { return circuits.size(); }
  const Circuit& circuit(std::size_t i) const { return circuits.at(i - 1); }
  std::size_t length(std::size_t i) const { return circuit(i).length(); }
  /// v_{n,i,1}, the vertex right after the base.
  VertexId first_step(std::size_t i) const { return circuit(i).vertices.at(1); }
};

/// Base vertex and circuit list declared for a level n >= 1.
struct GmDeclaration {
  VertexId base = 0;
  std::vector<Circuit> circuits;
};

/// A covering with validated Gambaudo-Martens structure and the circuit words
/// phi_n(c_{n,i}) = c_{n-1,a(n,i,1)} ... c_{n-1,a(n,i,k(n,i))}.
class GmCovering {
 public:
  const Covering& covering() const { return covering_; }
  std::size_t depth() const { return covering_.depth(); }
  const GmLevel& level(std::size_t n) const { return levels_.at(n); }
  std::size_t rank(std::size_t n) const { return level(n).rank(); }
  std::size_t length(std::size_t n, std::size_t i) const { return level(n).length(i); }
  /// Word of c_{n,i} over the circuits of level n-1 (n >= 1).
  const Word& word(std::size_t n, std::size_t i) const { return words_.at(n).at(i - 1); }
  const std::vector<Word>& words(std::size_t n) const { return words_.at(n); }

  /// phi_{m,n}(c_{m,i}) written over the circuits of level n <= m.
  Word expand(std::size_t m, std::size_t i, std::size_t n) const;

 private:
  friend GmCovering validate_gm(Covering, std::vector<GmDeclaration>);
  explicit GmCovering(Covering c) : covering_(std::move(c)) {}

  Covering covering_;
  std::vector<GmLevel> levels_;
  std::vector<std::vector<Word>> words_;
};

/// Level 0: the singleton graph with its single loop as c_{0,1}.
GmLevel head_level(GraphPtr g0);

/// Checks the five GM conditions on every level and derives the circuit words
/// by tracing each circuit through phi_n. `declared[n-1]` describes level n.
GmCovering validate_gm(Covering c, std::vector<GmDeclaration> declared);

struct BuiltLevel {
  GmLevel level;
  GraphHom hom;
};

/// Builds level n over `prev` with one fresh circuit per word; circuit
/// interiors are pairwise disjoint and phi_n traces positions along the
/// concatenation of the letters' circuits.
BuiltLevel build_gm_level_from_words(const GmLevel& prev, std::size_t n,
                                     const std::vector<Word>& words);
/// Level 1 from plain circuit lengths.
BuiltLevel build_first_level(const GmLevel& head, const std::vector<std::size_t>& lengths);

/// Whole covering from level-1 lengths and `words[k]` for level k+2.
GmCovering build_gm_covering(const std::vector<std::size_t>& lengths,
                             const std::vector<std::vector<Word>>& words);

enum class CheckStatus { Pass, Refuted, Inconclusive };
std::string_view to_string(CheckStatus s);

struct SimplicityLevel {
  std::size_t level = 0;
  CheckStatus status = CheckStatus::Inconclusive;
  std::optional<std::size_t> witness;
  /// Circuit indices whose image misses edges (strengthened mode).
  std::vector<std::size_t> failing;
};

struct SimplicityReport {
  bool strengthened = false;
  std::vector<SimplicityLevel> levels;

  bool passed() const;
  bool refuted() const;
};

/// Strengthened: E(phi_n(c_{n,i})) = E(G_{n-1}) for every level n <= horizon.
/// Otherwise: per level n < horizon, the least m <= horizon with
/// E(phi_{m,n}(c_{m,i})) = E(G_n) for all i.
SimplicityReport check_simplicity(const GmCovering& g, bool strengthened, std::size_t horizon);

struct IsolationEntry {
  std::size_t level = 0;
  VertexId vertex = 0;
  std::optional<std::size_t> witness;
};

struct IsolationReport {
  std::size_t horizon = 0;
  std::vector<IsolationEntry> entries;

  bool all_witnessed() const;
};

/// For every vertex v of levels 1..max(1, horizon-1), the least m <= horizon
/// at which v has two distinct preimages under phi_{m,n}.
IsolationReport check_no_isolated_points(const GmCovering& g, std::size_t horizon);

struct RankEstimate {
  /// sequence[k] is the count at level k+1.
  std::vector<std::size_t> sequence;
  std::size_t estimate = 0;
};

/// Min over the last `tail_window` entries.
RankEstimate rank_from_sequence(std::vector<std::size_t> sequence, std::size_t tail_window);
RankEstimate rank_estimate(const GmCovering& g, std::size_t tail_window);

}  // namespace gmbv
