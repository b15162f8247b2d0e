#include "gmbv/arrays.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <unordered_map>
#include <utility>

#include "gmbv/error.hpp"

namespace gmbv {

bool LinkedArrayWindow::has_cut(std::size_t level, std::int64_t position) const {
  const auto& cuts = rows.at(level).cuts;
  return std::binary_search(cuts.begin(), cuts.end(), position);
}

bool LinkedArrayWindow::determined() const {
  return std::all_of(rows.begin(), rows.end(), [](const LinkedRow& r) {
    return std::all_of(r.labels.begin(), r.labels.end(), [](const auto& l) { return l.size() == 1; });
  });
}

std::optional<SymbolWindow> LinkedArrayWindow::symbols() const {
  if (!determined()) return std::nullopt;
  SymbolWindow s;
  for (const auto& row : rows) {
    std::vector<std::uint32_t> sym;
    std::vector<std::uint8_t> cut(width, 0);
    for (const auto& l : row.labels) sym.push_back(static_cast<std::uint32_t>(l.front()));
    for (auto c : row.cuts) cut[static_cast<std::size_t>(c - begin)] = 1;
    s.symbols.push_back(std::move(sym));
    s.cuts.push_back(std::move(cut));
  }
  return s;
}

LinkedWindowPair linked_window(const GmCovering& g, std::size_t level, const Walk& walk, std::int64_t begin) {
  if (level > g.depth()) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(level " + std::to_string(level) + ")");
  const auto& cov = g.covering();
  const auto& top = cov.graph(level);
  if (!top.is_walk(walk.vertices)) throw Error(ErrorCode::InvalidWalk, "InvalidWalk(not a walk in G_" + std::to_string(level) + ")");
  const auto width = walk.vertices.size();

  LinkedWindowPair out;
  out.array.begin = begin;
  out.linked.begin = begin;
  out.linked.width = width;
  for (std::size_t n = 0; n <= level; ++n) {
    const auto proj = cov.projection(level, n);
    const auto& gl = g.level(n);
    std::vector<VertexId> row(width);
    for (std::size_t i = 0; i < width; ++i) row[i] = proj[walk.vertices[i]];

    std::unordered_map<VertexId, std::size_t> by_first_step;
    for (std::size_t t = 1; t <= gl.rank(); ++t) by_first_step.emplace(gl.first_step(t), t);
    std::vector<std::size_t> everything(gl.rank());
    for (std::size_t t = 0; t < everything.size(); ++t) everything[t] = t + 1;

    LinkedRow linked;
    linked.labels.resize(width);
    std::size_t first_base = width;
    for (std::size_t i = 0; i < width; ++i) {
      if (row[i] == gl.base) {
        linked.cuts.push_back(begin + static_cast<std::int64_t>(i));
        if (first_base == width) first_base = i;
      }
    }

    // Leftmost partial block: circuits whose interior matches the visible
    // segment and, when the segment ends at a base visit, end there.
    if (first_base > 0) {
      std::vector<std::size_t> candidates;
      for (std::size_t t = 1; t <= gl.rank(); ++t) {
        const auto& cv = gl.circuit(t).vertices;
        auto at = std::find(cv.begin() + 1, cv.end() - 1, row[0]);
        if (at == cv.end() - 1) continue;
        const auto j0 = static_cast<std::size_t>(at - cv.begin());
        if (j0 + first_base > cv.size() - 1) continue;
        if (first_base < width && j0 + first_base != cv.size() - 1) continue;
        if (std::equal(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(first_base),
                       cv.begin() + static_cast<std::ptrdiff_t>(j0))) {
          candidates.push_back(t);
        }
      }
      for (std::size_t i = 0; i < first_base; ++i) linked.labels[i] = candidates;
    }

    std::vector<std::size_t> current;
    for (std::size_t i = first_base; i < width; ++i) {
      if (row[i] == gl.base) {
        std::optional<VertexId> next;
        if (i + 1 < width) {
          next = row[i + 1];
        } else if (n < level) {
          // Out-neighbours of a top vertex agree below the top level.
          next = proj[top.out(walk.vertices[i])[0]];
        }
        if (next) {
          auto it = by_first_step.find(*next);
          current = it == by_first_step.end() ? std::vector<std::size_t>{} : std::vector<std::size_t>{it->second};
        } else {
          current = everything;
        }
      }
      linked.labels[i] = current;
    }
    out.array.rows.push_back(std::move(row));
    out.linked.rows.push_back(std::move(linked));
  }
  return out;
}

bool cuts_monotone(const LinkedArrayWindow& w) {
  for (std::size_t n = 0; n + 1 < w.rows.size(); ++n) {
    for (auto c : w.rows[n + 1].cuts) {
      if (!w.has_cut(n, c)) return false;
    }
  }
  return true;
}

SlideSpec::SlideSpec(const GmCovering& g, std::size_t top_level) {
  if (top_level > g.depth()) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(slide level)");
  totals_.assign(top_level + 1, 0);
  for (std::size_t n = 2; n <= top_level; ++n) totals_[n] = totals_[n - 1] + g.length(n - 1, 1);
}

LinkedArrayWindow slide(const LinkedArrayWindow& w, const SlideSpec& spec) {
  const auto top = w.rows.empty() ? 0 : w.rows.size() - 1;
  if (top > spec.top_level()) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(slide spec too shallow)");
  const auto shift = static_cast<std::int64_t>(spec.total(top));
  if (static_cast<std::int64_t>(w.width) <= shift) {
    throw Error(ErrorCode::InsufficientMargin, "InsufficientMargin(needed " + std::to_string(shift + 1) +
                                                   ", available " + std::to_string(w.width) + ")");
  }
  LinkedArrayWindow out;
  out.begin = w.begin + shift;
  out.width = w.width - static_cast<std::size_t>(shift);
  for (std::size_t n = 0; n <= top; ++n) {
    const auto s = static_cast<std::int64_t>(spec.total(n));
    LinkedRow row;
    for (std::size_t j = 0; j < out.width; ++j) {
      const auto src = out.begin + static_cast<std::int64_t>(j) - s - w.begin;
      row.labels.push_back(w.rows[n].labels[static_cast<std::size_t>(src)]);
    }
    for (auto c : w.rows[n].cuts) {
      const auto moved = c + s;
      if (moved >= out.begin && moved < out.begin + static_cast<std::int64_t>(out.width)) row.cuts.push_back(moved);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

NSymbol n_symbol(const GmCovering& g, std::size_t n, std::size_t i) {
  if (n < 1 || n > g.depth() || i < 1 || i > g.rank(n)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "IndexOutOfRange(n-symbol " + std::to_string(n) + "," + std::to_string(i) + ")");
  }
  NSymbol s;
  s.level = n;
  s.index = i;
  for (std::size_t m = 0; m <= n; ++m) {
    auto row = g.expand(n, i, m);
    std::size_t width = 0;
    for (auto t : row) width += g.length(m, t);
    s.rows.push_back(std::move(row));
    s.widths.push_back(width);
  }
  return s;
}

namespace {

bool words_normalized(const std::vector<Word>& words) {
  if (words.empty()) return false;
  return std::all_of(words.begin(), words.end(),
                     [&](const Word& w) { return w.size() > 2 && w[1] == words.front()[1]; });
}

}  // namespace

bool is_normalized(const GmCovering& g) {
  for (std::size_t n = 2; n <= g.depth(); ++n) {
    if (!words_normalized(g.words(n))) return false;
  }
  return true;
}

std::size_t common_second_letter(const GmCovering& g, std::size_t n) {
  if (n < 2 || !words_normalized(g.words(n))) {
    throw Error(ErrorCode::NotNormalized, "NotNormalized(level " + std::to_string(n) + ")");
  }
  return g.word(n, 1)[1];
}

Normalized normalize_for_construction(const GmCovering& g, std::size_t bound) {
  if (g.depth() < 1) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(empty covering)");
  std::vector<std::size_t> kept{0, 1};
  std::size_t p = 1;
  while (p < g.depth()) {
    std::optional<std::size_t> found;
    for (std::size_t q = p + 1; q <= std::min(p + bound, g.depth()); ++q) {
      std::vector<Word> composite;
      for (std::size_t i = 1; i <= g.rank(q); ++i) composite.push_back(g.expand(q, i, p));
      if (words_normalized(composite)) {
        found = q;
        break;
      }
    }
    if (!found) {
      if (p + bound <= g.depth()) {
        throw Error(ErrorCode::NormalizationNotFoundWithinBound,
                    "NormalizationNotFoundWithinBound(from level " + std::to_string(p) + ", bound " +
                        std::to_string(bound) + ")");
      }
      break;
    }
    kept.push_back(*found);
    p = *found;
  }

  std::vector<GmDeclaration> decls;
  for (std::size_t k = 1; k < kept.size(); ++k) {
    const auto& l = g.level(kept[k]);
    decls.push_back({l.base, l.circuits});
  }
  return {validate_gm(telescope(g.covering(), kept), std::move(decls)), std::move(kept)};
}

std::vector<std::vector<Word>> rotated_words(const GmCovering& g) {
  if (!is_normalized(g)) throw Error(ErrorCode::NotNormalized, "NotNormalized(run normalize first)");
  std::vector<std::vector<Word>> table(g.depth() + 1);
  for (std::size_t n = 1; n <= g.depth(); ++n) {
    for (const auto& w : g.words(n)) {
      Word r(w.begin() + 1, w.end());
      r.push_back(w.front());
      table[n].push_back(n == 1 ? w : std::move(r));
    }
  }
  return table;
}

OrderedBratteli build_ordered_bratteli(const GmCovering& g) {
  const auto rotated = rotated_words(g);
  std::vector<std::vector<std::string>> names{{"v0"}};
  std::vector<std::vector<BratteliEdge>> edges;
  std::vector<std::vector<std::size_t>> ranks;
  for (std::size_t n = 1; n <= g.depth(); ++n) {
    std::vector<std::string> level;
    std::vector<BratteliEdge> es;
    std::vector<std::size_t> rs;
    for (std::size_t i = 1; i <= g.rank(n); ++i) {
      level.push_back("c" + std::to_string(n) + "_" + std::to_string(i));
      const auto& w = rotated[n][i - 1];
      for (std::size_t k = 0; k < w.size(); ++k) {
        es.push_back({w[k] - 1, i - 1});
        rs.push_back(k + 1);
      }
    }
    names.push_back(std::move(level));
    edges.push_back(std::move(es));
    ranks.push_back(std::move(rs));
  }
  return OrderedBratteli(BratteliDiagram(std::move(names), std::move(edges)), std::move(ranks));
}

namespace {

/// Rows 0..N of a block of consecutive positions with per-position symbols
/// and cut flags.
struct BlockRows {
  std::vector<std::vector<std::uint32_t>> symbols;
  std::vector<std::vector<std::uint8_t>> cuts;

  std::size_t size() const { return symbols.empty() ? 0 : symbols[0].size(); }
  void append(const BlockRows& other) {
    if (symbols.empty()) {
      *this = other;
      return;
    }
    for (std::size_t n = 0; n < symbols.size(); ++n) {
      symbols[n].insert(symbols[n].end(), other.symbols[n].begin(), other.symbols[n].end());
      cuts[n].insert(cuts[n].end(), other.cuts[n].begin(), other.cuts[n].end());
    }
  }
};

void collect(std::set<SymbolWindow>& out, SymbolWindow w, const Budget& budget) {
  out.insert(std::move(w));
  if (out.size() > budget.max_items) {
    throw Error(ErrorCode::BudgetExceeded, "BudgetExceeded(windows > " + std::to_string(budget.max_items) + ")");
  }
}

/// Original (unslid) rows 0..N of the M-block of c_{M,t}.
BlockRows gm_block(const GmCovering& g, std::size_t top, std::size_t m, std::size_t t) {
  BlockRows b;
  for (std::size_t n = 0; n <= top; ++n) {
    std::vector<std::uint32_t> sym;
    std::vector<std::uint8_t> cut;
    for (auto letter : g.expand(m, t, n)) {
      const auto len = g.length(n, letter);
      for (std::size_t q = 0; q < len; ++q) {
        sym.push_back(static_cast<std::uint32_t>(letter));
        cut.push_back(q == 0 ? 1 : 0);
      }
    }
    b.symbols.push_back(std::move(sym));
    b.cuts.push_back(std::move(cut));
  }
  return b;
}

/// Rows 0..N of the Vershik orbit through all paths into vertex u of V_M.
BlockRows bv_block(const OrderedBratteli& truncated, std::size_t top, std::size_t u) {
  const auto m = truncated.depth();
  auto start = extreme_path_to(truncated, Extreme::Min, m, u);
  const auto last = extreme_path_to(truncated, Extreme::Max, m, u);
  BlockRows b;
  b.symbols.resize(top + 1);
  b.cuts.resize(top + 1);
  for (auto x = start;; x = vershik_successor(truncated, x)) {
    for (std::size_t n = 0; n <= top; ++n) {
      b.symbols[n].push_back(static_cast<std::uint32_t>(vertex_at(truncated.diagram(), x, n) + 1));
      bool cut = true;
      for (std::size_t k = 1; cut && k <= n; ++k) cut = truncated.is_min(k, x.edges[k - 1]);
      b.cuts[n].push_back(cut ? 1 : 0);
    }
    if (x == last) break;
  }
  return b;
}

}  // namespace

std::size_t enumeration_level(const GmCovering& g, std::size_t level, std::size_t width) {
  const SlideSpec spec(g, level);
  const auto need = width + spec.total(level);
  for (std::size_t m = std::max<std::size_t>(level, 1); m + 2 <= g.depth(); ++m) {
    std::size_t shortest = static_cast<std::size_t>(-1);
    for (std::size_t i = 1; i <= g.rank(m); ++i) shortest = std::min(shortest, g.length(m, i));
    if (shortest >= need) return m;
  }
  throw Error(ErrorCode::InsufficientDepth,
              "InsufficientDepth(no level M with M + 2 <= " + std::to_string(g.depth()) +
                  " has all circuits of length >= " + std::to_string(need) + ")");
}

std::vector<SymbolWindow> natural_extension_windows(const GmCovering& g, std::size_t level, std::size_t width,
                                                    std::size_t m, const Budget& budget) {
  if (m + 1 > g.depth() || m < level) throw Error(ErrorCode::InsufficientDepth, "InsufficientDepth(enumeration level)");
  const SlideSpec spec(g, level);

  // Adjacent M-blocks: inside an (M+1)-word, or across an (M+1)-cut where the
  // next word starts with letter 1.
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& w : g.words(m + 1)) {
    for (std::size_t k = 0; k + 1 < w.size(); ++k) pairs.emplace(w[k], w[k + 1]);
    pairs.emplace(w.back(), 1);
  }

  std::vector<BlockRows> blocks;
  for (std::size_t t = 1; t <= g.rank(m); ++t) blocks.push_back(gm_block(g, level, m, t));

  std::set<SymbolWindow> out;
  const auto shift_top = spec.total(level);
  for (const auto& [a, b] : pairs) {
    BlockRows rows = blocks[a - 1];
    rows.append(blocks[b - 1]);
    const auto total = rows.size();
    for (std::size_t p = shift_top; p + width <= total; ++p) {
      SymbolWindow w;
      for (std::size_t n = 0; n <= level; ++n) {
        const auto from = static_cast<std::ptrdiff_t>(p - spec.total(n));
        const auto to = from + static_cast<std::ptrdiff_t>(width);
        w.symbols.emplace_back(rows.symbols[n].begin() + from, rows.symbols[n].begin() + to);
        w.cuts.emplace_back(rows.cuts[n].begin() + from, rows.cuts[n].begin() + to);
      }
      collect(out, std::move(w), budget);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<SymbolWindow> bratteli_windows(const OrderedBratteli& d, std::size_t level, std::size_t width,
                                           std::size_t m, const Budget& budget) {
  if (m + 2 > d.depth() || m < level || m < 1) {
    throw Error(ErrorCode::InsufficientDepth, "InsufficientDepth(diagram needs depth >= M + 2)");
  }
  const auto& dia = d.diagram();
  const auto truncated = d.truncated(m);

  // Adjacent M-blocks: consecutive in-edges of a level-(M+1) fiber, and the
  // last/first M-blocks of consecutive (M+1)-blocks inside a level-(M+2) fiber.
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 0; v < dia.vertex_count(m + 1); ++v) {
    const auto& f = d.fiber(m + 1, v);
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      pairs.emplace(dia.edge(m + 1, f[k]).source, dia.edge(m + 1, f[k + 1]).source);
    }
  }
  for (std::size_t v = 0; v < dia.vertex_count(m + 2); ++v) {
    const auto& f = d.fiber(m + 2, v);
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
      const auto x = dia.edge(m + 2, f[k]).source;
      const auto y = dia.edge(m + 2, f[k + 1]).source;
      pairs.emplace(dia.edge(m + 1, d.fiber(m + 1, x).back()).source,
                    dia.edge(m + 1, d.fiber(m + 1, y).front()).source);
    }
  }

  std::vector<BlockRows> blocks;
  for (std::size_t u = 0; u < dia.vertex_count(m); ++u) blocks.push_back(bv_block(truncated, level, u));

  std::set<SymbolWindow> out;
  for (const auto& [a, b] : pairs) {
    BlockRows rows = blocks[a];
    rows.append(blocks[b]);
    if (blocks[a].size() < width || blocks[b].size() < width) {
      throw Error(ErrorCode::InsufficientDepth, "InsufficientDepth(M-blocks shorter than the window)");
    }
    for (std::size_t p = 0; p + width <= rows.size(); ++p) {
      SymbolWindow w;
      for (std::size_t n = 0; n <= level; ++n) {
        const auto from = static_cast<std::ptrdiff_t>(p);
        const auto to = from + static_cast<std::ptrdiff_t>(width);
        w.symbols.emplace_back(rows.symbols[n].begin() + from, rows.symbols[n].begin() + to);
        w.cuts.emplace_back(rows.cuts[n].begin() + from, rows.cuts[n].begin() + to);
      }
      collect(out, std::move(w), budget);
    }
  }
  return {out.begin(), out.end()};
}

ConjugacyReport verify_conjugacy(const GmCovering& g, std::size_t level, std::size_t width, const Budget& budget) {
  return verify_conjugacy(g, build_ordered_bratteli(g), level, width, budget);
}

ConjugacyReport verify_conjugacy(const GmCovering& g, const OrderedBratteli& diagram, std::size_t level,
                                 std::size_t width, const Budget& budget) {
  if (!is_normalized(g)) throw Error(ErrorCode::NotNormalized, "NotNormalized(run normalize first)");
  if (width == 0) throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(width must be positive)");
  ConjugacyReport r;
  r.top_level = level;
  r.width = width;
  r.enumeration_level = enumeration_level(g, level, width);
  r.slide_total = SlideSpec(g, level).total(level);
  const auto a = natural_extension_windows(g, level, width, r.enumeration_level, budget);
  const auto b = bratteli_windows(diagram, level, width, r.enumeration_level, budget);
  r.natural_count = a.size();
  r.bratteli_count = b.size();
  std::vector<SymbolWindow> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (!only_a.empty()) r.only_natural = only_a.front();
  if (!only_b.empty()) r.only_bratteli = only_b.front();
  r.equal = only_a.empty() && only_b.empty();
  return r;
}

}  // namespace gmbv
