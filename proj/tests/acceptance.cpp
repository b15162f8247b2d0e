// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "gmbv/arrays.hpp"
#include "gmbv/cli.hpp"
#include "gmbv/error.hpp"
#include "oracles.hpp"

using namespace gmbv;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome pipeline() {
  const auto t0 = std::chrono::steady_clock::now();
  auto norm = normalize_for_construction(oracle::e_r2(10));
  auto rotated = rotated_words(norm.covering);
  auto d = build_ordered_bratteli(norm.covering);
  bool ok = rotated.size() == d.depth() + 1;
  for (std::size_t n = 1; n <= d.depth(); ++n) ok = ok && d.diagram().vertex_count(n) == 2;
  for (std::size_t n = 2; n <= d.depth(); ++n) {
    for (std::size_t v = 0; v < 2; ++v) {
      const auto& fiber = d.fiber(n, v);
      ok = ok && fiber.size() == rotated[n][v].size();
      for (std::size_t k = 0; k < fiber.size() && ok; ++k) {
        ok = d.diagram().edge(n, fiber[k]).source + 1 == rotated[n][v][k];
      }
    }
  }
  const auto rank = bratteli_rank(d.diagram(), 3).estimate;
  const auto gm_rank = rank_estimate(norm.covering, 3).estimate;
  const auto po = check_properly_ordered(d, 8, {});
  const double t = seconds_since(t0);
  ok = ok && rank == 2 && gm_rank == 2 && po.passed() && t < 1.0;
  return {ok, "rank " + std::to_string(rank) + ", max/min paths " + std::to_string(po.max_paths) + "/" +
                  std::to_string(po.min_paths) + ", " + std::to_string(t) + " s"};
}

Outcome conjugacy() {
  auto t0 = std::chrono::steady_clock::now();
  auto r2 = verify_conjugacy(oracle::e_r2(10), 3, 20);
  const double t1 = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  auto odo = verify_conjugacy(normalize_for_construction(oracle::e_odo(12)).covering, 2, 8);
  const double t2 = seconds_since(t0);
  const bool ok = r2.equal && odo.equal && r2.natural_count > 0 && odo.natural_count > 0 && t1 < 10 && t2 < 10;
  return {ok, "E-R2 " + std::to_string(r2.natural_count) + "/" + std::to_string(r2.bratteli_count) + " windows, E-ODO " +
                  std::to_string(odo.natural_count) + "/" + std::to_string(odo.bratteli_count) + " windows"};
}

Outcome mutation() {
  const auto t0 = std::chrono::steady_clock::now();
  auto g = oracle::e_r2(10);
  auto d = build_ordered_bratteli(g).with_reversed_fiber(2, 0);
  auto r = verify_conjugacy(g, d, 3, 20);
  RunConfig c;
  c.command = "verify";
  c.input = "e-r2";
  c.depth = 3;
  c.width = 20;
  c.reverse_fiber = {{2, 1}};
  std::ostringstream out, err;
  const int status = run(c, out, err);
  const double t = seconds_since(t0);
  return {!r.equal && status == kRefuted && t < 10, "library mismatch " + std::string(r.equal ? "no" : "yes") +
                                                        ", cli exit " + std::to_string(status)};
}

Outcome monotonicity() {
  auto g = oracle::e_r2(6);
  std::size_t windows = 0, violations = 0, slid = 0;
  for (std::size_t level = 1; level <= 3; ++level) {
    SlideSpec spec(g, level);
    const auto& graph = g.covering().graph(level);
    for (std::size_t width : {4u, 12u, 24u, 40u}) {
      for (const auto& w : walks_of_length(graph, width - 1)) {
        auto lw = linked_window(g, level, w, -static_cast<std::int64_t>(width / 2)).linked;
        ++windows;
        violations += !cuts_monotone(lw);
        if (width > spec.total(level)) {
          ++slid;
          violations += !cuts_monotone(slide(lw, spec));
        }
      }
    }
  }
  return {windows >= 1000 && slid >= 1000 && violations == 0,
          std::to_string(windows) + " windows, " + std::to_string(slid) + " slid, " + std::to_string(violations) +
              " violations"};
}

Outcome vershik() {
  auto d = oracle::odometer(6);
  auto paths = oracle::all_paths(d);
  std::sort(paths.begin(), paths.end(), [&](const auto& a, const auto& b) { return oracle::lex_less(d, a, b); });
  auto p = extreme_path_to(d, Extreme::Min, 6, 0);
  std::size_t matched = 0;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (p == paths[k]) ++matched;
    p = vershik_successor(d, p, true);
  }
  const auto max = extreme_path_to(d, Extreme::Max, 6, 0);
  const auto min = extreme_path_to(d, Extreme::Min, 6, 0);
  const bool wraps = vershik_successor(d, max, true) == min;
  return {paths.size() == 64 && matched == 64 && p == min && wraps,
          std::to_string(matched) + "/" + std::to_string(paths.size()) + " in order, wrap " + (wraps ? "ok" : "broken")};
}

Outcome minimality() {
  auto g = oracle::e_r2(8);
  std::string got;
  bool ok = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    auto m = minimality_witness(g.covering(), n, n + 2);
    got += (n > 1 ? "," : "") + (m ? std::to_string(*m) : std::string("none"));
    ok = ok && m == n + 1;
  }
  return {ok, "witnesses " + got};
}

Outcome cover_algebra() {
  std::mt19937_64 rng(2024);
  std::size_t levels = 0, composites = 0, failures = 0;
  while (levels < 200) {
    std::vector<std::size_t> lengths;
    const std::size_t r1 = 1 + rng() % 3;
    for (std::size_t i = 0; i < r1; ++i) lengths.push_back(2 + rng() % 4);
    std::vector<std::vector<Word>> words;
    std::size_t prev = r1;
    for (std::size_t n = 2; n <= 5; ++n) {
      const std::size_t r = 1 + rng() % 3;
      words.push_back(oracle::random_words(rng, prev, r, 3));
      prev = r;
    }
    auto g = build_gm_covering(lengths, words);
    const auto& cov = g.covering();
    for (std::size_t m = 1; m <= cov.depth(); ++m) {
      ++levels;
      failures += !classify_hom(cov.hom(m)).is_cover;
      for (std::size_t n = 0; n < m; ++n) {
        auto h = cov.composite(m, n);
        ++composites;
        failures += !classify_hom(h).is_cover || !oracle::classify(h).is_cover;
      }
    }
  }
  return {failures == 0, std::to_string(levels) + " levels, " + std::to_string(composites) + " composites, " +
                             std::to_string(failures) + " failures"};
}

Outcome nsymbols() {
  auto g = oracle::e_r2(3);
  // l(n,i) = sum of l(n-1, letter) over the word of c_{n,i}.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> len{{{1, 1}, 2}, {{1, 2}, 3}};
  const std::vector<Word> words{{1, 2, 1}, {1, 2, 2}};
  for (std::size_t n = 2; n <= 3; ++n) {
    for (std::size_t i = 1; i <= 2; ++i) {
      std::size_t s = 0;
      for (auto a : words[i - 1]) s += len[{n - 1, a}];
      len[{n, i}] = s;
    }
  }
  std::vector<std::size_t> widths;
  bool rows_ok = true;
  for (auto [n, i] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    auto s = n_symbol(g, n, i);
    widths.push_back(s.widths.back());
    rows_ok = rows_ok && s.widths.back() == len[{n, i}];
    for (std::size_t m = 0; m < s.rows.size(); ++m) {
      std::size_t sum = 0;
      for (auto t : s.rows[m]) sum += g.length(m, t);
      rows_ok = rows_ok && sum == s.widths.back() && s.widths[m] == s.widths.back();
    }
  }
  const bool ok = rows_ok && widths == std::vector<std::size_t>{7, 8, 22, 23};
  return {ok, "widths " + std::to_string(widths[0]) + "," + std::to_string(widths[1]) + "," +
                  std::to_string(widths[2]) + "," + std::to_string(widths[3])};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"E-R2 pipeline yields a properly ordered rank-2 diagram", pipeline},
      {"window languages equal for E-R2 (N=3, W=20) and E-ODO (N=2, W=8)", conjugacy},
      {"reversed fiber is detected as a mismatch", mutation},
      {"cut monotonicity before and after slide", monotonicity},
      {"Vershik successor on the 2-odometer at depth 6", vershik},
      {"E-R2 minimality witnesses m = n+1", minimality},
      {"random GM levels and composites are covers", cover_algebra},
      {"E-R2 n-symbol widths", nsymbols}};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::printf("%s [%zu] %s: %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
