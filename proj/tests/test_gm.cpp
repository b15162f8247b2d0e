#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "gmbv/error.hpp"
#include "gmbv/gm.hpp"
#include "oracles.hpp"

using namespace gmbv;

namespace {

std::vector<GmDeclaration> declarations(const GmCovering& g) {
  std::vector<GmDeclaration> d;
  for (std::size_t n = 1; n <= g.depth(); ++n) d.push_back({g.level(n).base, g.level(n).circuits});
  return d;
}

Error error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error thrown");
  return Error(ErrorCode::IoError, "");
}

}  // namespace

TEST_CASE("E-ODO is a rank-1 GM-covering with words (1,1)") {
  auto g = oracle::e_odo(6);
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(g.rank(n) == 1);
    CHECK(g.length(n, 1) == (std::size_t{1} << n));
    if (n >= 2) CHECK(g.word(n, 1) == Word{1, 1});
  }
}

TEST_CASE("E-R2 words and lengths") {
  auto g = oracle::e_r2(4);
  CHECK(g.word(2, 1) == Word{1, 2, 1});
  CHECK(g.word(2, 2) == Word{1, 2, 2});
  // l(n,1) = 2 l(n-1,1) + l(n-1,2), l(n,2) = l(n-1,1) + 2 l(n-1,2).
  std::size_t a = 2, b = 3;
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(g.length(n, 1) == a);
    CHECK(g.length(n, 2) == b);
    std::tie(a, b) = std::pair{2 * a + b, a + 2 * b};
  }
  CHECK(g.expand(3, 1, 1) == Word{1, 2, 1, 1, 2, 2, 1, 2, 1});
  CHECK(g.expand(3, 2, 3) == Word{2});
}

TEST_CASE("validate_gm re-derives the words of builder output") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 25; ++t) {
    std::vector<std::size_t> lengths;
    const std::size_t r1 = 1 + rng() % 3;
    for (std::size_t i = 0; i < r1; ++i) lengths.push_back(2 + rng() % 3);
    std::vector<std::vector<Word>> words;
    std::size_t prev = r1;
    for (std::size_t n = 2; n <= 4; ++n) {
      const std::size_t r = 1 + rng() % 3;
      words.push_back(oracle::random_words(rng, prev, r, 3));
      prev = r;
    }
    auto g = build_gm_covering(lengths, words);
    auto again = validate_gm(g.covering(), declarations(g));
    for (std::size_t n = 2; n <= g.depth(); ++n) CHECK(again.words(n) == words[n - 2]);
    for (std::size_t m = 1; m <= g.depth(); ++m) {
      for (std::size_t i = 1; i <= g.rank(m); ++i) {
        for (std::size_t n = 0; n <= m; ++n) {
          std::size_t total = 0;
          for (auto letter : g.expand(m, i, n)) total += g.length(n, letter);
          CHECK(total == g.length(m, i));
        }
      }
    }
  }
}

TEST_CASE("reordered circuits violate the first-step condition") {
  auto g = oracle::e_r2(3);
  auto d = declarations(g);
  std::swap(d[0].circuits[0], d[0].circuits[1]);
  auto e = error_of([&] { validate_gm(g.covering(), d); });
  CHECK(e.code() == ErrorCode::FirstStepMismatch);
}

TEST_CASE("GM conditions on hand-built levels") {
  auto g = oracle::repeated({1, 2}, {{1, 2}}, 2);
  auto d = declarations(g);
  auto dropped = d;
  dropped[0].circuits.pop_back();
  CHECK(error_of([&] { validate_gm(g.covering(), dropped); }).code() == ErrorCode::EdgeNotOnAnyCircuit);
  auto dup = d;
  dup[0].circuits.push_back(dup[0].circuits[0]);
  CHECK(error_of([&] { validate_gm(g.covering(), dup); }).code() == ErrorCode::DuplicateCircuit);
  auto odo = oracle::e_odo(2);
  auto shifted = declarations(odo);
  const auto& c = shifted[1].circuits[0].vertices;
  shifted[1].base = c[1];
  std::vector<VertexId> rot(c.begin() + 1, c.end());
  rot.push_back(c[1]);
  shifted[1].circuits[0].vertices = rot;
  CHECK(error_of([&] { validate_gm(odo.covering(), shifted); }).code() == ErrorCode::BaseNotPreserved);
}

TEST_CASE("first level builder") {
  auto g = build_gm_covering({2, 3}, {});
  const auto& l = g.level(1);
  REQUIRE(l.rank() == 2);
  CHECK(l.graph->vertex_count() == 4);
  CHECK(l.length(1) == 2);
  CHECK(l.length(2) == 3);
  std::set<VertexId> interior;
  for (const auto& c : l.circuits) {
    CHECK(c.vertices.front() == l.base);
    CHECK(c.vertices.back() == l.base);
    for (std::size_t k = 1; k + 1 < c.vertices.size(); ++k) CHECK(interior.insert(c.vertices[k]).second);
  }
}

TEST_CASE("level builder traces positions along the concatenation") {
  auto g = oracle::e_r2(2);
  const auto& cov = g.covering();
  for (std::size_t i = 1; i <= 2; ++i) {
    const auto& c = g.level(2).circuit(i).vertices;
    std::vector<VertexId> concat;
    for (auto letter : g.word(2, i)) {
      const auto& sub = g.level(1).circuit(letter).vertices;
      concat.insert(concat.end(), sub.begin(), sub.end() - 1);
    }
    REQUIRE(c.size() == concat.size() + 1);
    for (std::size_t p = 0; p < concat.size(); ++p) CHECK(cov.hom(2)(c[p]) == concat[p]);
  }
  CHECK(g.length(2, 1) == 7);
  CHECK(g.length(2, 2) == 8);
}

TEST_CASE("builder rejects bad words") {
  auto e = error_of([] { build_gm_covering({2, 3}, {{{2, 1}}}); });
  CHECK(e.code() == ErrorCode::WordNotStartingWithOne);
  CHECK(std::string(e.what()).find("level 2") != std::string::npos);
  CHECK(error_of([] { build_gm_covering({2, 3}, {{{}}}); }).code() == ErrorCode::EmptyWord);
  CHECK(error_of([] { build_gm_covering({2, 3}, {{{1, 3}}}); }).code() == ErrorCode::UnknownLetter);
  CHECK(error_of([] { build_gm_covering({2, 3}, {{{1, 1}, {1, 1}}}); }).code() == ErrorCode::LetterNeverUsed);
}

TEST_CASE("strengthened simplicity") {
  auto r2 = check_simplicity(oracle::e_r2(5), true, 5);
  CHECK(r2.passed());
  CHECK(r2.levels.size() == 5);
  CHECK(check_simplicity(oracle::e_odo(5), true, 5).passed());

  // The word (1,1) misses the edges of c_{1,2}.
  auto g = build_gm_covering({2, 3}, {{{1, 1}, {1, 2}}});
  auto rep = check_simplicity(g, true, 2);
  CHECK(rep.refuted());
  REQUIRE(rep.levels.size() == 2);
  CHECK(rep.levels[1].status == CheckStatus::Refuted);
  CHECK(rep.levels[1].failing == std::vector<std::size_t>{1});
}

TEST_CASE("eventual simplicity finds the first covering level") {
  auto g = oracle::repeated({2, 3}, {{1, 1}, {1, 2}}, 4);
  auto rep = check_simplicity(g, false, 4);
  CHECK_FALSE(rep.refuted());
  REQUIRE(!rep.levels.empty());
  // c_{3,1} = c_{2,1} c_{2,1} = c_{1,1}^4 still misses c_{1,2}.
  CHECK(rep.levels[0].level == 1);
  CHECK(rep.levels[0].status == CheckStatus::Inconclusive);
}

TEST_CASE("isolated points") {
  auto r2 = oracle::e_r2(4);
  auto rep = check_no_isolated_points(r2, 2);
  CHECK(rep.all_witnessed());
  for (const auto& e : rep.entries) {
    CHECK(e.level == 1);
    CHECK(e.witness == 2);
  }
  CHECK(rep.entries.size() == r2.covering().graph(1).vertex_count());

  auto odo = check_no_isolated_points(oracle::e_odo(5), 5);
  CHECK(odo.all_witnessed());
  for (const auto& e : odo.entries) CHECK(e.witness == e.level + 1);

  auto shallow = check_no_isolated_points(r2, 1);
  CHECK_FALSE(shallow.all_witnessed());
}

TEST_CASE("rank estimates") {
  CHECK(rank_estimate(oracle::e_r2(5), 3).estimate == 2);
  CHECK(rank_estimate(oracle::e_r2(5), 3).sequence == std::vector<std::size_t>(5, 2));
  CHECK(rank_estimate(oracle::e_odo(5), 2).estimate == 1);
  CHECK(rank_from_sequence({3, 2, 2, 2}, 3).estimate == 2);
  CHECK(rank_from_sequence({3, 2, 2, 2}, 4).estimate == 2);
  CHECK(rank_from_sequence({3, 4, 5}, 1).estimate == 5);
  CHECK(error_of([] { rank_from_sequence({1, 2}, 3); }).code() == ErrorCode::IndexOutOfRange);
}
