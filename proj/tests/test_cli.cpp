#include <sstream>

#include "doctest.h"
#include "gmbv/cli.hpp"
#include "gmbv/io.hpp"
#include "oracles.hpp"

using namespace gmbv;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run_with(RunConfig c) {
  std::ostringstream out, err;
  const int s = run(c, out, err);
  return {s, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& input) {
  RunConfig c;
  c.command = command;
  c.input = input;
  return c;
}

}  // namespace

TEST_CASE("verify on E-R2 and its mutation") {
  auto c = config("verify", "e-r2");
  c.depth = 3;
  c.width = 20;
  auto r = run_with(c);
  CHECK(r.status == kPass);
  CHECK(r.out.find("languages equal (83 windows per side)") != std::string::npos);
  c.reverse_fiber = {{2, 1}};
  auto m = run_with(c);
  CHECK(m.status == kRefuted);
  CHECK(m.out.find("languages differ") != std::string::npos);
}

TEST_CASE("verify normalizes E-ODO first") {
  auto c = config("verify", "e-odo");
  c.depth = 2;
  c.width = 8;
  auto r = run_with(c);
  CHECK(r.status == kPass);
  CHECK(r.out.find("(8 windows per side)") != std::string::npos);
}

TEST_CASE("vershik rows of the 2-odometer") {
  auto c = config("vershik", "2-odometer");
  c.steps = 16;
  c.level = 2;
  c.format = OutputFormat::Structured;
  auto r = run_with(c);
  CHECK(r.status == kPass);
  CHECK(r.out.find("row level=2 begin=0 symbols=u2,u2,u2,u2,u2,u2,u2,u2,u2,u2,u2,u2,u2,u2,u2,u2 cuts=0,4,8,12\n") !=
        std::string::npos);
  c.format = OutputFormat::Text;
  CHECK(run_with(c).out.find("n=2   |u2         |u2         |u2         |u2\n") != std::string::npos);
  c.steps = 80;
  CHECK(run_with(c).status == kInputError);
  c.wrap = true;
  CHECK(run_with(c).status == kPass);
}

TEST_CASE("minimality exit codes") {
  auto c = config("minimality", "e-r2");
  c.n = 1;
  c.horizon = 1;
  auto r = run_with(c);
  CHECK(r.status == kInconclusive);
  CHECK(r.out.find("no witness within horizon") != std::string::npos);
  c.horizon = 4;
  r = run_with(c);
  CHECK(r.status == kPass);
  CHECK(r.out.find("witness=2") != std::string::npos);
  c.horizon = 40;
  CHECK(run_with(c).status == kInputError);
}

TEST_CASE("gm-check, rank and validate") {
  auto g = run_with(config("gm-check", "e-r2"));
  CHECK(g.status == kPass);
  CHECK(g.out.find("status=pass") != std::string::npos);
  auto bad = config("gm-check", "-");
  CHECK(run_with(bad).status == kInputError);

  auto rank = run_with(config("rank", "e-odo"));
  CHECK(rank.out.find("estimate=1\n") != std::string::npos);
  auto bv = config("rank", "2-odometer");
  CHECK(run_with(bv).out.find("estimate=1\n") != std::string::npos);

  auto v = run_with(config("validate", "fibonacci"));
  CHECK(v.status == kPass);
  CHECK(v.out.rfind("kind: gm-covering\ndepth: 3\n", 0) == 0);
  auto plain = config("rank", "plain");
  CHECK(run_with(plain).status == kPass);
  CHECK(run_with(config("gm-check", "plain")).status == kInputError);
}

TEST_CASE("classify covers") {
  auto r = run_with(config("classify", "e-r2"));
  CHECK(r.status == kPass);
  CHECK(r.out.find("cover=no") == std::string::npos);
  auto c = config("classify", "e-r2");
  c.m = 5;
  c.n = 1;
  r = run_with(c);
  CHECK(r.out == "phi 5->1 edge_surjective=yes plus_directional=yes bidirectional=no cover=yes\n");
}

TEST_CASE("telescope, normalize and build-bv outputs re-parse") {
  auto t = config("telescope", "e-odo");
  t.levels = {0, 2, 4};
  auto tr = run_with(t);
  REQUIRE(tr.status == kPass);
  auto tel = std::get<GmCovering>(parse_input(tr.out));
  CHECK(tel.depth() == 2);
  CHECK(tel.length(2, 1) == 16);
  CHECK(tel.word(2, 1) == Word{1, 1, 1, 1});

  auto bt = config("telescope", "2-odometer");
  bt.levels = {0, 1, 3};
  auto b = std::get<OrderedBratteli>(parse_input(run_with(bt).out));
  CHECK(b.depth() == 2);
  CHECK(b.diagram().edges(2).size() == 4);

  auto n = run_with(config("normalize", "e-odo"));
  auto norm = std::get<GmCovering>(parse_input(n.out));
  CHECK(is_normalized(norm));
  CHECK(n.out.find("# kept levels: 0,1,3,5,7,9,11\n") != std::string::npos);

  auto bb = run_with(config("build-bv", "e-r2"));
  auto d = std::get<OrderedBratteli>(parse_input(bb.out));
  auto expect = build_ordered_bratteli(oracle::e_r2(10));
  CHECK(d.ranks() == expect.ranks());
  auto dot = config("build-bv", "e-r2");
  dot.format = OutputFormat::Dot;
  CHECK(run_with(dot).out.rfind("digraph", 0) == 0);
}

TEST_CASE("bv-check") {
  auto r = run_with(config("bv-check", "e-r2"));
  CHECK(r.status == kPass);
  auto c = config("bv-check", "2-odometer");
  c.level = 5;
  CHECK(run_with(c).status == kPass);
  c.level = 6;
  CHECK(run_with(c).status == kInputError);
}

TEST_CASE("arrays") {
  auto c = config("arrays", "e-r2");
  c.level = 3;
  c.width = 24;
  c.all = true;
  auto r = run_with(c);
  CHECK(r.status == kPass);
  CHECK(r.out.find("windows=" + std::to_string(oracle::count_walks(oracle::e_r2(3).covering().graph(3), 23))) !=
        std::string::npos);
  auto one = config("arrays", "e-r2");
  one.level = 2;
  one.width = 16;
  one.slide = true;
  auto s = run_with(one);
  CHECK(s.status == kPass);
  CHECK(s.out.find("cuts_monotone=yes") != std::string::npos);
  one.walk = {"v2_0", "v2_0"};
  CHECK(run_with(one).status == kInputError);
}

TEST_CASE("export-dot") {
  auto c = config("export-dot", "fibonacci");
  c.level = 1;
  auto r = run_with(c);
  CHECK(r.out == "digraph \"G1\" {\n  n0 [label=\"v1_0\"];\n  n1 [label=\"v1_2_1\"];\n  n0 -> n0;\n  n0 -> n1;\n  n1 -> n0;\n}\n");
  CHECK(run_with(config("export-dot", "2-odometer")).out.rfind("digraph", 0) == 0);
}

TEST_CASE("errors, budgets and determinism") {
  auto missing = run_with(config("validate", "/nonexistent/file.gm"));
  CHECK(missing.status == kInputError);
  CHECK(missing.err.find("error code=IoError") == 0);
  CHECK(missing.out.empty());

  auto unknown = run_with(config("frobnicate", "e-r2"));
  CHECK(unknown.status == kInputError);

  auto tight = config("arrays", "e-r2");
  tight.level = 3;
  tight.width = 30;
  tight.all = true;
  tight.budget.max_items = 3;
  auto b = run_with(tight);
  CHECK(b.status == kInconclusive);
  CHECK(b.err.find("code=BudgetExceeded") != std::string::npos);

  auto zero = config("validate", "e-r2");
  zero.budget.max_steps = 0;
  CHECK(run_with(zero).status == kInputError);

  auto shallow = config("verify", "e-r2");
  shallow.depth = 9;
  shallow.width = 10;
  CHECK(run_with(shallow).status == kInconclusive);

  for (const char* cmd : {"validate", "gm-check", "verify", "arrays", "build-bv", "vershik"}) {
    auto c = config(cmd, "e-r2");
    auto a = run_with(c), again = run_with(c);
    CHECK(a.out == again.out);
    CHECK(a.status == again.status);
  }
}
