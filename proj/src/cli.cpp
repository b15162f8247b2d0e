#include "gmbv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "gmbv/arrays.hpp"
#include "gmbv/error.hpp"

namespace gmbv {

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::IndexOutOfRange, "IndexOutOfRange(" + what + ")");
}

std::size_t require(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::ParseError, std::string("ParseError(missing --") + flag + ")");
  return *v;
}

void within_depth(std::size_t value, std::size_t depth, const char* flag) {
  if (value > depth) {
    bad_config(std::string("--") + flag + " = " + std::to_string(value) + " exceeds depth " + std::to_string(depth));
  }
}

std::string kind_name(const ParsedInput& in) {
  static constexpr const char* names[] = {"covering", "gm-covering", "bratteli"};
  return names[in.index()];
}

const GmCovering& need_gm(const ParsedInput& in) {
  if (const auto* g = std::get_if<GmCovering>(&in)) return *g;
  throw Error(ErrorCode::TypeMismatch, "TypeMismatch(command needs a GM-covering, input is " + kind_name(in) + ")");
}

const Covering& need_covering(const ParsedInput& in) {
  if (const auto* g = std::get_if<GmCovering>(&in)) return g->covering();
  if (const auto* c = std::get_if<Covering>(&in)) return *c;
  throw Error(ErrorCode::TypeMismatch, "TypeMismatch(command needs a covering, input is bratteli)");
}

GmCovering normalized(const GmCovering& g, std::size_t bound) {
  return is_normalized(g) ? g : normalize_for_construction(g, bound).covering;
}

OrderedBratteli need_diagram(const ParsedInput& in, std::size_t bound) {
  if (const auto* d = std::get_if<OrderedBratteli>(&in)) return *d;
  return build_ordered_bratteli(normalized(need_gm(in), bound));
}

class Runner {
 public:
  Runner(const RunConfig& c, std::ostream& out) : c_(c), out_(out), in_(parse_input_file(resolve_input(c.input))) {}

  int dispatch() {
    const auto& cmd = c_.command;
    if (cmd == "validate") return validate();
    if (cmd == "classify") return classify();
    if (cmd == "telescope") return telescope_cmd();
    if (cmd == "minimality") return minimality();
    if (cmd == "gm-check") return gm_check();
    if (cmd == "rank") return rank();
    if (cmd == "normalize") return normalize();
    if (cmd == "build-bv") return build_bv();
    if (cmd == "bv-check") return bv_check();
    if (cmd == "vershik") return vershik();
    if (cmd == "arrays") return arrays();
    if (cmd == "verify") return verify();
    if (cmd == "export-dot") return export_dot();
    throw Error(ErrorCode::ParseError, "ParseError(unknown command " + cmd + ")");
  }

 private:
  bool structured() const { return c_.format == OutputFormat::Structured; }

  std::size_t depth() const {
    if (const auto* d = std::get_if<OrderedBratteli>(&in_)) return d->depth();
    return need_covering(in_).depth();
  }

  int validate() {
    const char* sep = structured() ? "=" : ": ";
    out_ << "kind" << sep << kind_name(in_) << "\n" << "depth" << sep << depth() << "\n";
    if (const auto* d = std::get_if<OrderedBratteli>(&in_)) {
      for (std::size_t n = 1; n <= d->depth(); ++n) {
        out_ << "level=" << n << " vertices=" << d->diagram().vertex_count(n)
             << " edges=" << d->diagram().edges(n).size() << "\n";
      }
    } else {
      const auto& cov = need_covering(in_);
      const auto* g = std::get_if<GmCovering>(&in_);
      for (std::size_t n = 1; n <= cov.depth(); ++n) {
        out_ << "level=" << n << " vertices=" << cov.graph(n).vertex_count() << " edges=" << cov.graph(n).edge_count();
        if (g) {
          std::vector<std::size_t> lengths;
          for (std::size_t i = 1; i <= g->rank(n); ++i) lengths.push_back(g->length(n, i));
          out_ << " rank=" << g->rank(n) << " lengths=" << join(lengths);
          if (n >= 2) {
            out_ << " words=";
            for (std::size_t i = 1; i <= g->rank(n); ++i) out_ << (i > 1 ? ";" : "") << join_word(g->word(n, i));
          }
        }
        out_ << "\n";
      }
    }
    out_ << "status" << sep << "valid\n";
    return kPass;
  }

  void print_classification(const std::string& label, const HomClassification& h) {
    out_ << label << " edge_surjective=" << yes_no(h.edge_surjective) << " plus_directional="
         << yes_no(h.plus_directional) << " bidirectional=" << yes_no(h.bidirectional)
         << " cover=" << yes_no(h.is_cover) << "\n";
  }

  int classify() {
    const auto& cov = need_covering(in_);
    bool all = true;
    if (c_.m || c_.n) {
      const auto m = require(c_.m, "m"), n = require(c_.n, "n");
      within_depth(m, cov.depth(), "m");
      if (n > m) bad_config("--n must not exceed --m");
      auto h = classify_hom(cov.composite(m, n));
      print_classification("phi " + std::to_string(m) + "->" + std::to_string(n), h);
      all = h.is_cover;
    } else {
      for (std::size_t n = 1; n <= cov.depth(); ++n) {
        auto h = classify_hom(cov.hom(n));
        print_classification("phi " + std::to_string(n) + "->" + std::to_string(n - 1), h);
        all = all && h.is_cover;
      }
    }
    return all ? kPass : kRefuted;
  }

  int telescope_cmd() {
    if (const auto* d = std::get_if<OrderedBratteli>(&in_)) {
      const auto& idx = c_.levels;
      if (idx.empty() || idx.front() != 0) throw Error(ErrorCode::NotStartingAtZero, "NotStartingAtZero");
      OrderedBratteli t = d->truncated(idx.back());
      for (std::size_t k = idx.size() - 1; k > 0; --k) {
        if (idx[k - 1] + 1 < idx[k]) t = telescope_bratteli(t, idx[k - 1], idx[k]);
      }
      if (c_.format == OutputFormat::Dot) {
        write_dot(out_, t);
      } else {
        write_bratteli(out_, t);
      }
      return kPass;
    }
    Covering t = telescope(need_covering(in_), c_.levels);
    if (const auto* g = std::get_if<GmCovering>(&in_)) {
      std::vector<GmDeclaration> decls;
      for (std::size_t k = 1; k < c_.levels.size(); ++k) {
        const auto& l = g->level(c_.levels[k]);
        decls.push_back({l.base, l.circuits});
      }
      auto tg = validate_gm(std::move(t), std::move(decls));
      write_covering(out_, tg);
    } else {
      write_covering(out_, t);
    }
    return kPass;
  }

  int minimality() {
    const auto& cov = need_covering(in_);
    const auto n = require(c_.n, "n");
    const auto horizon = c_.horizon.value_or(cov.depth());
    within_depth(horizon, cov.depth(), "horizon");
    auto w = minimality_witness(cov, n, horizon, c_.budget);
    if (!w) {
      out_ << "minimality n=" << n << " horizon=" << horizon << " status=inconclusive\n"
           << "no witness within horizon\n";
      return kInconclusive;
    }
    out_ << "minimality n=" << n << " horizon=" << horizon << " status=pass witness=" << *w << "\n";
    return kPass;
  }

  int gm_check() {
    const auto& g = need_gm(in_);
    const auto horizon = c_.horizon.value_or(g.depth());
    within_depth(horizon, g.depth(), "horizon");
    auto simp = check_simplicity(g, !c_.plain, horizon);
    out_ << "simplicity mode=" << (simp.strengthened ? "strengthened" : "eventual") << " horizon=" << horizon << "\n";
    for (const auto& l : simp.levels) {
      out_ << "level=" << l.level << " status=" << to_string(l.status);
      if (l.witness) out_ << " witness=" << *l.witness;
      if (!l.failing.empty()) out_ << " failing=" << join(l.failing);
      out_ << "\n";
    }
    auto iso = check_no_isolated_points(g, horizon);
    std::size_t missing = 0;
    for (const auto& e : iso.entries) missing += !e.witness;
    out_ << "isolated_points vertices=" << iso.entries.size() << " unwitnessed=" << missing << "\n";
    for (const auto& e : iso.entries) {
      if (!e.witness) out_ << "unwitnessed level=" << e.level << " vertex=" << g.level(e.level).graph->name(e.vertex) << "\n";
    }
    int status = kPass;
    if (simp.refuted()) {
      status = kRefuted;
    } else if (!simp.passed() || !iso.all_witnessed()) {
      status = kInconclusive;
    }
    out_ << "status=" << (status == kPass ? "pass" : status == kRefuted ? "refuted" : "inconclusive") << "\n";
    return status;
  }

  int rank() {
    RankEstimate r;
    const auto tail = c_.tail.value_or(std::min<std::size_t>(3, depth()));
    if (const auto* d = std::get_if<OrderedBratteli>(&in_)) {
      r = bratteli_rank(d->diagram(), tail);
    } else if (const auto* g = std::get_if<GmCovering>(&in_)) {
      r = rank_estimate(*g, tail);
    } else {
      const auto& cov = need_covering(in_);
      std::vector<std::size_t> seq;
      for (std::size_t n = 1; n <= cov.depth(); ++n) seq.push_back(cov.graph(n).vertex_count());
      r = rank_from_sequence(std::move(seq), tail);
    }
    out_ << "sequence=" << join(r.sequence) << "\n" << "tail=" << tail << "\n" << "estimate=" << r.estimate << "\n";
    return kPass;
  }

  int normalize() {
    auto norm = normalize_for_construction(need_gm(in_), c_.bound);
    write_gm_words(out_, norm.covering);
    out_ << "# kept levels: " << join(norm.kept_levels) << "\n";
    return kPass;
  }

  int build_bv() {
    auto d = need_diagram(in_, c_.bound);
    if (c_.format == OutputFormat::Dot) {
      write_dot(out_, d);
    } else {
      write_bratteli(out_, d);
    }
    return kPass;
  }

  int bv_check() {
    auto d = need_diagram(in_, c_.bound);
    if (d.depth() < 2) bad_config("diagram depth must be at least 2");
    const auto level = c_.level.value_or(d.depth() - 1);
    if (level >= d.depth()) bad_config("--level must be below the diagram depth " + std::to_string(d.depth()));
    auto r = check_properly_ordered(d, level, c_.levels);
    out_ << "properly_ordered level=" << level << " depth=" << d.depth() << "\n"
         << "simple=" << yes_no(r.simple) << "\n"
         << "max_paths=" << r.max_paths << "\n"
         << "min_paths=" << r.min_paths << "\n";
    // Finite-depth simplicity failure is inconclusive.
    int status = kPass;
    if (r.max_paths != 1 || r.min_paths != 1) {
      status = kRefuted;
    } else if (!r.simple) {
      status = kInconclusive;
    }
    out_ << "status=" << (status == kPass ? "pass" : status == kRefuted ? "refuted" : "inconclusive") << "\n";
    return status;
  }

  int vershik() {
    auto d = need_diagram(in_, c_.bound);
    const auto& dia = d.diagram();
    const auto top = c_.level.value_or(d.depth());
    within_depth(top, d.depth(), "level");
    const auto steps = c_.steps.value_or(16);
    auto start = extreme_path_to(d, Extreme::Min, d.depth(), 0);
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<std::uint8_t>> cuts;
    for (std::size_t n = 0; n <= top; ++n) {
      auto row = bv_array_rows(d, start, n, c_.begin, c_.begin + static_cast<std::int64_t>(steps), c_.wrap);
      if (structured()) {
        out_ << "row level=" << n << " begin=" << row.begin << " symbols=";
        for (std::size_t i = 0; i < row.symbols.size(); ++i) out_ << (i ? "," : "") << dia.name(n, row.symbols[i]);
        out_ << " cuts=";
        for (std::size_t i = 0; i < row.cuts.size(); ++i) out_ << (i ? "," : "") << row.cuts[i];
        out_ << "\n";
        continue;
      }
      std::vector<std::string> l;
      std::vector<std::uint8_t> cut(row.symbols.size(), 0);
      for (auto s : row.symbols) l.push_back(dia.name(n, s));
      for (auto p : row.cuts) cut[static_cast<std::size_t>(p - row.begin)] = 1;
      labels.push_back(std::move(l));
      cuts.push_back(std::move(cut));
    }
    if (!structured()) {
      out_ << "orbit begin=" << c_.begin << " steps=" << steps << " wrap=" << yes_no(c_.wrap) << "\n";
      write_labelled_rows(out_, labels, cuts);
    }
    return kPass;
  }

  Walk default_walk(const GmCovering& g, std::size_t level, std::size_t width) const {
    const auto& c = g.level(level).circuit(1);
    Walk w;
    for (std::size_t i = 0; i < width; ++i) w.vertices.push_back(c.vertices[i % c.length()]);
    return w;
  }

  int arrays() {
    const auto& g = need_gm(in_);
    const auto level = c_.level.value_or(1);
    within_depth(level, g.depth(), "level");
    const auto width = c_.width.value_or(12);
    if (width == 0) bad_config("--width must be positive");
    const auto& graph = *g.level(level).graph;
    SlideSpec spec(g, level);

    if (c_.all) {
      auto walks = walks_of_length(graph, width - 1, c_.budget);
      std::size_t before = 0, after = 0, slid = 0;
      for (const auto& w : walks) {
        auto lw = linked_window(g, level, w, c_.begin).linked;
        before += cuts_monotone(lw);
        if (width > spec.total(level)) {
          ++slid;
          after += cuts_monotone(slide(lw, spec));
        }
      }
      out_ << "windows=" << walks.size() << "\n"
           << "monotone=" << before << "\n"
           << "slid=" << slid << "\n"
           << "monotone_after_slide=" << after << "\n";
      return before == walks.size() && after == slid ? kPass : kRefuted;
    }

    Walk walk;
    if (c_.walk.empty()) {
      walk = default_walk(g, level, width);
    } else {
      for (const auto& name : c_.walk) walk.vertices.push_back(graph.id(name));
    }
    auto pair = linked_window(g, level, walk, c_.begin);
    auto linked = c_.slide ? slide(pair.linked, spec) : pair.linked;
    if (structured()) {
      const auto& a = pair.array;
      for (std::size_t n = 0; n < a.rows.size(); ++n) {
        out_ << "array level=" << n << " begin=" << a.begin << " vertices=";
        for (std::size_t i = 0; i < a.rows[n].size(); ++i) {
          out_ << (i ? "," : "") << g.level(n).graph->name(a.rows[n][i]);
        }
        out_ << "\n";
      }
      write_window_records(out_, linked);
    } else {
      std::vector<std::vector<std::string>> labels;
      std::vector<std::vector<std::uint8_t>> cuts;
      for (std::size_t n = 0; n < pair.array.rows.size(); ++n) {
        std::vector<std::string> l;
        for (auto v : pair.array.rows[n]) l.push_back(g.level(n).graph->name(v));
        std::vector<std::uint8_t> cut(l.size(), 0);
        for (auto p : pair.linked.rows[n].cuts) cut[static_cast<std::size_t>(p - pair.linked.begin)] = 1;
        labels.push_back(std::move(l));
        cuts.push_back(std::move(cut));
      }
      out_ << "array begin=" << pair.array.begin << " width=" << pair.array.width() << "\n";
      write_labelled_rows(out_, labels, cuts);
      out_ << (c_.slide ? "slid " : "linked ");
      write_window_text(out_, linked);
    }
    out_ << "cuts_monotone=" << yes_no(cuts_monotone(linked)) << "\n";
    return kPass;
  }

  int verify() {
    auto g = normalized(need_gm(in_), c_.bound);
    const auto level = c_.depth.value_or(1);
    const auto width = c_.width.value_or(8);
    auto d = build_ordered_bratteli(g);
    if (c_.reverse_fiber) {
      const auto [n, v] = *c_.reverse_fiber;
      if (n == 0 || n > d.depth() || v == 0 || v > d.diagram().vertex_count(n)) bad_config("--reverse-fiber");
      d = d.with_reversed_fiber(n, v - 1);
    }
    auto r = verify_conjugacy(g, d, level, width, c_.budget);
    out_ << "verify level=" << r.top_level << " width=" << r.width << " enumeration_level=" << r.enumeration_level
         << " slide_total=" << r.slide_total << "\n"
         << "natural_windows=" << r.natural_count << "\n"
         << "bratteli_windows=" << r.bratteli_count << "\n";
    if (r.equal) {
      out_ << "languages equal (" << r.natural_count << " windows per side)\n";
      return kPass;
    }
    out_ << "languages differ\n";
    auto show = [&](const char* side, const std::optional<SymbolWindow>& w) {
      if (!w) return;
      out_ << "only_" << side << ":\n";
      if (structured()) {
        write_window_records(out_, *w);
      } else {
        write_window_text(out_, *w);
      }
    };
    show("natural", r.only_natural);
    show("bratteli", r.only_bratteli);
    return kRefuted;
  }

  int export_dot() {
    if (const auto* d = std::get_if<OrderedBratteli>(&in_)) {
      write_dot(out_, *d);
      return kPass;
    }
    const auto& cov = need_covering(in_);
    if (c_.level) {
      within_depth(*c_.level, cov.depth(), "level");
      write_dot(out_, cov.graph(*c_.level), "G" + std::to_string(*c_.level));
      return kPass;
    }
    for (std::size_t n = 0; n <= cov.depth(); ++n) write_dot(out_, cov.graph(n), "G" + std::to_string(n));
    return kPass;
  }

  const RunConfig& c_;
  std::ostream& out_;
  ParsedInput in_;
};

}  // namespace

std::string resolve_input(const std::string& input) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(input)) return input;
  for (const char* ext : {"", ".gm", ".cov", ".bv"}) {
    auto p = fs::path(GMBV_DATA_DIR) / (input + ext);
    if (fs::is_regular_file(p)) return p.string();
  }
  return input;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.budget.max_items == 0 || config.budget.max_steps == 0) {
    err << "error code=IndexOutOfRange message=budgets must be positive\n";
    return kInputError;
  }
  std::ostringstream buf;
  try {
    Runner r(config, buf);
    const int status = r.dispatch();
    out << buf.str();
    return status;
  } catch (const Error& e) {
    const bool budget = e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::InsufficientDepth;
    err << "error code=" << to_string(e.code()) << " message=" << e.what() << "\n";
    if (budget) {
      out << buf.str() << "status=inconclusive\n";
      return kInconclusive;
    }
    return kInputError;
  } catch (const std::exception& e) {
    err << "error code=IoError message=" << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace gmbv
