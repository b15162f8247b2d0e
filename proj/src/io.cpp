#include "gmbv/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "gmbv/error.hpp"

namespace gmbv {

namespace {

struct Pos {
  std::size_t line = 1, col = 1;
};

std::string where(Pos p) { return std::to_string(p.line) + ":" + std::to_string(p.col); }

[[noreturn]] void parse_error(Pos p, const std::string& expected) {
  throw Error(ErrorCode::ParseError, "ParseError(" + where(p) + ", expected " + expected + ")");
}

enum class Tok { Ident, LParen, RParen, Comma, Semi, Colon, Eq, Arrow, End };

struct Token {
  Tok kind{};
  std::string text;
  Pos pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  Pos p;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++p.line;
        p.col = 1;
      } else {
        ++p.col;
      }
    }
  };
  auto is_ident = [&](std::size_t k) {
    const char c = src[k];
    if (std::isspace(static_cast<unsigned char>(c)) || std::string_view("(),;:=#").find(c) != std::string_view::npos) {
      return false;
    }
    return !(c == '-' && k + 1 < src.size() && src[k + 1] == '>');
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", p});
      advance(2);
    } else if (std::string_view("(),;:=").find(c) != std::string_view::npos) {
      static constexpr Tok kinds[] = {Tok::LParen, Tok::RParen, Tok::Comma, Tok::Semi, Tok::Colon, Tok::Eq};
      out.push_back({kinds[std::string_view("(),;:=").find(c)], std::string(1, c), p});
      advance(1);
    } else {
      Token t{Tok::Ident, {}, p};
      std::size_t j = i;
      while (j < src.size() && is_ident(j)) ++j;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
    }
  }
  out.push_back({Tok::End, "", p});
  return out;
}

struct Value {
  enum Kind { Atom, Arrow, List } kind = Atom;
  std::string text, target;
  std::vector<Value> items;
  Pos pos;
};

struct Level {
  std::size_t number = 0;
  Pos pos;
  std::map<std::string, Value> fields;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  std::string header() {
    const auto& t = peek();
    if (t.kind != Tok::Ident || (t.text != "gm-covering" && t.text != "covering" && t.text != "bratteli")) {
      parse_error(t.pos, "header 'gm-covering', 'covering' or 'bratteli'");
    }
    return next().text;
  }

  std::vector<Level> levels() {
    std::vector<Level> out;
    while (peek().kind != Tok::End) {
      const auto& kw = peek();
      if (kw.kind != Tok::Ident || kw.text != "level") parse_error(kw.pos, "'level'");
      next();
      Level lvl;
      lvl.pos = kw.pos;
      lvl.number = number(next(), "level number");
      expect(Tok::Colon, "':'");
      while (true) {
        const auto& name = next();
        if (name.kind != Tok::Ident) parse_error(name.pos, "field name");
        expect(Tok::Eq, "'='");
        if (!lvl.fields.emplace(name.text, value()).second) parse_error(name.pos, "each field once per level");
        if (peek().kind == Tok::Semi) {
          next();
          if (peek().kind == Tok::End || (peek().kind == Tok::Ident && peek().text == "level")) break;
          continue;
        }
        break;
      }
      if (peek().kind != Tok::End && !(peek().kind == Tok::Ident && peek().text == "level")) {
        parse_error(peek().pos, "';' or next 'level'");
      }
      out.push_back(std::move(lvl));
    }
    return out;
  }

  static std::size_t number(const Token& t, const std::string& what) {
    return number(t.text, t.pos, t.kind == Tok::Ident, what);
  }
  static std::size_t number(const std::string& text, Pos pos, bool ok, const std::string& what) {
    if (!ok || text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      parse_error(pos, what);
    }
    return std::stoull(text);
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_ == toks_.size() - 1 ? at_ : at_++]; }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) parse_error(peek().pos, what);
    next();
  }

  Value value() {
    const auto& t = peek();
    if (t.kind == Tok::LParen) {
      Value v{Value::List, {}, {}, {}, t.pos};
      next();
      if (peek().kind == Tok::RParen) {
        next();
        return v;
      }
      while (true) {
        v.items.push_back(value());
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        expect(Tok::RParen, "',' or ')'");
        return v;
      }
    }
    if (t.kind != Tok::Ident) parse_error(t.pos, "identifier or '('");
    Value v{Value::Atom, next().text, {}, {}, t.pos};
    if (peek().kind == Tok::Arrow) {
      next();
      const auto& target = next();
      if (target.kind != Tok::Ident) parse_error(target.pos, "identifier after '->'");
      v.kind = Value::Arrow;
      v.target = target.text;
    }
    return v;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

const Value& field(const Level& l, const std::string& name) {
  auto it = l.fields.find(name);
  if (it == l.fields.end()) parse_error(l.pos, "field '" + name + "' in level " + std::to_string(l.number));
  return it->second;
}

const Value* optional_field(const Level& l, const std::string& name) {
  auto it = l.fields.find(name);
  return it == l.fields.end() ? nullptr : &it->second;
}

void only_fields(const Level& l, std::initializer_list<std::string_view> allowed) {
  for (const auto& [name, v] : l.fields) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      std::string names;
      for (auto a : allowed) names += (names.empty() ? "" : ", ") + std::string(a);
      parse_error(v.pos, "one of fields " + names);
    }
  }
}

const std::vector<Value>& list(const Value& v, const std::string& what) {
  if (v.kind != Value::List) parse_error(v.pos, what);
  return v.items;
}

const std::string& atom(const Value& v, const std::string& what) {
  if (v.kind != Value::Atom) parse_error(v.pos, what);
  return v.text;
}

std::size_t positive(const Value& v, const std::string& what) {
  auto n = Parser::number(v.text, v.pos, v.kind == Value::Atom, what);
  if (n == 0) parse_error(v.pos, what);
  return n;
}

void check_numbering(const std::vector<Level>& levels, std::size_t first) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k].number != first + k) parse_error(levels[k].pos, "level " + std::to_string(first + k));
  }
}

template <class F>
auto with_level(std::size_t n, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(e.code(), "level " + std::to_string(n) + ": " + e.what());
  }
}

ParsedInput parse_gm(const std::vector<Level>& levels) {
  if (levels.empty()) throw Error(ErrorCode::ParseError, "ParseError(1:1, expected 'level 1: lengths = (...)')");
  check_numbering(levels, 1);
  std::vector<std::size_t> lengths;
  only_fields(levels[0], {"lengths"});
  for (const auto& item : list(field(levels[0], "lengths"), "list of circuit lengths")) {
    lengths.push_back(positive(item, "positive circuit length"));
  }
  std::vector<std::vector<Word>> words;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    only_fields(levels[k], {"words"});
    std::vector<Word> ws;
    for (const auto& w : list(field(levels[k], "words"), "list of words")) {
      Word word;
      for (const auto& letter : list(w, "word '(i, j, ...)'")) word.push_back(positive(letter, "circuit index >= 1"));
      ws.push_back(std::move(word));
    }
    words.push_back(std::move(ws));
  }
  return build_gm_covering(lengths, words);
}

std::vector<std::string> names_of(const Value& v, const std::string& what) {
  std::vector<std::string> out;
  for (const auto& item : list(v, what)) out.push_back(atom(item, "vertex name"));
  return out;
}

std::vector<VertexId> vertex_ids(const DiGraph& g, const Value& v, const std::string& what) {
  std::vector<VertexId> out;
  for (const auto& item : list(v, what)) out.push_back(g.id(atom(item, "vertex name")));
  return out;
}

ParsedInput parse_generic(const std::vector<Level>& levels) {
  if (levels.empty()) throw Error(ErrorCode::ParseError, "ParseError(1:1, expected 'level ...')");
  const bool has_head = levels.front().number == 0;
  check_numbering(levels, has_head ? 0 : 1);

  std::vector<GraphPtr> graphs;
  std::vector<GraphHom> homs;
  std::vector<GmDeclaration> decls;
  std::size_t declared = 0;
  auto read_graph = [](const Level& l) {
    return with_level(l.number, [&] {
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& e : list(field(l, "edges"), "list of edges")) {
        const auto& uv = list(e, "edge '(u, v)'");
        if (uv.size() != 2) parse_error(e.pos, "edge '(u, v)'");
        edges.emplace_back(atom(uv[0], "vertex name"), atom(uv[1], "vertex name"));
      }
      return std::make_shared<const DiGraph>(DiGraph::build(names_of(field(l, "vertices"), "vertex list"), edges));
    });
  };
  if (has_head) {
    only_fields(levels.front(), {"vertices", "edges"});
    graphs.push_back(read_graph(levels.front()));
  } else {
    graphs.push_back(std::make_shared<const DiGraph>(DiGraph::singleton()));
  }

  for (const auto& l : levels) {
    if (l.number == 0) continue;
    only_fields(l, {"vertices", "edges", "map", "base", "circuits"});
    auto g = read_graph(l);
    const auto& prev = graphs.back();
    homs.push_back(with_level(l.number, [&] {
      std::vector<std::optional<VertexId>> map(g->vertex_count());
      for (const auto& entry : list(field(l, "map"), "list of '(u -> v)' pairs")) {
        const Value& item = entry.kind == Value::List && entry.items.size() == 1 ? entry.items[0] : entry;
        if (item.kind != Value::Arrow) parse_error(item.pos, "'(u -> v)'");
        auto u = g->id(item.text);
        if (map[u]) parse_error(item.pos, "each vertex mapped once");
        map[u] = prev->id(item.target);
      }
      std::vector<VertexId> total;
      for (VertexId v = 0; v < map.size(); ++v) {
        if (!map[v]) throw Error(ErrorCode::TypeMismatch, "TypeMismatch(vertex " + g->name(v) + " is not mapped)");
        total.push_back(*map[v]);
      }
      return GraphHom(g, prev, std::move(total));
    }));
    const auto* base = optional_field(l, "base");
    const auto* circuits = optional_field(l, "circuits");
    if ((base == nullptr) != (circuits == nullptr)) parse_error(l.pos, "both 'base' and 'circuits' or neither");
    if (base) {
      ++declared;
      decls.push_back(with_level(l.number, [&] {
        GmDeclaration d;
        d.base = g->id(atom(*base, "base vertex"));
        for (const auto& c : list(*circuits, "list of circuits")) d.circuits.push_back(Circuit{vertex_ids(*g, c, "circuit")});
        return d;
      }));
    }
    graphs.push_back(std::move(g));
  }
  Covering cov(std::move(graphs), std::move(homs));
  if (declared == 0) return cov;
  if (declared != cov.depth()) {
    throw Error(ErrorCode::ParseError, "ParseError(" + where(levels.back().pos) +
                                           ", expected 'base' and 'circuits' on every level >= 1 or on none)");
  }
  return validate_gm(std::move(cov), std::move(decls));
}

ParsedInput parse_diagram(const std::vector<Level>& levels) {
  if (levels.empty() || levels.front().number != 0) {
    throw Error(ErrorCode::ParseError, "ParseError(1:1, expected 'level 0: vertices = (v0)')");
  }
  check_numbering(levels, 0);
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<BratteliEdge>> edges;
  std::vector<std::vector<std::size_t>> ranks;
  only_fields(levels.front(), {"vertices"});
  names.push_back(names_of(field(levels.front(), "vertices"), "vertex list"));
  for (std::size_t k = 1; k < levels.size(); ++k) {
    const auto& l = levels[k];
    only_fields(l, {"vertices", "edges"});
    names.push_back(names_of(field(l, "vertices"), "vertex list"));
    auto index = [&](const std::vector<std::string>& level, const Value& v) {
      const auto& name = atom(v, "vertex name");
      auto it = std::find(level.begin(), level.end(), name);
      if (it == level.end()) parse_error(v.pos, "vertex of the adjacent level");
      return static_cast<std::size_t>(it - level.begin());
    };
    std::vector<BratteliEdge> es;
    std::vector<std::size_t> rs;
    for (const auto& e : list(field(l, "edges"), "list of edges")) {
      const auto& parts = list(e, "edge '(source, range, rank)'");
      if (parts.size() != 3) parse_error(e.pos, "edge '(source, range, rank)'");
      es.push_back({index(names[k - 1], parts[0]), index(names[k], parts[1])});
      rs.push_back(positive(parts[2], "rank >= 1"));
    }
    edges.push_back(std::move(es));
    ranks.push_back(std::move(rs));
  }
  return OrderedBratteli(BratteliDiagram(std::move(names), std::move(edges)), std::move(ranks));
}

void write_list(std::ostream& os, const std::vector<std::string>& items) {
  os << '(';
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : "") << items[i];
  os << ')';
}

void write_graph_fields(std::ostream& os, const DiGraph& g) {
  os << "  vertices = ";
  write_list(os, g.names());
  os << ";\n  edges = ";
  std::vector<std::string> es;
  for (const auto& [u, v] : g.edges()) es.push_back("(" + g.name(u) + ", " + g.name(v) + ")");
  write_list(os, es);
}

void write_covering_levels(std::ostream& os, const Covering& c, const GmCovering* g) {
  os << "covering\nlevel 0:\n";
  write_graph_fields(os, c.graph(0));
  os << "\n";
  for (std::size_t n = 1; n <= c.depth(); ++n) {
    const auto& graph = c.graph(n);
    os << "level " << n << ":\n";
    write_graph_fields(os, graph);
    os << ";\n  map = ";
    std::vector<std::string> pairs;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      pairs.push_back("(" + graph.name(v) + " -> " + c.graph(n - 1).name(c.hom(n)(v)) + ")");
    }
    write_list(os, pairs);
    if (g) {
      const auto& l = g->level(n);
      os << ";\n  base = " << graph.name(l.base) << ";\n  circuits = ";
      std::vector<std::string> cs;
      for (const auto& circ : l.circuits) {
        std::vector<std::string> vs;
        for (auto v : circ.vertices) vs.push_back(graph.name(v));
        std::ostringstream one;
        write_list(one, vs);
        cs.push_back(one.str());
      }
      write_list(os, cs);
    }
    os << "\n";
  }
}

std::string label(std::size_t level, const std::vector<std::size_t>& candidates) {
  if (level == 0) return "v0";
  if (candidates.size() != 1) {
    std::string s = "{";
    for (std::size_t k = 0; k < candidates.size(); ++k) s += (k ? "/" : "") + std::to_string(candidates[k]);
    return s + "}";
  }
  return "c" + std::to_string(level) + "," + std::to_string(candidates.front());
}

void render(std::ostream& os, const std::vector<std::vector<std::string>>& labels,
            const std::vector<std::vector<std::uint8_t>>& cuts) {
  std::size_t cell = 1;
  for (const auto& row : labels) {
    for (const auto& l : row) cell = std::max(cell, l.size());
  }
  for (std::size_t n = 0; n < labels.size(); ++n) {
    std::string line = "n=" + std::to_string(n);
    line.resize(6, ' ');
    for (std::size_t i = 0; i < labels[n].size(); ++i) {
      const bool starts = i == 0 || cuts[n][i] || labels[n][i] != labels[n][i - 1];
      line += cuts[n][i] ? '|' : ' ';
      std::string text = starts ? labels[n][i] : "";
      text.resize(cell, ' ');
      line += text;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
}

std::string join_positions(const std::vector<std::int64_t>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
  return s;
}

}  // namespace

ParsedInput parse_input(std::string_view text) {
  Parser p(text);
  const auto kind = p.header();
  const auto levels = p.levels();
  if (kind == "gm-covering") return parse_gm(levels);
  if (kind == "covering") return parse_generic(levels);
  return parse_diagram(levels);
}

ParsedInput parse_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "IoError(cannot open " + path + ")");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

void write_covering(std::ostream& os, const Covering& c) { write_covering_levels(os, c, nullptr); }

void write_covering(std::ostream& os, const GmCovering& g) { write_covering_levels(os, g.covering(), &g); }

std::string join_word(const Word& w, char sep) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(w[i]);
  }
  return s;
}

void write_gm_words(std::ostream& os, const GmCovering& g) {
  os << "gm-covering\n";
  for (std::size_t n = 1; n <= g.depth(); ++n) {
    os << "level " << n << ": ";
    if (n == 1) {
      os << "lengths = (";
      for (std::size_t i = 1; i <= g.rank(1); ++i) os << (i > 1 ? ", " : "") << g.length(1, i);
      os << ")\n";
      continue;
    }
    os << "words = (";
    for (std::size_t i = 1; i <= g.rank(n); ++i) {
      os << (i > 1 ? ", " : "") << '(';
      const auto& w = g.word(n, i);
      for (std::size_t k = 0; k < w.size(); ++k) os << (k ? ", " : "") << w[k];
      os << ')';
    }
    os << ")\n";
  }
}

void write_bratteli(std::ostream& os, const OrderedBratteli& d) {
  const auto& dia = d.diagram();
  os << "bratteli\nlevel 0: vertices = ";
  write_list(os, dia.names()[0]);
  os << "\n";
  for (std::size_t n = 1; n <= dia.depth(); ++n) {
    os << "level " << n << ":\n  vertices = ";
    write_list(os, dia.names()[n]);
    os << ";\n  edges = ";
    std::vector<std::string> es;
    for (std::size_t e = 0; e < dia.edges(n).size(); ++e) {
      const auto& ed = dia.edge(n, e);
      es.push_back("(" + dia.name(n - 1, ed.source) + ", " + dia.name(n, ed.range) + ", " +
                   std::to_string(d.rank(n, e)) + ")");
    }
    write_list(os, es);
    os << "\n";
  }
}

void write_window_text(std::ostream& os, const LinkedArrayWindow& w) {
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<std::uint8_t>> cuts;
  for (std::size_t n = 0; n < w.rows.size(); ++n) {
    std::vector<std::string> row;
    std::vector<std::uint8_t> cut(w.width, 0);
    for (const auto& l : w.rows[n].labels) row.push_back(label(n, l));
    for (auto c : w.rows[n].cuts) cut[static_cast<std::size_t>(c - w.begin)] = 1;
    labels.push_back(std::move(row));
    cuts.push_back(std::move(cut));
  }
  os << "window begin=" << w.begin << " width=" << w.width << "\n";
  render(os, labels, cuts);
}

void write_window_text(std::ostream& os, const SymbolWindow& w) {
  std::vector<std::vector<std::string>> labels;
  for (std::size_t n = 0; n < w.symbols.size(); ++n) {
    std::vector<std::string> row;
    for (auto s : w.symbols[n]) row.push_back(label(n, {s}));
    labels.push_back(std::move(row));
  }
  render(os, labels, w.cuts);
}

void write_window_records(std::ostream& os, const LinkedArrayWindow& w) {
  for (std::size_t n = 0; n < w.rows.size(); ++n) {
    os << "row level=" << n << " begin=" << w.begin << " width=" << w.width << " symbols=";
    for (std::size_t i = 0; i < w.rows[n].labels.size(); ++i) {
      const auto& l = w.rows[n].labels[i];
      os << (i ? "," : "");
      if (l.size() == 1) {
        os << l.front();
      } else {
        os << '{';
        for (std::size_t k = 0; k < l.size(); ++k) os << (k ? "/" : "") << l[k];
        os << '}';
      }
    }
    os << " cuts=" << join_positions(w.rows[n].cuts) << "\n";
  }
}

void write_window_records(std::ostream& os, const SymbolWindow& w) {
  for (std::size_t n = 0; n < w.symbols.size(); ++n) {
    std::vector<std::int64_t> cuts;
    for (std::size_t i = 0; i < w.cuts[n].size(); ++i) {
      if (w.cuts[n][i]) cuts.push_back(static_cast<std::int64_t>(i));
    }
    os << "row level=" << n << " symbols=";
    for (std::size_t i = 0; i < w.symbols[n].size(); ++i) os << (i ? "," : "") << w.symbols[n][i];
    os << " cuts=" << join_positions(cuts) << "\n";
  }
}

void write_labelled_rows(std::ostream& os, const std::vector<std::vector<std::string>>& labels,
                         const std::vector<std::vector<std::uint8_t>>& cuts) {
  render(os, labels, cuts);
}

void write_nsymbol_text(std::ostream& os, const GmCovering& g, const NSymbol& s) {
  SymbolWindow w;
  for (std::size_t m = 0; m < s.rows.size(); ++m) {
    std::vector<std::uint32_t> sym;
    std::vector<std::uint8_t> cut;
    for (auto t : s.rows[m]) {
      for (std::size_t q = 0; q < g.length(m, t); ++q) {
        sym.push_back(static_cast<std::uint32_t>(t));
        cut.push_back(q == 0);
      }
    }
    w.symbols.push_back(std::move(sym));
    w.cuts.push_back(std::move(cut));
  }
  os << s.level << "-symbol c" << s.level << "," << s.index << " width=" << s.widths.back() << "\n";
  write_window_text(os, w);
}

}  // namespace gmbv
