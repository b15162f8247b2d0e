#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gmbv/arrays.hpp"
#include "gmbv/bratteli.hpp"
#include "gmbv/covering.hpp"
#include "gmbv/gm.hpp"

namespace gmbv {

/// Result of reading an input file: a plain covering, a covering with GM data
/// (word dialect, or generic dialect declaring base and circuits on every
/// level), or an ordered Bratteli diagram.
using ParsedInput = std::variant<Covering, GmCovering, OrderedBratteli>;

/// Throws Error(ParseError) with "line:col: expected ..." or forwards
/// validation errors prefixed with the level.
ParsedInput parse_input(std::string_view text);
ParsedInput parse_input_file(const std::string& path);

/// Generic dialect; re-parses to an equal covering (and GM data, if given).
void write_covering(std::ostream& os, const Covering& c);
void write_covering(std::ostream& os, const GmCovering& g);
/// Word dialect: level-1 lengths and per-level words.
void write_gm_words(std::ostream& os, const GmCovering& g);
void write_bratteli(std::ostream& os, const OrderedBratteli& d);

/// Text rendering of window rows with cuts drawn as column separators.
void write_window_text(std::ostream& os, const LinkedArrayWindow& w);
void write_window_text(std::ostream& os, const SymbolWindow& w);
void write_window_records(std::ostream& os, const LinkedArrayWindow& w);
void write_window_records(std::ostream& os, const SymbolWindow& w);
/// Rows of cell labels; cuts[n][i] marks a cut just before cell i. A label is
/// printed where its block starts.
void write_labelled_rows(std::ostream& os, const std::vector<std::vector<std::string>>& labels,
                         const std::vector<std::vector<std::uint8_t>>& cuts);
void write_nsymbol_text(std::ostream& os, const GmCovering& g, const NSymbol& s);

std::string join_word(const Word& w, char sep = ',');

}  // namespace gmbv
