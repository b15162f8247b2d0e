#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gmbv/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gmbv: graph coverings, GM structure and ordered Bratteli diagrams"};
  app.require_subcommand(1);

  gmbv::RunConfig cfg;
  std::string format = "text";
  std::string reverse;
  const std::map<std::string, gmbv::OutputFormat> formats{
      {"text", gmbv::OutputFormat::Text},
      {"structured", gmbv::OutputFormat::Structured},
      {"dot", gmbv::OutputFormat::Dot}};

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Parse and validate an input file"},
      {"classify", "Classify every phi_n, or the composite phi_{m,n}"},
      {"telescope", "Telescope along --levels"},
      {"minimality", "Least level whose circuits all project onto V(G_n)"},
      {"gm-check", "Simplicity and isolated-point checks"},
      {"rank", "Rank estimate over a tail window"},
      {"normalize", "Telescope to a normalized GM-covering"},
      {"build-bv", "Synthesize the ordered Bratteli diagram"},
      {"bv-check", "Check that a diagram is properly ordered"},
      {"vershik", "Dump BV array rows along a Vershik orbit"},
      {"arrays", "Array and linked array window of a walk"},
      {"verify", "Compare window languages of both systems"},
      {"export-dot", "Write graphs or a diagram in DOT"}};

  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-i,--input", cfg.input, "Input file or bundled example name")->required();
    sub->add_option("--depth", cfg.depth, "Top level N");
    sub->add_option("--width", cfg.width, "Window width W");
    sub->add_option("--horizon", cfg.horizon, "Search horizon");
    sub->add_option("--tail", cfg.tail, "Tail window for rank estimates");
    sub->add_option("--n", cfg.n, "Lower level n");
    sub->add_option("--m", cfg.m, "Upper level m");
    sub->add_option("--steps", cfg.steps, "Orbit length");
    sub->add_option("--level", cfg.level, "Level");
    sub->add_option("--levels,--schedule", cfg.levels, "Level indices, comma separated")->delimiter(',');
    sub->add_option("--bound", cfg.bound, "Normalization search bound");
    sub->add_option("--max-items", cfg.budget.max_items, "Enumeration item budget");
    sub->add_option("--max-steps", cfg.budget.max_steps, "Enumeration step budget");
    sub->add_option("--format", format, "text | structured | dot")->check(CLI::IsMember({"text", "structured", "dot"}));
    sub->add_option("--begin", cfg.begin, "Position of the first column");
    sub->add_option("--walk", cfg.walk, "Walk in G_N as vertex names, comma separated")->delimiter(',');
    sub->add_option("--reverse-fiber", reverse, "Reverse the in-fiber of vertex i at level n (n:i)");
    sub->add_flag("--wrap", cfg.wrap, "Wrap the maximal path to the minimal one");
    sub->add_flag("--plain", cfg.plain, "Eventual instead of strengthened simplicity");
    sub->add_flag("--slide", cfg.slide, "Apply the level slide");
    sub->add_flag("--all", cfg.all, "Enumerate every walk of the given width");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  cfg.format = formats.at(format);
  if (!reverse.empty()) {
    const auto colon = reverse.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument(reverse);
      cfg.reverse_fiber = {std::stoul(reverse.substr(0, colon)), std::stoul(reverse.substr(colon + 1))};
    } catch (const std::exception&) {
      std::cerr << "error code=ParseError message=--reverse-fiber expects n:i\n";
      return 3;
    }
  }
  return gmbv::run(cfg, std::cout, std::cerr);
}
