// hpsg: chart parser and lexicon tools for a Dutch/German verb-cluster
// grammar fragment. Exit codes: 0 success, 1 no parse / validation failure,
// 2 usage, I/O, lexicon, or unknown-word errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hpsg/avm.hpp"
#include "hpsg/grammar.hpp"
#include "hpsg/lexicon.hpp"
#include "hpsg/parser.hpp"
#include "hpsg/text.hpp"
#include "hpsg/ulf.hpp"

namespace {

struct ShowFlags {
  bool tree = false;
  bool avm = false;
  bool ulf = false;
};

auto parse_show(const std::string& selection) -> std::optional<ShowFlags> {
  ShowFlags flags;
  std::stringstream ss(selection);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    if (part == "tree") {
      flags.tree = true;
    } else if (part == "avm") {
      flags.avm = true;
    } else if (part == "ulf") {
      flags.ulf = true;
    } else {
      return std::nullopt;
    }
    any = true;
  }
  if (!any) return std::nullopt;
  return flags;
}

auto read_file(const std::string& path, std::string& out) -> bool {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return in.good() || in.eof();
}

auto load_lexicon(const std::string& path) -> hpsg::Lexicon {
  if (path.empty()) return hpsg::Lexicon::builtin();
  std::string text;
  if (!read_file(path, text)) throw hpsg::Error("cannot read lexicon file " + path);
  return hpsg::Lexicon::load(text);
}

void print_rejects(const std::vector<hpsg::RejectDiag>& diags) {
  for (const hpsg::RejectDiag& d : diags) {
    std::cerr << "explain: " << hpsg::rule_name(d.rule) << " over tokens [" << d.start << ", "
              << d.end << "): " << d.why.to_string() << '\n';
  }
}

auto run_parse(const std::string& lang, const ShowFlags& show, const std::string& lexicon_path,
               const std::string& sentence, const std::string& file, bool explain, bool ascii)
    -> int {
  hpsg::LpMode mode = *hpsg::parse_lp_mode(lang);

  std::vector<std::string> sentences;
  if (!file.empty()) {
    std::string text;
    if (!read_file(file, text)) {
      std::cerr << "error: cannot read input file " << file << '\n';
      return 2;
    }
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (!hpsg::tokenize(line).empty()) sentences.push_back(line);
    }
  } else {
    sentences.push_back(sentence);
  }
  if (sentences.empty()) {
    std::cerr << "error: no sentences to parse\n";
    return 2;
  }

  hpsg::Lexicon lexicon = load_lexicon(lexicon_path);

  int status = 0;
  bool first_block = true;
  for (const std::string& s : sentences) {
    std::vector<std::string> tokens = hpsg::tokenize(s);
    if (tokens.empty()) {
      std::cerr << "error: empty sentence\n";
      return 2;
    }
    std::vector<hpsg::RejectDiag> diags;
    std::vector<hpsg::Derivation> parses =
        hpsg::parse(lexicon, tokens, mode, explain ? &diags : nullptr);

    if (!first_block) std::cout << '\n';
    first_block = false;

    if (parses.empty()) {
      std::cout << "(no derivation)\n";
      if (explain) print_rejects(diags);
      status = std::max(status, 1);
      continue;
    }
    bool first_parse = true;
    for (const hpsg::Derivation& d : parses) {
      if (!first_parse) std::cout << '\n';
      first_parse = false;
      if (show.tree) std::cout << hpsg::print_derivation(d);
      if (show.avm) std::cout << hpsg::print_avm(d.sign) << '\n';
      if (show.ulf) std::cout << hpsg::print_ulf(hpsg::extract_ulf(d.sign), ascii) << '\n';
    }
  }
  return status;
}

auto run_lint(const std::string& path) -> int {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << '\n';
    return 2;
  }
  hpsg::Lexicon lexicon;
  try {
    lexicon = hpsg::Lexicon::load(text);
  } catch (const hpsg::SyntaxError& e) {
    std::cerr << path << ":" << e.what() << '\n';
    return 1;
  } catch (const hpsg::LexiconError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return 1;
  }
  for (const std::string& form : lexicon.forms()) {
    std::size_t n = lexicon.entries(form).size();
    for (std::size_t i = 0; i < n; ++i) {
      std::cout << "ok: \"" << form << "\"";
      if (n > 1) std::cout << " (" << i + 1 << '/' << n << ')';
      std::cout << '\n';
    }
  }
  std::cout << lexicon.size() << " entries, " << lexicon.forms().size() << " forms\n";
  if (lexicon.size() == 0) std::cerr << "warning: lexicon is empty\n";
  return 0;
}

auto run_enumerate(int depth) -> int {
  if (depth < 1 || depth > 4) {
    std::cerr << "error: depth must be between 1 and 4\n";
    return 2;
  }
  // Governor chain grown from the built-in fragment's composition verbs.
  static const std::vector<std::vector<std::string>> kChains = {
      {"zag"},
      {"zag", "voeren"},
      {"zag", "helpen", "voeren"},
      {"zag", "helpen", "laten", "voeren"},
  };
  const std::vector<std::string>& chain = kChains[static_cast<std::size_t>(depth) - 1];
  std::size_t n = chain.size();

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<std::string>> nl;
  std::set<std::vector<std::string>> de;
  do {
    std::vector<int> pos(n);
    for (std::size_t slot = 0; slot < n; ++slot) pos[perm[slot]] = static_cast<int>(slot);
    std::vector<hpsg::GovernorPair> pairs;
    for (std::size_t c = 0; c + 1 < n; ++c) pairs.push_back({pos[c], pos[c + 1]});
    std::vector<std::string> order(n);
    for (std::size_t slot = 0; slot < n; ++slot) order[slot] = chain[perm[slot]];
    if (hpsg::lp_admissible(pairs, hpsg::LpMode::NL)) nl.insert(order);
    if (hpsg::lp_admissible(pairs, hpsg::LpMode::DE)) de.insert(std::move(order));
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto emit = [](const char* tag, const std::set<std::vector<std::string>>& orders) {
    std::cout << tag << ':';
    bool first_order = true;
    for (const std::vector<std::string>& order : orders) {
      if (!first_order) std::cout << " |";
      first_order = false;
      for (const std::string& w : order) std::cout << ' ' << w;
    }
    std::cout << '\n';
  };
  emit("NL", nl);
  emit("DE", de);
  return 0;
}

}  // namespace

auto main(int argc, char** argv) -> int {
  CLI::App app{"Unification chart parser for Dutch and German verb clusters"};
  app.require_subcommand(1);

  std::string lang = "nl";
  std::string show_selection = "tree,ulf";
  std::string lexicon_path;
  std::string sentence;
  std::string file;
  bool explain = false;
  bool ascii = false;

  CLI::App* p = app.add_subcommand("parse", "Parse a sentence and print its derivations");
  p->add_option("--lang", lang, "Word-order mode: nl or de")
      ->check(CLI::IsMember({"nl", "de"}));
  p->add_option("--show", show_selection, "Comma-separated output blocks: tree,avm,ulf");
  p->add_option("--lexicon", lexicon_path, "Lexicon file (default: built-in fragment)");
  p->add_flag("--explain", explain, "Report rejected unifications on stderr");
  p->add_flag("--ascii", ascii, "ASCII logical-form connective");
  p->add_option("sentence", sentence, "Sentence to parse");
  p->add_option("--file", file, "Read sentences from a file, one per line");

  std::string lint_path;
  CLI::App* l = app.add_subcommand("lint", "Load and validate a lexicon file");
  l->add_option("lexicon", lint_path, "Lexicon file to check")->required();

  int depth = 0;
  CLI::App* e = app.add_subcommand("enumerate", "Print admissible verb orders for a chain");
  e->add_option("depth", depth, "Chain depth (1-4)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (p->parsed()) {
      auto show = parse_show(show_selection);
      if (!show) {
        std::cerr << "error: --show accepts a nonempty subset of tree,avm,ulf\n";
        return 2;
      }
      if (sentence.empty() == file.empty()) {
        std::cerr << "error: provide exactly one of a sentence argument or --file\n";
        return 2;
      }
      return run_parse(lang, *show, lexicon_path, sentence, file, explain, ascii);
    }
    if (l->parsed()) return run_lint(lint_path);
    if (e->parsed()) return run_enumerate(depth);
  } catch (const hpsg::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 2;
}
