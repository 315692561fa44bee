#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hpsg/grammar.hpp"
#include "hpsg/lexicon.hpp"

namespace hpsg {

// A schema application the chart attempted and rejected; collected for
// diagnostics when the caller asks for them. Spans are token indices of the
// would-be mother.
struct RejectDiag {
  RuleId rule = RuleId::lexical;
  std::size_t start = 0;
  std::size_t end = 0;
  SchemaReject why;
};

// Agenda-driven bottom-up chart parse of the token sequence. Returns every
// derivation spanning the whole input whose root is a saturated finite
// clause or a complementizer phrase over one, sorted by tree rendering
// (hence deterministic). Duplicate signs per span are suppressed by their
// canonical print.
//
// Cluster formation combines adjacent spans with the governor on the NL/DE
// side of the mode; clause formation matches the flat schema against the
// fixed field order subject, complements, head.
//
// Throws UnknownWordError for a token without lexicon entries and Error for
// an empty token list. When `diags` is given, rejected schema applications
// that failed in unification (not mere precondition misses) are recorded.
auto parse(const Lexicon& lex, std::span<const std::string> tokens, LpMode mode,
           std::vector<RejectDiag>* diags = nullptr) -> std::vector<Derivation>;

// Same, with a caller-owned Grammar (must be built over the lexicon's
// hierarchy). Saves the per-call setup when parsing many sequences.
auto parse(const Grammar& grammar, const Lexicon& lex, std::span<const std::string> tokens,
           LpMode mode, std::vector<RejectDiag>* diags = nullptr) -> std::vector<Derivation>;

// Brute-force linear-precedence oracle: permutes the verb-cluster tokens of
// a parsed skeleton (the NP field stays fixed), keeps the orders admitted by
// lp_admissible for the skeleton's governor pairs, and returns the full
// token sequences, sorted and distinct.
auto enumerate_orders(const Derivation& clause_skeleton, LpMode mode)
    -> std::vector<std::vector<std::string>>;

}  // namespace hpsg
