#include "hpsg/parser.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "hpsg/avm.hpp"

namespace hpsg {

namespace {

struct Edge {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string sig;  // canonical sign print; computed lazily for derived edges
  Derivation deriv;
};

// Chart state for one parse. Edges live in a deque so references stay valid
// while new edges are appended mid-combination.
struct Chart {
  const Grammar& grammar;
  LpMode mode;
  std::vector<RejectDiag>* diags;

  std::deque<Edge> edges;  // charts stay small; adjacency is scanned, not indexed
  std::unordered_set<std::string> tried_clauses;  // daughter tilings attempted

  Chart(const Grammar& g, LpMode m, std::vector<RejectDiag>* d) : grammar(g), mode(m), diags(d) {}

  // Duplicate suppression compares canonical prints, but only edges sharing a
  // span can collide, so the print is rendered on first such collision. An
  // empty `sig` means "not rendered yet"; lexical edges arrive pre-keyed and
  // never meet a derived edge on their one-token span.
  void add(std::size_t start, std::size_t end, Derivation&& d, std::string sig) {
    for (Edge& e : edges) {
      if (e.start != start || e.end != end) continue;
      if (e.sig.empty()) e.sig = print_avm(e.deriv.sign);
      if (sig.empty()) sig = print_avm(d.sign);
      if (e.sig == sig) return;
    }
    edges.push_back(Edge{start, end, std::move(sig), std::move(d)});
  }

  // Only unification clashes are worth reporting; precondition misses are
  // routine for arbitrary adjacent spans.
  void note(RuleId rule, std::size_t start, std::size_t end, SchemaReject&& why) {
    if (diags != nullptr && why.failure.has_value()) {
      diags->push_back(RejectDiag{rule, start, end, std::move(why)});
    }
  }

  void combine(std::size_t a, std::size_t b) {
    try_cluster(a, b);
    try_np(a, b);
    try_cp(a, b);
  }

  void try_cluster(std::size_t a, std::size_t b) {
    const Edge& left = edges[a];
    const Edge& right = edges[b];
    const Edge& head = mode == LpMode::NL ? left : right;
    const Edge& governed = mode == LpMode::NL ? right : left;
    if (!grammar.is_cluster_head(head.deriv.sign.root())) return;
    if (!grammar.is_governable(governed.deriv.sign.root())) return;
    SchemaReject why;
    auto d = grammar.cluster(head.deriv, governed.deriv, mode, &why);
    if (!d) {
      note(RuleId::cluster_schema, left.start, right.end, std::move(why));
      return;
    }
    add(left.start, right.end, std::move(*d), {});
  }

  void try_np(std::size_t a, std::size_t b) {
    const Edge& left = edges[a];
    const Edge& right = edges[b];
    if (!grammar.is_determiner(left.deriv.sign.root())) return;
    if (!grammar.is_noun(right.deriv.sign.root())) return;
    SchemaReject why;
    auto d = grammar.noun_phrase(left.deriv, right.deriv, &why);
    if (!d) {
      note(RuleId::np_schema, left.start, right.end, std::move(why));
      return;
    }
    add(left.start, right.end, std::move(*d), {});
  }

  void try_cp(std::size_t a, std::size_t b) {
    const Edge& left = edges[a];
    const Edge& right = edges[b];
    if (!grammar.is_complementizer(left.deriv.sign.root())) return;
    if (!grammar.is_saturated_finite_clause(right.deriv.sign.root())) return;
    SchemaReject why;
    auto d = grammar.comp_phrase(left.deriv, right.deriv, &why);
    if (!d) {
      note(RuleId::cp_schema, left.start, right.end, std::move(why));
      return;
    }
    add(left.start, right.end, std::move(*d), {});
  }

  // The flat clause schema takes subject, complements, and head in that
  // surface order. For a candidate head edge, tile the span to its left with
  // exactly arity+1 adjacent edges and try each tiling once.
  void clause_with_head(std::size_t hidx) {
    const Edge& head = edges[hidx];
    if (!grammar.is_clause_head(head.deriv.sign.root())) return;
    auto arity = grammar.comps_arity(head.deriv.sign.root());
    if (!arity) return;
    std::size_t need = *arity + 1;
    if (head.start < need) return;  // every daughter spans at least one token
    std::vector<std::size_t> picks(need);
    tile(hidx, head.start, need, picks);
  }

  void tile(std::size_t hidx, std::size_t pos, std::size_t left, std::vector<std::size_t>& picks) {
    if (left == 0) {
      try_clause(hidx, picks);
      return;
    }
    std::size_t snapshot = edges.size();
    for (std::size_t e = 0; e < snapshot; ++e) {
      if (edges[e].end != pos) continue;
      picks[left - 1] = e;
      tile(hidx, edges[e].start, left - 1, picks);
    }
  }

  void try_clause(std::size_t hidx, const std::vector<std::size_t>& picks) {
    std::string key = std::to_string(hidx);
    for (std::size_t p : picks) {
      key += ',';
      key += std::to_string(p);
    }
    if (!tried_clauses.insert(std::move(key)).second) return;
    const Edge& head = edges[hidx];
    const Edge& subj = edges[picks[0]];
    std::vector<Derivation> comps;
    comps.reserve(picks.size() - 1);
    for (std::size_t i = 1; i < picks.size(); ++i) comps.push_back(edges[picks[i]].deriv);
    SchemaReject why;
    auto d = grammar.clause(subj.deriv, comps, head.deriv, &why);
    if (!d) {
      note(RuleId::clause_schema, subj.start, head.end, std::move(why));
      return;
    }
    add(subj.start, head.end, std::move(*d), {});
  }
};

// Head daughter by token identity of the HEAD value; the daughters of every
// schema share one graph with the mother, so this needs no stored index.
auto head_index(const Derivation& d) -> std::size_t {
  if (auto mh = d.sign.root().get("HEAD")) {
    for (std::size_t i = 0; i < d.daughters.size(); ++i) {
      auto dh = d.daughters[i].sign.root().get("HEAD");
      if (dh && same_node(*mh, *dh)) return i;
    }
  }
  return d.daughters.size() - 1;
}

void leaf_positions(const Derivation& d, std::size_t at,
                    std::vector<std::pair<const Derivation*, std::size_t>>& out) {
  if (d.daughters.empty()) {
    out.emplace_back(&d, at);
    return;
  }
  for (const Derivation& dd : d.daughters) {
    leaf_positions(dd, at, out);
    at += dd.phon().size();
  }
}

// Anchor of a subtree: the lexical leaf reached by following head daughters.
auto anchor(const Derivation& d) -> const Derivation* {
  const Derivation* cur = &d;
  while (!cur->daughters.empty()) cur = &cur->daughters[head_index(*cur)];
  return cur;
}

void collect_pairs(const Derivation& d,
                   std::vector<std::pair<const Derivation*, const Derivation*>>& out) {
  if (d.rule == RuleId::cluster_schema && d.daughters.size() == 2) {
    std::size_t h = head_index(d);
    out.emplace_back(anchor(d.daughters[h]), anchor(d.daughters[1 - h]));
  }
  for (const Derivation& dd : d.daughters) collect_pairs(dd, out);
}

auto find_clause(const Derivation& root) -> const Derivation* {
  if (root.rule == RuleId::clause_schema) return &root;
  if (root.rule == RuleId::cp_schema) {
    for (const Derivation& d : root.daughters) {
      if (d.rule == RuleId::clause_schema) return &d;
    }
  }
  return nullptr;
}

}  // namespace

auto parse(const Lexicon& lex, std::span<const std::string> tokens, LpMode mode,
           std::vector<RejectDiag>* diags) -> std::vector<Derivation> {
  Grammar grammar(lex.hierarchy());
  return parse(grammar, lex, tokens, mode, diags);
}

auto parse(const Grammar& grammar, const Lexicon& lex, std::span<const std::string> tokens,
           LpMode mode, std::vector<RejectDiag>* diags) -> std::vector<Derivation> {
  if (tokens.empty()) throw Error("cannot parse an empty token list");

  Chart chart(grammar, mode, diags);

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto signs = lex.entries(tokens[i]);
    if (signs.empty()) throw UnknownWordError(tokens[i], i + 1);
    auto sigs = lex.signatures(tokens[i]);
    for (std::size_t j = 0; j < signs.size(); ++j) {
      // Identical duplicate entries would form one edge anyway; skip the
      // canonical-print comparison for the common singleton case.
      bool dup = false;
      for (std::size_t k = 0; k < j && !dup; ++k) dup = sigs[k] == sigs[j];
      if (dup) continue;
      std::string sig = "L#";
      sig += tokens[i];
      sig += '#';
      sig += std::to_string(j);
      chart.add(i, i + 1, Derivation{RuleId::lexical, signs[j], {}}, sig);
    }
  }

  // Semi-naive fixpoint: a pair is attempted in the round after both edges
  // exist, and only pairs touching an edge new since the previous round are
  // scanned, so every ordered adjacency is tried exactly once. Every mother
  // strictly widens its daughters' spans, so the edge set is finite and the
  // rounds terminate.
  std::size_t frontier = 0;
  while (frontier < chart.edges.size()) {
    std::size_t limit = chart.edges.size();
    for (std::size_t a = 0; a < limit; ++a) {
      for (std::size_t b = a < frontier ? frontier : 0; b < limit; ++b) {
        if (a != b && chart.edges[a].end == chart.edges[b].start) chart.combine(a, b);
      }
    }
    for (std::size_t h = 0; h < limit; ++h) chart.clause_with_head(h);
    frontier = limit;
  }

  std::vector<std::pair<std::string, std::size_t>> keyed;
  for (std::size_t i = 0; i < chart.edges.size(); ++i) {
    const Edge& e = chart.edges[i];
    if (e.start != 0 || e.end != tokens.size()) continue;
    bool complete = e.deriv.rule == RuleId::cp_schema ||
                    (e.deriv.rule == RuleId::clause_schema &&
                     grammar.is_saturated_finite_clause(e.deriv.sign.root()));
    if (!complete) continue;
    keyed.emplace_back(print_derivation(e.deriv) + '\n' + print_avm(e.deriv.sign), i);
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<Derivation> out;
  out.reserve(keyed.size());
  for (const auto& [key, i] : keyed) out.push_back(std::move(chart.edges[i].deriv));
  return out;
}

auto enumerate_orders(const Derivation& clause_skeleton, LpMode mode)
    -> std::vector<std::vector<std::string>> {
  const Derivation* clause = find_clause(clause_skeleton);
  if (clause == nullptr || clause->daughters.empty()) {
    throw Error("order enumeration expects a parsed clause or a complementizer phrase over one");
  }
  const Derivation& complex_head = clause->daughters[head_index(*clause)];

  std::vector<std::pair<const Derivation*, std::size_t>> leaves;
  leaf_positions(clause_skeleton, 0, leaves);

  std::vector<std::pair<const Derivation*, std::size_t>> complex_leaves;
  leaf_positions(complex_head, 0, complex_leaves);
  std::unordered_set<const Derivation*> in_complex;
  for (const auto& [leaf, pos] : complex_leaves) in_complex.insert(leaf);

  // Verb tokens of the complex and their global slots, in surface order.
  std::vector<const Derivation*> verbs;
  std::vector<std::size_t> slots;
  for (const auto& [leaf, pos] : leaves) {
    if (in_complex.count(leaf) != 0) {
      verbs.push_back(leaf);
      slots.push_back(pos);
    }
  }

  std::vector<std::pair<const Derivation*, const Derivation*>> pairs;
  collect_pairs(*clause, pairs);

  std::vector<std::string> base = clause_skeleton.phon();
  std::vector<std::size_t> perm(verbs.size());
  std::iota(perm.begin(), perm.end(), 0);

  std::set<std::vector<std::string>> found;
  do {
    std::unordered_map<const Derivation*, std::size_t> placed;
    for (std::size_t i = 0; i < perm.size(); ++i) placed[verbs[perm[i]]] = slots[i];
    std::vector<GovernorPair> gp;
    gp.reserve(pairs.size());
    for (const auto& [gov, governed] : pairs) {
      gp.push_back(GovernorPair{static_cast<int>(placed.at(gov)),
                                static_cast<int>(placed.at(governed))});
    }
    if (!lp_admissible(gp, mode)) continue;
    std::vector<std::string> order = base;
    for (std::size_t i = 0; i < perm.size(); ++i) order[slots[i]] = verbs[perm[i]]->phon().front();
    found.insert(std::move(order));
  } while (std::next_permutation(perm.begin(), perm.end()));

  return {found.begin(), found.end()};
}

}  // namespace hpsg
