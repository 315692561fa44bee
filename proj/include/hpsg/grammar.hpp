#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpsg/avm.hpp"
#include "hpsg/feature_structure.hpp"

namespace hpsg {

// Word-order parameter: NL places a governing verb before the verb it
// governs, DE after it. Everything else is shared between the two modes.
enum class LpMode { NL, DE };

auto lp_mode_name(LpMode mode) -> std::string_view;
auto parse_lp_mode(std::string_view name) -> std::optional<LpMode>;  // "nl" / "de"

enum class RuleId { lexical, cluster_schema, clause_schema, np_schema, cp_schema };

auto rule_name(RuleId rule) -> std::string_view;

// One node of a parse tree. Every sign in the tree lives in one shared
// graph, so structure sharing across tree nodes is plain node identity.
struct Derivation {
  RuleId rule = RuleId::lexical;
  FeatureStructure sign;
  std::vector<Derivation> daughters;  // surface order

  [[nodiscard]] auto phon() const -> std::vector<std::string>;  // word forms, in order
};

// Indented tree rendering: one line per node with rule name and PHON.
auto print_derivation(const Derivation& d) -> std::string;

// Why a schema application was refused: either a precondition did not hold
// (reason only) or a unification clashed (reason plus failure path).
struct SchemaReject {
  std::string reason;
  std::optional<UnifyFailure> failure;

  [[nodiscard]] auto to_string() const -> std::string;
};

// A governor/governed pair identified by surface token positions.
struct GovernorPair {
  int governor = 0;
  int governed = 0;
};

// Linear precedence over a verb cluster: NL requires every governor before
// what it governs, DE after it. Vacuously true without pairs.
auto lp_admissible(std::span<const GovernorPair> pairs, LpMode mode) -> bool;

// The schema inventory. A Grammar is bound to one hierarchy and caches the
// type and label lookups; it holds no mutable state, so one instance can
// serve concurrent parses.
//
// Construction requires the grammar types (sign, v, n, comp, det, fin, base,
// lex_plus, lex_minus, case and its subtypes, event, nominal_det) to be
// present in the hierarchy; the built-in lexicon declares all of them.
class Grammar {
public:
  explicit Grammar(std::shared_ptr<const TypeHierarchy> hier);

  // Tree-level application: imports the daughter trees into one fresh graph,
  // applies the schema, and returns the mother tree with every daughter sign
  // rebased into the result graph (daughters in surface order).

  // Binary cluster: `head` governs `governed`. Preconditions: head is
  // LEX+ verbal with a singleton GOV; governed is LEX+ verbal with GOV
  // already discharged. The governed sign unifies into head's GOV element,
  // which is what instantiates the composed COMPS. Mother: HEAD, SUBJ,
  // COMPS, CONTENT shared with head; GOV empty; LEX+; PHON head-first in
  // NL, head-last in DE.
  auto cluster(const Derivation& head, const Derivation& governed, LpMode mode,
               SchemaReject* why = nullptr) const -> std::optional<Derivation>;

  // Flat clause: subject, complements in COMPS order, verbal head last.
  // Preconditions: head is LEX+ finite verbal with empty GOV, a singleton
  // SUBJ and a closed COMPS list of exactly comps.size() elements. Each
  // argument sign unifies with its valence slot; the mother's valence lists
  // are empty and LEX is lex_minus.
  auto clause(const Derivation& subj, std::span<const Derivation> comps, const Derivation& head,
              SchemaReject* why = nullptr) const -> std::optional<Derivation>;

  // Determiner plus noun. Mother shares the noun's HEAD and CONTENT.
  auto noun_phrase(const Derivation& det, const Derivation& noun,
                   SchemaReject* why = nullptr) const -> std::optional<Derivation>;

  // Complementizer plus saturated finite clause. Mother shares the
  // complementizer's HEAD and the clause's CONTENT.
  auto comp_phrase(const Derivation& comp, const Derivation& clause,
                   SchemaReject* why = nullptr) const -> std::optional<Derivation>;

  // Sign-level forms of the same schemas; return just the mother sign.
  auto apply_cluster_schema(const FeatureStructure& head, const FeatureStructure& governed,
                            LpMode mode, SchemaReject* why = nullptr) const
      -> std::optional<FeatureStructure>;
  auto apply_clause_schema(const FeatureStructure& subj, std::span<const FeatureStructure> comps,
                           const FeatureStructure& head, SchemaReject* why = nullptr) const
      -> std::optional<FeatureStructure>;
  auto apply_np_schema(const FeatureStructure& det, const FeatureStructure& noun,
                       SchemaReject* why = nullptr) const -> std::optional<FeatureStructure>;
  auto apply_cp_schema(const FeatureStructure& comp, const FeatureStructure& clause,
                       SchemaReject* why = nullptr) const -> std::optional<FeatureStructure>;

  // Candidate filters used by the parser's indexing; the stated schema
  // preconditions, minus anything unification itself checks.
  [[nodiscard]] auto is_cluster_head(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_governable(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_clause_head(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_nominal(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_determiner(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_noun(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_complementizer(NodeRef sign) const -> bool;
  [[nodiscard]] auto is_saturated_finite_clause(NodeRef sign) const -> bool;

  // Closed-COMPS length; nullopt when COMPS is absent or still open.
  [[nodiscard]] auto comps_arity(NodeRef sign) const -> std::optional<std::size_t>;

  [[nodiscard]] auto hierarchy() const -> const std::shared_ptr<const TypeHierarchy>& {
    return hier_;
  }

  struct Labels {
    Symbol phon, head, subj, comps, gov, content, lex;
    Symbol major, vform, case_, det, para, restr, reln, inst, arg1, arg2;
    Symbol first, rest;
  };
  [[nodiscard]] auto labels() const -> const Labels& { return labels_; }

  struct Types {
    TypeId sign, v, n, comp, det, fin, base;
    TypeId lex_plus, lex_minus, case_, nom, acc, event, nominal_det;
  };
  [[nodiscard]] auto types() const -> const Types& { return types_; }

private:
  struct TreeRoots;

  auto finish(GraphBuilder& gb, NodeIdx mother, RuleId rule,
              std::span<const TreeRoots> daughters, SchemaReject* why) const
      -> std::optional<Derivation>;

  std::shared_ptr<const TypeHierarchy> hier_;
  Labels labels_;
  Types types_;
};

}  // namespace hpsg
