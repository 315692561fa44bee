#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpsg/feature_structure.hpp"

namespace hpsg {

// An immutable word-form to sign multimap plus the type hierarchy its signs
// were built over. Loading validates entry invariants (PARA/INST sharing on
// verbs, argument-composition sharing on GOV-bearing verbs); a loaded
// lexicon is safe to share between concurrent parses.
class Lexicon {
public:
  // The shipped Dutch fragment.
  static auto builtin() -> Lexicon;

  // The exact text the built-in fragment is loaded from; lint and the
  // round-trip tests read it.
  static auto builtin_text() -> std::string_view;

  // Loads lexicon text:
  //
  //   type <name> < <parent>[, <parent>]* ;
  //   entry "<form>" = <AVM literal> ;
  //
  // `#` starts a comment unless immediately followed by an alphanumeric
  // (a tag). Type declarations apply file-wide regardless of position;
  // tags are scoped per entry. Text is NFC-normalized before reading.
  // Entries without a PHON arc get PHON <"form"> added.
  //
  // Throws SyntaxError (with position) on malformed input and LexiconError
  // (naming the entry) on a violated entry invariant.
  static auto load(std::string_view text, const TypeHierarchy& base = TypeHierarchy())
      -> Lexicon;

  [[nodiscard]] auto hierarchy() const -> const std::shared_ptr<const TypeHierarchy>& {
    return hier_;
  }

  // Fresh copies of the entries for `form` (NFC-normalized, exact match);
  // repeated lookups never alias, so callers can unify into the results.
  [[nodiscard]] auto lookup(std::string_view form) const -> std::vector<FeatureStructure>;

  // The stored entry signs themselves. Read-only peers of lookup(); the
  // parser uses them for lexical edges since schemas copy their inputs.
  [[nodiscard]] auto entries(std::string_view form) const -> std::span<const FeatureStructure>;

  // Canonical prints of entries(form), index-aligned. Computed once at load
  // so per-parse edge dedup never re-renders lexical signs.
  [[nodiscard]] auto signatures(std::string_view form) const -> std::span<const std::string>;

  [[nodiscard]] auto has(std::string_view form) const -> bool;
  [[nodiscard]] auto forms() const -> std::vector<std::string>;  // sorted, distinct
  [[nodiscard]] auto size() const -> std::size_t { return count_; }

private:
  std::shared_ptr<const TypeHierarchy> hier_;
  std::map<std::string, std::vector<FeatureStructure>, std::less<>> entries_;
  std::map<std::string, std::vector<std::string>, std::less<>> sigs_;
  std::size_t count_ = 0;
};

}  // namespace hpsg
