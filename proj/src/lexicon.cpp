#include "hpsg/lexicon.hpp"

#include <unordered_map>
#include <utility>

#include "avm_internal.hpp"
#include "hpsg/avm.hpp"
#include "hpsg/text.hpp"

namespace hpsg {

namespace {

void check_composition_sharing(const std::string& form, NodeRef root) {
  auto gov = root.get("GOV");
  if (!gov) return;
  auto gov_elem = gov->get("FIRST");
  if (!gov_elem) return;  // GOV empty: nothing to check

  std::optional<NodeRef> c_first;
  std::optional<NodeRef> c_rest;
  if (auto comps = root.get("COMPS")) {
    c_first = comps->get("FIRST");
    c_rest = comps->get("REST");
  }
  std::optional<NodeRef> g_subj_first;
  if (auto g_subj = gov_elem->get("SUBJ")) g_subj_first = g_subj->get("FIRST");
  auto g_comps = gov_elem->get("COMPS");

  if (!c_first || !g_subj_first || !same_node(*c_first, *g_subj_first)) {
    throw LexiconError("the COMPS head must be the GOV element's SUBJ element (one shared node)",
                       form);
  }
  if (!c_rest || !g_comps || !same_node(*c_rest, *g_comps)) {
    throw LexiconError("the COMPS tail must be the GOV element's COMPS list (one shared node)",
                       form);
  }
}

void validate_entry(const std::string& form, const FeatureStructure& fs) {
  const TypeHierarchy& h = fs.hierarchy();
  NodeRef root = fs.root();

  TypeId v = h.by_name("v");
  auto major = fs.at({"HEAD", "MAJOR"});
  bool verbal = v.valid() && major && h.subtype_of(major->type(), v);
  if (!verbal) return;

  if (auto content = root.get("CONTENT")) {
    auto para = content->get("PARA");
    auto inst = fs.at({"CONTENT", "RESTR", "INST"});
    if (!para || !inst || !same_node(*para, *inst)) {
      throw LexiconError("CONTENT.PARA must be CONTENT.RESTR.INST (one shared node)", form);
    }
  }
  check_composition_sharing(form, root);
}

}  // namespace

auto Lexicon::load(std::string_view raw, const TypeHierarchy& base) -> Lexicon {
  const std::string text = nfc_normalize(raw);

  // First pass: fold every `type` declaration into the hierarchy so entries
  // can reference types regardless of where they are declared.
  TypeHierarchy hier = base;
  {
    detail::Scanner sc(text);
    while (sc.peek().kind != detail::Tok::End) {
      detail::Token kw = sc.expect(detail::Tok::Ident, "'type' or 'entry'");
      if (kw.text == "type") {
        detail::Token name = sc.expect(detail::Tok::Ident, "type name");
        sc.expect(detail::Tok::LAngle, "'<'");
        std::vector<std::string> parents;
        parents.push_back(sc.expect(detail::Tok::Ident, "parent type name").text);
        while (sc.peek().kind == detail::Tok::Comma) {
          sc.next();
          parents.push_back(sc.expect(detail::Tok::Ident, "parent type name").text);
        }
        sc.expect(detail::Tok::Semi, "';'");
        try {
          hier = hier.declare(name.text, parents);
        } catch (const HierarchyError& e) {
          throw SyntaxError(e.what(), name.line, name.col);
        }
      } else if (kw.text == "entry") {
        while (sc.peek().kind != detail::Tok::Semi && sc.peek().kind != detail::Tok::End) {
          sc.next();
        }
        sc.expect(detail::Tok::Semi, "';' closing the entry");
      } else {
        throw SyntaxError("expected 'type' or 'entry', got \"" + kw.text + "\"", kw.line, kw.col);
      }
    }
  }

  Lexicon lex;
  lex.hier_ = std::make_shared<const TypeHierarchy>(std::move(hier));

  // Second pass: build the entry signs over the finished hierarchy.
  const Symbol phon = Symbol::intern("PHON");
  detail::Scanner sc(text);
  while (sc.peek().kind != detail::Tok::End) {
    detail::Token kw = sc.next();
    if (kw.text == "type") {
      while (sc.peek().kind != detail::Tok::Semi) sc.next();
      sc.next();
      continue;
    }
    detail::Token form = sc.expect(detail::Tok::String, "quoted word form");
    sc.expect(detail::Tok::Equals, "'='");

    GraphBuilder gb(lex.hier_);
    std::unordered_map<std::string, NodeIdx> tags;
    detail::AvmParser parser(gb, sc, tags);
    NodeIdx root = parser.parse_value();
    sc.expect(detail::Tok::Semi, "';' closing the entry");

    if (!gb.get(root, phon)) {
      NodeIdx w = gb.add_word(Symbol::intern(form.text));
      NodeIdx elems[] = {w};
      gb.set_arc(root, phon, gb.add_list(elems));
    }

    UnifyFailure why;
    NodeIdx roots[] = {gb.resolve(root)};
    auto fz = gb.freeze(roots, &why);
    if (!fz) {
      throw SyntaxError("entry \"" + form.text + "\" is cyclic (" + why.to_string() + ")",
                        form.line, form.col);
    }
    FeatureStructure fs(fz->graph, fz->roots[0]);
    validate_entry(form.text, fs);
    lex.sigs_[form.text].push_back(print_avm(fs));
    lex.entries_[form.text].push_back(std::move(fs));
    ++lex.count_;
  }
  return lex;
}

auto Lexicon::builtin() -> Lexicon { return load(builtin_text()); }

auto Lexicon::lookup(std::string_view form) const -> std::vector<FeatureStructure> {
  std::vector<FeatureStructure> out;
  for (const FeatureStructure& fs : entries(form)) {
    GraphBuilder gb(hier_);
    NodeIdx root = gb.import(fs);
    NodeIdx roots[] = {root};
    auto fz = gb.freeze(roots, nullptr);  // stored entries are acyclic
    out.emplace_back(fz->graph, fz->roots[0]);
  }
  return out;
}

namespace {

// ASCII text is already NFC; skip the normalization allocation for it.
auto is_ascii(std::string_view s) -> bool {
  for (unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

}  // namespace

auto Lexicon::entries(std::string_view form) const -> std::span<const FeatureStructure> {
  auto it = is_ascii(form) ? entries_.find(form) : entries_.find(nfc_normalize(form));
  if (it == entries_.end()) return {};
  return it->second;
}

auto Lexicon::signatures(std::string_view form) const -> std::span<const std::string> {
  auto it = is_ascii(form) ? sigs_.find(form) : sigs_.find(nfc_normalize(form));
  if (it == sigs_.end()) return {};
  return it->second;
}

auto Lexicon::has(std::string_view form) const -> bool {
  return !entries(form).empty();
}

auto Lexicon::forms() const -> std::vector<std::string> {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [form, signs] : entries_) out.push_back(form);
  return out;
}

}  // namespace hpsg
