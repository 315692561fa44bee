#include "hpsg/grammar.hpp"

#include <algorithm>
#include <utility>

namespace hpsg {

auto lp_mode_name(LpMode mode) -> std::string_view {
  return mode == LpMode::NL ? "nl" : "de";
}

auto parse_lp_mode(std::string_view name) -> std::optional<LpMode> {
  if (name == "nl") return LpMode::NL;
  if (name == "de") return LpMode::DE;
  return std::nullopt;
}

auto rule_name(RuleId rule) -> std::string_view {
  switch (rule) {
    case RuleId::lexical: return "lexical";
    case RuleId::cluster_schema: return "cluster_schema";
    case RuleId::clause_schema: return "clause_schema";
    case RuleId::np_schema: return "np_schema";
    case RuleId::cp_schema: return "cp_schema";
  }
  return "?";
}

auto Derivation::phon() const -> std::vector<std::string> {
  std::vector<std::string> out;
  auto p = sign.root().get("PHON");
  if (!p) return out;
  auto elems = list_elements(*p);
  if (!elems) return out;
  for (NodeRef w : *elems) {
    if (w.is_word()) out.emplace_back(w.word().str());
  }
  return out;
}

namespace {

void print_tree(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += rule_name(d.rule);
  out += ':';
  for (const std::string& w : d.phon()) {
    out += ' ';
    out += w;
  }
  out += '\n';
  for (const Derivation& dd : d.daughters) print_tree(dd, depth + 1, out);
}

}  // namespace

auto print_derivation(const Derivation& d) -> std::string {
  std::string out;
  print_tree(d, 0, out);
  return out;
}

auto SchemaReject::to_string() const -> std::string {
  if (!failure) return reason;
  return reason + " (" + failure->to_string() + ")";
}

auto lp_admissible(std::span<const GovernorPair> pairs, LpMode mode) -> bool {
  return std::all_of(pairs.begin(), pairs.end(), [&](const GovernorPair& p) {
    return mode == LpMode::NL ? p.governor < p.governed : p.governed < p.governor;
  });
}

struct Grammar::TreeRoots {
  const Derivation* source = nullptr;
  std::vector<NodeIdx> roots;  // builder index of each tree node, pre-order
};

namespace {

void collect_roots(const Derivation& d, const std::vector<NodeIdx>& remap,
                   std::vector<NodeIdx>& out) {
  out.push_back(remap[d.sign.root_index()]);
  for (const Derivation& dd : d.daughters) collect_roots(dd, remap, out);
}

auto rebuild_tree(const Derivation& src, const std::shared_ptr<const Graph>& g,
                  std::span<const NodeIdx> images, std::size_t& pos) -> Derivation {
  Derivation out;
  out.rule = src.rule;
  out.sign = FeatureStructure(g, images[pos++]);
  out.daughters.reserve(src.daughters.size());
  for (const Derivation& dd : src.daughters) {
    out.daughters.push_back(rebuild_tree(dd, g, images, pos));
  }
  return out;
}

void reject(SchemaReject* why, std::string reason,
            std::optional<UnifyFailure> failure = std::nullopt) {
  if (why != nullptr) *why = SchemaReject{std::move(reason), std::move(failure)};
}

auto as_leaf(const FeatureStructure& fs) -> Derivation {
  return Derivation{RuleId::lexical, fs, {}};
}

auto closed_phon(GraphBuilder& gb, Symbol phon, NodeIdx sign_root)
    -> std::optional<std::vector<NodeIdx>> {
  auto p = gb.get(sign_root, phon);
  if (!p) return std::nullopt;
  return gb.list_elements(*p);
}

}  // namespace

Grammar::Grammar(std::shared_ptr<const TypeHierarchy> hier) : hier_(std::move(hier)) {
  labels_ = Labels{
      Symbol::intern("PHON"),    Symbol::intern("HEAD"),  Symbol::intern("SUBJ"),
      Symbol::intern("COMPS"),   Symbol::intern("GOV"),   Symbol::intern("CONTENT"),
      Symbol::intern("LEX"),     Symbol::intern("MAJOR"), Symbol::intern("VFORM"),
      Symbol::intern("CASE"),    Symbol::intern("DET"),   Symbol::intern("PARA"),
      Symbol::intern("RESTR"),   Symbol::intern("RELN"),  Symbol::intern("INST"),
      Symbol::intern("ARG1"),    Symbol::intern("ARG2"),  Symbol::intern("FIRST"),
      Symbol::intern("REST"),
  };
  types_ = Types{
      hier_->require("sign"),     hier_->require("v"),
      hier_->require("n"),        hier_->require("comp"),
      hier_->require("det"),      hier_->require("fin"),
      hier_->require("base"),     hier_->require("lex_plus"),
      hier_->require("lex_minus"), hier_->require("case"),
      hier_->require("nom"),      hier_->require("acc"),
      hier_->require("event"),    hier_->require("nominal_det"),
  };
}

namespace {

// Type of the node at sign.L1[.L2], invalid TypeId when the path is absent.
auto type_at(NodeRef sign, Symbol l1) -> TypeId {
  auto n = sign.get(l1);
  return n ? n->type() : TypeId();
}

auto type_at(NodeRef sign, Symbol l1, Symbol l2) -> TypeId {
  auto n = sign.get(l1);
  if (!n) return TypeId();
  return type_at(*n, l2);
}

auto le(const TypeHierarchy& h, TypeId a, TypeId b) -> bool {
  return a.valid() && h.subtype_of(a, b);
}

}  // namespace

auto Grammar::is_cluster_head(NodeRef sign) const -> bool {
  const TypeHierarchy& h = *hier_;
  if (!le(h, type_at(sign, labels_.head, labels_.major), types_.v)) return false;
  if (!le(h, type_at(sign, labels_.lex), types_.lex_plus)) return false;
  auto gov = sign.get(labels_.gov);
  if (!gov) return false;
  auto len = list_length(*gov);
  return len && *len == 1;
}

auto Grammar::is_governable(NodeRef sign) const -> bool {
  const TypeHierarchy& h = *hier_;
  if (!le(h, type_at(sign, labels_.head, labels_.major), types_.v)) return false;
  if (!le(h, type_at(sign, labels_.lex), types_.lex_plus)) return false;
  auto gov = sign.get(labels_.gov);
  return gov && is_empty_list(*gov);
}

auto Grammar::is_clause_head(NodeRef sign) const -> bool {
  const TypeHierarchy& h = *hier_;
  if (!le(h, type_at(sign, labels_.head, labels_.major), types_.v)) return false;
  if (!le(h, type_at(sign, labels_.head, labels_.vform), types_.fin)) return false;
  if (!le(h, type_at(sign, labels_.lex), types_.lex_plus)) return false;
  auto gov = sign.get(labels_.gov);
  if (!gov || !is_empty_list(*gov)) return false;
  auto subj = sign.get(labels_.subj);
  if (!subj) return false;
  auto slen = list_length(*subj);
  if (!slen || *slen != 1) return false;
  return comps_arity(sign).has_value();
}

auto Grammar::is_nominal(NodeRef sign) const -> bool {
  return le(*hier_, type_at(sign, labels_.head, labels_.major), types_.n);
}

auto Grammar::is_determiner(NodeRef sign) const -> bool {
  return le(*hier_, type_at(sign, labels_.head, labels_.major), types_.det);
}

auto Grammar::is_noun(NodeRef sign) const -> bool { return is_nominal(sign); }

auto Grammar::is_complementizer(NodeRef sign) const -> bool {
  return le(*hier_, type_at(sign, labels_.head, labels_.major), types_.comp);
}

auto Grammar::is_saturated_finite_clause(NodeRef sign) const -> bool {
  const TypeHierarchy& h = *hier_;
  if (!le(h, type_at(sign, labels_.head, labels_.major), types_.v)) return false;
  if (!le(h, type_at(sign, labels_.head, labels_.vform), types_.fin)) return false;
  if (!le(h, type_at(sign, labels_.lex), types_.lex_minus)) return false;
  for (Symbol valence : {labels_.subj, labels_.comps, labels_.gov}) {
    auto v = sign.get(valence);
    if (!v || !is_empty_list(*v)) return false;
  }
  return true;
}

auto Grammar::comps_arity(NodeRef sign) const -> std::optional<std::size_t> {
  auto comps = sign.get(labels_.comps);
  if (!comps) return std::nullopt;
  return list_length(*comps);
}

auto Grammar::finish(GraphBuilder& gb, NodeIdx mother, RuleId rule,
                     std::span<const TreeRoots> daughters, SchemaReject* why) const
    -> std::optional<Derivation> {
  std::vector<NodeIdx> roots{mother};
  for (const TreeRoots& d : daughters) roots.insert(roots.end(), d.roots.begin(), d.roots.end());
  UnifyFailure uf;
  auto fz = gb.freeze(roots, &uf);
  if (!fz) {
    reject(why, "unification produced a cyclic structure", uf);
    return std::nullopt;
  }
  Derivation out;
  out.rule = rule;
  out.sign = FeatureStructure(fz->graph, fz->roots[0]);
  out.daughters.reserve(daughters.size());
  std::size_t pos = 1;
  for (const TreeRoots& d : daughters) {
    out.daughters.push_back(rebuild_tree(*d.source, fz->graph, fz->roots, pos));
  }
  return out;
}

namespace {

auto import_tree_impl(GraphBuilder& gb, const Derivation& d) -> std::vector<NodeIdx> {
  if (d.sign.graph()->hierarchy() != gb.hierarchy()) {
    throw Error("cannot combine structures built over different type hierarchies");
  }
  auto remap = gb.import_graph(*d.sign.graph());
  std::vector<NodeIdx> roots;
  collect_roots(d, remap, roots);
  return roots;
}

}  // namespace

auto Grammar::cluster(const Derivation& head, const Derivation& governed, LpMode mode,
                      SchemaReject* why) const -> std::optional<Derivation> {
  if (!is_cluster_head(head.sign.root())) {
    reject(why, "cluster head must be a LEX+ verb with a singleton GOV");
    return std::nullopt;
  }
  if (!is_governable(governed.sign.root())) {
    reject(why, "governed daughter must be a LEX+ verb with its GOV discharged");
    return std::nullopt;
  }

  GraphBuilder gb(hier_);
  TreeRoots th{&head, import_tree_impl(gb, head)};
  TreeRoots tg{&governed, import_tree_impl(gb, governed)};
  NodeIdx h = th.roots[0];
  NodeIdx g = tg.roots[0];

  NodeIdx gov_elem = *gb.get(*gb.get(h, labels_.gov), labels_.first);
  UnifyFailure uf;
  if (!gb.unify(gov_elem, g, &uf)) {
    reject(why, "governed sign does not satisfy the GOV requirement", uf);
    return std::nullopt;
  }

  auto phon_h = closed_phon(gb, labels_.phon, h);
  auto phon_g = closed_phon(gb, labels_.phon, g);
  if (!phon_h || !phon_g) {
    reject(why, "daughter PHON is not a closed list");
    return std::nullopt;
  }
  std::vector<NodeIdx> phon = (mode == LpMode::NL) ? *phon_h : *phon_g;
  const auto& second = (mode == LpMode::NL) ? *phon_g : *phon_h;
  phon.insert(phon.end(), second.begin(), second.end());

  NodeIdx mother = gb.add(types_.sign);
  auto share = [&](Symbol label, NodeIdx from) {
    if (auto v = gb.get(from, label)) gb.set_arc(mother, label, *v);
  };
  gb.set_arc(mother, labels_.phon, gb.add_list(phon));
  share(labels_.head, h);
  share(labels_.subj, h);
  share(labels_.comps, h);
  gb.set_arc(mother, labels_.gov, gb.add(hier_->elist_type()));
  share(labels_.content, h);
  gb.set_arc(mother, labels_.lex, gb.add(types_.lex_plus));

  std::vector<TreeRoots> daughters;
  if (mode == LpMode::NL) {
    daughters.push_back(std::move(th));
    daughters.push_back(std::move(tg));
  } else {
    daughters.push_back(std::move(tg));
    daughters.push_back(std::move(th));
  }
  return finish(gb, mother, RuleId::cluster_schema, daughters, why);
}

auto Grammar::clause(const Derivation& subj, std::span<const Derivation> comps,
                     const Derivation& head, SchemaReject* why) const
    -> std::optional<Derivation> {
  NodeRef hr = head.sign.root();
  const TypeHierarchy& h = *hier_;
  if (!le(h, type_at(hr, labels_.head, labels_.major), types_.v) ||
      !le(h, type_at(hr, labels_.lex), types_.lex_plus)) {
    reject(why, "clause head must be a LEX+ verb");
    return std::nullopt;
  }
  {
    auto gov = hr.get(labels_.gov);
    if (!gov || !is_empty_list(*gov)) {
      reject(why, "clause head still carries an undischarged GOV");
      return std::nullopt;
    }
  }
  if (!le(h, type_at(hr, labels_.head, labels_.vform), types_.fin)) {
    reject(why, "clause head must be finite");
    return std::nullopt;
  }
  {
    auto s = hr.get(labels_.subj);
    auto slen = s ? list_length(*s) : std::nullopt;
    if (!slen || *slen != 1) {
      reject(why, "clause head must expose exactly one SUBJ slot");
      return std::nullopt;
    }
  }
  auto arity = comps_arity(hr);
  if (!arity) {
    reject(why, "clause head's COMPS list is still open");
    return std::nullopt;
  }
  if (*arity != comps.size()) {
    reject(why, "clause head expects " + std::to_string(*arity) + " complement(s), got " +
                    std::to_string(comps.size()));
    return std::nullopt;
  }

  GraphBuilder gb(hier_);
  TreeRoots ts{&subj, import_tree_impl(gb, subj)};
  std::vector<TreeRoots> tcomps;
  tcomps.reserve(comps.size());
  for (const Derivation& c : comps) tcomps.push_back(TreeRoots{&c, import_tree_impl(gb, c)});
  TreeRoots th{&head, import_tree_impl(gb, head)};
  NodeIdx hn = th.roots[0];

  UnifyFailure uf;
  NodeIdx subj_slot = *gb.get(*gb.get(hn, labels_.subj), labels_.first);
  if (!gb.unify(subj_slot, ts.roots[0], &uf)) {
    reject(why, "subject does not fit the head's SUBJ slot", uf);
    return std::nullopt;
  }
  NodeIdx cell = *gb.get(hn, labels_.comps);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    NodeIdx slot = *gb.get(cell, labels_.first);
    if (!gb.unify(slot, tcomps[i].roots[0], &uf)) {
      reject(why, "complement " + std::to_string(i + 1) + " does not fit its COMPS slot", uf);
      return std::nullopt;
    }
    cell = *gb.get(cell, labels_.rest);
  }

  std::vector<NodeIdx> phon;
  auto append_phon = [&](NodeIdx sign_root) -> bool {
    auto elems = closed_phon(gb, labels_.phon, sign_root);
    if (!elems) return false;
    phon.insert(phon.end(), elems->begin(), elems->end());
    return true;
  };
  bool phon_ok = append_phon(ts.roots[0]);
  for (const TreeRoots& c : tcomps) phon_ok = phon_ok && append_phon(c.roots[0]);
  phon_ok = phon_ok && append_phon(hn);
  if (!phon_ok) {
    reject(why, "daughter PHON is not a closed list");
    return std::nullopt;
  }

  NodeIdx mother = gb.add(types_.sign);
  gb.set_arc(mother, labels_.phon, gb.add_list(phon));
  gb.set_arc(mother, labels_.head, *gb.get(hn, labels_.head));
  gb.set_arc(mother, labels_.subj, gb.add(hier_->elist_type()));
  gb.set_arc(mother, labels_.comps, gb.add(hier_->elist_type()));
  gb.set_arc(mother, labels_.gov, gb.add(hier_->elist_type()));
  if (auto c = gb.get(hn, labels_.content)) gb.set_arc(mother, labels_.content, *c);
  gb.set_arc(mother, labels_.lex, gb.add(types_.lex_minus));

  std::vector<TreeRoots> daughters;
  daughters.push_back(std::move(ts));
  for (TreeRoots& c : tcomps) daughters.push_back(std::move(c));
  daughters.push_back(std::move(th));
  return finish(gb, mother, RuleId::clause_schema, daughters, why);
}

auto Grammar::noun_phrase(const Derivation& det, const Derivation& noun,
                          SchemaReject* why) const -> std::optional<Derivation> {
  if (!is_determiner(det.sign.root())) {
    reject(why, "first daughter is not a determiner");
    return std::nullopt;
  }
  if (!is_nominal(noun.sign.root())) {
    reject(why, "second daughter is not nominal");
    return std::nullopt;
  }

  GraphBuilder gb(hier_);
  TreeRoots td{&det, import_tree_impl(gb, det)};
  TreeRoots tn{&noun, import_tree_impl(gb, noun)};
  NodeIdx d = td.roots[0];
  NodeIdx n = tn.roots[0];

  auto phon_d = closed_phon(gb, labels_.phon, d);
  auto phon_n = closed_phon(gb, labels_.phon, n);
  if (!phon_d || !phon_n) {
    reject(why, "daughter PHON is not a closed list");
    return std::nullopt;
  }
  std::vector<NodeIdx> phon = *phon_d;
  phon.insert(phon.end(), phon_n->begin(), phon_n->end());

  NodeIdx mother = gb.add(types_.sign);
  gb.set_arc(mother, labels_.phon, gb.add_list(phon));
  gb.set_arc(mother, labels_.head, *gb.get(n, labels_.head));
  gb.set_arc(mother, labels_.subj, gb.add(hier_->elist_type()));
  gb.set_arc(mother, labels_.comps, gb.add(hier_->elist_type()));
  gb.set_arc(mother, labels_.gov, gb.add(hier_->elist_type()));
  if (auto c = gb.get(n, labels_.content)) gb.set_arc(mother, labels_.content, *c);
  gb.set_arc(mother, labels_.lex, gb.add(types_.lex_minus));

  std::vector<TreeRoots> daughters;
  daughters.push_back(std::move(td));
  daughters.push_back(std::move(tn));
  return finish(gb, mother, RuleId::np_schema, daughters, why);
}

auto Grammar::comp_phrase(const Derivation& comp, const Derivation& clause,
                          SchemaReject* why) const -> std::optional<Derivation> {
  if (!is_complementizer(comp.sign.root())) {
    reject(why, "first daughter is not a complementizer");
    return std::nullopt;
  }
  if (!is_saturated_finite_clause(clause.sign.root())) {
    reject(why, "complement of the complementizer must be a saturated finite clause");
    return std::nullopt;
  }

  GraphBuilder gb(hier_);
  TreeRoots tc{&comp, import_tree_impl(gb, comp)};
  TreeRoots ts{&clause, import_tree_impl(gb, clause)};
  NodeIdx c = tc.roots[0];
  NodeIdx s = ts.roots[0];

  auto phon_c = closed_phon(gb, labels_.phon, c);
  auto phon_s = closed_phon(gb, labels_.phon, s);
  if (!phon_c || !phon_s) {
    reject(why, "daughter PHON is not a closed list");
    return std::nullopt;
  }
  std::vector<NodeIdx> phon = *phon_c;
  phon.insert(phon.end(), phon_s->begin(), phon_s->end());

  NodeIdx mother = gb.add(types_.sign);
  gb.set_arc(mother, labels_.phon, gb.add_list(phon));
  gb.set_arc(mother, labels_.head, *gb.get(c, labels_.head));
  gb.set_arc(mother, labels_.subj, gb.add(hier_->elist_type()));
  gb.set_arc(mother, labels_.comps, gb.add(hier_->elist_type()));
  gb.set_arc(mother, labels_.gov, gb.add(hier_->elist_type()));
  if (auto cc = gb.get(s, labels_.content)) gb.set_arc(mother, labels_.content, *cc);
  gb.set_arc(mother, labels_.lex, gb.add(types_.lex_minus));

  std::vector<TreeRoots> daughters;
  daughters.push_back(std::move(tc));
  daughters.push_back(std::move(ts));
  return finish(gb, mother, RuleId::cp_schema, daughters, why);
}

auto Grammar::apply_cluster_schema(const FeatureStructure& head, const FeatureStructure& governed,
                                   LpMode mode, SchemaReject* why) const
    -> std::optional<FeatureStructure> {
  auto d = cluster(as_leaf(head), as_leaf(governed), mode, why);
  if (!d) return std::nullopt;
  return d->sign;
}

auto Grammar::apply_clause_schema(const FeatureStructure& subj,
                                  std::span<const FeatureStructure> comps,
                                  const FeatureStructure& head, SchemaReject* why) const
    -> std::optional<FeatureStructure> {
  std::vector<Derivation> cs;
  cs.reserve(comps.size());
  for (const FeatureStructure& c : comps) cs.push_back(as_leaf(c));
  auto d = clause(as_leaf(subj), cs, as_leaf(head), why);
  if (!d) return std::nullopt;
  return d->sign;
}

auto Grammar::apply_np_schema(const FeatureStructure& det, const FeatureStructure& noun,
                              SchemaReject* why) const -> std::optional<FeatureStructure> {
  auto d = noun_phrase(as_leaf(det), as_leaf(noun), why);
  if (!d) return std::nullopt;
  return d->sign;
}

auto Grammar::apply_cp_schema(const FeatureStructure& comp, const FeatureStructure& clause,
                              SchemaReject* why) const -> std::optional<FeatureStructure> {
  auto d = comp_phrase(as_leaf(comp), as_leaf(clause), why);
  if (!d) return std::nullopt;
  return d->sign;
}

}  // namespace hpsg
