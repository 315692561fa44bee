#include "support/oracle.hpp"

#include <cstdint>
#include <deque>
#include <unordered_set>

#include "hpsg/avm.hpp"
#include "hpsg/errors.hpp"

namespace hpsg::testsupport {

namespace {

struct Item {
  Derivation deriv;
  std::size_t len = 0;
};

// Closure state: items deduplicated by canonical sign print (PHON included,
// so differently ordered derivations stay distinct).
struct Generator {
  const Grammar& grammar;
  LpMode mode;
  std::size_t max_len;

  std::deque<Item> items;
  std::unordered_set<std::string> seen;
  std::unordered_set<std::uint64_t> tried_cluster;
  std::unordered_set<std::uint64_t> tried_np;
  std::unordered_set<std::uint64_t> tried_cp;
  std::unordered_set<std::string> tried_clause;

  void add(Derivation&& d) {
    std::size_t len = d.phon().size();
    if (len == 0 || len > max_len) return;
    if (!seen.insert(print_avm(d.sign)).second) return;
    items.push_back(Item{std::move(d), len});
  }

  static auto pair_key(std::size_t a, std::size_t b) -> std::uint64_t {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  }

  void binary_round(std::size_t a, std::size_t b) {
    const Item& x = items[a];
    const Item& y = items[b];
    if (x.len + y.len <= max_len) {
      if (tried_cluster.insert(pair_key(a, b)).second &&
          grammar.is_cluster_head(x.deriv.sign.root()) &&
          grammar.is_governable(y.deriv.sign.root())) {
        if (auto d = grammar.cluster(x.deriv, y.deriv, mode, nullptr)) add(std::move(*d));
      }
      if (tried_np.insert(pair_key(a, b)).second &&
          grammar.is_determiner(x.deriv.sign.root()) && grammar.is_noun(y.deriv.sign.root())) {
        if (auto d = grammar.noun_phrase(x.deriv, y.deriv, nullptr)) add(std::move(*d));
      }
      if (tried_cp.insert(pair_key(a, b)).second &&
          grammar.is_complementizer(x.deriv.sign.root()) &&
          grammar.is_saturated_finite_clause(y.deriv.sign.root())) {
        if (auto d = grammar.comp_phrase(x.deriv, y.deriv, nullptr)) add(std::move(*d));
      }
    }
  }

  void clause_round(std::size_t h) {
    const Item& head = items[h];
    if (!grammar.is_clause_head(head.deriv.sign.root())) return;
    auto arity = grammar.comps_arity(head.deriv.sign.root());
    if (!arity) return;
    std::size_t need = *arity + 1;
    if (head.len + need > max_len) return;
    std::vector<std::size_t> picks(need);
    pick(h, 0, max_len - head.len, picks);
  }

  void pick(std::size_t h, std::size_t slot, std::size_t budget, std::vector<std::size_t>& picks) {
    if (slot == picks.size()) {
      try_clause(h, picks);
      return;
    }
    std::size_t remaining_slots = picks.size() - slot - 1;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].len + remaining_slots > budget) continue;
      picks[slot] = i;
      pick(h, slot + 1, budget - items[i].len, picks);
    }
  }

  void try_clause(std::size_t h, const std::vector<std::size_t>& picks) {
    std::string key = std::to_string(h);
    for (std::size_t p : picks) {
      key += ',';
      key += std::to_string(p);
    }
    if (!tried_clause.insert(std::move(key)).second) return;
    std::vector<Derivation> comps;
    comps.reserve(picks.size() - 1);
    for (std::size_t i = 1; i < picks.size(); ++i) comps.push_back(items[picks[i]].deriv);
    if (auto d = grammar.clause(items[picks[0]].deriv, comps, items[h].deriv, nullptr)) {
      add(std::move(*d));
    }
  }
};

}  // namespace

auto generable_strings(const Lexicon& lex, const std::vector<std::string>& vocab,
                       std::size_t max_len, LpMode mode) -> std::set<std::string> {
  Grammar grammar(lex.hierarchy());
  Generator gen{grammar, mode, max_len, {}, {}, {}, {}, {}, {}};

  for (const std::string& form : vocab) {
    auto signs = lex.entries(form);
    if (signs.empty()) throw Error("oracle vocabulary word has no lexicon entry: " + form);
    for (const FeatureStructure& fs : signs) {
      gen.add(Derivation{RuleId::lexical, fs, {}});
    }
  }

  for (;;) {
    std::size_t before = gen.items.size();
    for (std::size_t a = 0; a < gen.items.size(); ++a) {
      for (std::size_t b = 0; b < gen.items.size(); ++b) {
        if (a != b) gen.binary_round(a, b);
      }
    }
    for (std::size_t h = 0; h < gen.items.size(); ++h) gen.clause_round(h);
    if (gen.items.size() == before) break;
  }

  std::set<std::string> out;
  for (const Item& it : gen.items) {
    bool complete = it.deriv.rule == RuleId::cp_schema ||
                    (it.deriv.rule == RuleId::clause_schema &&
                     grammar.is_saturated_finite_clause(it.deriv.sign.root()));
    if (!complete) continue;
    std::string s;
    for (const std::string& w : it.deriv.phon()) {
      if (!s.empty()) s += ' ';
      s += w;
    }
    out.insert(std::move(s));
  }
  return out;
}

auto glb_oracle(const TypeHierarchy& h, TypeId a, TypeId b) -> std::optional<TypeId> {
  std::vector<TypeId> common;
  for (std::uint32_t i = 0; i < h.size(); ++i) {
    TypeId t(i);
    if (h.subtype_of(t, a) && h.subtype_of(t, b)) common.push_back(t);
  }
  for (TypeId candidate : common) {
    bool greatest = true;
    for (TypeId t : common) {
      if (!h.subtype_of(t, candidate)) {
        greatest = false;
        break;
      }
    }
    if (greatest) return candidate;
  }
  return std::nullopt;
}

auto case_universe(const std::shared_ptr<const TypeHierarchy>& hier)
    -> std::vector<FeatureStructure> {
  const TypeId types[] = {hier->require("case"), hier->require("nom"), hier->require("acc")};
  Symbol f = Symbol::intern("F");
  Symbol g = Symbol::intern("G");

  std::vector<FeatureStructure> out;
  auto freeze_root = [&](GraphBuilder& gb, NodeIdx root) {
    NodeIdx roots[] = {root};
    auto fz = gb.freeze(roots, nullptr);
    out.emplace_back(fz->graph, fz->roots[0]);
  };

  for (TypeId rt : types) {
    // no arcs
    {
      GraphBuilder gb(hier);
      freeze_root(gb, gb.add(rt));
    }
    // single arc, F or G
    for (Symbol label : {f, g}) {
      for (TypeId lt : types) {
        GraphBuilder gb(hier);
        NodeIdx root = gb.add(rt);
        gb.set_arc(root, label, gb.add(lt));
        freeze_root(gb, root);
      }
    }
    // both arcs, distinct targets
    for (TypeId ft : types) {
      for (TypeId gt : types) {
        GraphBuilder gb(hier);
        NodeIdx root = gb.add(rt);
        gb.set_arc(root, f, gb.add(ft));
        gb.set_arc(root, g, gb.add(gt));
        freeze_root(gb, root);
      }
    }
    // both arcs, one shared target
    for (TypeId lt : types) {
      GraphBuilder gb(hier);
      NodeIdx root = gb.add(rt);
      NodeIdx leaf = gb.add(lt);
      gb.set_arc(root, f, leaf);
      gb.set_arc(root, g, leaf);
      freeze_root(gb, root);
    }
  }
  return out;
}

auto has_common_lower_bound(const std::vector<FeatureStructure>& universe,
                            const FeatureStructure& a, const FeatureStructure& b) -> bool {
  for (const FeatureStructure& u : universe) {
    if (subsumes(a, u) && subsumes(b, u)) return true;
  }
  return false;
}

}  // namespace hpsg::testsupport
