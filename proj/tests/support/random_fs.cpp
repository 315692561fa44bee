#include "support/random_fs.hpp"

#include <array>
#include <vector>

namespace hpsg::testsupport {

auto random_structure(std::mt19937& rng, const std::shared_ptr<const TypeHierarchy>& hier,
                      std::size_t max_nodes) -> FeatureStructure {
  const std::array<Symbol, 3> labels = {Symbol::intern("A"), Symbol::intern("B"),
                                        Symbol::intern("C")};
  const std::array<Symbol, 2> words = {Symbol::intern("w1"), Symbol::intern("w2")};

  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  GraphBuilder gb(hier);
  std::size_t n = 1 + pick(max_nodes);
  std::vector<NodeIdx> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool leaf_slot = i + 1 == n || pick(10) == 0;
    if (leaf_slot && pick(5) == 0) {
      nodes.push_back(gb.add_word(words[pick(words.size())]));
      continue;
    }
    // Bias toward top: its meet with anything succeeds, which keeps the
    // unification success rate high enough to be informative.
    TypeId t = pick(3) == 0 ? hier->top()
                            : TypeId(static_cast<std::uint32_t>(pick(hier->size())));
    if (t == hier->word_type()) t = hier->top();  // word payloads only via add_word
    nodes.push_back(gb.add(t));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (gb.type_of(nodes[i]) == hier->word_type()) continue;
    std::size_t arity = pick(3);
    std::size_t used = 0;
    for (std::size_t a = 0; a < arity && used < labels.size(); ++a) {
      std::size_t target = i + 1 + pick(n - i - 1);
      gb.set_arc(nodes[i], labels[used++], nodes[target]);
    }
  }
  NodeIdx roots[] = {nodes[0]};
  auto fz = gb.freeze(roots, nullptr);  // arcs all point forward: acyclic
  return FeatureStructure(fz->graph, fz->roots[0]);
}

}  // namespace hpsg::testsupport
