#include "hpsg/feature_structure.hpp"

#include <utility>

#include "hpsg/errors.hpp"

namespace hpsg {
namespace {

auto first_sym() -> Symbol {
  static const Symbol s = Symbol::intern("FIRST");
  return s;
}

auto rest_sym() -> Symbol {
  static const Symbol s = Symbol::intern("REST");
  return s;
}

}  // namespace

auto UnifyFailure::path_string() const -> std::string {
  if (path.empty()) return "(root)";
  std::string out;
  for (Symbol s : path) {
    if (!out.empty()) out += '.';
    out += s.str();
  }
  return out;
}

auto UnifyFailure::to_string() const -> std::string {
  if (cycle) return "occurs check: cyclic structure at " + path_string();
  return path_string() + ": " + left + " vs " + right;
}

auto NodeRef::get(Symbol label) const -> std::optional<NodeRef> {
  const Arc* a = g_->node(idx_).find(label);
  if (a == nullptr) return std::nullopt;
  return NodeRef(g_, a->target);
}

auto NodeRef::get(std::string_view label) const -> std::optional<NodeRef> {
  return get(Symbol::intern(label));
}

auto FeatureStructure::at(std::span<const Symbol> path) const -> std::optional<NodeRef> {
  std::optional<NodeRef> cur = root();
  for (Symbol s : path) {
    cur = cur->get(s);
    if (!cur) return std::nullopt;
  }
  return cur;
}

auto FeatureStructure::at(std::initializer_list<std::string_view> path) const
    -> std::optional<NodeRef> {
  std::optional<NodeRef> cur = root();
  for (std::string_view s : path) {
    cur = cur->get(s);
    if (!cur) return std::nullopt;
  }
  return cur;
}

GraphBuilder::GraphBuilder(std::shared_ptr<const TypeHierarchy> hier) : hier_(std::move(hier)) {}

auto GraphBuilder::add(TypeId type) -> NodeIdx {
  nodes_.push_back(BNode{type, Symbol(), {}, kNoNode});
  return static_cast<NodeIdx>(nodes_.size() - 1);
}

auto GraphBuilder::add_word(Symbol form) -> NodeIdx {
  nodes_.push_back(BNode{hier_->word_type(), form, {}, kNoNode});
  return static_cast<NodeIdx>(nodes_.size() - 1);
}

auto GraphBuilder::add_list(std::span<const NodeIdx> elems, NodeIdx tail) -> NodeIdx {
  NodeIdx cur = tail;
  for (std::size_t i = elems.size(); i-- > 0;) {
    NodeIdx cell = add(hier_->nelist_type());
    set_arc(cell, first_sym(), elems[i]);
    set_arc(cell, rest_sym(), cur);
    cur = cell;
  }
  return cur;
}

auto GraphBuilder::add_list(std::span<const NodeIdx> elems) -> NodeIdx {
  return add_list(elems, add(hier_->elist_type()));
}

void GraphBuilder::set_arc(NodeIdx from, Symbol label, NodeIdx to) {
  BNode& n = nodes_[find(from)];
  for (const Arc& a : n.arcs) {
    if (a.label == label) {
      throw Error("duplicate arc label " + std::string(label.str()));
    }
  }
  n.arcs.push_back(Arc{label, to});
}

auto GraphBuilder::import(const FeatureStructure& fs) -> NodeIdx {
  if (fs.graph()->hierarchy() != hier_) {
    throw Error("cannot combine structures built over different type hierarchies");
  }
  auto map = import_graph(*fs.graph());
  return map[fs.root_index()];
}

auto GraphBuilder::import_graph(const Graph& g) -> std::vector<NodeIdx> {
  const auto base = static_cast<NodeIdx>(nodes_.size());
  std::vector<NodeIdx> map(g.size());
  nodes_.reserve(nodes_.size() + g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GraphNode& src = g.node(i);
    BNode bn{src.type, src.word, src.arcs, kNoNode};
    for (Arc& a : bn.arcs) a.target += base;
    nodes_.push_back(std::move(bn));
    map[i] = base + static_cast<NodeIdx>(i);
  }
  return map;
}

auto GraphBuilder::find(NodeIdx n) -> NodeIdx {
  NodeIdx root = n;
  while (nodes_[root].fwd != kNoNode) root = nodes_[root].fwd;
  while (nodes_[n].fwd != kNoNode) {
    NodeIdx next = nodes_[n].fwd;
    nodes_[n].fwd = root;
    n = next;
  }
  return root;
}

auto GraphBuilder::get(NodeIdx n, Symbol label) -> std::optional<NodeIdx> {
  const BNode& bn = nodes_[find(n)];
  for (const Arc& a : bn.arcs) {
    if (a.label == label) return find(a.target);
  }
  return std::nullopt;
}

auto GraphBuilder::type_of(NodeIdx n) -> TypeId { return nodes_[find(n)].type; }

auto GraphBuilder::word_of(NodeIdx n) -> Symbol { return nodes_[find(n)].word; }

auto GraphBuilder::list_elements(NodeIdx n) -> std::optional<std::vector<NodeIdx>> {
  std::vector<NodeIdx> out;
  NodeIdx cur = find(n);
  while (true) {
    TypeId t = nodes_[cur].type;
    if (t == hier_->elist_type()) return out;
    if (t != hier_->nelist_type()) return std::nullopt;
    auto f = get(cur, first_sym());
    auto r = get(cur, rest_sym());
    if (!f || !r) return std::nullopt;
    out.push_back(*f);
    cur = *r;
  }
}

namespace {

auto display(const TypeHierarchy& h, TypeId type, Symbol word) -> std::string {
  if (word.valid()) return "\"" + std::string(word.str()) + "\"";
  return std::string(h.name(type));
}

}  // namespace

auto GraphBuilder::unify(NodeIdx a, NodeIdx b, UnifyFailure* why) -> bool {
  std::vector<Symbol> path;
  UnifyFailure local;
  return unify_nodes(a, b, path, why != nullptr ? why : &local);
}

auto GraphBuilder::unify_nodes(NodeIdx a, NodeIdx b, std::vector<Symbol>& path, UnifyFailure* why)
    -> bool {
  a = find(a);
  b = find(b);
  if (a == b) return true;

  auto meet = hier_->glb(nodes_[a].type, nodes_[b].type);
  if (!meet) {
    why->path = path;
    why->left = display(*hier_, nodes_[a].type, nodes_[a].word);
    why->right = display(*hier_, nodes_[b].type, nodes_[b].word);
    why->cycle = false;
    return false;
  }

  Symbol word = nodes_[a].word;
  if (nodes_[b].word.valid()) {
    if (word.valid() && word != nodes_[b].word) {
      why->path = path;
      why->left = display(*hier_, nodes_[a].type, nodes_[a].word);
      why->right = display(*hier_, nodes_[b].type, nodes_[b].word);
      why->cycle = false;
      return false;
    }
    word = nodes_[b].word;
  }
  if (word.valid() && (!nodes_[a].arcs.empty() || !nodes_[b].arcs.empty())) {
    // A word form is a leaf; a structured node cannot collapse into one.
    why->path = path;
    why->left = display(*hier_, nodes_[a].type, nodes_[a].word);
    why->right = display(*hier_, nodes_[b].type, nodes_[b].word);
    why->cycle = false;
    return false;
  }

  nodes_[b].fwd = a;
  nodes_[a].type = *meet;
  nodes_[a].word = word;

  std::vector<Arc> pending = std::move(nodes_[b].arcs);
  nodes_[b].arcs.clear();
  for (const Arc& arc : pending) {
    NodeIdx ra = find(a);
    const Arc* existing = nullptr;
    for (const Arc& x : nodes_[ra].arcs) {
      if (x.label == arc.label) {
        existing = &x;
        break;
      }
    }
    if (existing != nullptr) {
      NodeIdx et = existing->target;
      path.push_back(arc.label);
      if (!unify_nodes(et, arc.target, path, why)) return false;
      path.pop_back();
    } else {
      nodes_[ra].arcs.push_back(arc);
    }
  }
  return true;
}

auto GraphBuilder::freeze(std::span<const NodeIdx> roots, UnifyFailure* why)
    -> std::optional<Frozen> {
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> state(nodes_.size(), kWhite);
  std::vector<NodeIdx> order;
  std::vector<NodeIdx> image(nodes_.size(), kNoNode);
  std::vector<Symbol> path;

  auto visit = [&](auto&& self, NodeIdx n) -> bool {
    n = find(n);
    if (state[n] == kBlack) return true;
    if (state[n] == kGray) {
      if (why != nullptr) {
        why->path = path;
        why->cycle = true;
        why->left = display(*hier_, nodes_[n].type, nodes_[n].word);
        why->right = why->left;
      }
      return false;
    }
    state[n] = kGray;
    image[n] = static_cast<NodeIdx>(order.size());
    order.push_back(n);
    for (const Arc& a : nodes_[n].arcs) {
      path.push_back(a.label);
      if (!self(self, a.target)) return false;
      path.pop_back();
    }
    state[n] = kBlack;
    return true;
  };

  for (NodeIdx r : roots) {
    if (!visit(visit, r)) return std::nullopt;
  }

  auto g = std::make_shared<Graph>();
  g->hier_ = hier_;
  g->nodes_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const BNode& src = nodes_[order[i]];
    GraphNode& dst = g->nodes_[i];
    dst.type = src.type;
    dst.word = src.word;
    dst.arcs.reserve(src.arcs.size());
    for (const Arc& a : src.arcs) dst.arcs.push_back(Arc{a.label, image[find(a.target)]});
  }

  Frozen fz;
  fz.graph = std::move(g);
  fz.roots.reserve(roots.size());
  for (NodeIdx r : roots) fz.roots.push_back(image[find(r)]);
  return fz;
}

auto unify(const FeatureStructure& a, const FeatureStructure& b) -> UnifyResult {
  if (a.graph()->hierarchy() != b.graph()->hierarchy()) {
    throw Error("unify: operands were built over different type hierarchies");
  }
  GraphBuilder gb(a.graph()->hierarchy());
  NodeIdx ia = gb.import(a);
  NodeIdx ib = gb.import(b);
  UnifyFailure why;
  if (!gb.unify(ia, ib, &why)) return UnifyResult::failure(std::move(why));
  NodeIdx roots[] = {ia};
  auto fz = gb.freeze(roots, &why);
  if (!fz) return UnifyResult::failure(std::move(why));
  return UnifyResult::success(FeatureStructure(fz->graph, fz->roots[0]));
}

auto subsumes(const FeatureStructure& a, const FeatureStructure& b) -> bool {
  const Graph& ga = *a.graph();
  const Graph& gb = *b.graph();
  const TypeHierarchy& ha = *ga.hierarchy();
  const bool same_hier = ga.hierarchy() == gb.hierarchy();

  auto b_type_in_a = [&](TypeId tb) -> TypeId {
    if (same_hier) return tb;
    return ha.by_name(gb.hierarchy()->name(tb));
  };

  std::vector<NodeIdx> map(ga.size(), kNoNode);
  std::vector<std::pair<NodeIdx, NodeIdx>> work;
  map[a.root_index()] = b.root_index();
  work.emplace_back(a.root_index(), b.root_index());

  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    const GraphNode& nx = ga.node(x);
    const GraphNode& ny = gb.node(y);
    TypeId ty = b_type_in_a(ny.type);
    if (!ty.valid() || !ha.subtype_of(ty, nx.type)) return false;
    if (nx.word.valid() && nx.word != ny.word) return false;
    for (const Arc& arc : nx.arcs) {
      const Arc* m = ny.find(arc.label);
      if (m == nullptr) return false;
      if (map[arc.target] == kNoNode) {
        map[arc.target] = m->target;
        work.emplace_back(arc.target, m->target);
      } else if (map[arc.target] != m->target) {
        return false;  // a's sharing is not preserved in b
      }
    }
  }
  return true;
}

auto iso(const FeatureStructure& a, const FeatureStructure& b) -> bool {
  return subsumes(a, b) && subsumes(b, a);
}

auto cons(const FeatureStructure& elem, const FeatureStructure& tail) -> FeatureStructure {
  if (elem.graph()->hierarchy() != tail.graph()->hierarchy()) {
    throw Error("cons: operands were built over different type hierarchies");
  }
  const TypeHierarchy& h = elem.hierarchy();
  if (!h.subtype_of(tail.root().type(), h.list_type())) {
    throw Error("cons: tail is not a list node");
  }
  GraphBuilder gb(elem.graph()->hierarchy());
  NodeIdx e = gb.import(elem);
  NodeIdx t = gb.import(tail);
  NodeIdx cell = gb.add(h.nelist_type());
  gb.set_arc(cell, first_sym(), e);
  gb.set_arc(cell, rest_sym(), t);
  NodeIdx roots[] = {cell};
  auto fz = gb.freeze(roots, nullptr);  // inputs are acyclic, so this cannot fail
  return FeatureStructure(fz->graph, fz->roots[0]);
}

auto is_list(NodeRef n) -> bool {
  const TypeHierarchy& h = *n.graph()->hierarchy();
  return h.subtype_of(n.type(), h.list_type());
}

auto is_empty_list(NodeRef n) -> bool {
  return n.type() == n.graph()->hierarchy()->elist_type();
}

auto list_elements(NodeRef n) -> std::optional<std::vector<NodeRef>> {
  const TypeHierarchy& h = *n.graph()->hierarchy();
  std::vector<NodeRef> out;
  NodeRef cur = n;
  while (true) {
    if (cur.type() == h.elist_type()) return out;
    if (cur.type() != h.nelist_type()) return std::nullopt;
    auto f = cur.get(first_sym());
    auto r = cur.get(rest_sym());
    if (!f || !r) return std::nullopt;
    out.push_back(*f);
    cur = *r;
  }
}

auto list_length(NodeRef n) -> std::optional<std::size_t> {
  auto elems = list_elements(n);
  if (!elems) return std::nullopt;
  return elems->size();
}

}  // namespace hpsg
