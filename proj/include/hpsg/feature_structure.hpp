#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hpsg/symbols.hpp"
#include "hpsg/type_hierarchy.hpp"

namespace hpsg {

using NodeIdx = std::uint32_t;
inline constexpr NodeIdx kNoNode = 0xffffffffu;

struct Arc {
  Symbol label;
  NodeIdx target;
};

struct GraphNode {
  TypeId type;
  Symbol word;            // valid only on word-form leaves (type `word`)
  std::vector<Arc> arcs;  // labels unique per node

  [[nodiscard]] auto find(Symbol label) const -> const Arc* {
    for (const auto& a : arcs) {
      if (a.label == label) return &a;
    }
    return nullptr;
  }
};

// An immutable rooted DAG of typed nodes. Graphs are produced by
// GraphBuilder::freeze and shared between FeatureStructure values; a whole
// derivation keeps its signs in one graph so that structure sharing between
// them is plain node identity.
class Graph {
public:
  [[nodiscard]] auto node(NodeIdx i) const -> const GraphNode& { return nodes_[i]; }
  [[nodiscard]] auto size() const -> std::size_t { return nodes_.size(); }
  [[nodiscard]] auto hierarchy() const -> const std::shared_ptr<const TypeHierarchy>& {
    return hier_;
  }

private:
  friend class GraphBuilder;
  std::vector<GraphNode> nodes_;
  std::shared_ptr<const TypeHierarchy> hier_;
};

class FeatureStructure;

// Lightweight view of one node in a frozen graph.
class NodeRef {
public:
  NodeRef() = default;
  NodeRef(const Graph* g, NodeIdx idx) : g_(g), idx_(idx) {}

  [[nodiscard]] auto type() const -> TypeId { return g_->node(idx_).type; }
  [[nodiscard]] auto type_name() const -> std::string_view {
    return g_->hierarchy()->name(type());
  }
  [[nodiscard]] auto word() const -> Symbol { return g_->node(idx_).word; }
  [[nodiscard]] auto is_word() const -> bool { return g_->node(idx_).word.valid(); }
  [[nodiscard]] auto arcs() const -> std::span<const Arc> { return g_->node(idx_).arcs; }
  [[nodiscard]] auto get(Symbol label) const -> std::optional<NodeRef>;
  [[nodiscard]] auto get(std::string_view label) const -> std::optional<NodeRef>;
  [[nodiscard]] auto index() const -> NodeIdx { return idx_; }
  [[nodiscard]] auto graph() const -> const Graph* { return g_; }
  [[nodiscard]] auto valid() const -> bool { return g_ != nullptr; }

  // Token identity: same node of the same graph.
  friend auto same_node(NodeRef a, NodeRef b) -> bool {
    return a.g_ == b.g_ && a.idx_ == b.idx_;
  }

private:
  const Graph* g_ = nullptr;
  NodeIdx idx_ = kNoNode;
};

// Why a unification failed: the arc path from the left operand's root to the
// clash, and the display names of what clashed there. `cycle` marks an occurs
// check hit, where the path leads into the offending loop.
struct UnifyFailure {
  std::vector<Symbol> path;
  std::string left;
  std::string right;
  bool cycle = false;

  [[nodiscard]] auto path_string() const -> std::string;
  [[nodiscard]] auto to_string() const -> std::string;
};

// A root into a shared immutable graph. Copying is cheap; all mutation goes
// through GraphBuilder, so values handed out are stable under later work.
class FeatureStructure {
public:
  FeatureStructure() = default;
  FeatureStructure(std::shared_ptr<const Graph> graph, NodeIdx root)
      : graph_(std::move(graph)), root_(root) {}

  [[nodiscard]] auto valid() const -> bool { return graph_ != nullptr; }
  [[nodiscard]] auto root() const -> NodeRef { return NodeRef(graph_.get(), root_); }
  [[nodiscard]] auto root_index() const -> NodeIdx { return root_; }
  [[nodiscard]] auto graph() const -> const std::shared_ptr<const Graph>& { return graph_; }
  [[nodiscard]] auto hierarchy() const -> const TypeHierarchy& { return *graph_->hierarchy(); }

  // Same graph, different root; used to address signs inside a derivation.
  [[nodiscard]] auto rebased(NodeIdx root) const -> FeatureStructure {
    return FeatureStructure(graph_, root);
  }

  [[nodiscard]] auto at(std::span<const Symbol> path) const -> std::optional<NodeRef>;
  [[nodiscard]] auto at(std::initializer_list<std::string_view> path) const
      -> std::optional<NodeRef>;

private:
  std::shared_ptr<const Graph> graph_;
  NodeIdx root_ = kNoNode;
};

class UnifyResult {
public:
  static auto success(FeatureStructure fs) -> UnifyResult { return UnifyResult(std::move(fs)); }
  static auto failure(UnifyFailure f) -> UnifyResult { return UnifyResult(std::move(f)); }

  [[nodiscard]] auto ok() const -> bool {
    return std::holds_alternative<FeatureStructure>(v_);
  }
  explicit operator bool() const { return ok(); }
  [[nodiscard]] auto fs() const -> const FeatureStructure& { return std::get<FeatureStructure>(v_); }
  [[nodiscard]] auto why() const -> const UnifyFailure& { return std::get<UnifyFailure>(v_); }

private:
  explicit UnifyResult(FeatureStructure fs) : v_(std::move(fs)) {}
  explicit UnifyResult(UnifyFailure f) : v_(std::move(f)) {}
  std::variant<FeatureStructure, UnifyFailure> v_;
};

// Mutable workspace for building graphs and unifying inside them. Imported
// structures are always copied, so the sources stay untouched; freeze()
// runs the occurs check, prunes unreachable nodes, and hands back an
// immutable Graph plus the images of the requested roots.
class GraphBuilder {
public:
  explicit GraphBuilder(std::shared_ptr<const TypeHierarchy> hier);

  auto add(TypeId type) -> NodeIdx;
  auto add_word(Symbol form) -> NodeIdx;
  // Proper list of the given elements; with a tail, the spine is prefixed to
  // it and the tail node itself is shared, never copied.
  auto add_list(std::span<const NodeIdx> elems) -> NodeIdx;
  auto add_list(std::span<const NodeIdx> elems, NodeIdx tail) -> NodeIdx;
  void set_arc(NodeIdx from, Symbol label, NodeIdx to);

  // Copies the node's whole graph into the builder; returns the root image.
  auto import(const FeatureStructure& fs) -> NodeIdx;
  // Copies every node of `g`; result maps source index to image.
  auto import_graph(const Graph& g) -> std::vector<NodeIdx>;

  [[nodiscard]] auto resolve(NodeIdx n) -> NodeIdx { return find(n); }
  auto get(NodeIdx n, Symbol label) -> std::optional<NodeIdx>;
  auto type_of(NodeIdx n) -> TypeId;
  auto word_of(NodeIdx n) -> Symbol;
  // Elements of a proper list; nullopt when the tail is still a variable.
  auto list_elements(NodeIdx n) -> std::optional<std::vector<NodeIdx>>;

  // Destructive unification of two builder nodes (types meet in the
  // hierarchy, arcs merge recursively). On failure the builder's contents
  // are unspecified; discard it.
  auto unify(NodeIdx a, NodeIdx b, UnifyFailure* why) -> bool;

  struct Frozen {
    std::shared_ptr<const Graph> graph;
    std::vector<NodeIdx> roots;  // images of the requested roots, in order
  };
  // Occurs check plus compaction over everything reachable from `roots`.
  // Returns nullopt (with `why->cycle` set) if unification created a loop.
  auto freeze(std::span<const NodeIdx> roots, UnifyFailure* why) -> std::optional<Frozen>;

  [[nodiscard]] auto hierarchy() const -> const std::shared_ptr<const TypeHierarchy>& {
    return hier_;
  }

private:
  struct BNode {
    TypeId type;
    Symbol word;
    std::vector<Arc> arcs;
    NodeIdx fwd = kNoNode;  // union-find forwarding; kNoNode = representative
  };

  auto find(NodeIdx n) -> NodeIdx;
  auto unify_nodes(NodeIdx a, NodeIdx b, std::vector<Symbol>& path, UnifyFailure* why) -> bool;

  std::vector<BNode> nodes_;
  std::shared_ptr<const TypeHierarchy> hier_;
};

// Persistent unification: operands are untouched, the result is a fresh
// structure. Requires both operands to share one TypeHierarchy object.
auto unify(const FeatureStructure& a, const FeatureStructure& b) -> UnifyResult;

// True iff `a` subsumes `b`: some root-preserving mapping of a's nodes onto
// b's is arc-compatible, type-weakening, and preserves reentrancy. Works
// across hierarchies by matching type names.
auto subsumes(const FeatureStructure& a, const FeatureStructure& b) -> bool;

// Mutual subsumption.
auto iso(const FeatureStructure& a, const FeatureStructure& b) -> bool;

// Fresh non-empty list cell in a new graph: FIRST is (a copy of) `elem`,
// REST shares the imported `tail`, which must be a list node.
auto cons(const FeatureStructure& elem, const FeatureStructure& tail) -> FeatureStructure;

// List views over frozen graphs.
auto is_list(NodeRef n) -> bool;
auto is_empty_list(NodeRef n) -> bool;
// Elements of a proper list; nullopt if the node is not a list or the tail
// is an uninstantiated list variable.
auto list_elements(NodeRef n) -> std::optional<std::vector<NodeRef>>;
auto list_length(NodeRef n) -> std::optional<std::size_t>;

}  // namespace hpsg
