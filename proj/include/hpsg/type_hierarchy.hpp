#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hpsg/errors.hpp"

namespace hpsg {

// Dense index of a type within one TypeHierarchy.
class TypeId {
public:
  TypeId() = default;
  explicit TypeId(std::uint32_t v) : v_(v) {}

  [[nodiscard]] auto value() const -> std::uint32_t { return v_; }
  [[nodiscard]] auto valid() const -> bool { return v_ != kInvalid; }

  friend auto operator==(TypeId a, TypeId b) -> bool { return a.v_ == b.v_; }
  friend auto operator!=(TypeId a, TypeId b) -> bool { return a.v_ != b.v_; }

private:
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  std::uint32_t v_ = kInvalid;
};

// A finite partial order of atomic types with multiple inheritance.
//
// The order must stay bounded complete: any two types with a common subtype
// have a unique greatest one. This is validated every time a type is declared;
// a violating declaration is rejected and names the offending pair. Meets are
// precomputed, so glb() and subtype_of() are O(1) lookups.
//
// Values are immutable; declare() returns an extended copy. Every hierarchy
// starts with `top` plus the structural types the feature-structure layer
// relies on: `list` with subtypes `elist`/`nelist`, and `word` for word-form
// leaves.
class TypeHierarchy {
public:
  TypeHierarchy();

  // Declares `name` under one or more existing parents and returns the
  // extended hierarchy. Throws HierarchyError on a duplicate name, an unknown
  // parent, or a bounded-completeness violation.
  [[nodiscard]] auto declare(std::string_view name, const std::vector<std::string>& parents) const
      -> TypeHierarchy;

  [[nodiscard]] auto size() const -> std::size_t { return entries_.size(); }
  [[nodiscard]] auto name(TypeId t) const -> std::string_view;
  [[nodiscard]] auto by_name(std::string_view name) const -> TypeId;  // invalid if absent
  [[nodiscard]] auto require(std::string_view name) const -> TypeId;  // throws if absent

  // a <= b in the subtype order (reflexive).
  [[nodiscard]] auto subtype_of(TypeId a, TypeId b) const -> bool;

  // Greatest lower bound; nullopt means the two types are incompatible,
  // which is a normal outcome, not an error.
  [[nodiscard]] auto glb(TypeId a, TypeId b) const -> std::optional<TypeId>;

  [[nodiscard]] auto top() const -> TypeId { return TypeId(0); }
  [[nodiscard]] auto list_type() const -> TypeId { return TypeId(1); }
  [[nodiscard]] auto elist_type() const -> TypeId { return TypeId(2); }
  [[nodiscard]] auto nelist_type() const -> TypeId { return TypeId(3); }
  [[nodiscard]] auto word_type() const -> TypeId { return TypeId(4); }

  // Declaration list in declaration order (name, parent names); lets tests
  // recompute order properties from the raw edges.
  [[nodiscard]] auto declarations() const
      -> std::vector<std::pair<std::string, std::vector<std::string>>>;

private:
  struct Entry {
    std::string name;
    std::vector<TypeId> parents;
    // Reflexive ancestor set; ancestors always have a smaller index, so the
    // bitmap only needs to cover indices up to the entry's own.
    std::vector<bool> up;
  };

  void add_entry(std::string_view name, std::vector<TypeId> parents);
  void rebuild_meets();  // throws HierarchyError when not bounded complete

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> meet_;  // size() * size(); kNoMeet = incompatible
  static constexpr std::uint32_t kNoMeet = 0xffffffffu;
};

}  // namespace hpsg
