#include "hpsg/type_hierarchy.hpp"

#include <algorithm>

namespace hpsg {

TypeHierarchy::TypeHierarchy() {
  add_entry("top", {});
  add_entry("list", {top()});
  add_entry("elist", {list_type()});
  add_entry("nelist", {list_type()});
  add_entry("word", {top()});
  rebuild_meets();
}

void TypeHierarchy::add_entry(std::string_view name, std::vector<TypeId> parents) {
  Entry e;
  e.name = std::string(name);
  e.parents = std::move(parents);
  auto self = static_cast<std::uint32_t>(entries_.size());
  e.up.assign(self + 1, false);
  e.up[self] = true;
  for (TypeId p : e.parents) {
    const auto& pu = entries_[p.value()].up;
    for (std::size_t i = 0; i < pu.size(); ++i) {
      if (pu[i]) e.up[i] = true;
    }
  }
  index_.emplace(e.name, self);
  entries_.push_back(std::move(e));
}

auto TypeHierarchy::declare(std::string_view name, const std::vector<std::string>& parents) const
    -> TypeHierarchy {
  if (index_.contains(std::string(name))) {
    throw HierarchyError("type \"" + std::string(name) + "\" is already declared");
  }
  if (parents.empty()) {
    throw HierarchyError("type \"" + std::string(name) + "\" needs at least one parent");
  }
  std::vector<TypeId> pids;
  pids.reserve(parents.size());
  for (const auto& p : parents) {
    TypeId pid = by_name(p);
    if (!pid.valid()) {
      throw HierarchyError("type \"" + std::string(name) + "\": unknown parent \"" + p + "\"");
    }
    pids.push_back(pid);
  }
  TypeHierarchy next = *this;
  next.add_entry(name, std::move(pids));
  next.rebuild_meets();
  return next;
}

auto TypeHierarchy::name(TypeId t) const -> std::string_view {
  return entries_[t.value()].name;
}

auto TypeHierarchy::by_name(std::string_view name) const -> TypeId {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return TypeId();
  return TypeId(it->second);
}

auto TypeHierarchy::require(std::string_view name) const -> TypeId {
  TypeId t = by_name(name);
  if (!t.valid()) {
    throw HierarchyError("unknown type \"" + std::string(name) + "\"");
  }
  return t;
}

auto TypeHierarchy::subtype_of(TypeId a, TypeId b) const -> bool {
  const auto& up = entries_[a.value()].up;
  return b.value() < up.size() && up[b.value()];
}

auto TypeHierarchy::glb(TypeId a, TypeId b) const -> std::optional<TypeId> {
  std::uint32_t m = meet_[a.value() * entries_.size() + b.value()];
  if (m == kNoMeet) return std::nullopt;
  return TypeId(m);
}

void TypeHierarchy::rebuild_meets() {
  const std::size_t n = entries_.size();
  meet_.assign(n * n, kNoMeet);
  std::vector<std::uint32_t> lower;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      lower.clear();
      for (std::size_t c = 0; c < n; ++c) {
        if (subtype_of(TypeId(static_cast<std::uint32_t>(c)), TypeId(static_cast<std::uint32_t>(a))) &&
            subtype_of(TypeId(static_cast<std::uint32_t>(c)), TypeId(static_cast<std::uint32_t>(b)))) {
          lower.push_back(static_cast<std::uint32_t>(c));
        }
      }
      if (lower.empty()) continue;
      // The meet exists iff the common lower bounds have a single maximal
      // element; two maximal elements make the order ambiguous.
      std::uint32_t the_max = kNoMeet;
      bool unique = true;
      for (std::uint32_t c : lower) {
        bool maximal = std::none_of(lower.begin(), lower.end(), [&](std::uint32_t d) {
          return d != c && subtype_of(TypeId(c), TypeId(d));
        });
        if (!maximal) continue;
        if (the_max != kNoMeet) {
          unique = false;
          break;
        }
        the_max = c;
      }
      if (!unique) {
        throw HierarchyError("hierarchy is not bounded complete: types \"" + entries_[a].name +
                             "\" and \"" + entries_[b].name +
                             "\" have common subtypes but no greatest one");
      }
      meet_[a * n + b] = the_max;
      meet_[b * n + a] = the_max;
    }
  }
}

auto TypeHierarchy::declarations() const
    -> std::vector<std::pair<std::string, std::vector<std::string>>> {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    std::vector<std::string> ps;
    ps.reserve(e.parents.size());
    for (TypeId p : e.parents) ps.emplace_back(entries_[p.value()].name);
    out.emplace_back(e.name, std::move(ps));
  }
  return out;
}

}  // namespace hpsg
