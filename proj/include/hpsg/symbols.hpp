#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

namespace hpsg {

// Globally interned string, used for feature labels and word forms.
// Interning is process-wide and thread-safe; Symbols compare by id.
class Symbol {
public:
  Symbol() = default;

  static auto intern(std::string_view text) -> Symbol;

  [[nodiscard]] auto str() const -> std::string_view;
  [[nodiscard]] auto valid() const -> bool { return id_ != kInvalid; }
  [[nodiscard]] auto id() const -> std::uint32_t { return id_; }

  friend auto operator==(Symbol a, Symbol b) -> bool { return a.id_ == b.id_; }
  friend auto operator!=(Symbol a, Symbol b) -> bool { return a.id_ != b.id_; }

private:
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  std::uint32_t id_ = kInvalid;
};

}  // namespace hpsg

template <>
struct std::hash<hpsg::Symbol> {
  auto operator()(hpsg::Symbol s) const noexcept -> std::size_t {
    return std::hash<std::uint32_t>{}(s.id());
  }
};
