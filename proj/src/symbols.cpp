#include "hpsg/symbols.hpp"

#include <deque>
#include <mutex>
#include <string>
#include <unordered_map>

namespace hpsg {
namespace {

struct Interner {
  std::mutex mu;
  std::deque<std::string> texts;  // deque: stable references for the views below
  std::unordered_map<std::string_view, std::uint32_t> index;
};

auto interner() -> Interner& {
  static Interner in;
  return in;
}

}  // namespace

auto Symbol::intern(std::string_view text) -> Symbol {
  auto& in = interner();
  std::lock_guard lock(in.mu);
  if (auto it = in.index.find(text); it != in.index.end()) {
    Symbol s;
    s.id_ = it->second;
    return s;
  }
  in.texts.emplace_back(text);
  auto id = static_cast<std::uint32_t>(in.texts.size() - 1);
  in.index.emplace(in.texts.back(), id);
  Symbol s;
  s.id_ = id;
  return s;
}

auto Symbol::str() const -> std::string_view {
  auto& in = interner();
  std::lock_guard lock(in.mu);
  return in.texts[id_];
}

}  // namespace hpsg
