#include "hpsg/text.hpp"

#include <cctype>
#include <cstdint>

namespace hpsg {

namespace {

// Decodes one UTF-8 sequence starting at text[i]; advances i. Returns
// the code point, or the raw byte value on malformed input (advancing
// by one byte) so that normalization never throws.
auto decode(std::string_view text, std::size_t& i) -> char32_t {
  unsigned char b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return i + k < text.size() &&
           (static_cast<unsigned char>(text[i + k]) & 0xC0U) == 0x80U;
  };
  auto bits = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(text[i + k]) & 0x3FU);
  };
  if ((b0 & 0xE0U) == 0xC0U && cont(1)) {
    char32_t cp = (static_cast<char32_t>(b0 & 0x1FU) << 6) | bits(1);
    i += 2;
    return cp;
  }
  if ((b0 & 0xF0U) == 0xE0U && cont(1) && cont(2)) {
    char32_t cp = (static_cast<char32_t>(b0 & 0x0FU) << 12) | (bits(1) << 6) | bits(2);
    i += 3;
    return cp;
  }
  if ((b0 & 0xF8U) == 0xF0U && cont(1) && cont(2) && cont(3)) {
    char32_t cp = (static_cast<char32_t>(b0 & 0x07U) << 18) | (bits(1) << 12) |
                  (bits(2) << 6) | bits(3);
    i += 4;
    return cp;
  }
  ++i;
  return b0;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0U | (cp >> 6));
    out += static_cast<char>(0x80U | (cp & 0x3FU));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0U | (cp >> 12));
    out += static_cast<char>(0x80U | ((cp >> 6) & 0x3FU));
    out += static_cast<char>(0x80U | (cp & 0x3FU));
  } else {
    out += static_cast<char>(0xF0U | (cp >> 18));
    out += static_cast<char>(0x80U | ((cp >> 12) & 0x3FU));
    out += static_cast<char>(0x80U | ((cp >> 6) & 0x3FU));
    out += static_cast<char>(0x80U | (cp & 0x3FU));
  }
}

struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// U+0300 grave, U+0301 acute, U+0302 circumflex, U+0303 tilde,
// U+0308 diaeresis, U+030A ring, U+0327 cedilla.
constexpr Composition kCompositions[] = {
    {U'a', 0x300, 0xE0}, {U'a', 0x301, 0xE1}, {U'a', 0x302, 0xE2}, {U'a', 0x303, 0xE3},
    {U'a', 0x308, 0xE4}, {U'a', 0x30A, 0xE5}, {U'e', 0x300, 0xE8}, {U'e', 0x301, 0xE9},
    {U'e', 0x302, 0xEA}, {U'e', 0x308, 0xEB}, {U'i', 0x300, 0xEC}, {U'i', 0x301, 0xED},
    {U'i', 0x302, 0xEE}, {U'i', 0x308, 0xEF}, {U'o', 0x300, 0xF2}, {U'o', 0x301, 0xF3},
    {U'o', 0x302, 0xF4}, {U'o', 0x303, 0xF5}, {U'o', 0x308, 0xF6}, {U'u', 0x300, 0xF9},
    {U'u', 0x301, 0xFA}, {U'u', 0x302, 0xFB}, {U'u', 0x308, 0xFC}, {U'n', 0x303, 0xF1},
    {U'c', 0x327, 0xE7}, {U'y', 0x308, 0xFF},
    {U'A', 0x300, 0xC0}, {U'A', 0x301, 0xC1}, {U'A', 0x302, 0xC2}, {U'A', 0x303, 0xC3},
    {U'A', 0x308, 0xC4}, {U'A', 0x30A, 0xC5}, {U'E', 0x300, 0xC8}, {U'E', 0x301, 0xC9},
    {U'E', 0x302, 0xCA}, {U'E', 0x308, 0xCB}, {U'I', 0x300, 0xCC}, {U'I', 0x301, 0xCD},
    {U'I', 0x302, 0xCE}, {U'I', 0x308, 0xCF}, {U'O', 0x300, 0xD2}, {U'O', 0x301, 0xD3},
    {U'O', 0x302, 0xD4}, {U'O', 0x303, 0xD5}, {U'O', 0x308, 0xD6}, {U'U', 0x300, 0xD9},
    {U'U', 0x301, 0xDA}, {U'U', 0x302, 0xDB}, {U'U', 0x308, 0xDC}, {U'N', 0x303, 0xD1},
    {U'C', 0x327, 0xC7},
};

auto compose(char32_t base, char32_t mark) -> char32_t {
  for (const Composition& c : kCompositions) {
    if (c.base == base && c.mark == mark) return c.composed;
  }
  return 0;
}

}  // namespace

auto nfc_normalize(std::string_view text) -> std::string {
  std::vector<char32_t> points;
  points.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) points.push_back(decode(text, i));

  std::string out;
  out.reserve(text.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    char32_t cp = points[k];
    while (k + 1 < points.size()) {
      char32_t composed = compose(cp, points[k + 1]);
      if (composed == 0) break;
      cp = composed;
      ++k;
    }
    encode(cp, out);
  }
  return out;
}

auto tokenize(std::string_view line) -> std::vector<std::string> {
  std::string norm = nfc_normalize(line);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < norm.size()) {
    while (i < norm.size() && std::isspace(static_cast<unsigned char>(norm[i])) != 0) ++i;
    std::size_t start = i;
    while (i < norm.size() && std::isspace(static_cast<unsigned char>(norm[i])) == 0) ++i;
    if (start == i) break;
    std::string_view tok(norm.data() + start, i - start);
    while (!tok.empty() && (tok.back() == '.' || tok.back() == ',')) tok.remove_suffix(1);
    while (!tok.empty() && (tok.front() == '.' || tok.front() == ',')) tok.remove_prefix(1);
    if (!tok.empty()) tokens.emplace_back(tok);
  }
  return tokens;
}

}  // namespace hpsg
