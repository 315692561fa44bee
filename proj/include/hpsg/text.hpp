#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hpsg {

// Composes combining diacritics with their base letter (NFC) for the
// Latin letters that occur in Dutch and German text. Other code points
// pass through unchanged; invalid UTF-8 bytes are kept as-is.
[[nodiscard]] auto nfc_normalize(std::string_view text) -> std::string;

// Splits an input line into word tokens. Tokens are separated by
// whitespace; sentence-final '.' and clause ',' are stripped from token
// edges and discarded. The result is NFC-normalized.
[[nodiscard]] auto tokenize(std::string_view line) -> std::vector<std::string>;

}  // namespace hpsg
