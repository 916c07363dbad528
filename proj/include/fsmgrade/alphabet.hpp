#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsmgrade/error.hpp"

namespace fsmgrade {

using SymbolId = std::uint32_t;

namespace utf8 {

/// Length in bytes of the code point starting with `lead`, or 0 if `lead`
/// cannot start a code point.
inline std::size_t sequence_length(unsigned char lead) noexcept {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 0;
}

/// Splits `text` into code points. Throws Error on malformed UTF-8.
inline std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t len = sequence_length(static_cast<unsigned char>(text[i]));
    if (len == 0 || i + len > text.size()) throw Error("malformed UTF-8 text");
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(text[i + j]) & 0xC0) != 0x80) {
        throw Error("malformed UTF-8 text");
      }
    }
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

inline bool is_single_code_point(std::string_view text) noexcept {
  if (text.empty()) return false;
  const std::size_t len = sequence_length(static_cast<unsigned char>(text[0]));
  if (len != text.size()) return false;
  for (std::size_t j = 1; j < len; ++j) {
    if ((static_cast<unsigned char>(text[j]) & 0xC0) != 0x80) return false;
  }
  return true;
}

}  // namespace utf8

/// The input alphabet of an automaton: a nonempty set of single-character
/// symbols kept sorted by code point. Symbol ids index that sorted order, so
/// comparing ids compares symbols.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error("alphabet must not be empty");
    for (const auto& s : symbols_) {
      if (!utf8::is_single_code_point(s)) {
        throw Error("alphabet symbol '" + s + "' is not a single character");
      }
      const auto lead = static_cast<unsigned char>(s[0]);
      if (lead <= 0x20 || lead == 0x7F) {
        throw Error("alphabet symbols must be visible non-whitespace characters");
      }
    }
    // UTF-8 byte order coincides with code point order.
    std::sort(symbols_.begin(), symbols_.end());
    if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end()) {
      throw Error("alphabet contains duplicate symbols");
    }
    ascii_.fill(kAbsent);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].size() == 1) ascii_[static_cast<unsigned char>(symbols_[i][0])] = i;
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& operator[](SymbolId id) const { return symbols_.at(id); }

  std::optional<SymbolId> find(std::string_view symbol) const noexcept {
    if (symbol.size() == 1) {
      const auto idx = ascii_[static_cast<unsigned char>(symbol[0])];
      if (idx == kAbsent) return std::nullopt;
      return static_cast<SymbolId>(idx);
    }
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
    if (it == symbols_.end() || *it != symbol) return std::nullopt;
    return static_cast<SymbolId>(it - symbols_.begin());
  }

  bool contains(std::string_view symbol) const noexcept { return find(symbol).has_value(); }

  /// Converts a word into symbol ids. Throws UnknownSymbol.
  std::vector<SymbolId> encode(std::string_view word) const {
    std::vector<SymbolId> out;
    out.reserve(word.size());
    for (auto cp : utf8::split(word)) {
      auto id = find(cp);
      if (!id) throw UnknownSymbol(std::string(cp));
      out.push_back(*id);
    }
    return out;
  }

  std::string decode(std::span<const SymbolId> ids) const {
    std::string out;
    for (auto id : ids) out += symbols_.at(id);
    return out;
  }

  /// Shortest first, then lexicographic over the sorted alphabet.
  bool shortlex_less(std::string_view a, std::string_view b) const {
    const auto ea = encode(a);
    const auto eb = encode(b);
    if (ea.size() != eb.size()) return ea.size() < eb.size();
    return ea < eb;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
    return a.symbols_ == b.symbols_;
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::string> symbols_;
  std::array<std::size_t, 256> ascii_{};
};

}  // namespace fsmgrade
