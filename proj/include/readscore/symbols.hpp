#pragma once

#include <cstdint>
#include <optional>

namespace readscore {

// The stream alphabet has 29 symbols: the 26 letters, an unknown/blank frame,
// the word separator and the apostrophe. One canonical byte encodes each.
inline constexpr char kUnknownCode = '-';
inline constexpr char kSeparatorCode = ' ';
inline constexpr char kApostropheCode = '\'';
inline constexpr int kAlphabetSize = 29;

enum class SymbolClass : std::uint8_t { Letter, Apostrophe, Separator, Unknown };

constexpr bool is_letter_code(char c) { return c >= 'a' && c <= 'z'; }

constexpr bool is_canonical_code(char c) {
  return is_letter_code(c) || c == kUnknownCode || c == kSeparatorCode ||
         c == kApostropheCode;
}

// Active = articulated frame (letter or apostrophe). InActive = the unknown
// frame. The separator belongs to neither class; it only counts toward the
// stream total.
constexpr bool is_active_code(char c) {
  return is_letter_code(c) || c == kApostropheCode;
}
constexpr bool is_inactive_code(char c) { return c == kUnknownCode; }
constexpr bool is_separator_code(char c) { return c == kSeparatorCode; }

constexpr std::optional<SymbolClass> classify_code(char c) {
  if (is_letter_code(c)) return SymbolClass::Letter;
  if (c == kApostropheCode) return SymbolClass::Apostrophe;
  if (c == kSeparatorCode) return SymbolClass::Separator;
  if (c == kUnknownCode) return SymbolClass::Unknown;
  return std::nullopt;
}

/// One validated member of the 29-symbol alphabet.
class Symbol {
 public:
  static constexpr std::optional<Symbol> from_code(char c) {
    if (!is_canonical_code(c)) return std::nullopt;
    return Symbol(c);
  }

  constexpr char code() const { return code_; }
  constexpr SymbolClass cls() const { return *classify_code(code_); }
  constexpr bool active() const { return is_active_code(code_); }
  constexpr bool inactive() const { return is_inactive_code(code_); }
  constexpr bool separator() const { return is_separator_code(code_); }

  friend constexpr bool operator==(Symbol, Symbol) = default;

 private:
  explicit constexpr Symbol(char c) : code_(c) {}
  friend class AlphabetStream;

  char code_;
};

}  // namespace readscore
