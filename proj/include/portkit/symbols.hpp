#pragma once

#include <array>
#include <string_view>

#include "portkit/errors.hpp"

namespace portkit {

/// Keywords of the constraint language; they can never name events.
inline constexpr std::array<std::string_view, 5> kReservedWords = {
    "true", "false", "and", "or", "not"};

inline bool is_reserved_word(std::string_view s) {
  for (std::string_view w : kReservedWords)
    if (s == w) return true;
  return false;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s.front())) return false;
  for (char c : s.substr(1))
    if (!tail(c)) return false;
  return true;
}

/// Validates an event symbol; reserved words are rejected with a dedicated
/// error so callers can tell the two failure modes apart.
inline void require_event_name(std::string_view name) {
  if (!is_identifier(name)) throw InvalidSymbol(std::string(name));
  if (is_reserved_word(name)) throw ReservedWordAsIdentifier(std::string(name));
}

}  // namespace portkit
