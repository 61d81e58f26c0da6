#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "portkit/errors.hpp"

namespace portkit {

/// Default cap on list nesting accepted by the encoder and decoder.
inline constexpr int kMaxValueDepth = 32;

/// The unit of port traffic: a nested structure of integer, float and string
/// atoms and lists thereof. Immutable by convention once placed on the bus.
///
/// Canonical text form: integers in decimal, floats in shortest round-trip
/// notation (always carrying '.', an exponent, or inf/nan), strings in double
/// quotes with `\"` and `\\` escapes, lists space-separated inside parens.
class Value {
 public:
  using List = std::vector<Value>;

  Value() : v_(List{}) {}

  static Value integer(std::int64_t i) { return Value(Repr(i)); }
  static Value real(double d) { return Value(Repr(d)); }
  static Value string(std::string s) { return Value(Repr(std::move(s))); }
  static Value list(List items) { return Value(Repr(std::move(items))); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_real() const { return std::holds_alternative<double>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_list() const { return std::holds_alternative<List>(v_); }

  std::int64_t as_int() const { return get<std::int64_t>("integer"); }
  double as_real() const { return get<double>("float"); }
  const std::string& as_string() const { return get<std::string>("string"); }
  const List& as_list() const { return get<List>("list"); }

  /// Numeric view: ints promote to double. Throws on other kinds.
  double as_number() const {
    if (is_int()) return static_cast<double>(as_int());
    return as_real();
  }
  bool is_number() const { return is_int() || is_real(); }

  bool operator==(const Value& o) const { return v_ == o.v_; }

  /// List nesting depth: atoms are 0, a flat list is 1.
  int depth() const {
    if (!is_list()) return 0;
    int deepest = 0;
    for (const Value& item : as_list()) deepest = std::max(deepest, item.depth());
    return deepest + 1;
  }

 private:
  using Repr = std::variant<std::int64_t, double, std::string, List>;
  explicit Value(Repr r) : v_(std::move(r)) {}

  template <typename T>
  const T& get(const char* what) const {
    const T* p = std::get_if<T>(&v_);
    if (!p) throw Error(std::string("value is not a ") + what);
    return *p;
  }

  Repr v_;
};

namespace detail {

inline void encode_real(double d, std::string& out) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  out += text;
  // Keep float atoms distinguishable from integer atoms on re-parse.
  if (text.find_first_of(".eEniNI") == std::string_view::npos) out += ".0";
}

inline void encode_string(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

inline void encode_into(const Value& v, std::string& out, int depth,
                        int max_depth) {
  if (v.is_list()) {
    if (depth + 1 > max_depth) throw DepthExceeded(max_depth);
    out += '(';
    bool first = true;
    for (const Value& item : v.as_list()) {
      if (!first) out += ' ';
      first = false;
      encode_into(item, out, depth + 1, max_depth);
    }
    out += ')';
  } else if (v.is_int()) {
    out += std::to_string(v.as_int());
  } else if (v.is_real()) {
    encode_real(v.as_real(), out);
  } else {
    encode_string(v.as_string(), out);
  }
}

/// Recursive-descent reader over the canonical text form.
class ValueReader {
 public:
  ValueReader(std::string_view text, int max_depth)
      : text_(text), max_depth_(max_depth) {}

  Value read_document() {
    skip_ws();
    Value v = read_value(0);
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return v;
  }

  /// Reads one value and stops; trailing input stays unconsumed.
  Value read_prefix() {
    skip_ws();
    return read_value(0);
  }

  std::size_t position() const { return pos_; }

 private:
  Value read_value(int depth) {
    if (pos_ >= text_.size()) throw ParseError(pos_, "a value");
    char c = text_[pos_];
    if (c == '(') return read_list(depth);
    if (c == '"') return read_string();
    if (c == ')') throw ParseError(pos_, "a value");
    return read_number();
  }

  Value read_list(int depth) {
    if (depth + 1 > max_depth_)
      throw ParseError(pos_, "nesting depth <= " + std::to_string(max_depth_));
    ++pos_;  // '('
    Value::List items;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError(pos_, "')'");
      if (text_[pos_] == ')') {
        ++pos_;
        return Value::list(std::move(items));
      }
      items.push_back(read_value(depth + 1));
    }
  }

  Value read_string() {
    ++pos_;  // '"'
    std::string s;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (c == '"') return Value::string(std::move(s));
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError(pos_, "escape character");
        char e = text_[pos_++];
        if (e != '"' && e != '\\')
          throw ParseError(pos_ - 1, "'\"' or '\\' after backslash");
        s += e;
      } else {
        s += c;
      }
    }
    throw ParseError(pos_, "'\"'");
  }

  Value read_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    std::string_view tok = text_.substr(start, pos_ - start);
    bool looks_integral =
        tok.find_first_of(".eEniNI") == std::string_view::npos;
    if (looks_integral) {
      std::int64_t i = 0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), i);
      if (res.ec == std::errc() && res.ptr == tok.data() + tok.size())
        return Value::integer(i);
    }
    double d = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (res.ec == std::errc() && res.ptr == tok.data() + tok.size())
      return Value::real(d);
    throw ParseError(start, "a number");
  }

  static bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }
  static bool is_delimiter(char c) {
    return is_ws(c) || c == '(' || c == ')' || c == '"';
  }
  void skip_ws() {
    while (pos_ < text_.size() && is_ws(text_[pos_])) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_depth_;
};

}  // namespace detail

inline std::string encode_value(const Value& v, int max_depth = kMaxValueDepth) {
  std::string out;
  detail::encode_into(v, out, 0, max_depth);
  return out;
}

inline Value decode_value(std::string_view text, int max_depth = kMaxValueDepth) {
  return detail::ValueReader(text, max_depth).read_document();
}

/// Decodes the first value in `text`; sets `consumed` to the bytes read.
inline Value decode_value_prefix(std::string_view text, std::size_t& consumed,
                                 int max_depth = kMaxValueDepth) {
  detail::ValueReader reader(text, max_depth);
  Value v = reader.read_prefix();
  consumed = reader.position();
  return v;
}

/// Convenience builder for 3D position payloads.
inline Value make_pos3d(double x, double y, double z) {
  return Value::list({Value::real(x), Value::real(y), Value::real(z)});
}

}  // namespace portkit
