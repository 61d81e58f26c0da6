#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "portkit/errors.hpp"
#include "portkit/symbols.hpp"

namespace portkit {

class ConstraintExpr;
using ConstraintPtr = std::shared_ptr<const ConstraintExpr>;

/// Immutable propositional AST over event symbols.
class ConstraintExpr {
 public:
  enum class Kind { True, False, Var, Not, And, Or };

  static ConstraintPtr const_true() { return make(Kind::True); }
  static ConstraintPtr const_false() { return make(Kind::False); }
  static ConstraintPtr var(std::string name) {
    auto e = make(Kind::Var);
    const_cast<ConstraintExpr&>(*e).name_ = std::move(name);
    return e;
  }
  static ConstraintPtr negation(ConstraintPtr operand) {
    auto e = make(Kind::Not);
    const_cast<ConstraintExpr&>(*e).lhs_ = std::move(operand);
    return e;
  }
  static ConstraintPtr conjunction(ConstraintPtr l, ConstraintPtr r) {
    auto e = make(Kind::And);
    const_cast<ConstraintExpr&>(*e).lhs_ = std::move(l);
    const_cast<ConstraintExpr&>(*e).rhs_ = std::move(r);
    return e;
  }
  static ConstraintPtr disjunction(ConstraintPtr l, ConstraintPtr r) {
    auto e = make(Kind::Or);
    const_cast<ConstraintExpr&>(*e).lhs_ = std::move(l);
    const_cast<ConstraintExpr&>(*e).rhs_ = std::move(r);
    return e;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const ConstraintPtr& lhs() const { return lhs_; }
  const ConstraintPtr& rhs() const { return rhs_; }

 private:
  static ConstraintPtr make(Kind k) {
    auto e = std::make_shared<ConstraintExpr>();
    e->kind_ = k;
    return e;
  }

  Kind kind_ = Kind::True;
  std::string name_;
  ConstraintPtr lhs_;
  ConstraintPtr rhs_;

 public:
  ConstraintExpr() = default;  // use the factories
};

inline bool structurally_equal(const ConstraintPtr& a, const ConstraintPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case ConstraintExpr::Kind::True:
    case ConstraintExpr::Kind::False:
      return true;
    case ConstraintExpr::Kind::Var:
      return a->name() == b->name();
    case ConstraintExpr::Kind::Not:
      return structurally_equal(a->lhs(), b->lhs());
    case ConstraintExpr::Kind::And:
    case ConstraintExpr::Kind::Or:
      return structurally_equal(a->lhs(), b->lhs()) &&
             structurally_equal(a->rhs(), b->rhs());
  }
  return false;
}

inline bool is_const_true(const ConstraintPtr& e) {
  return e && e->kind() == ConstraintExpr::Kind::True;
}

/// Absent symbols evaluate false; everything else is standard boolean logic.
inline bool evaluate(const ConstraintPtr& e,
                     const std::set<std::string>& active) {
  switch (e->kind()) {
    case ConstraintExpr::Kind::True: return true;
    case ConstraintExpr::Kind::False: return false;
    case ConstraintExpr::Kind::Var: return active.count(e->name()) > 0;
    case ConstraintExpr::Kind::Not: return !evaluate(e->lhs(), active);
    case ConstraintExpr::Kind::And:
      return evaluate(e->lhs(), active) && evaluate(e->rhs(), active);
    case ConstraintExpr::Kind::Or:
      return evaluate(e->lhs(), active) || evaluate(e->rhs(), active);
  }
  return false;
}

inline void collect_free_vars(const ConstraintPtr& e,
                              std::set<std::string>& out) {
  switch (e->kind()) {
    case ConstraintExpr::Kind::Var:
      out.insert(e->name());
      break;
    case ConstraintExpr::Kind::Not:
      collect_free_vars(e->lhs(), out);
      break;
    case ConstraintExpr::Kind::And:
    case ConstraintExpr::Kind::Or:
      collect_free_vars(e->lhs(), out);
      collect_free_vars(e->rhs(), out);
      break;
    default:
      break;
  }
}

inline std::set<std::string> free_vars(const ConstraintPtr& e) {
  std::set<std::string> out;
  collect_free_vars(e, out);
  return out;
}

namespace detail {

/// Tokenizer + recursive-descent parser for the constraint grammar:
///   or-expr  := and-expr ('or' and-expr)*
///   and-expr := unary ('and' unary)*
///   unary    := 'not' unary | primary
///   primary  := 'true' | 'false' | ident | '(' or-expr ')'
class ConstraintParser {
 public:
  explicit ConstraintParser(std::string_view text) : text_(text) {}

  ConstraintPtr parse() {
    ConstraintPtr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return e;
  }

 private:
  ConstraintPtr parse_or() {
    ConstraintPtr e = parse_and();
    while (peek_word("or")) {
      consume_word();
      e = ConstraintExpr::disjunction(e, parse_and());
    }
    return e;
  }

  ConstraintPtr parse_and() {
    ConstraintPtr e = parse_unary();
    while (peek_word("and")) {
      consume_word();
      e = ConstraintExpr::conjunction(e, parse_unary());
    }
    return e;
  }

  ConstraintPtr parse_unary() {
    if (peek_word("not")) {
      consume_word();
      return ConstraintExpr::negation(parse_unary());
    }
    return parse_primary();
  }

  ConstraintPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "an expression");
    if (text_[pos_] == '(') {
      ++pos_;
      ConstraintPtr e = parse_or();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError(pos_, "')'");
      ++pos_;
      return e;
    }
    std::size_t start = pos_;
    std::string word = read_word();
    if (word.empty()) throw ParseError(start, "an expression");
    if (word == "true") return ConstraintExpr::const_true();
    if (word == "false") return ConstraintExpr::const_false();
    if (is_reserved_word(word)) throw ParseError(start, "an expression");
    if (!is_identifier(word)) throw ParseError(start, "an identifier");
    return ConstraintExpr::var(std::move(word));
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    std::size_t save = pos_;
    std::string word = read_word();
    pos_ = save;
    return word == w;
  }

  void consume_word() {
    skip_ws();
    read_word();
  }

  std::string read_word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void print_expr(const ConstraintPtr& e, int parent_level,
                       std::string& out) {
  // Precedence levels: or=1, and=2, not=3, atoms=4.
  auto paren = [&](int level, auto&& body) {
    bool need = level < parent_level;
    if (need) out += '(';
    body(level);
    if (need) out += ')';
  };
  switch (e->kind()) {
    case ConstraintExpr::Kind::True: out += "true"; break;
    case ConstraintExpr::Kind::False: out += "false"; break;
    case ConstraintExpr::Kind::Var: out += e->name(); break;
    case ConstraintExpr::Kind::Not:
      paren(3, [&](int level) {
        out += "not ";
        print_expr(e->lhs(), level + 1, out);
      });
      break;
    case ConstraintExpr::Kind::And:
      paren(2, [&](int level) {
        print_expr(e->lhs(), level, out);
        out += " and ";
        print_expr(e->rhs(), level + 1, out);
      });
      break;
    case ConstraintExpr::Kind::Or:
      paren(1, [&](int level) {
        print_expr(e->lhs(), level, out);
        out += " or ";
        print_expr(e->rhs(), level + 1, out);
      });
      break;
  }
}

}  // namespace detail

inline ConstraintPtr parse_constraint(std::string_view text) {
  return detail::ConstraintParser(text).parse();
}

/// Minimally parenthesized canonical form; parse(print(e)) == e structurally.
inline std::string print_constraint(const ConstraintPtr& e) {
  std::string out;
  detail::print_expr(e, 0, out);
  return out;
}

/// Per-arbitrator map from connection label to selection rule. Missing
/// entries read as constant true. Entries keep insertion order so audits
/// report pairs deterministically.
class ConstraintTable {
 public:
  void set(const std::string& label, ConstraintPtr expr) {
    std::lock_guard lock(mu_);
    for (auto& [l, e] : entries_) {
      if (l == label) {
        e = std::move(expr);
        return;
      }
    }
    entries_.emplace_back(label, std::move(expr));
  }

  ConstraintPtr get(const std::string& label) const {
    std::lock_guard lock(mu_);
    for (const auto& [l, e] : entries_)
      if (l == label) return e;
    return ConstraintExpr::const_true();
  }

  void erase(const std::string& label) {
    std::lock_guard lock(mu_);
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
      if (it->first == label) {
        entries_.erase(it);
        return;
      }
    }
  }

  std::vector<std::pair<std::string, ConstraintPtr>> entries() const {
    std::lock_guard lock(mu_);
    return entries_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<std::pair<std::string, ConstraintPtr>> entries_;
};

struct ConsistencyViolation {
  std::string first;   // connection labels
  std::string second;
  std::map<std::string, bool> witness;

  std::string describe() const {
    std::string out = first + " and " + second + " jointly satisfiable with ";
    bool sep = false;
    for (const auto& [var, val] : witness) {
      if (sep) out += ", ";
      sep = true;
      out += var + "=" + (val ? "true" : "false");
    }
    if (witness.empty()) out += "any assignment";
    return out;
  }
};

/// Exhaustively searches for event assignments satisfying two connections'
/// rules at once. Empty result means pairwise mutual exclusion holds.
inline std::vector<ConsistencyViolation> check_consistency(
    const ConstraintTable& table) {
  auto entries = table.entries();
  std::set<std::string> all_vars;
  for (const auto& [label, expr] : entries) collect_free_vars(expr, all_vars);
  if (all_vars.size() > 20) throw TooManyVariables(all_vars.size());

  std::vector<ConsistencyViolation> violations;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      std::set<std::string> pair_vars = free_vars(entries[i].second);
      collect_free_vars(entries[j].second, pair_vars);
      std::vector<std::string> vars(pair_vars.begin(), pair_vars.end());
      std::uint64_t combos = std::uint64_t{1} << vars.size();
      for (std::uint64_t mask = 0; mask < combos; ++mask) {
        std::set<std::string> active;
        for (std::size_t b = 0; b < vars.size(); ++b)
          if (mask & (std::uint64_t{1} << b)) active.insert(vars[b]);
        if (evaluate(entries[i].second, active) &&
            evaluate(entries[j].second, active)) {
          ConsistencyViolation v{entries[i].first, entries[j].first, {}};
          for (std::size_t b = 0; b < vars.size(); ++b)
            v.witness[vars[b]] = (mask & (std::uint64_t{1} << b)) != 0;
          violations.push_back(std::move(v));
          break;  // one witness per pair
        }
      }
    }
  }
  return violations;
}

}  // namespace portkit
