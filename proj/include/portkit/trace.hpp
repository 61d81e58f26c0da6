#pragma once

#include <cmath>
#include <cstddef>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "portkit/time.hpp"
#include "portkit/value.hpp"

namespace portkit {

enum class TraceKind {
  Deliver,
  Discard,
  EventSet,
  EventUnset,
  EventExpire,
  Action,
  Fault,
};

inline const char* to_string(TraceKind k) {
  switch (k) {
    case TraceKind::Deliver: return "DELIVER";
    case TraceKind::Discard: return "DISCARD";
    case TraceKind::EventSet: return "EVENT_SET";
    case TraceKind::EventUnset: return "EVENT_UNSET";
    case TraceKind::EventExpire: return "EVENT_EXPIRE";
    case TraceKind::Action: return "ACTION";
    case TraceKind::Fault: return "FAULT";
  }
  return "?";
}

inline std::optional<TraceKind> trace_kind_from(std::string_view s) {
  for (TraceKind k :
       {TraceKind::Deliver, TraceKind::Discard, TraceKind::EventSet,
        TraceKind::EventUnset, TraceKind::EventExpire, TraceKind::Action,
        TraceKind::Fault}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

struct TraceLine {
  TimePoint time;
  TraceKind kind;
  std::string label;  // connection label, or module name for ACTION lines
  std::string text;

  std::string render() const {
    std::string out = format_time(time);
    out += ' ';
    out += to_string(kind);
    out += ' ';
    out += label;
    if (!text.empty()) {
      out += ' ';
      out += text;
    }
    return out;
  }
};

/// Append-only record of everything observable in a run: deliveries,
/// discards, event mutations and stub actions. The rendered form is the
/// golden-file format.
class TraceLog {
 public:
  void append(TimePoint t, TraceKind kind, std::string label,
              std::string text) {
    std::lock_guard lock(mu_);
    lines_.push_back(TraceLine{t, kind, std::move(label), std::move(text)});
  }

  std::vector<TraceLine> lines() const {
    std::lock_guard lock(mu_);
    return lines_;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return lines_.size();
  }

  std::string render() const {
    std::lock_guard lock(mu_);
    std::string out;
    for (const TraceLine& line : lines_) {
      out += line.render();
      out += '\n';
    }
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::vector<TraceLine> lines_;
};

struct LogDivergence {
  std::size_t line_number = 0;  // 1-based; 0 for length mismatch at the end
  std::string expected;
  std::string actual;
  std::string reason;
};

namespace detail {

struct ParsedLogLine {
  double time = 0;
  std::string kind;
  std::string label;
  std::string rest;
  bool well_formed = false;
};

inline ParsedLogLine parse_log_line(const std::string& line) {
  ParsedLogLine p;
  std::istringstream in(line);
  std::string time_tok;
  if (!(in >> time_tok >> p.kind >> p.label)) return p;
  try {
    std::size_t used = 0;
    p.time = std::stod(time_tok, &used);
    if (used != time_tok.size()) return p;
  } catch (...) {
    return p;
  }
  if (!trace_kind_from(p.kind)) return p;
  std::getline(in, p.rest);
  if (!p.rest.empty() && p.rest.front() == ' ') p.rest.erase(0, 1);
  p.well_formed = true;
  return p;
}

/// Compares the free-text tail of two lines, treating a leading payload
/// structurally (re-encoded canonically) and the remainder verbatim.
inline bool log_rest_equal(const std::string& a, const std::string& b) {
  if (a == b) return true;
  auto starts_payload = [](const std::string& s) {
    if (s.empty()) return false;
    char c = s.front();
    return c == '(' || c == '"' || c == '-' || (c >= '0' && c <= '9');
  };
  if (!starts_payload(a) || !starts_payload(b)) return false;
  try {
    std::size_t ca = 0, cb = 0;
    Value va = decode_value_prefix(a, ca);
    Value vb = decode_value_prefix(b, cb);
    if (encode_value(va) != encode_value(vb)) return false;
    return a.substr(ca) == b.substr(cb);
  } catch (const Error&) {
    return false;
  }
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace detail

/// Line-by-line comparison of two rendered logs. Timestamps match within
/// 1e-6 s; payloads are compared after canonical re-encoding; everything
/// else must match verbatim.
inline std::vector<LogDivergence> diff_logs(std::string_view expected,
                                            std::string_view actual) {
  std::vector<LogDivergence> out;
  auto exp_lines = detail::split_lines(expected);
  auto act_lines = detail::split_lines(actual);
  std::size_t n = std::max(exp_lines.size(), act_lines.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= exp_lines.size() || i >= act_lines.size()) {
      out.push_back({i + 1, i < exp_lines.size() ? exp_lines[i] : "<end>",
                     i < act_lines.size() ? act_lines[i] : "<end>",
                     "log lengths differ"});
      continue;
    }
    const std::string& e = exp_lines[i];
    const std::string& a = act_lines[i];
    if (e == a) continue;
    auto pe = detail::parse_log_line(e);
    auto pa = detail::parse_log_line(a);
    std::string reason;
    if (!pe.well_formed || !pa.well_formed) {
      reason = "unparseable line";
    } else if (std::fabs(pe.time - pa.time) > 1e-6) {
      reason = "timestamp mismatch";
    } else if (pe.kind != pa.kind) {
      reason = "event kind mismatch";
    } else if (pe.label != pa.label) {
      reason = "label mismatch";
    } else if (!detail::log_rest_equal(pe.rest, pa.rest)) {
      reason = "content mismatch";
    } else {
      continue;  // equal up to tolerance and canonical re-encoding
    }
    out.push_back({i + 1, e, a, reason});
  }
  return out;
}

}  // namespace portkit
