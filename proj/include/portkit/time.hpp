#pragma once

#include <chrono>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>

#include "portkit/errors.hpp"

namespace portkit {

// Simulation time is kept in integer microseconds so TTL boundaries and trig
// deadlines compare exactly. Seconds (double) appear only at the API surface.

struct Duration {
  std::int64_t us = 0;

  static Duration from_seconds(double s) {
    return Duration{static_cast<std::int64_t>(std::llround(s * 1e6))};
  }
  double seconds() const { return static_cast<double>(us) * 1e-6; }

  auto operator<=>(const Duration&) const = default;
  Duration operator+(Duration o) const { return Duration{us + o.us}; }
};

struct TimePoint {
  std::int64_t us = 0;

  static TimePoint from_seconds(double s) {
    return TimePoint{static_cast<std::int64_t>(std::llround(s * 1e6))};
  }
  double seconds() const { return static_cast<double>(us) * 1e-6; }

  auto operator<=>(const TimePoint&) const = default;
  TimePoint operator+(Duration d) const { return TimePoint{us + d.us}; }
  Duration operator-(TimePoint o) const { return Duration{us - o.us}; }
};

/// Renders a time point the way trace lines expect it: seconds with
/// millisecond precision.
inline std::string format_time(TimePoint t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", t.seconds());
  return buf;
}

enum class ClockMode { Virtual, Real };

/// Time source for a bus. Virtual clocks move only through advance*(); real
/// clocks read the wall clock relative to construction.
class Clock {
 public:
  explicit Clock(ClockMode mode = ClockMode::Virtual)
      : mode_(mode), epoch_(std::chrono::steady_clock::now()) {}

  ClockMode mode() const { return mode_; }

  TimePoint now() const {
    if (mode_ == ClockMode::Real) {
      auto elapsed = std::chrono::steady_clock::now() - epoch_;
      return TimePoint{
          std::chrono::duration_cast<std::chrono::microseconds>(elapsed)
              .count()};
    }
    return now_;
  }

  /// Virtual mode only. Moves time forward by `dt` and returns the new now.
  TimePoint advance(Duration dt) {
    if (dt.us < 0) throw NegativeStep(dt.seconds());
    require_virtual();
    now_ = now_ + dt;
    return now_;
  }

  /// Virtual mode only. Jumps to an absolute instant (never backwards).
  void advance_to(TimePoint t) {
    require_virtual();
    if (t < now_) throw NegativeStep((t - now_).seconds());
    now_ = t;
  }

 private:
  void require_virtual() const {
    if (mode_ != ClockMode::Virtual)
      throw Error("explicit advance requires a virtual clock");
  }

  ClockMode mode_;
  TimePoint now_{};
  std::chrono::steady_clock::time_point epoch_;
};

}  // namespace portkit
