#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "portkit/errors.hpp"
#include "portkit/port.hpp"
#include "portkit/symbols.hpp"
#include "portkit/time.hpp"
#include "portkit/trace.hpp"

namespace portkit {

/// Shared store of named symbolic events with infinite or timed lifetimes.
/// Each record is owned by the connection that set it; activity of a name is
/// the disjunction over its owners' unexpired records.
///
/// A timed record is active on the half-open interval [set, set + lifetime):
/// at the exact expiry instant the event is already gone.
class EventContainer {
 public:
  explicit EventContainer(const Clock& clock, TraceLog* trace = nullptr)
      : clock_(&clock), trace_(trace) {}

  void set_event(const std::string& name, const ConnectionId& owner,
                 std::optional<double> lifetime_seconds = std::nullopt) {
    require_event_name(name);
    std::optional<Duration> life;
    if (lifetime_seconds) {
      if (*lifetime_seconds <= 0) throw InvalidLifetime(*lifetime_seconds);
      life = Duration::from_seconds(*lifetime_seconds);
    }
    std::lock_guard lock(mu_);
    TimePoint now = clock_->now();
    Record rec{owner, life ? std::optional<TimePoint>(now + *life)
                           : std::nullopt};
    auto& owners = records_[name];
    bool replaced = false;
    for (Record& r : owners) {
      if (r.owner == owner) {
        r = rec;  // re-set refreshes the expiry
        replaced = true;
        break;
      }
    }
    if (!replaced) owners.push_back(rec);
    if (trace_) {
      std::string text = name + " ttl=";
      text += life ? format_time(TimePoint{life->us}) : "inf";
      trace_->append(now, TraceKind::EventSet, owner.label, text);
    }
  }

  /// Removes only the record owned by `owner`. Returns whether one existed.
  bool unset_event(const std::string& name, const ConnectionId& owner) {
    std::lock_guard lock(mu_);
    auto it = records_.find(name);
    if (it == records_.end()) return false;
    auto& owners = it->second;
    for (auto r = owners.begin(); r != owners.end(); ++r) {
      if (r->owner == owner) {
        owners.erase(r);
        if (owners.empty()) records_.erase(it);
        if (trace_)
          trace_->append(clock_->now(), TraceKind::EventUnset, owner.label,
                         name);
        return true;
      }
    }
    return false;
  }

  /// True iff some record for `name` is unexpired at the current clock time.
  bool is_active(const std::string& name) const {
    std::lock_guard lock(mu_);
    auto it = records_.find(name);
    if (it == records_.end()) return false;
    TimePoint now = clock_->now();
    for (const Record& r : it->second)
      if (!r.expiry || *r.expiry > now) return true;
    return false;
  }

  /// The set of active names. Expired records are purged (and logged) first.
  std::set<std::string> snapshot() {
    std::lock_guard lock(mu_);
    purge_locked();
    std::set<std::string> active;
    for (const auto& [name, owners] : records_)
      if (!owners.empty()) active.insert(name);
    return active;
  }

  /// Drops every expired record, logging EVENT_EXPIRE for each. The bus calls
  /// this at each advance step so expiry lines carry exact timestamps.
  void purge_expired() {
    std::lock_guard lock(mu_);
    purge_locked();
  }

  /// Earliest pending expiry, if any timed record exists.
  std::optional<TimePoint> next_expiry() const {
    std::lock_guard lock(mu_);
    std::optional<TimePoint> next;
    for (const auto& [name, owners] : records_)
      for (const Record& r : owners)
        if (r.expiry && (!next || *r.expiry < *next)) next = r.expiry;
    return next;
  }

  std::size_t record_count() const {
    std::lock_guard lock(mu_);
    std::size_t n = 0;
    for (const auto& [name, owners] : records_) n += owners.size();
    return n;
  }

 private:
  struct Record {
    ConnectionId owner;
    std::optional<TimePoint> expiry;  // absent = infinite lifetime
  };

  void purge_locked() {
    TimePoint now = clock_->now();
    for (auto it = records_.begin(); it != records_.end();) {
      auto& owners = it->second;
      for (auto r = owners.begin(); r != owners.end();) {
        if (r->expiry && *r->expiry <= now) {
          if (trace_)
            trace_->append(now, TraceKind::EventExpire, r->owner.label,
                           it->first);
          r = owners.erase(r);
        } else {
          ++r;
        }
      }
      it = owners.empty() ? records_.erase(it) : std::next(it);
    }
  }

  mutable std::mutex mu_;
  const Clock* clock_;
  TraceLog* trace_;
  std::map<std::string, std::vector<Record>> records_;
};

}  // namespace portkit
