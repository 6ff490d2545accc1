// Copyright 2026 The icdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ICDN_SIM_SIMULATOR_HPP
#define ICDN_SIM_SIMULATOR_HPP

#include "icdn/util/strong_id.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace icdn::sim {

struct NodeTag;
using NodeId = StrongId<NodeTag>;

enum class EventKind : std::uint8_t { Deliver, Timer, FetchComplete, GeneratorFire, Control };

class HorizonExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * @brief Single-threaded discrete-event loop.
 *
 * Events run in (time, seq) order where seq is assigned at scheduling time,
 * so equal-time events run in the order they were scheduled. Daemon events
 * (periodic housekeeping) do not keep run_to_completion() alive on their own.
 */
class Simulator
{
public:
  using EventId = std::uint64_t;
  using Callback = std::function<void()>;

  SimTime now() const noexcept { return m_now; }

  EventId schedule(SimTime at, EventKind kind, NodeId node, Callback fn, bool daemon = false);

  EventId schedule_in(SimTime delay, EventKind kind, NodeId node, Callback fn, bool daemon = false)
  {
    return schedule(m_now + delay, kind, node, std::move(fn), daemon);
  }

  /// Cancelling an event that already ran is a no-op.
  void cancel(EventId id);

  /// Runs every event with time <= t, then advances the clock to t.
  SimTime run_until(SimTime t);

  /**
   * Runs until no regular event remains. Throws HorizonExceeded when the next
   * regular event lies beyond @p horizon.
   */
  SimTime run_to_completion(std::optional<SimTime> horizon = std::nullopt);

  /// Regular (non-daemon) events still queued.
  std::size_t pending() const noexcept { return m_regular; }
  std::uint64_t executed() const noexcept { return m_executed; }

  /// Running hash over every executed event's (time, seq, kind, node).
  std::uint64_t trace_hash() const noexcept { return m_trace; }

private:
  struct Event
  {
    SimTime time;
    std::uint64_t seq;
    EventKind kind;
    NodeId node;
    bool daemon;
    Callback fn;
  };

  struct Later
  {
    bool operator()(const Event& a, const Event& b) const noexcept
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  bool step(std::optional<SimTime> limit);
  void pop_cancelled();

  std::priority_queue<Event, std::vector<Event>, Later> m_queue;
  std::unordered_map<EventId, bool> m_live; // id -> daemon
  SimTime m_now = 0;
  std::uint64_t m_seq = 0;
  std::uint64_t m_executed = 0;
  std::size_t m_regular = 0;
  std::uint64_t m_trace = 0xcbf29ce484222325ULL;
};

} // namespace icdn::sim

#endif // ICDN_SIM_SIMULATOR_HPP
