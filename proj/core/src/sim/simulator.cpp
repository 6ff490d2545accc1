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

#include "icdn/sim/simulator.hpp"

#include <bit>
#include <string>

namespace icdn::sim {
namespace {

void
fold(std::uint64_t& h, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (i * 8)) & 0xFF;
    h *= 0x100000001b3ULL;
  }
}

} // namespace

Simulator::EventId
Simulator::schedule(SimTime at, EventKind kind, NodeId node, Callback fn, bool daemon)
{
  if (at < m_now) {
    throw std::logic_error("event scheduled in the past: " + std::to_string(at) + " < " +
                           std::to_string(m_now));
  }
  EventId id = m_seq++;
  m_queue.push(Event{at, id, kind, node, daemon, std::move(fn)});
  m_live.emplace(id, daemon);
  if (!daemon) {
    ++m_regular;
  }
  return id;
}

void
Simulator::cancel(EventId id)
{
  auto it = m_live.find(id);
  if (it == m_live.end()) {
    return;
  }
  if (!it->second) {
    --m_regular;
  }
  m_live.erase(it);
}

void
Simulator::pop_cancelled()
{
  while (!m_queue.empty() && !m_live.contains(m_queue.top().seq)) {
    m_queue.pop();
  }
}

bool
Simulator::step(std::optional<SimTime> limit)
{
  pop_cancelled();
  if (m_queue.empty()) {
    return false;
  }
  if (limit && m_queue.top().time > *limit) {
    return false;
  }
  // priority_queue::top is const; the callback is moved out before pop
  Event ev = std::move(const_cast<Event&>(m_queue.top()));
  m_queue.pop();
  m_live.erase(ev.seq);
  if (!ev.daemon) {
    --m_regular;
  }
  m_now = ev.time;
  ++m_executed;
  fold(m_trace, std::bit_cast<std::uint64_t>(ev.time));
  fold(m_trace, ev.seq);
  fold(m_trace, static_cast<std::uint64_t>(ev.kind));
  fold(m_trace, ev.node.value);
  ev.fn();
  return true;
}

SimTime
Simulator::run_until(SimTime t)
{
  while (step(t)) {
  }
  if (t > m_now) {
    m_now = t;
  }
  return m_now;
}

SimTime
Simulator::run_to_completion(std::optional<SimTime> horizon)
{
  while (m_regular > 0) {
    pop_cancelled();
    if (m_queue.empty()) {
      break;
    }
    if (horizon && m_queue.top().time > *horizon) {
      if (m_queue.top().daemon) {
        // drop housekeeping beyond the horizon; regular work decides the outcome
        m_live.erase(m_queue.top().seq);
        m_queue.pop();
        continue;
      }
      throw HorizonExceeded("simulation horizon " + std::to_string(*horizon) +
                            " ms exceeded with " + std::to_string(m_regular) + " events pending");
    }
    step(std::nullopt);
  }
  return m_now;
}

} // namespace icdn::sim
