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

#ifndef ICDN_FW_FORWARDER_HPP
#define ICDN_FW_FORWARDER_HPP

#include "icdn/fw/cs.hpp"
#include "icdn/fw/pit.hpp"

#include <array>
#include <deque>
#include <string_view>
#include <unordered_set>
#include <variant>

namespace icdn::fw {

enum class DropReason : std::uint8_t { Loop, NoRoute, Integrity, Unsolicited };
inline constexpr std::size_t drop_reason_count = 4;

std::string_view to_string(DropReason reason) noexcept;

struct SendInterest
{
  FaceId face;
  ndn::Interest interest;
};

struct SendData
{
  FaceId face;
  ndn::DataPtr data;
};

struct Drop
{
  DropReason reason;
  ndn::Name name;
};

using Action = std::variant<SendInterest, SendData, Drop>;
using Actions = std::vector<Action>;

class UnknownFace : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

class DuplicateFace : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ForwarderCounters
{
  std::uint64_t cs_hits = 0;
  std::uint64_t cs_misses = 0;
  std::uint64_t pit_timeouts = 0;
  std::uint64_t aggregated = 0;
  std::array<std::uint64_t, drop_reason_count> drops{};

  std::uint64_t drops_for(DropReason r) const { return drops[static_cast<std::size_t>(r)]; }
};

/// Recent nonces per name, bounded FIFO.
class NonceMemory
{
public:
  explicit NonceMemory(std::size_t per_name_capacity = 1024)
    : m_capacity(per_name_capacity)
  {}

  bool seen(const ndn::Name& name, std::uint64_t nonce) const;

  /// Records the pair; returns false if it was already present.
  bool record(const ndn::Name& name, std::uint64_t nonce);

private:
  struct Window
  {
    std::deque<std::uint64_t> order;
    std::unordered_set<std::uint64_t> members;
  };

  std::size_t m_capacity;
  std::unordered_map<ndn::Name, Window, ndn::NameHash> m_windows;
};

/**
 * @brief NDN node state machine: Content Store, PIT, FIB.
 *
 * Processes one packet per call and reports what should be sent as a list
 * of actions. Nothing here performs I/O, so one instance is driven by a
 * single thread (the simulation loop) and is fully replayable.
 */
class Forwarder
{
public:
  struct Config
  {
    std::uint64_t cs_capacity_bytes = 64ULL << 20;
    std::size_t nonce_memory = 1024;
  };

  Forwarder()
    : Forwarder(Config{})
  {}
  explicit Forwarder(Config config);

  void register_face(FaceId face);
  bool has_face(FaceId face) const { return m_faces.contains(face); }

  void fib_insert(const ndn::Name& prefix, std::vector<NextHop> next_hops) { m_fib.insert(prefix, std::move(next_hops)); }
  void fib_remove(const ndn::Name& prefix) { m_fib.remove(prefix); }
  const FibEntry* fib_longest_prefix_match(const ndn::Name& name) const { return m_fib.longest_prefix_match(name); }

  Actions on_interest(SimTime now, FaceId face, const ndn::Interest& interest);
  Actions on_data(SimTime now, FaceId face, const ndn::DataPtr& data);

  /// Removes timed-out PIT entries and returns their names.
  std::vector<ndn::Name> pit_expire(SimTime now);

  /// Loop check and nonce bookkeeping shared with gateway logic.
  bool is_loop(const ndn::Interest& interest);

  /// Records an interest in the PIT without forwarding it; true if it created the entry.
  bool pit_record(SimTime now, FaceId face, const ndn::Interest& interest);

  std::vector<ndn::Name> cs_insert(SimTime now, ndn::DataPtr data) { return m_cs.insert(now, std::move(data)); }

  Fib& fib() noexcept { return m_fib; }
  const Fib& fib() const noexcept { return m_fib; }
  Pit& pit() noexcept { return m_pit; }
  const Pit& pit() const noexcept { return m_pit; }
  ContentStore& cs() noexcept { return m_cs; }
  const ContentStore& cs() const noexcept { return m_cs; }

  ForwarderCounters& counters() noexcept { return m_counters; }
  const ForwarderCounters& counters() const noexcept { return m_counters; }

  Drop drop(DropReason reason, const ndn::Name& name);

private:
  void require_face(FaceId face) const;
  const NextHop* choose_next_hop(const FibEntry& entry, FaceId arrival) const;

  std::unordered_set<FaceId> m_faces;
  Fib m_fib;
  Pit m_pit;
  ContentStore m_cs;
  NonceMemory m_nonces;
  ForwarderCounters m_counters;
};

} // namespace icdn::fw

#endif // ICDN_FW_FORWARDER_HPP
