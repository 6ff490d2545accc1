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

#include "icdn/fw/forwarder.hpp"

#include <algorithm>
#include <string>

namespace icdn::fw {

std::string_view
to_string(DropReason reason) noexcept
{
  switch (reason) {
    case DropReason::Loop: return "loop";
    case DropReason::NoRoute: return "no-route";
    case DropReason::Integrity: return "integrity";
    case DropReason::Unsolicited: return "unsolicited";
  }
  return "unknown";
}

bool
NonceMemory::seen(const ndn::Name& name, std::uint64_t nonce) const
{
  auto it = m_windows.find(name);
  return it != m_windows.end() && it->second.members.contains(nonce);
}

bool
NonceMemory::record(const ndn::Name& name, std::uint64_t nonce)
{
  Window& w = m_windows[name];
  if (!w.members.insert(nonce).second) {
    return false;
  }
  w.order.push_back(nonce);
  if (w.order.size() > m_capacity) {
    w.members.erase(w.order.front());
    w.order.pop_front();
  }
  return true;
}

Forwarder::Forwarder(Config config)
  : m_cs(config.cs_capacity_bytes)
  , m_nonces(config.nonce_memory)
{
}

void
Forwarder::register_face(FaceId face)
{
  if (!m_faces.insert(face).second) {
    throw DuplicateFace("face " + std::to_string(face.value) + " already registered");
  }
}

void
Forwarder::require_face(FaceId face) const
{
  if (!m_faces.contains(face)) {
    throw UnknownFace("face " + std::to_string(face.value) + " is not registered");
  }
}

Drop
Forwarder::drop(DropReason reason, const ndn::Name& name)
{
  ++m_counters.drops[static_cast<std::size_t>(reason)];
  return Drop{reason, name};
}

bool
Forwarder::is_loop(const ndn::Interest& interest)
{
  if (interest.hop_limit == 0) {
    return true;
  }
  return !m_nonces.record(interest.name, interest.nonce);
}

const NextHop*
Forwarder::choose_next_hop(const FibEntry& entry, FaceId arrival) const
{
  const NextHop* best = nullptr;
  for (const auto& hop : entry.next_hops) {
    if (hop.face == arrival) {
      continue;
    }
    if (best == nullptr || hop.cost < best->cost ||
        (hop.cost == best->cost && hop.face < best->face)) {
      best = &hop;
    }
  }
  return best;
}

bool
Forwarder::pit_record(SimTime now, FaceId face, const ndn::Interest& interest)
{
  if (PitEntry* entry = m_pit.find(interest.name)) {
    entry->in_records.insert({face, interest.nonce});
    ++m_counters.aggregated;
    return false;
  }
  PitEntry& entry = m_pit.create(interest.name, now + interest.lifetime_ms);
  entry.in_records.insert({face, interest.nonce});
  return true;
}

Actions
Forwarder::on_interest(SimTime now, FaceId face, const ndn::Interest& interest)
{
  require_face(face);
  pit_expire(now);

  if (is_loop(interest)) {
    return {drop(DropReason::Loop, interest.name)};
  }

  if (ndn::DataPtr cached = m_cs.lookup(now, interest.name)) {
    ++m_counters.cs_hits;
    return {SendData{face, std::move(cached)}};
  }
  ++m_counters.cs_misses;

  if (PitEntry* entry = m_pit.find(interest.name)) {
    entry->in_records.insert({face, interest.nonce});
    ++m_counters.aggregated;
    return {};
  }

  const FibEntry* route = m_fib.longest_prefix_match(interest.name);
  const NextHop* hop = route != nullptr ? choose_next_hop(*route, face) : nullptr;
  if (hop == nullptr) {
    return {drop(DropReason::NoRoute, interest.name)};
  }
  if (interest.hop_limit <= 1) {
    // forwarding would emit hop_limit 0
    return {drop(DropReason::Loop, interest.name)};
  }

  PitEntry& entry = m_pit.create(interest.name, now + interest.lifetime_ms);
  entry.in_records.insert({face, interest.nonce});
  entry.out_faces.insert(hop->face);

  ndn::Interest out = interest;
  --out.hop_limit;
  return {SendInterest{hop->face, std::move(out)}};
}

Actions
Forwarder::on_data(SimTime now, FaceId face, const ndn::DataPtr& data)
{
  require_face(face);
  pit_expire(now);

  if (!data->digest_valid()) {
    return {drop(DropReason::Integrity, data->name)};
  }

  PitEntry* entry = m_pit.find(data->name);
  if (entry == nullptr) {
    return {drop(DropReason::Unsolicited, data->name)};
  }

  m_cs.insert(now, data);

  // one copy per in-record: several consumers may share a face
  Actions actions;
  for (const InRecord& rec : entry->in_records) {
    if (rec.face != face) {
      actions.emplace_back(SendData{rec.face, data});
    }
  }
  m_pit.erase(data->name);
  return actions;
}

std::vector<ndn::Name>
Forwarder::pit_expire(SimTime now)
{
  auto expired = m_pit.expire(now);
  m_counters.pit_timeouts += expired.size();
  return expired;
}

} // namespace icdn::fw
