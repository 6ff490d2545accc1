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

#ifndef ICDN_FW_CS_HPP
#define ICDN_FW_CS_HPP

#include "icdn/ndn/packet.hpp"
#include "icdn/util/strong_id.hpp"

#include <list>
#include <set>
#include <unordered_map>

namespace icdn::fw {

struct CsEntry
{
  ndn::DataPtr data;
  SimTime inserted_at = 0;
  SimTime last_access = 0;
  std::uint64_t hits = 0;

  bool fresh(SimTime now) const { return now - inserted_at < data->freshness_ms; }
};

/**
 * @brief In-network cache with exact-name lookup.
 *
 * Capacity is counted in payload bytes. Insertion first drops every stale
 * entry, then evicts least-recently-accessed entries until the new payload
 * fits.
 */
class ContentStore
{
public:
  explicit ContentStore(std::uint64_t capacity_bytes)
    : m_capacity(capacity_bytes)
  {}

  /// Fresh entry for @p name, refreshing its recency; stale entries are invisible.
  ndn::DataPtr lookup(SimTime now, const ndn::Name& name);

  /// Inserts @p data and returns the names evicted to make room.
  std::vector<ndn::Name> insert(SimTime now, ndn::DataPtr data);

  const CsEntry* peek(const ndn::Name& name) const;

  std::uint64_t capacity_bytes() const noexcept { return m_capacity; }
  std::uint64_t bytes() const noexcept { return m_bytes; }
  std::size_t size() const noexcept { return m_index.size(); }

  /// Payloads rejected because they alone exceed the capacity.
  std::uint64_t too_large() const noexcept { return m_too_large; }

private:
  struct Slot
  {
    CsEntry entry;
    std::list<ndn::Name>::iterator lru;
    SimTime expires_at;
  };

  void erase(std::unordered_map<ndn::Name, Slot, ndn::NameHash>::iterator it);
  void touch(Slot& slot);

  std::uint64_t m_capacity;
  std::uint64_t m_bytes = 0;
  std::uint64_t m_too_large = 0;
  std::unordered_map<ndn::Name, Slot, ndn::NameHash> m_index;
  std::list<ndn::Name> m_lru; // front = most recent
  std::set<std::pair<SimTime, ndn::Name>> m_expiry;
};

} // namespace icdn::fw

#endif // ICDN_FW_CS_HPP
