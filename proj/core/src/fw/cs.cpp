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

#include "icdn/fw/cs.hpp"

namespace icdn::fw {

ndn::DataPtr
ContentStore::lookup(SimTime now, const ndn::Name& name)
{
  auto it = m_index.find(name);
  if (it == m_index.end() || !it->second.entry.fresh(now)) {
    return nullptr;
  }
  Slot& slot = it->second;
  slot.entry.last_access = now;
  ++slot.entry.hits;
  touch(slot);
  return slot.entry.data;
}

std::vector<ndn::Name>
ContentStore::insert(SimTime now, ndn::DataPtr data)
{
  std::vector<ndn::Name> evicted;
  const std::uint64_t size = data->payload.size();
  if (size > m_capacity) {
    ++m_too_large;
    return evicted;
  }

  // stale entries go first, before any fresh one is considered
  while (!m_expiry.empty() && m_expiry.begin()->first <= now) {
    ndn::Name victim = m_expiry.begin()->second;
    erase(m_index.find(victim));
    evicted.push_back(std::move(victim));
  }

  auto existing = m_index.find(data->name);
  if (existing != m_index.end()) {
    Slot& slot = existing->second;
    m_bytes -= slot.entry.data->payload.size();
    m_expiry.erase({slot.expires_at, existing->first});
    slot.entry.data = std::move(data);
    slot.entry.inserted_at = now;
    slot.entry.last_access = now;
    slot.expires_at = now + slot.entry.data->freshness_ms;
    m_expiry.emplace(slot.expires_at, existing->first);
    m_bytes += size;
    touch(slot);
    // the replacement may be larger than what it replaced
    while (m_bytes > m_capacity && m_lru.size() > 1) {
      ndn::Name victim = m_lru.back();
      erase(m_index.find(victim));
      evicted.push_back(std::move(victim));
    }
    return evicted;
  }

  while (m_bytes + size > m_capacity && !m_lru.empty()) {
    ndn::Name victim = m_lru.back();
    erase(m_index.find(victim));
    evicted.push_back(std::move(victim));
  }

  m_lru.push_front(data->name);
  Slot slot{CsEntry{data, now, now, 0}, m_lru.begin(), now + data->freshness_ms};
  m_expiry.emplace(slot.expires_at, data->name);
  m_bytes += size;
  m_index.emplace(data->name, std::move(slot));
  return evicted;
}

const CsEntry*
ContentStore::peek(const ndn::Name& name) const
{
  auto it = m_index.find(name);
  return it == m_index.end() ? nullptr : &it->second.entry;
}

void
ContentStore::erase(std::unordered_map<ndn::Name, Slot, ndn::NameHash>::iterator it)
{
  m_bytes -= it->second.entry.data->payload.size();
  m_expiry.erase({it->second.expires_at, it->first});
  m_lru.erase(it->second.lru);
  m_index.erase(it);
}

void
ContentStore::touch(Slot& slot)
{
  m_lru.splice(m_lru.begin(), m_lru, slot.lru);
}

} // namespace icdn::fw
