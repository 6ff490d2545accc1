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

#include "icdn/fw/pit.hpp"

#include <cassert>

namespace icdn::fw {

std::vector<FaceId>
PitEntry::downstream_faces() const
{
  std::vector<FaceId> faces;
  for (const auto& rec : in_records) {
    if (faces.empty() || faces.back() != rec.face) {
      faces.push_back(rec.face);
    }
  }
  // in_records is ordered by (face, nonce), so faces come out sorted and unique
  return faces;
}

PitEntry*
Pit::find(const ndn::Name& name)
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

PitEntry&
Pit::create(const ndn::Name& name, SimTime deadline)
{
  auto [it, inserted] = m_entries.try_emplace(name);
  assert(inserted);
  it->second.name = name;
  it->second.deadline = deadline;
  m_deadlines.emplace(deadline, name);
  return it->second;
}

void
Pit::erase(const ndn::Name& name)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end()) {
    return;
  }
  m_deadlines.erase({it->second.deadline, name});
  m_entries.erase(it);
}

std::vector<ndn::Name>
Pit::expire(SimTime now)
{
  std::vector<ndn::Name> expired;
  while (!m_deadlines.empty() && m_deadlines.begin()->first <= now) {
    auto node = m_deadlines.extract(m_deadlines.begin());
    m_entries.erase(node.value().second);
    expired.push_back(std::move(node.value().second));
  }
  return expired;
}

std::vector<PitEntry>
Pit::take_under(const ndn::Name& prefix)
{
  std::vector<PitEntry> out;
  auto it = m_entries.lower_bound(prefix);
  while (it != m_entries.end() && prefix.is_prefix_of(it->first)) {
    m_deadlines.erase({it->second.deadline, it->first});
    out.push_back(std::move(it->second));
    it = m_entries.erase(it);
  }
  return out;
}

std::optional<SimTime>
Pit::next_deadline() const
{
  if (m_deadlines.empty()) {
    return std::nullopt;
  }
  return m_deadlines.begin()->first;
}

} // namespace icdn::fw
