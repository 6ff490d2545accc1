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

#ifndef ICDN_FW_PIT_HPP
#define ICDN_FW_PIT_HPP

#include "icdn/fw/fib.hpp"

#include <map>
#include <set>

namespace icdn::fw {

struct InRecord
{
  FaceId face;
  std::uint64_t nonce = 0;

  friend auto operator<=>(const InRecord&, const InRecord&) = default;
};

struct PitEntry
{
  ndn::Name name;
  std::set<InRecord> in_records;
  std::set<FaceId> out_faces;
  SimTime deadline = 0;

  /// Distinct downstream faces, ascending.
  std::vector<FaceId> downstream_faces() const;
};

/**
 * Pending Interest Table keyed by exact name.
 *
 * Entries are ordered by name, so everything under a prefix is one
 * contiguous range.
 */
class Pit
{
public:
  PitEntry* find(const ndn::Name& name);

  /// Creates an entry; the name must not already be pending.
  PitEntry& create(const ndn::Name& name, SimTime deadline);

  void erase(const ndn::Name& name);

  /// Removes entries with deadline <= now and returns their names.
  std::vector<ndn::Name> expire(SimTime now);

  /// Removes and returns every entry whose name starts with @p prefix.
  std::vector<PitEntry> take_under(const ndn::Name& prefix);

  std::optional<SimTime> next_deadline() const;

  std::size_t size() const noexcept { return m_entries.size(); }
  bool empty() const noexcept { return m_entries.empty(); }

  const std::map<ndn::Name, PitEntry>& entries() const noexcept { return m_entries; }

private:
  std::map<ndn::Name, PitEntry> m_entries;
  std::set<std::pair<SimTime, ndn::Name>> m_deadlines;
};

} // namespace icdn::fw

#endif // ICDN_FW_PIT_HPP
