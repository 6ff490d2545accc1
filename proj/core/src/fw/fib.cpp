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

#include "icdn/fw/fib.hpp"

#include <algorithm>

namespace icdn::fw {

void
Fib::insert(const ndn::Name& prefix, std::vector<NextHop> next_hops)
{
  if (next_hops.empty()) {
    throw std::invalid_argument("FIB entry for " + prefix.to_uri() + " needs at least one next hop");
  }
  m_trie.insert(prefix, FibEntry{prefix, std::move(next_hops)});
}

void
Fib::add_next_hop(const ndn::Name& prefix, NextHop hop)
{
  FibEntry* entry = m_trie.find(prefix);
  if (entry == nullptr) {
    insert(prefix, {hop});
    return;
  }
  auto it = std::find_if(entry->next_hops.begin(), entry->next_hops.end(),
                         [&](const NextHop& h) { return h.face == hop.face; });
  if (it != entry->next_hops.end()) {
    it->cost = hop.cost;
  }
  else {
    entry->next_hops.push_back(hop);
  }
}

void
Fib::remove(const ndn::Name& prefix)
{
  if (!m_trie.erase(prefix)) {
    throw UnknownPrefix("no FIB entry for " + prefix.to_uri());
  }
}

void
Fib::remove_face(FaceId face)
{
  std::vector<ndn::Name> emptied;
  std::vector<ndn::Name> touched;
  m_trie.for_each([&](const ndn::Name& prefix, const FibEntry& entry) {
    if (std::any_of(entry.next_hops.begin(), entry.next_hops.end(),
                    [&](const NextHop& h) { return h.face == face; })) {
      touched.push_back(prefix);
    }
  });
  for (const auto& prefix : touched) {
    FibEntry* entry = m_trie.find(prefix);
    std::erase_if(entry->next_hops, [&](const NextHop& h) { return h.face == face; });
    if (entry->next_hops.empty()) {
      m_trie.erase(prefix);
    }
  }
}

const FibEntry*
Fib::longest_prefix_match(const ndn::Name& name) const
{
  auto match = m_trie.longest_prefix(name);
  return match ? match->second : nullptr;
}

std::vector<FibEntry>
Fib::entries() const
{
  std::vector<FibEntry> out;
  out.reserve(m_trie.size());
  m_trie.for_each([&](const ndn::Name&, const FibEntry& e) { out.push_back(e); });
  return out;
}

} // namespace icdn::fw
