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

#ifndef ICDN_FW_FIB_HPP
#define ICDN_FW_FIB_HPP

#include "icdn/fw/name_trie.hpp"
#include "icdn/util/strong_id.hpp"

#include <stdexcept>
#include <vector>

namespace icdn::fw {

struct FaceTag;
/// One adjacency of a forwarder: a link endpoint or a local application.
using FaceId = StrongId<FaceTag>;

struct NextHop
{
  FaceId face;
  std::uint32_t cost = 0;

  friend bool operator==(const NextHop&, const NextHop&) = default;
};

struct FibEntry
{
  ndn::Name prefix;
  std::vector<NextHop> next_hops;
};

class UnknownPrefix : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// Forwarding table with longest-prefix match over name components.
class Fib
{
public:
  /// Installs or replaces the entry for @p prefix. Empty next-hop lists are rejected.
  void insert(const ndn::Name& prefix, std::vector<NextHop> next_hops);

  /// Adds a next hop to an existing or new entry; an existing hop on the same face is updated.
  void add_next_hop(const ndn::Name& prefix, NextHop hop);

  /// Throws UnknownPrefix when no entry exists.
  void remove(const ndn::Name& prefix);

  /// Removes @p face from every entry, dropping entries left without next hops.
  void remove_face(FaceId face);

  const FibEntry* longest_prefix_match(const ndn::Name& name) const;
  const FibEntry* find_exact(const ndn::Name& prefix) const { return m_trie.find(prefix); }

  std::vector<FibEntry> entries() const;
  std::size_t size() const noexcept { return m_trie.size(); }

private:
  NameTrie<FibEntry> m_trie;
};

} // namespace icdn::fw

#endif // ICDN_FW_FIB_HPP
