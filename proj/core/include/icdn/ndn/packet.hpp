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

#ifndef ICDN_NDN_PACKET_HPP
#define ICDN_NDN_PACKET_HPP

#include "icdn/ndn/digest.hpp"
#include "icdn/ndn/name.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace icdn::ndn {

using Bytes = std::vector<std::uint8_t>;

struct Interest
{
  static constexpr std::uint32_t default_lifetime_ms = 4000;
  static constexpr std::uint8_t default_hop_limit = 32;

  Name name;
  std::uint64_t nonce = 0;
  std::uint32_t lifetime_ms = default_lifetime_ms;
  std::uint8_t hop_limit = default_hop_limit;

  friend bool operator==(const Interest&, const Interest&) = default;
};

struct Data
{
  Name name;
  Bytes payload;
  Digest digest{};
  std::uint32_t freshness_ms = 0;
  std::optional<std::uint32_t> final_segment;

  /// Builds a Data whose digest field matches its payload.
  static Data make(Name name, Bytes payload, std::uint32_t freshness_ms,
                   std::optional<std::uint32_t> final_segment = std::nullopt);

  bool digest_valid() const { return compute_digest(payload) == digest; }

  friend bool operator==(const Data&, const Data&) = default;
};

/// Data packets are immutable once built and shared between tables and links.
using DataPtr = std::shared_ptr<const Data>;

/**
 * Splits @p payload into named segments under @p base.
 *
 * Always yields at least one segment; an empty payload publishes a single
 * empty segment so the final-segment marker exists for every content.
 */
std::vector<Data> chunk_content(const Name& base, std::span<const std::uint8_t> payload,
                                std::uint32_t chunk_size, std::uint32_t freshness_ms);

inline std::uint32_t
segment_count(std::uint64_t size, std::uint32_t chunk_size)
{
  return size == 0 ? 1 : static_cast<std::uint32_t>((size + chunk_size - 1) / chunk_size);
}

} // namespace icdn::ndn

#endif // ICDN_NDN_PACKET_HPP
