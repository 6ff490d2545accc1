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

#include "icdn/ndn/packet.hpp"

#include <algorithm>
#include <stdexcept>

namespace icdn::ndn {

Data
Data::make(Name name, Bytes payload, std::uint32_t freshness_ms,
           std::optional<std::uint32_t> final_segment)
{
  Data d;
  d.name = std::move(name);
  d.digest = compute_digest(payload);
  d.payload = std::move(payload);
  d.freshness_ms = freshness_ms;
  d.final_segment = final_segment;
  return d;
}

std::vector<Data>
chunk_content(const Name& base, std::span<const std::uint8_t> payload,
              std::uint32_t chunk_size, std::uint32_t freshness_ms)
{
  if (chunk_size == 0) {
    throw std::invalid_argument("chunk_size must be at least 1");
  }
  const std::uint32_t count = segment_count(payload.size(), chunk_size);
  const std::uint32_t last = count - 1;

  std::vector<Data> segments;
  segments.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t begin = static_cast<std::size_t>(i) * chunk_size;
    const std::size_t end = std::min(begin + chunk_size, payload.size());
    Bytes piece(payload.begin() + static_cast<std::ptrdiff_t>(std::min(begin, payload.size())),
                payload.begin() + static_cast<std::ptrdiff_t>(end));
    segments.push_back(Data::make(base.segment(i), std::move(piece), freshness_ms, last));
  }
  return segments;
}

} // namespace icdn::ndn
