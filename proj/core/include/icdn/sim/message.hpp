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

#ifndef ICDN_SIM_MESSAGE_HPP
#define ICDN_SIM_MESSAGE_HPP

#include "icdn/ndn/packet.hpp"
#include "icdn/sim/simulator.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace icdn::sim {

struct ByteRange
{
  std::uint64_t begin = 0;
  std::uint64_t end = 0; // exclusive

  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

/// HTTP-like GET carried over IP links; modeled as a fixed-size message.
struct IpRequest
{
  static constexpr std::size_t wire_bytes = 512;

  std::uint64_t flow = 0;
  NodeId src;
  NodeId dst;
  std::string content_id;
  std::string resolution;
  std::optional<ByteRange> range;
};

/// One piece of a response body. Pieces reference a shared immutable body.
struct IpResponse
{
  std::uint64_t flow = 0;
  NodeId src;
  NodeId dst;
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  std::uint64_t total = 0;
  bool last = false;
  std::optional<std::string> error;
  std::shared_ptr<const ndn::Bytes> body;
};

using Payload = std::variant<ndn::Interest, ndn::DataPtr, IpRequest, IpResponse>;

/// Side information that travels with a message but is not part of its wire bytes.
struct Annotation
{
  std::optional<NodeId> served_by;
};

struct Message
{
  Payload payload;
  Annotation note;
};

/// Bytes a message occupies on a link.
std::size_t wire_size(const Payload& payload);

inline bool
is_ip(const Payload& p)
{
  return std::holds_alternative<IpRequest>(p) || std::holds_alternative<IpResponse>(p);
}

NodeId ip_destination(const Payload& p);

} // namespace icdn::sim

#endif // ICDN_SIM_MESSAGE_HPP
