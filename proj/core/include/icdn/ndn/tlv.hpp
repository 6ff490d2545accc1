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

#ifndef ICDN_NDN_TLV_HPP
#define ICDN_NDN_TLV_HPP

#include "icdn/ndn/packet.hpp"

#include <cstddef>
#include <stdexcept>
#include <variant>

namespace icdn::ndn {

/**
 * Wire format.
 *
 * Every element is TYPE (1 octet) + LENGTH (4 octets, big-endian) + VALUE.
 * Interest = Name Nonce Lifetime HopLimit; Data = Name Payload Digest
 * Freshness [FinalSegment]. Elements appear exactly in that order.
 */
namespace tlv {

enum : std::uint8_t {
  Interest = 0x05,
  Data = 0x06,
  Name = 0x07,
  Component = 0x08,
  Nonce = 0x0A,
  Lifetime = 0x0C,
  Payload = 0x15,
  Freshness = 0x19,
  FinalSegment = 0x1A,
  Digest = 0x1D,
  HopLimit = 0x22,
};

constexpr std::size_t header_size = 5;

} // namespace tlv

enum class DecodeErrorKind { TruncatedPacket, UnknownType, Malformed };

class DecodeError : public std::runtime_error
{
public:
  DecodeError(DecodeErrorKind kind, const std::string& what)
    : std::runtime_error(what)
    , m_kind(kind)
  {}

  DecodeErrorKind kind() const noexcept { return m_kind; }

private:
  DecodeErrorKind m_kind;
};

using Packet = std::variant<Interest, Data>;

Bytes encode_packet(const Interest& interest);
Bytes encode_packet(const Data& data);
Bytes encode_packet(const Packet& packet);

/// Decodes one packet occupying all of @p wire. Digests are not verified here.
Packet decode_packet(std::span<const std::uint8_t> wire);

/// Size of encode_packet(p) without building it; used for link accounting.
std::size_t encoded_size(const Interest& interest) noexcept;
std::size_t encoded_size(const Data& data) noexcept;
std::size_t encoded_size(const Name& name) noexcept;

} // namespace icdn::ndn

#endif // ICDN_NDN_TLV_HPP
