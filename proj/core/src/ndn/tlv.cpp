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

#include "icdn/ndn/tlv.hpp"

#include <algorithm>
#include <string>

namespace icdn::ndn {
namespace {

class Writer
{
public:
  explicit Writer(std::size_t capacity) { m_out.reserve(capacity); }

  void header(std::uint8_t type, std::size_t length)
  {
    m_out.push_back(type);
    for (int shift = 24; shift >= 0; shift -= 8) {
      m_out.push_back(static_cast<std::uint8_t>((length >> shift) & 0xFF));
    }
  }

  void bytes(std::span<const std::uint8_t> b) { m_out.insert(m_out.end(), b.begin(), b.end()); }

  template<typename UInt>
  void uint_field(std::uint8_t type, UInt value)
  {
    header(type, sizeof(UInt));
    for (int shift = (sizeof(UInt) - 1) * 8; shift >= 0; shift -= 8) {
      m_out.push_back(static_cast<std::uint8_t>((static_cast<std::uint64_t>(value) >> shift) & 0xFF));
    }
  }

  void name(const Name& n)
  {
    std::size_t inner = 0;
    for (const auto& c : n.components()) {
      inner += tlv::header_size + c.size();
    }
    header(tlv::Name, inner);
    for (const auto& c : n.components()) {
      header(tlv::Component, c.size());
      m_out.insert(m_out.end(), c.begin(), c.end());
    }
  }

  Bytes take() { return std::move(m_out); }

private:
  Bytes m_out;
};

class Reader
{
public:
  explicit Reader(std::span<const std::uint8_t> in)
    : m_in(in)
  {}

  bool at_end() const { return m_pos == m_in.size(); }

  std::uint8_t peek_type() const
  {
    need(1);
    return m_in[m_pos];
  }

  /// Reads a header and returns the value span.
  std::span<const std::uint8_t> element(std::uint8_t expected)
  {
    need(tlv::header_size);
    std::uint8_t type = m_in[m_pos];
    if (type != expected) {
      throw DecodeError(DecodeErrorKind::Malformed,
                        "expected TLV type " + std::to_string(expected) + ", got " +
                          std::to_string(type));
    }
    std::uint32_t length = 0;
    for (int i = 1; i <= 4; ++i) {
      length = (length << 8) | m_in[m_pos + i];
    }
    m_pos += tlv::header_size;
    need(length);
    auto value = m_in.subspan(m_pos, length);
    m_pos += length;
    return value;
  }

  template<typename UInt>
  UInt uint_field(std::uint8_t type)
  {
    auto v = element(type);
    if (v.size() != sizeof(UInt)) {
      throw DecodeError(DecodeErrorKind::Malformed, "fixed-width field has wrong length");
    }
    std::uint64_t out = 0;
    for (auto b : v) {
      out = (out << 8) | b;
    }
    return static_cast<UInt>(out);
  }

private:
  void need(std::size_t n) const
  {
    if (m_in.size() - m_pos < n) {
      throw DecodeError(DecodeErrorKind::TruncatedPacket, "packet truncated");
    }
  }

  std::span<const std::uint8_t> m_in;
  std::size_t m_pos = 0;
};

Name
read_name(Reader& outer)
{
  Reader r(outer.element(tlv::Name));
  std::vector<Name::Component> components;
  while (!r.at_end()) {
    auto c = r.element(tlv::Component);
    components.emplace_back(c.begin(), c.end());
  }
  try {
    return Name(std::move(components));
  }
  catch (const MalformedUri& e) {
    throw DecodeError(DecodeErrorKind::Malformed, e.what());
  }
}

Interest
read_interest(std::span<const std::uint8_t> value)
{
  Reader r(value);
  Interest i;
  i.name = read_name(r);
  i.nonce = r.uint_field<std::uint64_t>(tlv::Nonce);
  i.lifetime_ms = r.uint_field<std::uint32_t>(tlv::Lifetime);
  i.hop_limit = r.uint_field<std::uint8_t>(tlv::HopLimit);
  if (!r.at_end()) {
    throw DecodeError(DecodeErrorKind::Malformed, "trailing elements in Interest");
  }
  return i;
}

Data
read_data(std::span<const std::uint8_t> value)
{
  Reader r(value);
  Data d;
  d.name = read_name(r);
  auto payload = r.element(tlv::Payload);
  d.payload.assign(payload.begin(), payload.end());
  auto digest = r.element(tlv::Digest);
  if (digest.size() != d.digest.size()) {
    throw DecodeError(DecodeErrorKind::Malformed, "digest must be 32 bytes");
  }
  std::copy(digest.begin(), digest.end(), d.digest.begin());
  d.freshness_ms = r.uint_field<std::uint32_t>(tlv::Freshness);
  if (!r.at_end()) {
    d.final_segment = r.uint_field<std::uint32_t>(tlv::FinalSegment);
  }
  if (!r.at_end()) {
    throw DecodeError(DecodeErrorKind::Malformed, "trailing elements in Data");
  }
  return d;
}

} // namespace

std::size_t
encoded_size(const Name& name) noexcept
{
  std::size_t n = tlv::header_size;
  for (const auto& c : name.components()) {
    n += tlv::header_size + c.size();
  }
  return n;
}

std::size_t
encoded_size(const Interest& interest) noexcept
{
  return tlv::header_size + encoded_size(interest.name) + (tlv::header_size + 8) +
         (tlv::header_size + 4) + (tlv::header_size + 1);
}

std::size_t
encoded_size(const Data& data) noexcept
{
  std::size_t n = tlv::header_size + encoded_size(data.name) + tlv::header_size +
                  data.payload.size() + (tlv::header_size + data.digest.size()) +
                  (tlv::header_size + 4);
  if (data.final_segment) {
    n += tlv::header_size + 4;
  }
  return n;
}

Bytes
encode_packet(const Interest& interest)
{
  const std::size_t total = encoded_size(interest);
  Writer w(total);
  w.header(tlv::Interest, total - tlv::header_size);
  w.name(interest.name);
  w.uint_field(tlv::Nonce, interest.nonce);
  w.uint_field(tlv::Lifetime, interest.lifetime_ms);
  w.uint_field(tlv::HopLimit, interest.hop_limit);
  return w.take();
}

Bytes
encode_packet(const Data& data)
{
  const std::size_t total = encoded_size(data);
  Writer w(total);
  w.header(tlv::Data, total - tlv::header_size);
  w.name(data.name);
  w.header(tlv::Payload, data.payload.size());
  w.bytes(data.payload);
  w.header(tlv::Digest, data.digest.size());
  w.bytes(data.digest);
  w.uint_field(tlv::Freshness, data.freshness_ms);
  if (data.final_segment) {
    w.uint_field(tlv::FinalSegment, *data.final_segment);
  }
  return w.take();
}

Bytes
encode_packet(const Packet& packet)
{
  return std::visit([](const auto& p) { return encode_packet(p); }, packet);
}

Packet
decode_packet(std::span<const std::uint8_t> wire)
{
  if (wire.size() < tlv::header_size) {
    throw DecodeError(DecodeErrorKind::TruncatedPacket, "packet shorter than a TLV header");
  }
  const std::uint8_t type = wire[0];
  if (type != tlv::Interest && type != tlv::Data) {
    throw DecodeError(DecodeErrorKind::UnknownType, "unknown packet type " + std::to_string(type));
  }

  Reader outer(wire);
  auto value = outer.element(type);
  if (!outer.at_end()) {
    throw DecodeError(DecodeErrorKind::Malformed, "trailing bytes after packet");
  }
  if (type == tlv::Interest) {
    return read_interest(value);
  }
  return read_data(value);
}

} // namespace icdn::ndn
