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

#include "icdn/cdn/origin.hpp"

#include <charconv>
#include <cstring>
#include <numeric>

namespace icdn::cdn {
namespace {

std::uint64_t
splitmix64(std::uint64_t& state)
{
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void
append_le64(ndn::DigestBuilder& b, std::uint64_t v)
{
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
  b.update(std::span<const std::uint8_t>(buf, 8));
}

std::uint64_t
parse_u64(std::string_view s)
{
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "' in resolution scale");
  }
  return v;
}

} // namespace

ResolutionProfile
ResolutionProfile::parse(std::string tag, std::string_view scale)
{
  ResolutionProfile p;
  p.tag = std::move(tag);
  if (auto slash = scale.find('/'); slash != std::string_view::npos) {
    p.num = parse_u64(scale.substr(0, slash));
    p.den = parse_u64(scale.substr(slash + 1));
  }
  else if (auto dot = scale.find('.'); dot != std::string_view::npos) {
    std::string_view frac = scale.substr(dot + 1);
    if (frac.size() > 12) {
      throw std::invalid_argument("resolution scale has too many decimals");
    }
    p.den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      p.den *= 10;
    }
    std::string digits = std::string(scale.substr(0, dot)) + std::string(frac);
    p.num = parse_u64(digits);
  }
  else {
    p.num = parse_u64(scale);
    p.den = 1;
  }
  if (p.den == 0 || p.num == 0 || p.num > p.den) {
    throw std::invalid_argument("resolution scale must lie in (0, 1]");
  }
  std::uint64_t g = std::gcd(p.num, p.den);
  p.num /= g;
  p.den /= g;
  return p;
}

ndn::Bytes
synthetic_payload(std::uint64_t seed, std::string_view content_id, std::uint64_t size)
{
  ndn::DigestBuilder b;
  append_le64(b, seed);
  b.update(content_id);
  ndn::Digest d = b.finish();
  std::uint64_t state = 0;
  std::memcpy(&state, d.data(), sizeof state);

  ndn::Bytes out(size);
  std::size_t i = 0;
  for (; i + 8 <= size; i += 8) {
    std::uint64_t v = splitmix64(state);
    for (int k = 0; k < 8; ++k) {
      out[i + k] = static_cast<std::uint8_t>(v >> (8 * k));
    }
  }
  std::uint64_t v = splitmix64(state);
  for (int k = 0; i < size; ++i, ++k) {
    out[i] = static_cast<std::uint8_t>(v >> (8 * k));
  }
  return out;
}

ndn::Bytes
transcode_bytes(const ndn::Digest& source, std::string_view tag, std::uint64_t size)
{
  ndn::Bytes out;
  out.reserve(size);
  for (std::uint64_t counter = 0; out.size() < size; ++counter) {
    ndn::DigestBuilder b;
    b.update(source);
    b.update(tag);
    append_le64(b, counter);
    ndn::Digest block = b.finish();
    std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(block.size(), size - out.size()));
    out.insert(out.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

const ContentObject&
CdnOrigin::upload(const std::string& content_id, ndn::Bytes payload, const std::string& source_resolution)
{
  if (m_source_resolution.contains(content_id)) {
    throw DuplicateContent("content '" + content_id + "' already uploaded");
  }
  m_source_resolution.emplace(content_id, source_resolution);
  m_bytes += payload.size();
  ++m_counters.uploads;
  auto [it, _] = m_objects.emplace(
    Key{content_id, source_resolution},
    ContentObject{content_id, source_resolution,
                  std::make_shared<const ndn::Bytes>(std::move(payload)), true});
  return it->second;
}

CdnOrigin::TranscodeResult
CdnOrigin::transcode(const std::string& content_id, const ResolutionProfile& target, double transcode_rate_Bps)
{
  if (!(transcode_rate_Bps > 0)) {
    throw std::invalid_argument("transcode rate must be positive");
  }
  const ContentObject& src = source(content_id);
  if (m_objects.contains(Key{content_id, target.tag})) {
    throw DuplicateVariant("content '" + content_id + "' already has resolution '" + target.tag + "'");
  }
  ndn::Bytes out = transcode_bytes(ndn::compute_digest(*src.payload), target.tag,
                                   target.scaled(src.size_bytes()));
  double cpu_ms = static_cast<double>(src.size_bytes()) / transcode_rate_Bps * 1000.0;
  m_bytes += out.size();
  ++m_counters.transcodes;
  auto [it, _] = m_objects.emplace(
    Key{content_id, target.tag},
    ContentObject{content_id, target.tag, std::make_shared<const ndn::Bytes>(std::move(out)), false});
  return {it->second, cpu_ms};
}

bool
CdnOrigin::contains(const std::string& content_id, const std::string& resolution) const
{
  return m_objects.contains(Key{content_id, resolution});
}

bool
CdnOrigin::has_content(const std::string& content_id) const
{
  return m_source_resolution.contains(content_id);
}

const ContentObject&
CdnOrigin::find(const std::string& content_id, const std::string& resolution) const
{
  auto it = m_objects.find(Key{content_id, resolution});
  if (it == m_objects.end()) {
    throw UnknownContent("no content '" + content_id + "' at resolution '" + resolution + "'");
  }
  return it->second;
}

const ContentObject&
CdnOrigin::source(const std::string& content_id) const
{
  auto it = m_source_resolution.find(content_id);
  if (it == m_source_resolution.end()) {
    throw UnknownContent("no content '" + content_id + "'");
  }
  return m_objects.at(Key{content_id, it->second});
}

std::shared_ptr<const ndn::Bytes>
CdnOrigin::read(const std::string& content_id, const std::string& resolution,
                const std::optional<sim::ByteRange>& range) const
{
  const ContentObject& obj = find(content_id, resolution);
  if (!range) {
    return obj.payload;
  }
  if (range->begin > range->end || range->end > obj.size_bytes()) {
    throw BadRange("range [" + std::to_string(range->begin) + ", " + std::to_string(range->end) +
                   ") outside content of " + std::to_string(obj.size_bytes()) + " bytes");
  }
  auto first = obj.payload->begin() + static_cast<std::ptrdiff_t>(range->begin);
  auto last = obj.payload->begin() + static_cast<std::ptrdiff_t>(range->end);
  return std::make_shared<const ndn::Bytes>(first, last);
}

std::vector<const ContentObject*>
CdnOrigin::objects() const
{
  std::vector<const ContentObject*> out;
  for (const auto& [k, o] : m_objects) {
    out.push_back(&o);
  }
  return out;
}

} // namespace icdn::cdn
