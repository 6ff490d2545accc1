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

#ifndef ICDN_CDN_ORIGIN_HPP
#define ICDN_CDN_ORIGIN_HPP

#include "icdn/ndn/packet.hpp"
#include "icdn/sim/message.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace icdn::cdn {

class DuplicateContent : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownContent : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

class DuplicateVariant : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class BadRange : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// A target resolution as a fraction of the source size, in (0, 1].
struct ResolutionProfile
{
  std::string tag;
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  /// Accepts "p/q" or a decimal such as "0.25".
  static ResolutionProfile parse(std::string tag, std::string_view scale);

  std::uint64_t scaled(std::uint64_t size) const noexcept
  {
    return size / den * num + size % den * num / den;
  }
};

struct ContentObject
{
  std::string content_id;
  std::string resolution;
  std::shared_ptr<const ndn::Bytes> payload;
  bool source = false;

  std::uint64_t size_bytes() const noexcept { return payload->size(); }
};

struct CdnCounters
{
  std::uint64_t uploads = 0;
  std::uint64_t transcodes = 0;
  std::uint64_t streams = 0;
  std::uint64_t bytes_out = 0;
};

/// Deterministic pseudo-random bytes standing in for uploaded video.
ndn::Bytes synthetic_payload(std::uint64_t seed, std::string_view content_id, std::uint64_t size);

/// SHA-256 counter-mode stream over (source digest, tag), truncated to @p size.
ndn::Bytes transcode_bytes(const ndn::Digest& source, std::string_view tag, std::uint64_t size);

/// Content catalog shared by the VNFs of one CDN slice.
class CdnOrigin
{
public:
  struct TranscodeResult
  {
    const ContentObject& object;
    double cpu_ms;
  };

  const ContentObject& upload(const std::string& content_id, ndn::Bytes payload,
                              const std::string& source_resolution);

  /// Derives a variant from the source; cpu_ms = source size / rate.
  TranscodeResult transcode(const std::string& content_id, const ResolutionProfile& target,
                            double transcode_rate_Bps);

  bool contains(const std::string& content_id, const std::string& resolution) const;
  bool has_content(const std::string& content_id) const;
  const ContentObject& find(const std::string& content_id, const std::string& resolution) const;
  const ContentObject& source(const std::string& content_id) const;

  /// Bytes of a variant, optionally restricted to [begin, end).
  std::shared_ptr<const ndn::Bytes> read(const std::string& content_id, const std::string& resolution,
                                         const std::optional<sim::ByteRange>& range) const;

  std::vector<const ContentObject*> objects() const;
  std::uint64_t stored_bytes() const noexcept { return m_bytes; }

  CdnCounters& counters() noexcept { return m_counters; }
  const CdnCounters& counters() const noexcept { return m_counters; }

private:
  using Key = std::pair<std::string, std::string>;

  std::map<Key, ContentObject> m_objects;
  std::map<std::string, std::string> m_source_resolution;
  std::uint64_t m_bytes = 0;
  CdnCounters m_counters;
};

} // namespace icdn::cdn

#endif // ICDN_CDN_ORIGIN_HPP
