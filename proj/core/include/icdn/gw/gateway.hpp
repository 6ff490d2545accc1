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

#ifndef ICDN_GW_GATEWAY_HPP
#define ICDN_GW_GATEWAY_HPP

#include "icdn/fw/forwarder.hpp"
#include "icdn/sim/simulator.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>

namespace icdn::gw {

/// Origin-side identity of one content variant.
struct ContentKey
{
  std::string content_id;
  std::string resolution;

  friend auto operator<=>(const ContentKey&, const ContentKey&) = default;
};

/// Where the gateway fetches from, and which names map to which origin content.
/// node is the origin of the most recently served prefix.
struct OriginRef
{
  sim::NodeId node;
  std::map<ndn::Name, ContentKey> prefix_map;
};

class EmptyCandidates : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Segments published by the gateway. Unbounded: it stands in for the publisher.
class GatewayRepo
{
public:
  void insert(ndn::DataPtr data);
  ndn::DataPtr find(const ndn::Name& name) const;

  void mark_published(const ndn::Name& base, std::uint32_t segments);
  bool is_published(const ndn::Name& base) const { return m_published.contains(base); }
  std::optional<std::uint32_t> segments(const ndn::Name& base) const;

  std::uint64_t bytes() const noexcept { return m_bytes; }
  std::size_t size() const noexcept { return m_entries.size(); }

private:
  std::map<ndn::Name, ndn::DataPtr> m_entries;
  std::map<ndn::Name, std::uint32_t> m_published; // base -> segment count
  std::uint64_t m_bytes = 0;
};

/// Request to start an origin fetch; the host performs it and reports back.
struct PendingFetch
{
  ContentKey key;
  ndn::Name base;
  sim::NodeId origin;
};

struct GatewayOutput
{
  fw::Actions actions;
  std::optional<PendingFetch> fetch;
};

struct PublishResult
{
  std::uint32_t segments = 0;
  fw::Actions actions;
};

struct GatewayCounters
{
  std::uint64_t origin_fetches = 0;
  std::uint64_t fetch_failures = 0;
  std::uint64_t repo_hits = 0;
  std::uint64_t publishes = 0;
};

/**
 * @brief Gateway logic layered over a forwarder.
 *
 * Interests under a served prefix are answered from the repo. A repo miss
 * parks the interest in the PIT and asks for one origin fetch per content;
 * publishing the fetched bytes answers every parked interest. Everything
 * else goes through the ordinary forwarder pipeline.
 */
class Gateway
{
public:
  struct Config
  {
    std::uint32_t chunk_size = 8192;
    std::uint32_t freshness_ms = 3'600'000;
  };

  Gateway(fw::Forwarder& forwarder, Config config);

  /// Serves @p prefix with content fetched from @p origin; re-serving updates the origin.
  void serve(const ndn::Name& prefix, sim::NodeId origin);
  bool serves(const ndn::Name& name) const { return served_prefix(name) != nullptr; }
  const std::map<ndn::Name, sim::NodeId>& served_prefixes() const noexcept { return m_served; }

  void map_content(const ndn::Name& base, ContentKey key) { m_origin.prefix_map[base] = std::move(key); }
  const OriginRef& origin() const noexcept { return m_origin; }

  /// Base name and origin identity for a name under a served prefix.
  std::optional<std::pair<ndn::Name, ContentKey>> resolve(const ndn::Name& name) const;

  GatewayOutput on_interest(SimTime now, fw::FaceId face, const ndn::Interest& interest);

  /// Chunks @p payload into the repo and answers pending interests. Idempotent.
  PublishResult publish_content_to_icn(SimTime now, const ndn::Name& base,
                                       std::span<const std::uint8_t> payload);

  /// Fails the interests parked on @p base; a later interest may try again.
  fw::Actions on_fetch_failed(SimTime now, const ndn::Name& base);

  bool fetch_in_flight(const ndn::Name& base) const { return m_in_flight.contains(base); }

  const GatewayRepo& repo() const noexcept { return m_repo; }
  const GatewayCounters& counters() const noexcept { return m_counters; }
  const Config& config() const noexcept { return m_config; }

private:
  fw::Forwarder& m_fwd;
  Config m_config;
  const std::pair<const ndn::Name, sim::NodeId>* served_prefix(const ndn::Name& name) const;

  std::map<ndn::Name, sim::NodeId> m_served;
  OriginRef m_origin;
  GatewayRepo m_repo;
  std::set<ndn::Name> m_in_flight;
  GatewayCounters m_counters;
};

struct GatewayCandidate
{
  sim::NodeId node;
  double latency_to_cache_ms = 0;
  double latency_to_demand_ms = 0;
};

/// argmin of w*to_cache + (1-w)*to_demand; ties go to the lowest node id.
sim::NodeId select_gateway(const std::vector<GatewayCandidate>& candidates, double w);

} // namespace icdn::gw

#endif // ICDN_GW_GATEWAY_HPP
