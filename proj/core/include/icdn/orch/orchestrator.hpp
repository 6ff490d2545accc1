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

#ifndef ICDN_ORCH_ORCHESTRATOR_HPP
#define ICDN_ORCH_ORCHESTRATOR_HPP

#include "icdn/cdn/origin_node.hpp"
#include "icdn/gw/ndn_node.hpp"
#include "icdn/orch/vim.hpp"

#include <memory>
#include <optional>
#include <string_view>

namespace icdn::orch {

enum class SliceKind : std::uint8_t { Cdn, Icn };
enum class VnfRole : std::uint8_t { Cache, Transcoder, Streamer, NdnNode, NdnGateway };

std::string_view to_string(SliceKind kind) noexcept;
std::string_view to_string(VnfRole role) noexcept;
std::optional<VnfRole> parse_role(std::string_view text) noexcept;

inline bool
is_icn_role(VnfRole r) noexcept
{
  return r == VnfRole::NdnNode || r == VnfRole::NdnGateway;
}

struct SliceTag;
using SliceId = StrongId<SliceTag, std::uint64_t>;

class UnknownSlice : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

class InvalidSlice : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct VnfSpec
{
  std::string name;
  VnfRole role = VnfRole::NdnNode;
  std::string domain;
  Flavor flavor;
};

struct SliceLinkSpec
{
  std::string a;
  std::string b;
  double latency_ms = 0;
  double bandwidth_mbps = 1000;
};

struct SliceSpec
{
  std::string name;
  SliceKind kind = SliceKind::Icn;
  std::optional<double> duration_ms;
  std::vector<VnfSpec> vnfs;
  std::vector<SliceLinkSpec> links;
};

struct VnfInstance
{
  std::uint64_t id = 0;
  std::string name;
  VnfRole role = VnfRole::NdnNode;
  std::string domain;
  std::string region;
  Flavor flavor;
  sim::NodeId node;
  Allocation allocation;
  SliceId slice;
  bool live = true;
};

struct SliceRecord
{
  SliceId id;
  SliceSpec spec;
  std::vector<std::uint64_t> vnfs;
  SimTime created = 0;
  std::optional<SimTime> expires;
  bool live = true;
  std::shared_ptr<cdn::CdnOrigin> catalog; // CDN slices only
};

struct SliceLinkRecord
{
  SliceId cdn;
  SliceId icn;
  sim::NodeId gateway;
  sim::NodeId origin;
  ndn::Name prefix;
};

struct UsageReport
{
  std::uint64_t vnf = 0;
  double cpu_util = 0;
  double cpu_busy_ms = 0;
  std::uint64_t mem_bytes_peak = 0;
};

struct ScaleRequest
{
  SliceId slice;
  std::uint64_t vnf = 0;
  double utilization = 0;
};

struct ScaleEvent
{
  SimTime t = 0;
  std::string slice;
  std::string vnf;
  double utilization = 0;
  bool granted = false;
  std::string detail; // new instance name, or why it was denied
};

/// Problems found by a static slice check; empty means valid.
std::vector<std::string> check_slice_spec(const SliceSpec& spec);

/**
 * @brief Multi-domain orchestrator with per-domain VIMs.
 *
 * Owns the node handlers of every VNF it creates. Handlers of destroyed
 * VNFs are kept alive until the orchestrator goes away, since events that
 * were already scheduled may still reference them.
 */
class Orchestrator
{
public:
  struct Config
  {
    double per_packet_cost_ms = 0.02;
    std::uint64_t cs_capacity_bytes = 64ULL << 20;
    std::uint32_t chunk_size = 8192;
    std::uint32_t freshness_ms = 3'600'000;
    double origin_timeout_ms = 30000;
    std::uint64_t origin_piece_bytes = 64 * 1024;
    double gateway_weight = 0.5;
    double transcode_rate_Bps = 20e6;
    double scale_threshold = 0.8;
    double scale_window_ms = 10000;
  };

  Orchestrator(sim::Network& net, const std::vector<DomainSpec>& domains, Config config);
  Orchestrator(const Orchestrator&) = delete;
  Orchestrator& operator=(const Orchestrator&) = delete;

  /// Allocates every VNF or none; throws QuotaExceeded, InvalidSlice, UnknownDomain.
  SliceId create_slice(const SliceSpec& spec);
  void destroy_slice(SliceId id);
  void expire_slices(SimTime now);

  /// Picks and promotes the gateway, installs routes and the origin mapping. Idempotent.
  sim::NodeId link_slices(SliceId cdn, SliceId icn, std::optional<double> w = std::nullopt);

  const cdn::ContentObject& upload(SliceId cdn, const std::string& content_id, ndn::Bytes payload,
                                   const std::string& source_resolution);
  const cdn::ContentObject& transcode(SliceId cdn, const std::string& content_id,
                                      const cdn::ResolutionProfile& target);

  /// Request-weighted consumer locations used for gateway placement.
  void set_demand(std::vector<std::pair<std::string, double>> demand) { m_demand = std::move(demand); }

  UsageReport vnf_report(const VnfInstance& vnf) const;
  std::optional<ScaleRequest> scale_check(SliceId id) const;
  void handle_scale(const ScaleRequest& request);

  /// Runs scale_check over live slices every scale_window_ms as housekeeping.
  void start_scaling();

  const SliceRecord& slice(SliceId id) const;
  std::optional<SliceId> find_slice(std::string_view name) const;
  const VnfInstance* find_vnf(std::string_view name) const;
  const VnfInstance& vnf(std::uint64_t id) const { return m_vnfs.at(id); }
  const std::map<std::uint64_t, VnfInstance>& vnfs() const noexcept { return m_vnfs; }
  const std::map<SliceId, SliceRecord>& slices() const noexcept { return m_slices; }
  const std::vector<SliceLinkRecord>& slice_links() const noexcept { return m_links; }

  /// Node answering IP requests for a live CDN slice: its streamer, else its first cache.
  std::optional<sim::NodeId> origin_for(std::string_view cdn_slice) const;

  gw::NdnNode* ndn_node(sim::NodeId node) const;
  cdn::OriginNode* origin_node(sim::NodeId node) const;

  const Vim& vim(const std::string& domain) const;
  const std::map<std::string, Vim>& vims() const noexcept { return m_vims; }
  const std::vector<ScaleEvent>& scale_log() const noexcept { return m_scale_log; }
  const Config& config() const noexcept { return m_config; }

  static ndn::Name content_prefix(std::string_view cdn_slice);
  static ndn::Name content_name(std::string_view cdn_slice, const std::string& content_id,
                                const std::string& resolution);

private:
  VnfInstance& instantiate(const VnfSpec& spec, Allocation allocation, SliceRecord& slice);
  void install_routes(const SliceRecord& icn, sim::NodeId gateway, const ndn::Name& prefix);
  void map_new_content(SliceId cdn, const cdn::ContentObject& obj);
  sim::NodeId origin_of(const SliceRecord& cdn) const;
  SliceRecord& live_slice(SliceId id);
  void schedule_scale_tick();

  sim::Network& m_net;
  Config m_config;
  std::map<std::string, Vim> m_vims;
  std::map<SliceId, SliceRecord> m_slices;
  std::map<std::uint64_t, VnfInstance> m_vnfs;
  std::map<sim::NodeId, std::unique_ptr<gw::NdnNode>> m_ndn;
  std::map<sim::NodeId, std::unique_ptr<cdn::OriginNode>> m_origins;
  std::vector<SliceLinkRecord> m_links;
  std::vector<std::pair<std::string, double>> m_demand;
  std::vector<ScaleEvent> m_scale_log;
  std::map<std::uint64_t, std::uint32_t> m_clones; // vnf -> clones made
  std::uint64_t m_next_slice = 1;
  std::uint64_t m_next_vnf = 1;
  bool m_scaling = false;
};

} // namespace icdn::orch

#endif // ICDN_ORCH_ORCHESTRATOR_HPP
