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

#include "icdn/orch/orchestrator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace icdn::orch {

std::string_view
to_string(SliceKind kind) noexcept
{
  return kind == SliceKind::Cdn ? "cdn" : "icn";
}

std::string_view
to_string(VnfRole role) noexcept
{
  switch (role) {
    case VnfRole::Cache: return "cache";
    case VnfRole::Transcoder: return "transcoder";
    case VnfRole::Streamer: return "streamer";
    case VnfRole::NdnNode: return "ndn-node";
    case VnfRole::NdnGateway: return "ndn-gateway";
  }
  return "unknown";
}

std::optional<VnfRole>
parse_role(std::string_view text) noexcept
{
  for (auto r : {VnfRole::Cache, VnfRole::Transcoder, VnfRole::Streamer, VnfRole::NdnNode,
                 VnfRole::NdnGateway}) {
    if (to_string(r) == text) {
      return r;
    }
  }
  return std::nullopt;
}

std::vector<std::string>
check_slice_spec(const SliceSpec& spec)
{
  std::vector<std::string> problems;
  if (spec.name.empty()) {
    problems.emplace_back("slice name is empty");
  }
  if (spec.vnfs.empty()) {
    problems.push_back(fmt::format("slice '{}' has no VNFs", spec.name));
  }
  if (spec.duration_ms && !(*spec.duration_ms > 0)) {
    problems.push_back(fmt::format("slice '{}' duration must be positive", spec.name));
  }
  std::set<std::string> names;
  bool has_cache = false;
  bool has_ndn = false;
  for (const auto& v : spec.vnfs) {
    if (v.name.empty()) {
      problems.push_back(fmt::format("slice '{}' has a VNF without a name", spec.name));
    }
    else if (!names.insert(v.name).second) {
      problems.push_back(fmt::format("VNF name '{}' repeated in slice '{}'", v.name, spec.name));
    }
    if (!valid_flavor(v.flavor)) {
      problems.push_back(fmt::format("VNF '{}' flavor fields must all be at least 1", v.name));
    }
    if (is_icn_role(v.role) != (spec.kind == SliceKind::Icn)) {
      problems.push_back(fmt::format("VNF '{}' role {} does not belong in a {} slice", v.name,
                                     to_string(v.role), to_string(spec.kind)));
    }
    has_cache = has_cache || v.role == VnfRole::Cache;
    has_ndn = has_ndn || is_icn_role(v.role);
  }
  if (!spec.vnfs.empty()) {
    if (spec.kind == SliceKind::Cdn && !has_cache) {
      problems.push_back(fmt::format("CDN slice '{}' needs at least one cache", spec.name));
    }
    if (spec.kind == SliceKind::Icn && !has_ndn) {
      problems.push_back(fmt::format("ICN slice '{}' needs at least one NDN node", spec.name));
    }
  }
  for (const auto& l : spec.links) {
    for (const auto& end : {l.a, l.b}) {
      if (!names.contains(end)) {
        problems.push_back(fmt::format("slice '{}' link endpoint '{}' is not one of its VNFs", spec.name, end));
      }
    }
    if (l.a == l.b) {
      problems.push_back(fmt::format("slice '{}' has a self link on '{}'", spec.name, l.a));
    }
    if (l.latency_ms < 0 || !(l.bandwidth_mbps > 0)) {
      problems.push_back(fmt::format("slice '{}' link {}-{} needs latency >= 0 and bandwidth > 0",
                                     spec.name, l.a, l.b));
    }
  }
  return problems;
}

Orchestrator::Orchestrator(sim::Network& net, const std::vector<DomainSpec>& domains, Config config)
  : m_net(net)
  , m_config(config)
{
  for (const auto& d : domains) {
    if (!m_vims.try_emplace(d.name, d).second) {
      throw std::invalid_argument("duplicate domain '" + d.name + "'");
    }
  }
}

ndn::Name
Orchestrator::content_prefix(std::string_view cdn_slice)
{
  return ndn::Name({"cdn", std::string(cdn_slice)});
}

ndn::Name
Orchestrator::content_name(std::string_view cdn_slice, const std::string& content_id,
                           const std::string& resolution)
{
  return content_prefix(cdn_slice).appended(content_id).appended(resolution);
}

const Vim&
Orchestrator::vim(const std::string& domain) const
{
  auto it = m_vims.find(domain);
  if (it == m_vims.end()) {
    throw UnknownDomain("unknown domain '" + domain + "'");
  }
  return it->second;
}

SliceId
Orchestrator::create_slice(const SliceSpec& spec)
{
  if (auto problems = check_slice_spec(spec); !problems.empty()) {
    throw InvalidSlice(problems.front());
  }
  if (find_slice(spec.name)) {
    throw InvalidSlice("slice '" + spec.name + "' already exists");
  }
  for (const auto& v : spec.vnfs) {
    if (find_vnf(v.name) != nullptr) {
      throw InvalidSlice("VNF '" + v.name + "' already exists");
    }
    vim(v.domain);
  }

  std::vector<Allocation> done;
  try {
    for (const auto& v : spec.vnfs) {
      done.push_back(m_vims.at(v.domain).allocate(v.flavor));
    }
  }
  catch (const QuotaExceeded&) {
    for (const auto& a : done) {
      m_vims.at(a.domain).release(a);
    }
    throw;
  }

  SliceId id{m_next_slice++};
  SliceRecord& rec = m_slices[id];
  rec.id = id;
  rec.spec = spec;
  rec.created = m_net.simulator().now();
  if (spec.kind == SliceKind::Cdn) {
    rec.catalog = std::make_shared<cdn::CdnOrigin>();
  }
  for (std::size_t i = 0; i < spec.vnfs.size(); ++i) {
    instantiate(spec.vnfs[i], done[i], rec);
  }
  for (const auto& l : spec.links) {
    m_net.add_link({find_vnf(l.a)->node, find_vnf(l.b)->node, l.latency_ms, l.bandwidth_mbps});
  }
  if (spec.duration_ms) {
    rec.expires = rec.created + *spec.duration_ms;
    m_net.simulator().schedule(*rec.expires, sim::EventKind::Control, sim::NodeId{},
                               [this] { expire_slices(m_net.simulator().now()); },
                               /*daemon=*/true);
  }
  return id;
}

VnfInstance&
Orchestrator::instantiate(const VnfSpec& spec, Allocation allocation, SliceRecord& slice)
{
  sim::NodeId node = m_net.add_node(spec.name, std::string(to_string(spec.role)),
                                    {spec.flavor.vcpus, m_config.per_packet_cost_ms});
  if (is_icn_role(spec.role)) {
    gw::NdnNode::Config cfg;
    cfg.forwarder.cs_capacity_bytes = m_config.cs_capacity_bytes;
    cfg.origin_timeout_ms = m_config.origin_timeout_ms;
    m_ndn.emplace(node, std::make_unique<gw::NdnNode>(m_net, node, cfg));
  }
  else {
    m_origins.emplace(node, std::make_unique<cdn::OriginNode>(
                              m_net, node, slice.catalog,
                              cdn::OriginNode::Config{m_config.origin_piece_bytes}));
  }

  VnfInstance inst;
  inst.id = m_next_vnf++;
  inst.name = spec.name;
  inst.role = spec.role;
  inst.domain = spec.domain;
  inst.region = m_vims.at(spec.domain).spec().region;
  inst.flavor = spec.flavor;
  inst.node = node;
  inst.allocation = std::move(allocation);
  inst.slice = slice.id;
  slice.vnfs.push_back(inst.id);
  return m_vnfs.emplace(inst.id, std::move(inst)).first->second;
}

SliceRecord&
Orchestrator::live_slice(SliceId id)
{
  auto it = m_slices.find(id);
  if (it == m_slices.end() || !it->second.live) {
    throw UnknownSlice("unknown slice " + std::to_string(id.value));
  }
  return it->second;
}

const SliceRecord&
Orchestrator::slice(SliceId id) const
{
  auto it = m_slices.find(id);
  if (it == m_slices.end()) {
    throw UnknownSlice("unknown slice " + std::to_string(id.value));
  }
  return it->second;
}

std::optional<SliceId>
Orchestrator::find_slice(std::string_view name) const
{
  for (const auto& [id, rec] : m_slices) {
    if (rec.live && rec.spec.name == name) {
      return id;
    }
  }
  return std::nullopt;
}

const VnfInstance*
Orchestrator::find_vnf(std::string_view name) const
{
  for (const auto& [id, v] : m_vnfs) {
    if (v.live && v.name == name) {
      return &v;
    }
  }
  return nullptr;
}

gw::NdnNode*
Orchestrator::ndn_node(sim::NodeId node) const
{
  auto it = m_ndn.find(node);
  return it == m_ndn.end() ? nullptr : it->second.get();
}

cdn::OriginNode*
Orchestrator::origin_node(sim::NodeId node) const
{
  auto it = m_origins.find(node);
  return it == m_origins.end() ? nullptr : it->second.get();
}

void
Orchestrator::destroy_slice(SliceId id)
{
  SliceRecord& rec = live_slice(id);
  for (auto vid : rec.vnfs) {
    VnfInstance& v = m_vnfs.at(vid);
    if (!v.live) {
      continue;
    }
    m_vims.at(v.domain).release(v.allocation);
    m_net.remove_node(v.node);
    v.live = false;
  }
  rec.live = false;
  std::erase_if(m_links, [id](const SliceLinkRecord& l) { return l.cdn == id || l.icn == id; });
}

void
Orchestrator::expire_slices(SimTime now)
{
  std::vector<SliceId> due;
  for (const auto& [id, rec] : m_slices) {
    if (rec.live && rec.expires && *rec.expires <= now) {
      due.push_back(id);
    }
  }
  for (auto id : due) {
    destroy_slice(id);
  }
}

sim::NodeId
Orchestrator::origin_of(const SliceRecord& cdn) const
{
  std::optional<sim::NodeId> cache;
  for (auto vid : cdn.vnfs) {
    const VnfInstance& v = m_vnfs.at(vid);
    if (!v.live) {
      continue;
    }
    if (v.role == VnfRole::Streamer) {
      return v.node;
    }
    if (v.role == VnfRole::Cache && !cache) {
      cache = v.node;
    }
  }
  if (!cache) {
    throw InvalidSlice("CDN slice '" + cdn.spec.name + "' has no live cache");
  }
  return *cache;
}

std::optional<sim::NodeId>
Orchestrator::origin_for(std::string_view cdn_slice) const
{
  auto id = find_slice(cdn_slice);
  if (!id || m_slices.at(*id).spec.kind != SliceKind::Cdn) {
    return std::nullopt;
  }
  try {
    return origin_of(m_slices.at(*id));
  }
  catch (const InvalidSlice&) {
    return std::nullopt;
  }
}

sim::NodeId
Orchestrator::link_slices(SliceId cdn_id, SliceId icn_id, std::optional<double> w)
{
  const SliceRecord& cdn = live_slice(cdn_id);
  const SliceRecord& icn = live_slice(icn_id);
  if (cdn.spec.kind != SliceKind::Cdn || icn.spec.kind != SliceKind::Icn) {
    throw InvalidSlice("link needs a CDN slice and an ICN slice");
  }
  for (const auto& l : m_links) {
    if (l.cdn == cdn_id && l.icn == icn_id) {
      return l.gateway;
    }
  }

  std::vector<sim::NodeId> caches;
  for (auto vid : cdn.vnfs) {
    const VnfInstance& v = m_vnfs.at(vid);
    if (v.live && v.role == VnfRole::Cache) {
      caches.push_back(v.node);
    }
  }
  std::vector<std::pair<sim::NodeId, double>> demand;
  double demand_weight = 0;
  for (const auto& [name, weight] : m_demand) {
    if (auto node = m_net.find(name); node && m_net.alive(*node) && weight > 0) {
      demand.emplace_back(*node, weight);
      demand_weight += weight;
    }
  }

  std::vector<gw::GatewayCandidate> candidates;
  for (auto vid : icn.vnfs) {
    const VnfInstance& v = m_vnfs.at(vid);
    if (!v.live) {
      continue;
    }
    double to_cache = std::numeric_limits<double>::infinity();
    for (auto c : caches) {
      to_cache = std::min(to_cache, m_net.path_latency(v.node, c));
    }
    if (!std::isfinite(to_cache)) {
      continue;
    }
    double to_demand = 0;
    for (auto [node, weight] : demand) {
      to_demand += weight * m_net.path_latency(v.node, node);
    }
    if (demand_weight > 0) {
      to_demand /= demand_weight;
    }
    candidates.push_back({v.node, to_cache, to_demand});
  }

  sim::NodeId gateway = gw::select_gateway(candidates, w.value_or(m_config.gateway_weight));
  sim::NodeId origin = origin_of(cdn);
  ndn::Name prefix = content_prefix(cdn.spec.name);

  gw::Gateway& g = ndn_node(gateway)->promote({m_config.chunk_size, m_config.freshness_ms});
  g.serve(prefix, origin);
  for (const auto* obj : cdn.catalog->objects()) {
    g.map_content(content_name(cdn.spec.name, obj->content_id, obj->resolution),
                  {obj->content_id, obj->resolution});
  }
  m_net.set_role(gateway, "ndn-gateway");
  install_routes(icn, gateway, prefix);
  m_links.push_back({cdn_id, icn_id, gateway, origin, prefix});
  return gateway;
}

void
Orchestrator::install_routes(const SliceRecord& icn, sim::NodeId gateway, const ndn::Name& prefix)
{
  std::set<sim::NodeId> members;
  for (auto vid : icn.vnfs) {
    if (m_vnfs.at(vid).live) {
      members.insert(m_vnfs.at(vid).node);
    }
  }
  sim::ShortestPaths paths = sim::shortest_paths(m_net.links(), gateway, &members);
  for (sim::NodeId n : members) {
    if (n == gateway || !paths.previous.contains(n)) {
      continue;
    }
    // cost in whole microseconds of path latency
    auto cost = static_cast<std::uint32_t>(std::llround(paths.distance.at(n) * 1000.0));
    ndn_node(n)->forwarder().fib_insert(prefix, {{gw::NdnNode::face_of(paths.previous.at(n)), cost}});
  }
}

void
Orchestrator::map_new_content(SliceId cdn, const cdn::ContentObject& obj)
{
  const SliceRecord& rec = m_slices.at(cdn);
  for (const auto& l : m_links) {
    if (l.cdn == cdn) {
      ndn_node(l.gateway)->gateway()->map_content(content_name(rec.spec.name, obj.content_id, obj.resolution),
                                                  {obj.content_id, obj.resolution});
    }
  }
}

const cdn::ContentObject&
Orchestrator::upload(SliceId cdn_id, const std::string& content_id, ndn::Bytes payload,
                     const std::string& source_resolution)
{
  SliceRecord& rec = live_slice(cdn_id);
  if (rec.spec.kind != SliceKind::Cdn) {
    throw InvalidSlice("upload needs a CDN slice");
  }
  const auto& obj = rec.catalog->upload(content_id, std::move(payload), source_resolution);
  map_new_content(cdn_id, obj);
  return obj;
}

const cdn::ContentObject&
Orchestrator::transcode(SliceId cdn_id, const std::string& content_id, const cdn::ResolutionProfile& target)
{
  SliceRecord& rec = live_slice(cdn_id);
  if (rec.spec.kind != SliceKind::Cdn) {
    throw InvalidSlice("transcode needs a CDN slice");
  }
  auto result = rec.catalog->transcode(content_id, target, m_config.transcode_rate_Bps);

  // charged to the slice's transcoder, or its first cache if it has none
  std::optional<sim::NodeId> host;
  for (auto vid : rec.vnfs) {
    const VnfInstance& v = m_vnfs.at(vid);
    if (!v.live) {
      continue;
    }
    if (v.role == VnfRole::Transcoder) {
      host = v.node;
      break;
    }
    if (v.role == VnfRole::Cache && !host) {
      host = v.node;
    }
  }
  if (host) {
    m_net.metrics(*host).add_cpu_time(m_net.simulator().now(), result.cpu_ms);
  }
  map_new_content(cdn_id, result.object);
  return result.object;
}

UsageReport
Orchestrator::vnf_report(const VnfInstance& vnf) const
{
  const SimTime now = m_net.simulator().now();
  const sim::NodeMetrics& m = m_net.metrics(vnf.node);
  UsageReport r;
  r.vnf = vnf.id;
  r.cpu_util = m.cpu_utilization(std::max(0.0, now - m_config.scale_window_ms), now);
  r.cpu_busy_ms = m.cpu().total_cpu_ms();
  r.mem_bytes_peak = m.mem_peak();
  return r;
}

std::optional<ScaleRequest>
Orchestrator::scale_check(SliceId id) const
{
  const SliceRecord& rec = slice(id);
  if (!rec.live || m_net.simulator().now() < m_config.scale_window_ms) {
    return std::nullopt;
  }
  std::optional<ScaleRequest> worst;
  for (auto vid : rec.vnfs) {
    const VnfInstance& v = m_vnfs.at(vid);
    if (!v.live || m_clones.contains(vid)) {
      continue;
    }
    double util = vnf_report(v).cpu_util;
    if (util > m_config.scale_threshold && (!worst || util > worst->utilization)) {
      worst = ScaleRequest{id, vid, util};
    }
  }
  return worst;
}

void
Orchestrator::handle_scale(const ScaleRequest& request)
{
  // each instance is handled once: one clone, or one logged denial
  if (!m_clones.emplace(request.vnf, 0).second) {
    return;
  }
  const VnfInstance original = m_vnfs.at(request.vnf);
  SliceRecord& rec = live_slice(request.slice);
  ScaleEvent ev{m_net.simulator().now(), rec.spec.name, original.name, request.utilization, false, {}};

  if (auto* node = ndn_node(original.node); node != nullptr && node->gateway() != nullptr) {
    ev.detail = "gateway instances are not replicated";
    m_scale_log.push_back(std::move(ev));
    return;
  }
  Allocation alloc;
  try {
    alloc = m_vims.at(original.domain).allocate(original.flavor);
  }
  catch (const QuotaExceeded& e) {
    ev.detail = e.what();
    m_scale_log.push_back(std::move(ev));
    return;
  }

  VnfSpec spec{original.name + "-s1", original.role, original.domain, original.flavor};
  const VnfInstance& clone = instantiate(spec, std::move(alloc), rec);
  m_clones.emplace(clone.id, 0);
  for (sim::NodeId nb : m_net.neighbors(original.node)) {
    auto l = m_net.link(original.node, nb);
    m_net.add_link({clone.node, nb, l->latency_ms, l->bandwidth_mbps});
  }
  const fw::FaceId old_face = gw::NdnNode::face_of(original.node);
  const fw::FaceId new_face = gw::NdnNode::face_of(clone.node);
  if (auto* src = ndn_node(original.node)) {
    for (const auto& e : src->forwarder().fib().entries()) {
      ndn_node(clone.node)->forwarder().fib_insert(e.prefix, e.next_hops);
    }
  }
  for (sim::NodeId nb : m_net.neighbors(clone.node)) {
    gw::NdnNode* peer = ndn_node(nb);
    if (peer == nullptr) {
      continue;
    }
    for (const auto& e : peer->forwarder().fib().entries()) {
      for (const auto& hop : e.next_hops) {
        if (hop.face == old_face) {
          peer->forwarder().fib().add_next_hop(e.prefix, {new_face, hop.cost});
          break;
        }
      }
    }
  }
  ev.granted = true;
  ev.detail = clone.name;
  m_scale_log.push_back(std::move(ev));
}

void
Orchestrator::start_scaling()
{
  if (m_scaling || !(m_config.scale_window_ms > 0)) {
    return;
  }
  m_scaling = true;
  schedule_scale_tick();
}

void
Orchestrator::schedule_scale_tick()
{
  m_net.simulator().schedule_in(m_config.scale_window_ms, sim::EventKind::Control, sim::NodeId{}, [this] {
    std::vector<SliceId> live;
    for (const auto& [id, rec] : m_slices) {
      if (rec.live) {
        live.push_back(id);
      }
    }
    for (auto id : live) {
      if (auto req = scale_check(id)) {
        handle_scale(*req);
      }
    }
    schedule_scale_tick();
  }, /*daemon=*/true);
}

} // namespace icdn::orch
