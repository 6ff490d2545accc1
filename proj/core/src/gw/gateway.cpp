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

#include "icdn/gw/gateway.hpp"

namespace icdn::gw {

void
GatewayRepo::insert(ndn::DataPtr data)
{
  auto [it, inserted] = m_entries.try_emplace(data->name, data);
  if (inserted) {
    m_bytes += data->payload.size();
  }
}

ndn::DataPtr
GatewayRepo::find(const ndn::Name& name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : it->second;
}

void
GatewayRepo::mark_published(const ndn::Name& base, std::uint32_t segments)
{
  m_published.emplace(base, segments);
}

std::optional<std::uint32_t>
GatewayRepo::segments(const ndn::Name& base) const
{
  auto it = m_published.find(base);
  if (it == m_published.end()) {
    return std::nullopt;
  }
  return it->second;
}

Gateway::Gateway(fw::Forwarder& forwarder, Config config)
  : m_fwd(forwarder)
  , m_config(config)
{
  if (m_config.chunk_size == 0) {
    throw std::invalid_argument("gateway chunk size must be positive");
  }
}

void
Gateway::serve(const ndn::Name& prefix, sim::NodeId origin)
{
  m_served[prefix] = origin;
  m_origin.node = origin;
}

const std::pair<const ndn::Name, sim::NodeId>*
Gateway::served_prefix(const ndn::Name& name) const
{
  const std::pair<const ndn::Name, sim::NodeId>* best = nullptr;
  for (const auto& entry : m_served) {
    if (entry.first.is_prefix_of(name) && (best == nullptr || entry.first.size() > best->first.size())) {
      best = &entry;
    }
  }
  return best;
}

std::optional<std::pair<ndn::Name, ContentKey>>
Gateway::resolve(const ndn::Name& name) const
{
  // longest mapped prefix of the name; the map is small
  const std::pair<const ndn::Name, ContentKey>* best = nullptr;
  for (const auto& entry : m_origin.prefix_map) {
    if (entry.first.is_prefix_of(name) && (best == nullptr || entry.first.size() > best->first.size())) {
      best = &entry;
    }
  }
  if (best == nullptr) {
    return std::nullopt;
  }
  return std::pair{best->first, best->second};
}

GatewayOutput
Gateway::on_interest(SimTime now, fw::FaceId face, const ndn::Interest& interest)
{
  const auto* served = served_prefix(interest.name);
  if (served == nullptr) {
    return {m_fwd.on_interest(now, face, interest), std::nullopt};
  }
  m_fwd.pit_expire(now);
  if (m_fwd.is_loop(interest)) {
    return {{m_fwd.drop(fw::DropReason::Loop, interest.name)}, std::nullopt};
  }
  if (ndn::DataPtr hit = m_repo.find(interest.name)) {
    ++m_counters.repo_hits;
    return {{fw::SendData{face, std::move(hit)}}, std::nullopt};
  }

  auto resolved = resolve(interest.name);
  if (!resolved || m_repo.is_published(resolved->first)) {
    // unmapped name, or a segment past the end of published content
    return {{m_fwd.drop(fw::DropReason::NoRoute, interest.name)}, std::nullopt};
  }

  m_fwd.pit_record(now, face, interest);
  GatewayOutput out;
  auto& [base, key] = *resolved;
  if (m_in_flight.insert(base).second) {
    ++m_counters.origin_fetches;
    out.fetch = PendingFetch{key, base, served->second};
  }
  return out;
}

PublishResult
Gateway::publish_content_to_icn(SimTime /*now*/, const ndn::Name& base,
                                std::span<const std::uint8_t> payload)
{
  PublishResult result;
  if (auto existing = m_repo.segments(base)) {
    result.segments = *existing;
    return result;
  }
  m_in_flight.erase(base);

  auto segments = ndn::chunk_content(base, payload, m_config.chunk_size, m_config.freshness_ms);
  result.segments = static_cast<std::uint32_t>(segments.size());
  for (auto& d : segments) {
    m_repo.insert(std::make_shared<const ndn::Data>(std::move(d)));
  }
  m_repo.mark_published(base, result.segments);
  ++m_counters.publishes;

  for (const auto& entry : m_fwd.pit().take_under(base)) {
    ndn::DataPtr data = m_repo.find(entry.name);
    if (data == nullptr) {
      result.actions.push_back(m_fwd.drop(fw::DropReason::NoRoute, entry.name));
      continue;
    }
    for (const fw::InRecord& rec : entry.in_records) {
      result.actions.emplace_back(fw::SendData{rec.face, data});
    }
  }
  return result;
}

fw::Actions
Gateway::on_fetch_failed(SimTime /*now*/, const ndn::Name& base)
{
  fw::Actions actions;
  if (m_in_flight.erase(base) == 0) {
    return actions;
  }
  ++m_counters.fetch_failures;
  for (const auto& entry : m_fwd.pit().take_under(base)) {
    actions.push_back(m_fwd.drop(fw::DropReason::NoRoute, entry.name));
  }
  return actions;
}

sim::NodeId
select_gateway(const std::vector<GatewayCandidate>& candidates, double w)
{
  if (candidates.empty()) {
    throw EmptyCandidates("no gateway candidates");
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument("gateway weight must lie in [0, 1]");
  }
  const GatewayCandidate* best = nullptr;
  double best_score = 0;
  for (const auto& c : candidates) {
    double score = w * c.latency_to_cache_ms + (1.0 - w) * c.latency_to_demand_ms;
    if (best == nullptr || score < best_score || (score == best_score && c.node < best->node)) {
      best = &c;
      best_score = score;
    }
  }
  return best->node;
}

} // namespace icdn::gw
