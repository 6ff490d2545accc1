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

#include "icdn/harness/testbed.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>

namespace icdn::harness {
namespace {

std::uint64_t
mix_seed(std::uint64_t seed, std::uint64_t salt)
{
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits, independent of the standard library's distributions.
double
unit_interval(std::mt19937_64& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

double
RunResult::time_above(std::string_view node, double level) const
{
  double total = 0;
  for (const auto& row : timeseries) {
    if (row.node == node && row.cpu_util > level) {
      total += bucket_ms;
    }
  }
  return total;
}

const NodeRow*
RunResult::node(std::string_view name) const
{
  for (const auto& n : nodes) {
    if (n.node == name) {
      return &n;
    }
  }
  return nullptr;
}

Testbed::Testbed(Scenario scenario, Options options)
  : m_scenario(std::move(scenario))
  , m_options(options)
{
  if (auto problems = check_scenario(m_scenario); !problems.empty()) {
    throw std::invalid_argument(fmt::format("{} at {}", problems.front().message, problems.front().path));
  }
  build();
}

Testbed::~Testbed() = default;

sim::ConsumerApp*
Testbed::consumer(std::string_view name) const
{
  auto it = m_consumers.find(name);
  return it == m_consumers.end() ? nullptr : it->second.get();
}

void
Testbed::build()
{
  const Knobs& k = m_scenario.knobs;
  m_net = std::make_unique<sim::Network>(m_sim, sim::Network::Config{k.bucket_ms});

  orch::Orchestrator::Config oc;
  oc.per_packet_cost_ms = k.per_packet_cost_ms;
  oc.cs_capacity_bytes = k.cs_capacity_bytes;
  oc.chunk_size = k.chunk_size;
  oc.freshness_ms = k.freshness_ms;
  oc.origin_timeout_ms = k.origin_timeout_ms;
  oc.origin_piece_bytes = k.origin_piece_bytes;
  oc.gateway_weight = k.gateway_weight;
  oc.transcode_rate_Bps = k.transcode_rate_Bps;
  oc.scale_threshold = k.scale_threshold;
  oc.scale_window_ms = k.scale_window_ms;
  m_orch = std::make_unique<orch::Orchestrator>(*m_net, m_scenario.domains, oc);

  for (std::size_t i = 0; i < m_scenario.consumers.size(); ++i) {
    const auto& c = m_scenario.consumers[i];
    sim::NodeId node = m_net->add_node(c.name, "consumer", {0, 0});
    sim::ConsumerApp::Config cc;
    cc.window = k.window;
    cc.max_attempts = k.max_attempts;
    cc.keep_content = m_options.keep_content;
    cc.seed = mix_seed(m_scenario.seed, i);
    m_consumers.emplace(c.name, std::make_unique<sim::ConsumerApp>(*m_net, node, cc));
  }
  m_pending_links = m_scenario.links;

  std::vector<std::pair<std::string, double>> demand;
  for (const auto& p : m_scenario.populations) {
    demand.emplace_back(p.consumer_node, static_cast<double>(p.request_count));
  }
  m_orch->set_demand(std::move(demand));

  for (const auto& op : m_scenario.northbound) {
    m_sim.schedule(op.at_ms, sim::EventKind::Control, sim::NodeId{}, [this, &op] { execute(op); });
  }
  if (k.scale_window_ms > 0 && k.scale_threshold > 0) {
    m_orch->start_scaling();
  }
  std::uint64_t next_id = 0;
  for (std::size_t i = 0; i < m_scenario.populations.size(); ++i) {
    schedule_population(i, next_id);
  }
  connect_ready();
}

void
Testbed::connect_ready()
{
  std::erase_if(m_pending_links, [this](const TopologyLink& l) {
    auto a = m_net->find(l.a);
    auto b = m_net->find(l.b);
    if (!a || !b || !m_net->alive(*a) || !m_net->alive(*b)) {
      return false;
    }
    m_net->add_link({*a, *b, l.latency_ms, l.bandwidth_mbps});
    return true;
  });
}

void
Testbed::execute(const NorthboundOp& nb)
{
  auto slice_id = [this](const std::string& name) {
    auto id = m_orch->find_slice(name);
    if (!id) {
      throw orch::UnknownSlice("no live slice '" + name + "'");
    }
    return *id;
  };

  if (const auto* c = std::get_if<CreateSlice>(&nb.op)) {
    m_orch->create_slice(c->spec);
  }
  else if (const auto* u = std::get_if<Upload>(&nb.op)) {
    const ContentDecl* decl = m_scenario.content(u->content_id);
    m_orch->upload(slice_id(u->slice), u->content_id,
                   cdn::synthetic_payload(m_scenario.seed, u->content_id, decl->size_bytes),
                   decl->resolutions.front());
  }
  else if (const auto* t = std::get_if<Transcode>(&nb.op)) {
    m_orch->transcode(slice_id(t->slice), t->content_id, t->target);
  }
  else if (const auto* l = std::get_if<LinkSlices>(&nb.op)) {
    // the baseline keeps ICN nodes as plain IP routers
    if (m_scenario.mode == Mode::Icn) {
      m_orch->link_slices(slice_id(l->cdn), slice_id(l->icn), l->weight);
    }
  }
  else if (const auto* d = std::get_if<DestroySlice>(&nb.op)) {
    m_orch->destroy_slice(slice_id(d->slice));
  }
  connect_ready();
}

void
Testbed::schedule_population(std::size_t index, std::uint64_t& next_id)
{
  const Population& p = m_scenario.populations[index];
  std::mt19937_64 rng(mix_seed(m_scenario.seed, 1000 + index));
  const sim::NodeId consumer = m_consumers.at(p.consumer_node)->self();
  double t = p.start_ms;
  for (std::uint32_t i = 0; i < p.request_count; ++i) {
    if (p.pattern.kind == Pattern::Kind::Uniform) {
      t = p.start_ms + static_cast<double>(i) * p.pattern.interval_ms;
    }
    else {
      t += -std::log1p(-unit_interval(rng)) / p.pattern.rate_per_s * 1000.0;
    }
    std::uint64_t id = next_id++;
    m_sim.schedule(t, sim::EventKind::GeneratorFire, consumer, [this, index, id] { issue(index, id); });
  }
}

void
Testbed::issue(std::size_t population, std::uint64_t request_id)
{
  const Population& p = m_scenario.populations[population];
  auto [slice, content_id, resolution] = *split_content_name(p.content);
  sim::ConsumerApp& app = *m_consumers.at(p.consumer_node);

  RequestRecord rec;
  rec.request_id = request_id;
  rec.region = p.region;
  rec.consumer_node = p.consumer_node;
  rec.content = content_id;
  rec.resolution = resolution;
  rec.t_issue_ms = m_sim.now();
  rec.status = "pending";
  m_records.emplace(request_id, rec);

  auto done = [this, slice, content_id, resolution](const sim::FetchResult& r) {
    RequestRecord& out = m_records.at(r.request_id);
    out.t_issue_ms = r.t_issue;
    out.t_complete_ms = r.t_complete;
    out.status = r.ok() ? "ok" : "failed";
    out.bytes = r.bytes;
    if (r.served_by) {
      out.served_by = m_net->name(*r.served_by);
    }
    if (auto cdn_id = m_orch->find_slice(slice)) {
      const auto& catalog = *m_orch->slice(*cdn_id).catalog;
      if (catalog.contains(content_id, resolution)) {
        const auto& obj = catalog.find(content_id, resolution);
        out.expected_bytes = obj.size_bytes();
        if (r.content) {
          out.content_matches = *r.content == *obj.payload;
        }
      }
    }
  };

  if (m_scenario.mode == Mode::Icn) {
    app.fetch_ndn(request_id, p.content, std::move(done), p.retransmit_ms);
    return;
  }
  auto origin = m_orch->origin_for(slice);
  if (!origin) {
    auto& out = m_records.at(request_id);
    out.status = "failed";
    return;
  }
  app.fetch_ip(request_id, *origin, content_id, resolution, std::move(done));
}

void
Testbed::run()
{
  if (m_ran) {
    throw std::logic_error("testbed already ran");
  }
  m_ran = true;
  m_sim.run_to_completion(m_scenario.knobs.horizon_ms);
}

RunResult
Testbed::result() const
{
  RunResult out;
  out.bucket_ms = m_scenario.knobs.bucket_ms;
  out.end_ms = m_sim.now();
  out.events = m_sim.executed();
  out.trace_hash = m_sim.trace_hash();
  for (const auto& [id, rec] : m_records) {
    out.requests.push_back(rec);
  }
  for (const auto& [name, app] : m_consumers) {
    const auto& c = app->counters();
    out.consumers.interests_sent += c.interests_sent;
    out.consumers.retransmissions += c.retransmissions;
    out.consumers.integrity_failures += c.integrity_failures;
    out.consumers.unsolicited += c.unsolicited;
  }

  std::map<sim::NodeId, std::string> regions;
  for (const auto& [id, v] : m_orch->vnfs()) {
    regions[v.node] = v.region;
  }
  for (const auto& c : m_scenario.consumers) {
    if (auto n = m_net->find(c.name)) {
      regions[*n] = c.region;
    }
  }

  std::size_t buckets = 0;
  for (sim::NodeId n : m_net->all_nodes()) {
    buckets = std::max(buckets, m_net->metrics(n).buckets().size());
  }

  for (sim::NodeId n : m_net->all_nodes()) {
    const sim::NodeMetrics& m = m_net->metrics(n);
    NodeRow row;
    row.node = m_net->name(n);
    row.role = m_net->role(n);
    row.region = regions.contains(n) ? regions.at(n) : "";
    row.vcpus = m.cpu().vcpus();
    row.rx_pkts = m.counters().rx_pkts;
    row.tx_pkts = m.counters().tx_pkts;
    row.rx_bytes = m.counters().rx_bytes;
    row.tx_bytes = m.counters().tx_bytes;
    row.cpu_busy_ms = m.cpu().total_cpu_ms();
    row.mem_peak = m.mem_peak();
    if (const gw::NdnNode* ndn = m_orch->ndn_node(n)) {
      const auto& fc = ndn->forwarder().counters();
      row.cs_hits = fc.cs_hits;
      row.cs_misses = fc.cs_misses;
      row.integrity_drops = fc.drops_for(fw::DropReason::Integrity);
      row.origin_fetches = ndn->origin_fetches();
      if (const gw::Gateway* g = ndn->gateway()) {
        row.cs_hits += g->counters().repo_hits;
      }
      for (const auto& p : ndn->publishes()) {
        out.publishes.push_back(p);
      }
    }
    out.nodes.push_back(row);

    // a removed node stops reporting after its removal bucket
    std::size_t last = buckets;
    if (auto removed = m_net->removed_at(n)) {
      last = std::min(last, static_cast<std::size_t>(std::floor(*removed / out.bucket_ms)) + 1);
    }
    std::uint64_t carried = 0;
    for (std::size_t b = 0; b < last; ++b) {
      TimeseriesRow ts;
      ts.t_bucket_ms = static_cast<double>(b) * out.bucket_ms;
      ts.node = row.node;
      if (b < m.buckets().size()) {
        const sim::Bucket& bk = m.buckets()[b];
        ts.cpu_util = m.cpu().enabled() ? bk.cpu_busy_ms / out.bucket_ms : 0.0;
        ts.mem_bytes = bk.mem_bytes;
        ts.link_in_bytes = bk.link_in_bytes;
        ts.link_out_bytes = bk.link_out_bytes;
        carried = bk.mem_bytes;
      }
      else {
        ts.mem_bytes = carried;
      }
      out.timeseries.push_back(std::move(ts));
    }
  }
  out.scale_log = m_orch->scale_log();
  return out;
}

RunResult
run_scenario(const Scenario& scenario)
{
  Testbed bed(scenario);
  bed.run();
  return bed.result();
}

} // namespace icdn::harness
