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

#include "icdn/gw/ndn_node.hpp"

namespace icdn::gw {

OriginFetcher::OriginFetcher(sim::Network& net, sim::NodeId self, double timeout_ms)
  : m_net(net)
  , m_self(self)
  , m_timeout_ms(timeout_ms)
{
}

std::uint64_t
OriginFetcher::ip_fetch(sim::NodeId origin, const ContentKey& key, Callback done)
{
  std::uint64_t flow = (static_cast<std::uint64_t>(m_self.value) << 40) | m_next_flow++;
  Flow f;
  f.done = std::move(done);
  f.started = m_net.simulator().now();
  f.timer = m_net.simulator().schedule_in(m_timeout_ms, sim::EventKind::Timer, m_self, [this, flow] {
    FetchResult r;
    r.error = "FetchTimeout";
    finish(flow, std::move(r));
  });
  m_flows.emplace(flow, std::move(f));

  sim::IpRequest req;
  req.flow = flow;
  req.src = m_self;
  req.dst = origin;
  req.content_id = key.content_id;
  req.resolution = key.resolution;
  // an unroutable origin is left to the timeout
  m_net.send_ip(m_self, sim::Message{std::move(req), {}});
  return flow;
}

bool
OriginFetcher::on_response(const sim::IpResponse& r)
{
  auto it = m_flows.find(r.flow);
  if (it == m_flows.end()) {
    return false;
  }
  it->second.received += r.length;
  if (!r.last) {
    return true;
  }
  FetchResult result;
  if (r.error) {
    result.error = *r.error;
  }
  else if (!r.body || it->second.received != r.total || r.body->size() != r.total) {
    result.error = "IncompleteResponse";
  }
  else {
    result.ok = true;
    result.body = r.body;
  }
  finish(r.flow, std::move(result));
  return true;
}

void
OriginFetcher::finish(std::uint64_t flow, FetchResult result)
{
  auto node = m_flows.extract(flow);
  if (node.empty()) {
    return;
  }
  m_net.simulator().cancel(node.mapped().timer);
  result.started = node.mapped().started;
  result.finished = m_net.simulator().now();
  node.mapped().done(result);
}

NdnNode::NdnNode(sim::Network& net, sim::NodeId self, Config config)
  : m_net(net)
  , m_self(self)
  , m_config(config)
  , m_fwd(config.forwarder)
{
  m_net.attach(m_self, this);
}

NdnNode::~NdnNode()
{
  if (m_net.handler(m_self) == this) {
    m_net.attach(m_self, nullptr);
  }
}

Gateway&
NdnNode::promote(Gateway::Config config)
{
  if (!m_gateway) {
    m_gateway = std::make_unique<Gateway>(m_fwd, config);
    m_fetcher = std::make_unique<OriginFetcher>(m_net, m_self, m_config.origin_timeout_ms);
  }
  return *m_gateway;
}

void
NdnNode::on_link_up(sim::NodeId neighbor)
{
  if (!m_fwd.has_face(face_of(neighbor))) {
    m_fwd.register_face(face_of(neighbor));
  }
}

void
NdnNode::on_link_down(sim::NodeId neighbor)
{
  m_fwd.fib().remove_face(face_of(neighbor));
}

void
NdnNode::on_message(sim::NodeId from, const sim::Message& msg)
{
  const SimTime now = m_net.simulator().now();
  const fw::FaceId face = face_of(from);
  if (!m_fwd.has_face(face)) {
    m_fwd.register_face(face);
  }

  if (const auto* interest = std::get_if<ndn::Interest>(&msg.payload)) {
    sim::Annotation mine{m_self};
    if (m_gateway) {
      GatewayOutput out = m_gateway->on_interest(now, face, *interest);
      execute(out.actions, mine);
      if (out.fetch) {
        start_fetch(*out.fetch);
      }
    }
    else {
      // any Data produced for an interest came from the local cache
      execute(m_fwd.on_interest(now, face, *interest), mine);
    }
  }
  else if (const auto* data = std::get_if<ndn::DataPtr>(&msg.payload)) {
    execute(m_fwd.on_data(now, face, *data), msg.note);
  }
  else if (const auto* resp = std::get_if<sim::IpResponse>(&msg.payload)) {
    if (m_fetcher) {
      m_fetcher->on_response(*resp);
    }
  }
  arm_pit_timer();
}

void
NdnNode::execute(const fw::Actions& actions, const sim::Annotation& note)
{
  for (const auto& action : actions) {
    if (const auto* si = std::get_if<fw::SendInterest>(&action)) {
      m_net.send(m_self, node_of(si->face), sim::Message{si->interest, {}});
    }
    else if (const auto* sd = std::get_if<fw::SendData>(&action)) {
      m_net.send(m_self, node_of(sd->face), sim::Message{sd->data, note});
    }
  }
}

void
NdnNode::start_fetch(const PendingFetch& fetch)
{
  m_fetcher->ip_fetch(fetch.origin, fetch.key, [this, fetch](const FetchResult& r) {
    const SimTime now = m_net.simulator().now();
    if (!r.ok) {
      execute(m_gateway->on_fetch_failed(now, fetch.base), {});
      return;
    }
    PublishResult pub = m_gateway->publish_content_to_icn(now, fetch.base, *r.body);
    PublishRecord rec{fetch.base, fetch.key, r.body->size(), pub.segments, r.started, now};
    m_publishes.push_back(rec);
    execute(pub.actions, sim::Annotation{m_self});
    m_net.metrics(m_self).sample_memory(now, memory_bytes());
    if (m_publish_hook) {
      m_publish_hook(rec);
    }
  });
}

void
NdnNode::arm_pit_timer()
{
  auto next = m_fwd.pit().next_deadline();
  if (!next || (m_pit_timer_at && *m_pit_timer_at <= *next)) {
    return;
  }
  m_pit_timer_at = *next;
  m_net.simulator().schedule(*next, sim::EventKind::Timer, m_self, [this] {
    m_pit_timer_at.reset();
    m_fwd.pit_expire(m_net.simulator().now());
    m_net.metrics(m_self).sample_memory(m_net.simulator().now(), memory_bytes());
    arm_pit_timer();
  }, /*daemon=*/true);
}

std::uint64_t
NdnNode::memory_bytes() const
{
  std::uint64_t bytes = m_fwd.cs().bytes() + m_fwd.pit().size() * pit_entry_bytes;
  if (m_gateway) {
    bytes += m_gateway->repo().bytes();
  }
  return bytes;
}

std::uint64_t
NdnNode::origin_fetches() const noexcept
{
  return m_gateway ? m_gateway->counters().origin_fetches : 0;
}

} // namespace icdn::gw
