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

#include "icdn/sim/consumer.hpp"

#include <algorithm>

namespace icdn::sim {

ConsumerApp::ConsumerApp(Network& net, NodeId self, Config config)
  : m_net(net)
  , m_self(self)
  , m_config(config)
  , m_rng(config.seed)
{
  if (m_config.window == 0 || m_config.max_attempts == 0) {
    throw std::invalid_argument("consumer window and max_attempts must be positive");
  }
  m_net.attach(m_self, this);
}

ConsumerApp::~ConsumerApp()
{
  if (m_net.handler(m_self) == this) {
    m_net.attach(m_self, nullptr);
  }
}

std::optional<NodeId>
ConsumerApp::upstream() const
{
  auto nbs = m_net.neighbors(m_self);
  if (nbs.empty()) {
    return std::nullopt;
  }
  return nbs.front();
}

void
ConsumerApp::fetch_ndn(std::uint64_t request_id, ndn::Name base, Done done,
                       std::optional<double> retransmit_ms)
{
  if (m_ndn.contains(request_id)) {
    throw std::invalid_argument("duplicate request id " + std::to_string(request_id));
  }
  NdnFetch f;
  f.base = std::move(base);
  f.retransmit_ms = retransmit_ms.value_or(m_config.retransmit_ms);
  f.result.request_id = request_id;
  f.result.t_issue = m_net.simulator().now();
  f.done = std::move(done);
  auto& stored = m_ndn.emplace(request_id, std::move(f)).first->second;
  stored.next_segment = 1;
  send_segment(request_id, stored, 0);
}

void
ConsumerApp::send_segment(std::uint64_t id, NdnFetch& f, std::uint32_t seg)
{
  Outstanding& o = f.outstanding[seg];
  if (o.attempts >= m_config.max_attempts) {
    finish_ndn(id, false);
    return;
  }
  if (o.attempts > 0) {
    ++f.result.retransmissions;
    ++m_counters.retransmissions;
  }
  ++o.attempts;

  ndn::Interest interest;
  interest.name = f.base.segment(seg);
  interest.nonce = m_rng();
  interest.lifetime_ms = static_cast<std::uint32_t>(std::max(1.0, f.retransmit_ms));

  auto& waiters = m_waiting[interest.name];
  if (std::find(waiters.begin(), waiters.end(), std::pair{id, seg}) == waiters.end()) {
    waiters.emplace_back(id, seg);
  }

  o.timer = m_net.simulator().schedule_in(f.retransmit_ms, EventKind::Timer, m_self,
                                          [this, id, seg] { on_timeout(id, seg); });
  ++m_counters.interests_sent;
  if (auto up = upstream()) {
    m_net.send(m_self, *up, Message{std::move(interest), {}});
  }
}

void
ConsumerApp::on_timeout(std::uint64_t id, std::uint32_t seg)
{
  auto it = m_ndn.find(id);
  if (it == m_ndn.end() || !it->second.outstanding.contains(seg)) {
    return;
  }
  send_segment(id, it->second, seg);
}

void
ConsumerApp::on_message(NodeId /*from*/, const Message& msg)
{
  if (const auto* data = std::get_if<ndn::DataPtr>(&msg.payload)) {
    on_data(*data, msg.note);
  }
  else if (const auto* resp = std::get_if<IpResponse>(&msg.payload)) {
    on_ip_response(*resp);
  }
}

void
ConsumerApp::on_data(const ndn::DataPtr& data, const Annotation& note)
{
  auto it = m_waiting.find(data->name);
  if (it == m_waiting.end()) {
    ++m_counters.unsolicited;
    return;
  }
  if (!data->digest_valid()) {
    ++m_counters.integrity_failures;
    return;
  }
  // each copy answers one interest; the oldest waiter takes it
  auto [id, seg] = it->second.front();
  it->second.erase(it->second.begin());
  if (it->second.empty()) {
    m_waiting.erase(it);
  }
  on_segment(id, seg, data, note);
}

void
ConsumerApp::on_segment(std::uint64_t id, std::uint32_t seg, const ndn::DataPtr& data,
                        const Annotation& note)
{
  auto it = m_ndn.find(id);
  if (it == m_ndn.end()) {
    return;
  }
  NdnFetch& f = it->second;
  auto out = f.outstanding.find(seg);
  if (out == f.outstanding.end()) {
    return;
  }
  m_net.simulator().cancel(out->second.timer);
  f.outstanding.erase(out);

  ++f.received;
  f.result.bytes += data->payload.size();
  if (m_config.keep_content) {
    f.kept.emplace(seg, data);
  }
  if (seg == 0) {
    f.final_segment = data->final_segment.value_or(0);
    f.result.served_by = note.served_by;
  }
  fill_window(id, f);
}

void
ConsumerApp::fill_window(std::uint64_t id, NdnFetch& f)
{
  if (!f.final_segment) {
    return;
  }
  if (f.received == *f.final_segment + 1) {
    finish_ndn(id, true);
    return;
  }
  while (f.outstanding.size() < m_config.window && f.next_segment <= *f.final_segment) {
    std::uint32_t seg = f.next_segment++;
    send_segment(id, f, seg);
    if (!m_ndn.contains(id)) {
      return;
    }
  }
}

void
ConsumerApp::finish_ndn(std::uint64_t id, bool ok)
{
  auto node = m_ndn.extract(id);
  NdnFetch& f = node.mapped();
  for (auto& [seg, o] : f.outstanding) {
    m_net.simulator().cancel(o.timer);
    auto w = m_waiting.find(f.base.segment(seg));
    if (w != m_waiting.end()) {
      std::erase(w->second, std::pair{id, seg});
      if (w->second.empty()) {
        m_waiting.erase(w);
      }
    }
  }
  if (ok) {
    f.result.t_complete = m_net.simulator().now();
    f.result.segments = f.received;
    if (m_config.keep_content) {
      ndn::Bytes content;
      for (auto& [seg, d] : f.kept) {
        content.insert(content.end(), d->payload.begin(), d->payload.end());
      }
      f.result.content = std::move(content);
    }
  }
  if (f.done) {
    f.done(f.result);
  }
}

void
ConsumerApp::fetch_ip(std::uint64_t request_id, NodeId origin, std::string content_id,
                      std::string resolution, Done done)
{
  std::uint64_t flow = (static_cast<std::uint64_t>(m_self.value) << 40) | m_next_flow++;
  IpFetch f;
  f.result.request_id = request_id;
  f.result.t_issue = m_net.simulator().now();
  f.done = std::move(done);
  m_ip.emplace(flow, std::move(f));

  IpRequest req;
  req.flow = flow;
  req.src = m_self;
  req.dst = origin;
  req.content_id = std::move(content_id);
  req.resolution = std::move(resolution);
  m_net.send_ip(m_self, Message{std::move(req), {}});
}

void
ConsumerApp::on_ip_response(const IpResponse& r)
{
  auto it = m_ip.find(r.flow);
  if (it == m_ip.end()) {
    ++m_counters.unsolicited;
    return;
  }
  IpFetch& f = it->second;
  f.received += r.length;
  if (!r.last) {
    return;
  }
  auto node = m_ip.extract(it);
  FetchResult& result = node.mapped().result;
  if (!r.error) {
    result.t_complete = m_net.simulator().now();
    result.bytes = node.mapped().received;
    result.served_by = r.src;
    if (m_config.keep_content && r.body) {
      result.content = *r.body;
    }
  }
  if (node.mapped().done) {
    node.mapped().done(result);
  }
}

} // namespace icdn::sim
