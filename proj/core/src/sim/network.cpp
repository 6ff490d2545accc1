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

#include "icdn/sim/network.hpp"

#include <algorithm>
#include <limits>

namespace icdn::sim {

std::optional<std::vector<NodeId>>
ShortestPaths::path_to(NodeId source, NodeId target) const
{
  if (!distance.contains(target)) {
    return std::nullopt;
  }
  std::vector<NodeId> path{target};
  while (path.back() != source) {
    path.push_back(previous.at(path.back()));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPaths
shortest_paths(const std::vector<LinkSpec>& links, NodeId source, const std::set<NodeId>* allowed)
{
  std::map<NodeId, std::vector<std::pair<NodeId, double>>> adjacency;
  auto permitted = [&](NodeId n) { return allowed == nullptr || allowed->contains(n); };
  for (const auto& l : links) {
    if (permitted(l.a) && permitted(l.b)) {
      adjacency[l.a].emplace_back(l.b, l.latency_ms);
      adjacency[l.b].emplace_back(l.a, l.latency_ms);
    }
  }

  ShortestPaths out;
  if (!permitted(source)) {
    return out;
  }
  std::set<std::pair<double, NodeId>> frontier{{0.0, source}};
  out.distance[source] = 0;
  while (!frontier.empty()) {
    auto [d, node] = *frontier.begin();
    frontier.erase(frontier.begin());
    for (auto [next, w] : adjacency[node]) {
      double nd = d + w;
      auto it = out.distance.find(next);
      if (it == out.distance.end() || nd < it->second) {
        if (it != out.distance.end()) {
          frontier.erase({it->second, next});
        }
        out.distance[next] = nd;
        out.previous[next] = node;
        out.first_hop[next] = node == source ? next : out.first_hop[node];
        frontier.emplace(nd, next);
      }
    }
  }
  return out;
}

Network::Network(Simulator& sim, Config config)
  : m_sim(sim)
  , m_config(config)
{
}

NodeId
Network::add_node(std::string name, std::string role, NodeResources resources)
{
  NodeId id{m_next_id++};
  m_nodes.emplace(id, Node{std::move(name), std::move(role), nullptr, true, m_sim.now(), std::nullopt,
                           NodeMetrics(m_config.bucket_ms,
                                       CpuMeter(resources.vcpus, resources.per_packet_cost_ms)),
                           {}});
  return id;
}

void
Network::attach(NodeId node, NodeHandler* handler)
{
  Node& n = m_nodes.at(node);
  n.handler = handler;
  if (handler != nullptr) {
    for (NodeId nb : n.neighbors) {
      handler->on_link_up(nb);
    }
  }
}

bool
Network::alive(NodeId node) const
{
  auto it = m_nodes.find(node);
  return it != m_nodes.end() && it->second.alive;
}

void
Network::remove_node(NodeId node)
{
  Node& n = m_nodes.at(node);
  if (!n.alive) {
    return;
  }
  auto neighbors = n.neighbors;
  for (NodeId nb : neighbors) {
    remove_link(node, nb);
  }
  n.alive = false;
  n.removed = m_sim.now();
  invalidate_routes();
}

void
Network::add_link(const LinkSpec& spec)
{
  if (spec.a == spec.b) {
    throw std::invalid_argument("link endpoints must differ");
  }
  if (!alive(spec.a) || !alive(spec.b)) {
    throw std::invalid_argument("link endpoint is not a live node");
  }
  if (spec.latency_ms < 0 || !(spec.bandwidth_mbps > 0)) {
    throw std::invalid_argument("link needs latency >= 0 and bandwidth > 0");
  }
  auto [it, inserted] = m_links.try_emplace(key(spec.a, spec.b), Link{spec, {}, {}});
  if (!inserted) {
    throw std::invalid_argument("duplicate link " + name(spec.a) + " <-> " + name(spec.b));
  }
  Node& a = m_nodes.at(spec.a);
  Node& b = m_nodes.at(spec.b);
  a.neighbors.insert(spec.b);
  b.neighbors.insert(spec.a);
  invalidate_routes();
  if (a.handler) a.handler->on_link_up(spec.b);
  if (b.handler) b.handler->on_link_up(spec.a);
}

void
Network::remove_link(NodeId a, NodeId b)
{
  if (m_links.erase(key(a, b)) == 0) {
    return;
  }
  Node& na = m_nodes.at(a);
  Node& nb = m_nodes.at(b);
  na.neighbors.erase(b);
  nb.neighbors.erase(a);
  invalidate_routes();
  if (na.handler && na.alive) na.handler->on_link_down(b);
  if (nb.handler && nb.alive) nb.handler->on_link_down(a);
}

bool
Network::has_link(NodeId a, NodeId b) const
{
  return m_links.contains(key(a, b));
}

std::optional<LinkSpec>
Network::link(NodeId a, NodeId b) const
{
  auto it = m_links.find(key(a, b));
  if (it == m_links.end()) {
    return std::nullopt;
  }
  return it->second.spec;
}

std::vector<NodeId>
Network::neighbors(NodeId node) const
{
  const auto& n = m_nodes.at(node).neighbors;
  return {n.begin(), n.end()};
}

std::vector<LinkSpec>
Network::links() const
{
  std::vector<LinkSpec> out;
  out.reserve(m_links.size());
  for (const auto& [k, l] : m_links) {
    out.push_back(l.spec);
  }
  return out;
}

bool
Network::send(NodeId from, NodeId to, Message msg)
{
  auto it = m_links.find(key(from, to));
  if (it == m_links.end() || !alive(from) || !alive(to)) {
    ++m_nodes.at(from).metrics.counters().no_link_drops;
    return false;
  }
  Link& link = it->second;
  Direction& dir = from == link.spec.a ? link.forward : link.backward;

  if (dir.corrupt_budget > 0) {
    if (auto* data = std::get_if<ndn::DataPtr>(&msg.payload)) {
      --dir.corrupt_budget;
      auto damaged = std::make_shared<ndn::Data>(**data);
      if (!damaged->payload.empty()) {
        damaged->payload[damaged->payload.size() / 2] ^= 0x01;
      }
      else {
        damaged->digest[0] ^= 0x01;
      }
      *data = std::move(damaged);
    }
  }

  const std::size_t bytes = wire_size(msg.payload);
  const SimTime now = m_sim.now();
  const SimTime start = std::max(now, dir.free_at);
  // bits / (Mbit/s) gives microseconds; /1000 for milliseconds
  const double serialization_ms = static_cast<double>(bytes) * 8.0 / (link.spec.bandwidth_mbps * 1e3);
  dir.free_at = start + serialization_ms;
  const SimTime arrival = dir.free_at + link.spec.latency_ms;

  m_nodes.at(from).metrics.on_tx(now, bytes);
  m_sim.schedule(arrival, EventKind::Deliver, to,
                 [this, from, to, m = std::move(msg)] { deliver(from, to, m); });
  return true;
}

void
Network::deliver(NodeId from, NodeId to, const Message& msg)
{
  Node& node = m_nodes.at(to);
  if (!node.alive) {
    return;
  }
  const SimTime now = m_sim.now();
  node.metrics.on_rx(now, wire_size(msg.payload));

  if (is_ip(msg.payload) && ip_destination(msg.payload) != to) {
    auto hop = next_hop(to, ip_destination(msg.payload));
    if (!hop) {
      ++node.metrics.counters().no_link_drops;
      return;
    }
    send(to, *hop, msg);
    return;
  }

  if (node.handler != nullptr) {
    node.handler->on_message(from, msg);
    node.metrics.sample_memory(now, node.handler->memory_bytes());
  }
}

bool
Network::send_ip(NodeId from, Message msg)
{
  NodeId dst = ip_destination(msg.payload);
  auto hop = next_hop(from, dst);
  if (!hop) {
    ++m_nodes.at(from).metrics.counters().no_link_drops;
    return false;
  }
  return send(from, *hop, std::move(msg));
}

const ShortestPaths&
Network::routes_from(NodeId node) const
{
  auto it = m_routes.find(node);
  if (it == m_routes.end()) {
    it = m_routes.emplace(node, shortest_paths(links(), node)).first;
  }
  return it->second;
}

std::optional<NodeId>
Network::next_hop(NodeId from, NodeId dst) const
{
  if (!alive(from) || !alive(dst) || from == dst) {
    return std::nullopt;
  }
  const auto& routes = routes_from(from);
  auto it = routes.first_hop.find(dst);
  if (it == routes.first_hop.end()) {
    return std::nullopt;
  }
  return it->second;
}

double
Network::path_latency(NodeId from, NodeId to) const
{
  if (from == to) {
    return 0;
  }
  const auto& routes = routes_from(from);
  auto it = routes.distance.find(to);
  return it == routes.distance.end() ? std::numeric_limits<double>::infinity() : it->second;
}

void
Network::corrupt_next_data(NodeId from, NodeId to, std::uint32_t count)
{
  auto it = m_links.find(key(from, to));
  if (it == m_links.end()) {
    throw NoLink("no link " + name(from) + " -> " + name(to));
  }
  Direction& dir = from == it->second.spec.a ? it->second.forward : it->second.backward;
  dir.corrupt_budget += count;
}

std::optional<NodeId>
Network::find(std::string_view wanted) const
{
  // latest node wins when a name was reused after removal
  std::optional<NodeId> found;
  for (const auto& [id, n] : m_nodes) {
    if (n.name == wanted) {
      found = id;
    }
  }
  return found;
}

std::vector<NodeId>
Network::all_nodes() const
{
  std::vector<NodeId> out;
  out.reserve(m_nodes.size());
  for (const auto& [id, n] : m_nodes) {
    out.push_back(id);
  }
  return out;
}

} // namespace icdn::sim
