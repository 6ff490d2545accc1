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

#ifndef ICDN_SIM_NETWORK_HPP
#define ICDN_SIM_NETWORK_HPP

#include "icdn/sim/message.hpp"
#include "icdn/sim/metrics.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace icdn::sim {

struct LinkSpec
{
  NodeId a;
  NodeId b;
  double latency_ms = 0;
  double bandwidth_mbps = 1000;
};

class NoLink : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Receives messages delivered to one node.
class NodeHandler
{
public:
  virtual ~NodeHandler() = default;
  virtual void on_message(NodeId from, const Message& msg) = 0;
  virtual void on_link_up(NodeId /*neighbor*/) {}
  virtual void on_link_down(NodeId /*neighbor*/) {}
  /// Current memory model footprint, sampled on every received packet.
  virtual std::uint64_t memory_bytes() const { return 0; }
};

struct NodeResources
{
  std::uint32_t vcpus = 0; // 0 disables the CPU meter
  double per_packet_cost_ms = 0.02;
};

/// Dijkstra over a link list; latency is the edge weight.
struct ShortestPaths
{
  std::map<NodeId, double> distance;
  std::map<NodeId, NodeId> previous;
  std::map<NodeId, NodeId> first_hop;

  std::optional<std::vector<NodeId>> path_to(NodeId source, NodeId target) const;
};

ShortestPaths shortest_paths(const std::vector<LinkSpec>& links, NodeId source,
                             const std::set<NodeId>* allowed = nullptr);

/**
 * @brief Nodes joined by bidirectional point-to-point links.
 *
 * Each direction of a link is a FIFO transmitter: a message starts
 * serializing once the previous one has left, and arrives latency_ms after
 * its last bit is on the wire. IP messages are routed hop by hop along
 * lowest-latency paths; NDN packets only travel to direct neighbors.
 */
class Network
{
public:
  struct Config
  {
    double bucket_ms = 1000;
  };

  Network(Simulator& sim, Config config);
  explicit Network(Simulator& sim)
    : Network(sim, Config{})
  {}
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  NodeId add_node(std::string name, std::string role, NodeResources resources = {});
  void attach(NodeId node, NodeHandler* handler);
  void remove_node(NodeId node);
  bool alive(NodeId node) const;

  void add_link(const LinkSpec& spec);
  void remove_link(NodeId a, NodeId b);
  bool has_link(NodeId a, NodeId b) const;
  std::optional<LinkSpec> link(NodeId a, NodeId b) const;
  std::vector<NodeId> neighbors(NodeId node) const;
  std::vector<LinkSpec> links() const;

  /// Transmits to a direct neighbor. Returns false (and counts a drop) when no link exists.
  bool send(NodeId from, NodeId to, Message msg);

  /// Sends an IP message toward its destination along the routing table.
  bool send_ip(NodeId from, Message msg);

  std::optional<NodeId> next_hop(NodeId from, NodeId dst) const;
  double path_latency(NodeId from, NodeId to) const;

  /// Flips one payload byte in the next @p count Data packets sent from @p from to @p to.
  void corrupt_next_data(NodeId from, NodeId to, std::uint32_t count = 1);

  const std::string& name(NodeId node) const { return m_nodes.at(node).name; }
  const std::string& role(NodeId node) const { return m_nodes.at(node).role; }
  void set_role(NodeId node, std::string role) { m_nodes.at(node).role = std::move(role); }
  std::optional<NodeId> find(std::string_view name) const;

  /// Every node ever added, including removed ones, in id order.
  std::vector<NodeId> all_nodes() const;
  SimTime created_at(NodeId node) const { return m_nodes.at(node).created; }
  std::optional<SimTime> removed_at(NodeId node) const { return m_nodes.at(node).removed; }

  NodeMetrics& metrics(NodeId node) { return m_nodes.at(node).metrics; }
  const NodeMetrics& metrics(NodeId node) const { return m_nodes.at(node).metrics; }
  NodeHandler* handler(NodeId node) const { return m_nodes.at(node).handler; }

  Simulator& simulator() noexcept { return m_sim; }
  double bucket_ms() const noexcept { return m_config.bucket_ms; }

private:
  struct Direction
  {
    SimTime free_at = 0;
    std::uint32_t corrupt_budget = 0;
  };

  struct Link
  {
    LinkSpec spec;
    Direction forward;  // spec.a -> spec.b
    Direction backward; // spec.b -> spec.a
  };

  struct Node
  {
    std::string name;
    std::string role;
    NodeHandler* handler = nullptr;
    bool alive = true;
    SimTime created = 0;
    std::optional<SimTime> removed;
    NodeMetrics metrics;
    std::set<NodeId> neighbors;
  };

  using LinkKey = std::pair<NodeId, NodeId>;
  static LinkKey key(NodeId a, NodeId b) { return a < b ? LinkKey{a, b} : LinkKey{b, a}; }

  void deliver(NodeId from, NodeId to, const Message& msg);
  void invalidate_routes() { m_routes.clear(); }
  const ShortestPaths& routes_from(NodeId node) const;

  Simulator& m_sim;
  Config m_config;
  std::map<NodeId, Node> m_nodes;
  std::map<LinkKey, Link> m_links;
  mutable std::map<NodeId, ShortestPaths> m_routes;
  std::uint32_t m_next_id = 0;
};

} // namespace icdn::sim

#endif // ICDN_SIM_NETWORK_HPP
