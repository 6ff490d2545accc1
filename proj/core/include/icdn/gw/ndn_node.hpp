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

#ifndef ICDN_GW_NDN_NODE_HPP
#define ICDN_GW_NDN_NODE_HPP

#include "icdn/gw/gateway.hpp"
#include "icdn/sim/network.hpp"

#include <functional>
#include <memory>

namespace icdn::gw {

struct FetchResult
{
  bool ok = false;
  std::shared_ptr<const ndn::Bytes> body;
  std::string error;
  SimTime started = 0;
  SimTime finished = 0;
};

/**
 * @brief IP-side client used by a gateway to pull one content from an origin.
 *
 * Sends a single request and gathers response pieces by flow id. A fetch
 * that has not completed after timeout_ms fails with "FetchTimeout".
 */
class OriginFetcher
{
public:
  using Callback = std::function<void(const FetchResult&)>;

  OriginFetcher(sim::Network& net, sim::NodeId self, double timeout_ms);

  std::uint64_t ip_fetch(sim::NodeId origin, const ContentKey& key, Callback done);

  /// Consumes a response for one of our flows; false if the flow is unknown.
  bool on_response(const sim::IpResponse& r);

  std::size_t in_flight() const noexcept { return m_flows.size(); }

private:
  struct Flow
  {
    Callback done;
    SimTime started = 0;
    std::uint64_t received = 0;
    sim::Simulator::EventId timer = 0;
  };

  void finish(std::uint64_t flow, FetchResult result);

  sim::Network& m_net;
  sim::NodeId m_self;
  double m_timeout_ms;
  std::map<std::uint64_t, Flow> m_flows;
  std::uint64_t m_next_flow = 1;
};

struct PublishRecord
{
  ndn::Name base;
  ContentKey key;
  std::uint64_t size_bytes = 0;
  std::uint32_t segments = 0;
  SimTime fetch_started = 0;
  SimTime published = 0;

  double publish_ms() const noexcept { return published - fetch_started; }
};

/**
 * @brief Simulated NDN router, optionally promoted to gateway.
 *
 * Each neighbor link is one face whose id equals the neighbor's node id.
 * Data answered from this node's cache or repo is annotated with this node
 * as the server; relayed Data keeps the annotation it arrived with.
 */
class NdnNode : public sim::NodeHandler
{
public:
  struct Config
  {
    fw::Forwarder::Config forwarder;
    double origin_timeout_ms = 30000;
  };

  NdnNode(sim::Network& net, sim::NodeId self, Config config);
  NdnNode(const NdnNode&) = delete;
  NdnNode& operator=(const NdnNode&) = delete;
  ~NdnNode() override;

  static fw::FaceId face_of(sim::NodeId n) { return fw::FaceId{n.value}; }
  static sim::NodeId node_of(fw::FaceId f) { return sim::NodeId{f.value}; }

  /// Turns this node into a gateway; calling again returns the existing gateway.
  Gateway& promote(Gateway::Config config);
  Gateway* gateway() noexcept { return m_gateway.get(); }
  const Gateway* gateway() const noexcept { return m_gateway.get(); }

  fw::Forwarder& forwarder() noexcept { return m_fwd; }
  const fw::Forwarder& forwarder() const noexcept { return m_fwd; }
  sim::NodeId self() const noexcept { return m_self; }

  void on_message(sim::NodeId from, const sim::Message& msg) override;
  void on_link_up(sim::NodeId neighbor) override;
  void on_link_down(sim::NodeId neighbor) override;

  /// CS bytes + 512 bytes per PIT entry + repo bytes.
  std::uint64_t memory_bytes() const override;

  std::uint64_t origin_fetches() const noexcept;
  const std::vector<PublishRecord>& publishes() const noexcept { return m_publishes; }
  void on_publish(std::function<void(const PublishRecord&)> fn) { m_publish_hook = std::move(fn); }

  static constexpr std::uint64_t pit_entry_bytes = 512;

private:
  void execute(const fw::Actions& actions, const sim::Annotation& note);
  void start_fetch(const PendingFetch& fetch);
  void arm_pit_timer();

  sim::Network& m_net;
  sim::NodeId m_self;
  Config m_config;
  fw::Forwarder m_fwd;
  std::unique_ptr<Gateway> m_gateway;
  std::unique_ptr<OriginFetcher> m_fetcher;
  std::vector<PublishRecord> m_publishes;
  std::function<void(const PublishRecord&)> m_publish_hook;
  std::optional<SimTime> m_pit_timer_at;
};

} // namespace icdn::gw

#endif // ICDN_GW_NDN_NODE_HPP
