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

#ifndef ICDN_SIM_CONSUMER_HPP
#define ICDN_SIM_CONSUMER_HPP

#include "icdn/sim/network.hpp"

#include <functional>
#include <map>
#include <random>

namespace icdn::sim {

struct FetchResult
{
  std::uint64_t request_id = 0;
  SimTime t_issue = 0;
  std::optional<SimTime> t_complete;
  /// Node whose cache or repo answered segment 0.
  std::optional<NodeId> served_by;
  std::uint32_t segments = 0;
  std::uint64_t bytes = 0;
  std::uint32_t retransmissions = 0;
  /// Reassembled content; only filled when Config::keep_content is set.
  std::optional<ndn::Bytes> content;

  bool ok() const noexcept { return t_complete.has_value(); }
};

struct ConsumerCounters
{
  std::uint64_t interests_sent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t integrity_failures = 0;
  std::uint64_t unsolicited = 0;
};

/**
 * @brief Content consumer attached to a single upstream node.
 *
 * An NDN fetch asks for segment 0 first and, once the final segment number
 * is known, keeps up to `window` segment Interests outstanding. Each segment
 * is retransmitted with a fresh nonce after retransmit_ms, up to
 * max_attempts times; exhausting the attempts fails the request. Data that
 * fails its digest check is discarded and left to the retransmission timer.
 *
 * An IP fetch sends one request to an origin and completes when the last
 * byte of the response arrives.
 */
class ConsumerApp : public NodeHandler
{
public:
  struct Config
  {
    std::uint32_t window = 4;
    double retransmit_ms = 1000;
    std::uint32_t max_attempts = 5;
    bool keep_content = false;
    std::uint64_t seed = 1;
  };

  using Done = std::function<void(const FetchResult&)>;

  ConsumerApp(Network& net, NodeId self, Config config);
  ConsumerApp(const ConsumerApp&) = delete;
  ConsumerApp& operator=(const ConsumerApp&) = delete;
  ~ConsumerApp() override;

  void fetch_ndn(std::uint64_t request_id, ndn::Name base, Done done,
                 std::optional<double> retransmit_ms = std::nullopt);
  void fetch_ip(std::uint64_t request_id, NodeId origin, std::string content_id,
                std::string resolution, Done done);

  void on_message(NodeId from, const Message& msg) override;

  NodeId self() const noexcept { return m_self; }
  const ConsumerCounters& counters() const noexcept { return m_counters; }
  std::size_t active() const noexcept { return m_ndn.size() + m_ip.size(); }

private:
  struct Outstanding
  {
    std::uint32_t attempts = 0;
    Simulator::EventId timer = 0;
  };

  struct NdnFetch
  {
    ndn::Name base;
    double retransmit_ms;
    FetchResult result;
    Done done;
    std::optional<std::uint32_t> final_segment;
    std::uint32_t next_segment = 0;
    std::uint32_t received = 0;
    std::map<std::uint32_t, Outstanding> outstanding;
    std::map<std::uint32_t, ndn::DataPtr> kept;
  };

  struct IpFetch
  {
    FetchResult result;
    Done done;
    std::uint64_t received = 0;
  };

  std::optional<NodeId> upstream() const;
  void send_segment(std::uint64_t id, NdnFetch& f, std::uint32_t seg);
  void on_timeout(std::uint64_t id, std::uint32_t seg);
  void on_data(const ndn::DataPtr& data, const Annotation& note);
  void on_segment(std::uint64_t id, std::uint32_t seg, const ndn::DataPtr& data, const Annotation& note);
  void fill_window(std::uint64_t id, NdnFetch& f);
  void finish_ndn(std::uint64_t id, bool ok);
  void on_ip_response(const IpResponse& r);

  Network& m_net;
  NodeId m_self;
  Config m_config;
  std::mt19937_64 m_rng;
  std::map<std::uint64_t, NdnFetch> m_ndn;
  std::map<std::uint64_t, IpFetch> m_ip; // keyed by flow
  std::map<ndn::Name, std::vector<std::pair<std::uint64_t, std::uint32_t>>> m_waiting;
  std::uint64_t m_next_flow = 1;
  ConsumerCounters m_counters;
};

} // namespace icdn::sim

#endif // ICDN_SIM_CONSUMER_HPP
