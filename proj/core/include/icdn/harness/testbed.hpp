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

#ifndef ICDN_HARNESS_TESTBED_HPP
#define ICDN_HARNESS_TESTBED_HPP

#include "icdn/harness/scenario.hpp"
#include "icdn/sim/consumer.hpp"

#include <memory>

namespace icdn::harness {

struct RequestRecord
{
  std::uint64_t request_id = 0;
  std::string region;
  std::string consumer_node;
  std::string content;
  std::string resolution;
  double t_issue_ms = 0;
  std::optional<double> t_complete_ms;
  std::string served_by;
  std::string status; // ok | failed
  std::uint64_t bytes = 0;
  std::uint64_t expected_bytes = 0;
  /// Set when content was kept: reassembled bytes equal the origin object.
  std::optional<bool> content_matches;

  std::optional<double> delivery_ms() const
  {
    if (!t_complete_ms) {
      return std::nullopt;
    }
    return *t_complete_ms - t_issue_ms;
  }
};

struct NodeRow
{
  std::string node;
  std::string role;
  std::string region;
  std::uint32_t vcpus = 0;
  std::uint64_t rx_pkts = 0;
  std::uint64_t tx_pkts = 0;
  std::uint64_t rx_bytes = 0;
  std::uint64_t tx_bytes = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t cs_misses = 0;
  std::uint64_t origin_fetches = 0;
  std::uint64_t integrity_drops = 0;
  double cpu_busy_ms = 0;
  std::uint64_t mem_peak = 0;
};

struct TimeseriesRow
{
  double t_bucket_ms = 0;
  std::string node;
  double cpu_util = 0;
  std::uint64_t mem_bytes = 0;
  std::uint64_t link_in_bytes = 0;
  std::uint64_t link_out_bytes = 0;
};

struct RunResult
{
  std::vector<RequestRecord> requests;
  std::vector<NodeRow> nodes;
  std::vector<TimeseriesRow> timeseries;
  std::vector<gw::PublishRecord> publishes;
  std::vector<orch::ScaleEvent> scale_log;
  sim::ConsumerCounters consumers;
  double bucket_ms = 1000;
  double end_ms = 0;
  std::uint64_t events = 0;
  std::uint64_t trace_hash = 0;

  /// Milliseconds during which a node's cpu_util exceeded @p level, from its buckets.
  double time_above(std::string_view node, double level) const;
  const NodeRow* node(std::string_view name) const;
};

/**
 * @brief One simulated deployment built from a scenario.
 *
 * Northbound requests run as events at their at_ms times in document order;
 * topology links come up as soon as both endpoints exist.
 */
class Testbed
{
public:
  struct Options
  {
    bool keep_content = false;
  };

  explicit Testbed(Scenario scenario)
    : Testbed(std::move(scenario), Options{})
  {}
  Testbed(Scenario scenario, Options options);
  Testbed(const Testbed&) = delete;
  Testbed& operator=(const Testbed&) = delete;
  ~Testbed();

  /// Runs to completion. Throws on runtime failure (quota, horizon, bad references).
  void run();

  RunResult result() const;

  const Scenario& scenario() const noexcept { return m_scenario; }
  sim::Simulator& simulator() noexcept { return m_sim; }
  sim::Network& network() noexcept { return *m_net; }
  orch::Orchestrator& orchestrator() noexcept { return *m_orch; }
  sim::ConsumerApp* consumer(std::string_view name) const;

private:
  void build();
  void connect_ready();
  void execute(const NorthboundOp& op);
  void schedule_population(std::size_t index, std::uint64_t& next_id);
  void issue(std::size_t population, std::uint64_t request_id);

  Scenario m_scenario;
  Options m_options;
  sim::Simulator m_sim;
  std::unique_ptr<sim::Network> m_net;
  std::unique_ptr<orch::Orchestrator> m_orch;
  std::map<std::string, std::unique_ptr<sim::ConsumerApp>, std::less<>> m_consumers;
  std::vector<TopologyLink> m_pending_links;
  std::map<std::uint64_t, RequestRecord> m_records;
  bool m_ran = false;
};

RunResult run_scenario(const Scenario& scenario);

} // namespace icdn::harness

#endif // ICDN_HARNESS_TESTBED_HPP
