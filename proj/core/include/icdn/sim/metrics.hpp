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

#ifndef ICDN_SIM_METRICS_HPP
#define ICDN_SIM_METRICS_HPP

#include "icdn/sim/simulator.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace icdn::sim {

struct NodeCounters
{
  std::uint64_t rx_pkts = 0;
  std::uint64_t tx_pkts = 0;
  std::uint64_t rx_bytes = 0;
  std::uint64_t tx_bytes = 0;
  std::uint64_t no_link_drops = 0;
};

struct Bucket
{
  double cpu_busy_ms = 0;
  std::uint64_t mem_bytes = 0;
  std::uint64_t link_in_bytes = 0;
  std::uint64_t link_out_bytes = 0;
};

/**
 * @brief Work-conserving CPU meter.
 *
 * Each unit of CPU time occupies cpu_ms / vcpus of wall time starting when
 * the previous work finishes, so an undersized node stays busy after its
 * load has stopped. The meter never delays packet handling.
 */
class CpuMeter
{
public:
  CpuMeter() = default;
  CpuMeter(std::uint32_t vcpus, double per_packet_cost_ms)
    : m_vcpus(vcpus)
    , m_per_packet_ms(per_packet_cost_ms)
  {}

  bool enabled() const noexcept { return m_vcpus > 0; }
  std::uint32_t vcpus() const noexcept { return m_vcpus; }
  double per_packet_cost_ms() const noexcept { return m_per_packet_ms; }

  /// Adds CPU time at @p now; returns the wall-clock busy interval it occupies.
  std::pair<SimTime, SimTime> add(SimTime now, double cpu_ms);

  double total_cpu_ms() const noexcept { return m_total_cpu_ms; }
  SimTime busy_until() const noexcept { return m_busy_until; }

private:
  std::uint32_t m_vcpus = 0;
  double m_per_packet_ms = 0;
  double m_total_cpu_ms = 0;
  SimTime m_busy_until = 0;
};

/// Per-node counters and fixed-width time buckets.
class NodeMetrics
{
public:
  NodeMetrics(double bucket_ms, CpuMeter cpu)
    : m_bucket_ms(bucket_ms)
    , m_cpu(cpu)
  {}

  void on_rx(SimTime now, std::size_t bytes);
  void on_tx(SimTime now, std::size_t bytes);
  void add_cpu_time(SimTime now, double cpu_ms);
  void sample_memory(SimTime now, std::uint64_t bytes);

  NodeCounters& counters() noexcept { return m_counters; }
  const NodeCounters& counters() const noexcept { return m_counters; }
  const CpuMeter& cpu() const noexcept { return m_cpu; }
  const std::vector<Bucket>& buckets() const noexcept { return m_buckets; }
  double bucket_ms() const noexcept { return m_bucket_ms; }

  /// Mean CPU utilization over [from, to), from the bucketed busy time.
  double cpu_utilization(SimTime from, SimTime to) const;

  /// Peak memory sample so far.
  std::uint64_t mem_peak() const noexcept { return m_mem_peak; }

private:
  Bucket& bucket_at(SimTime t);
  void spread_busy(SimTime start, SimTime end);

  double m_bucket_ms;
  CpuMeter m_cpu;
  NodeCounters m_counters;
  std::vector<Bucket> m_buckets;
  std::uint64_t m_mem_peak = 0;
  std::uint64_t m_last_mem = 0;
};

} // namespace icdn::sim

#endif // ICDN_SIM_METRICS_HPP
