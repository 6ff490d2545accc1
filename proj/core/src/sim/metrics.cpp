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

#include "icdn/sim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace icdn::sim {

std::pair<SimTime, SimTime>
CpuMeter::add(SimTime now, double cpu_ms)
{
  if (m_vcpus == 0 || cpu_ms <= 0) {
    return {now, now};
  }
  m_total_cpu_ms += cpu_ms;
  SimTime start = std::max(now, m_busy_until);
  SimTime end = start + cpu_ms / m_vcpus;
  m_busy_until = end;
  return {start, end};
}

Bucket&
NodeMetrics::bucket_at(SimTime t)
{
  auto index = static_cast<std::size_t>(std::floor(t / m_bucket_ms));
  if (index >= m_buckets.size()) {
    m_buckets.resize(index + 1, Bucket{0, m_last_mem, 0, 0});
  }
  return m_buckets[index];
}

void
NodeMetrics::spread_busy(SimTime start, SimTime end)
{
  while (end > start) {
    auto index = std::floor(start / m_bucket_ms);
    SimTime bucket_end = (index + 1) * m_bucket_ms;
    SimTime piece_end = std::min(end, bucket_end);
    bucket_at(start).cpu_busy_ms += piece_end - start;
    start = piece_end;
  }
}

void
NodeMetrics::on_rx(SimTime now, std::size_t bytes)
{
  ++m_counters.rx_pkts;
  m_counters.rx_bytes += bytes;
  bucket_at(now).link_in_bytes += bytes;
  if (m_cpu.enabled()) {
    auto [s, e] = m_cpu.add(now, m_cpu.per_packet_cost_ms());
    spread_busy(s, e);
  }
}

void
NodeMetrics::on_tx(SimTime now, std::size_t bytes)
{
  ++m_counters.tx_pkts;
  m_counters.tx_bytes += bytes;
  bucket_at(now).link_out_bytes += bytes;
  if (m_cpu.enabled()) {
    auto [s, e] = m_cpu.add(now, m_cpu.per_packet_cost_ms());
    spread_busy(s, e);
  }
}

void
NodeMetrics::add_cpu_time(SimTime now, double cpu_ms)
{
  auto [s, e] = m_cpu.add(now, cpu_ms);
  spread_busy(s, e);
}

void
NodeMetrics::sample_memory(SimTime now, std::uint64_t bytes)
{
  Bucket& b = bucket_at(now);
  // later buckets already created by CPU spreading carry the newest value
  std::size_t index = static_cast<std::size_t>(&b - m_buckets.data());
  for (std::size_t i = index; i < m_buckets.size(); ++i) {
    if (i == index) {
      m_buckets[i].mem_bytes = std::max(m_buckets[i].mem_bytes, bytes);
    }
    else {
      m_buckets[i].mem_bytes = bytes;
    }
  }
  m_last_mem = bytes;
  m_mem_peak = std::max(m_mem_peak, bytes);
}

double
NodeMetrics::cpu_utilization(SimTime from, SimTime to) const
{
  if (to <= from) {
    return 0;
  }
  double busy = 0;
  for (std::size_t i = 0; i < m_buckets.size(); ++i) {
    SimTime b0 = static_cast<double>(i) * m_bucket_ms;
    SimTime b1 = b0 + m_bucket_ms;
    SimTime overlap = std::min(to, b1) - std::max(from, b0);
    if (overlap > 0) {
      busy += m_buckets[i].cpu_busy_ms * (overlap / m_bucket_ms);
    }
  }
  return busy / (to - from);
}

} // namespace icdn::sim
