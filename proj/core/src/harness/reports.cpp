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

#include "icdn/harness/reports.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace icdn::harness {
namespace {

std::string
num(double v)
{
  return fmt::format("{:.6f}", v);
}

double
mean_of(std::span<const double> v)
{
  if (v.empty()) {
    return 0;
  }
  double sum = 0;
  for (double x : v) {
    sum += x;
  }
  return sum / static_cast<double>(v.size());
}

/// Linear interpolation between closest ranks on sorted data.
double
quantile(const std::vector<double>& sorted, double q)
{
  if (sorted.empty()) {
    return 0;
  }
  double pos = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

} // namespace

std::string
requests_csv(const RunResult& r)
{
  std::string out = "request_id,region,consumer_node,content,resolution,t_issue_ms,t_complete_ms,delivery_ms,served_by,status\n";
  for (const auto& q : r.requests) {
    auto d = q.delivery_ms();
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", q.request_id, q.region, q.consumer_node, q.content,
                       q.resolution, num(q.t_issue_ms), q.t_complete_ms ? num(*q.t_complete_ms) : "",
                       d ? num(*d) : "", q.served_by, q.status);
  }
  return out;
}

std::string
node_counters_csv(const RunResult& r)
{
  std::string out = "node,role,rx_pkts,tx_pkts,rx_bytes,tx_bytes,cs_hits,cs_misses,origin_fetches\n";
  for (const auto& n : r.nodes) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", n.node, n.role, n.rx_pkts, n.tx_pkts, n.rx_bytes,
                       n.tx_bytes, n.cs_hits, n.cs_misses, n.origin_fetches);
  }
  return out;
}

std::string
timeseries_csv(const RunResult& r)
{
  std::string out = "t_bucket_ms,node,cpu_util,mem_bytes,link_in_bytes,link_out_bytes\n";
  for (const auto& t : r.timeseries) {
    out += fmt::format("{},{},{},{},{},{}\n", num(t.t_bucket_ms), t.node, num(t.cpu_util), t.mem_bytes,
                       t.link_in_bytes, t.link_out_bytes);
  }
  return out;
}

DelayStats
region_stats(const RunResult& r, std::string_view region)
{
  DelayStats s;
  std::vector<const RequestRecord*> done;
  for (const auto& q : r.requests) {
    if (q.region != region) {
      continue;
    }
    ++s.requests;
    if (q.t_complete_ms) {
      done.push_back(&q);
    }
  }
  s.completed = done.size();
  if (done.empty()) {
    return s;
  }
  std::stable_sort(done.begin(), done.end(), [](const RequestRecord* a, const RequestRecord* b) {
    return a->t_issue_ms < b->t_issue_ms;
  });
  std::vector<double> delays;
  for (const auto* q : done) {
    delays.push_back(*q->delivery_ms());
  }
  std::size_t decile = std::max<std::size_t>(1, delays.size() / 10);
  s.first_decile_mean = mean_of(std::span(delays).first(decile));
  s.last_decile_mean = mean_of(std::span(delays).last(decile));
  s.mean = mean_of(delays);
  std::sort(delays.begin(), delays.end());
  s.median = quantile(delays, 0.5);
  s.p95 = quantile(delays, 0.95);
  return s;
}

std::string
summary_text(const Scenario& s, const RunResult& r)
{
  std::string out;
  out += fmt::format("mode: {}\nseed: {}\nsimulated time: {} ms\nevents: {}\ntrace hash: {:016x}\n\n",
                     to_string(s.mode), s.seed, num(r.end_ms), r.events, r.trace_hash);

  std::vector<std::string> regions;
  for (const auto& p : s.populations) {
    if (std::find(regions.begin(), regions.end(), p.region) == regions.end()) {
      regions.push_back(p.region);
    }
  }
  out += "delivery_ms by region (completed requests, issue order for deciles)\n";
  out += fmt::format("{:<10} {:>8} {:>9} {:>12} {:>12} {:>12} {:>14} {:>14}\n", "region", "requests", "completed",
                     "mean", "median", "p95", "first_decile", "last_decile");
  for (const auto& region : regions) {
    DelayStats d = region_stats(r, region);
    out += fmt::format("{:<10} {:>8} {:>9} {:>12.3f} {:>12.3f} {:>12.3f} {:>14.3f} {:>14.3f}\n", region,
                       d.requests, d.completed, d.mean, d.median, d.p95, d.first_decile_mean, d.last_decile_mean);
  }

  std::uint64_t fetches = 0;
  for (const auto& n : r.nodes) {
    fetches += n.origin_fetches;
  }
  out += fmt::format("\norigin fetches: {}\n", fetches);
  for (const auto& p : r.publishes) {
    out += fmt::format("published {} ({} bytes, {} segments) in {} ms\n", p.base.to_uri(), p.size_bytes,
                       p.segments, num(p.publish_ms()));
  }
  out += fmt::format("consumer interests: {}, retransmissions: {}, integrity failures: {}\n",
                     r.consumers.interests_sent, r.consumers.retransmissions, r.consumers.integrity_failures);

  out += "\nper-node totals\n";
  out += fmt::format("{:<14} {:<12} {:<6} {:>5} {:>10} {:>10} {:>13} {:>13} {:>9} {:>9} {:>12} {:>14} {:>12}\n",
                     "node", "role", "region", "vcpu", "rx_pkts", "tx_pkts", "rx_bytes", "tx_bytes", "cs_hits",
                     "cs_miss", "cpu_busy_ms", "cpu>50%_ms", "mem_peak");
  for (const auto& n : r.nodes) {
    out += fmt::format("{:<14} {:<12} {:<6} {:>5} {:>10} {:>10} {:>13} {:>13} {:>9} {:>9} {:>12.3f} {:>14.0f} {:>12}\n",
                       n.node, n.role, n.region, n.vcpus, n.rx_pkts, n.tx_pkts, n.rx_bytes, n.tx_bytes, n.cs_hits,
                       n.cs_misses, n.cpu_busy_ms, r.time_above(n.node, 0.5), n.mem_peak);
  }

  out += "\nscaling\n";
  if (r.scale_log.empty()) {
    out += "no scale requests\n";
  }
  for (const auto& e : r.scale_log) {
    out += fmt::format("t={} ms slice={} vnf={} util={:.3f} {}: {}\n", num(e.t), e.slice, e.vnf, e.utilization,
                       e.granted ? "scaled out" : "denied", e.detail);
  }
  return out;
}

void
write_files(const std::filesystem::path& dir, const std::vector<std::pair<std::string, std::string>>& files)
{
  namespace fs = std::filesystem;
  bool created_dir = !fs::exists(dir);
  fs::create_directories(dir);
  std::vector<fs::path> written;
  try {
    for (const auto& [name, contents] : files) {
      fs::path p = dir / name;
      std::ofstream f(p, std::ios::binary | std::ios::trunc);
      written.push_back(p);
      f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
      f.close();
      if (!f) {
        throw std::runtime_error("cannot write " + p.string());
      }
    }
  }
  catch (...) {
    std::error_code ec;
    for (const auto& p : written) {
      fs::remove(p, ec);
    }
    if (created_dir) {
      fs::remove(dir, ec);
    }
    throw;
  }
}

void
write_outputs(const Scenario& s, const RunResult& r, const std::filesystem::path& dir)
{
  write_files(dir, {{"requests.csv", requests_csv(r)},
                    {"node_counters.csv", node_counters_csv(r)},
                    {"timeseries.csv", timeseries_csv(r)},
                    {"summary.txt", summary_text(s, r)}});
}

std::vector<PublishPoint>
publish_bench(const Scenario& base, const std::vector<double>& sizes_mib, unsigned jobs)
{
  if (sizes_mib.empty()) {
    throw std::invalid_argument("publish bench needs at least one size");
  }
  if (base.populations.empty()) {
    throw std::invalid_argument("publish bench needs a population to trigger the first request");
  }
  const Population& trigger = base.populations.front();
  auto parts = split_content_name(trigger.content);
  if (!parts) {
    throw std::invalid_argument("population content is not a CDN content name");
  }
  const std::string content_id = std::get<1>(*parts);
  for (double mib : sizes_mib) {
    if (!(mib > 0)) {
      throw std::invalid_argument("publish bench sizes must be positive");
    }
  }

  std::vector<PublishPoint> points(sizes_mib.size());
  std::vector<std::exception_ptr> errors(sizes_mib.size());
  auto one = [&](std::size_t i) {
    try {
      Scenario s = base;
      s.mode = Mode::Icn;
      Population p = trigger;
      p.request_count = 1;
      p.start_ms = std::max(p.start_ms, 0.0);
      s.populations = {p};
      auto size = static_cast<std::uint64_t>(std::llround(sizes_mib[i] * 1048576.0));
      for (auto& c : s.contents) {
        if (c.content_id == content_id) {
          c.size_bytes = size;
        }
      }
      RunResult r = run_scenario(s);
      auto it = std::find_if(r.publishes.begin(), r.publishes.end(),
                             [&](const gw::PublishRecord& rec) { return rec.key.content_id == content_id; });
      if (it == r.publishes.end()) {
        throw std::runtime_error("no gateway published '" + content_id + "'; is a CDN slice linked?");
      }
      points[i] = {size, it->publish_ms()};
    }
    catch (...) {
      errors[i] = std::current_exception();
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(sizes_mib.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < sizes_mib.size(); ++i) {
      one(i);
    }
  }
  else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < sizes_mib.size(); i = next++) {
          one(i);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return points;
}

std::string
publish_csv(const std::vector<PublishPoint>& points)
{
  std::string out = "size_bytes,publish_ms\n";
  for (const auto& p : points) {
    out += fmt::format("{},{}\n", p.size_bytes, num(p.publish_ms));
  }
  return out;
}

} // namespace icdn::harness
