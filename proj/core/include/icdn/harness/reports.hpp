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

#ifndef ICDN_HARNESS_REPORTS_HPP
#define ICDN_HARNESS_REPORTS_HPP

#include "icdn/harness/testbed.hpp"

#include <filesystem>

namespace icdn::harness {

std::string requests_csv(const RunResult& r);
std::string node_counters_csv(const RunResult& r);
std::string timeseries_csv(const RunResult& r);
std::string summary_text(const Scenario& s, const RunResult& r);

struct DelayStats
{
  std::size_t requests = 0;
  std::size_t completed = 0;
  double mean = 0;
  double median = 0;
  double p95 = 0;
  double first_decile_mean = 0;
  double last_decile_mean = 0;
};

/// Delivery statistics of one region's completed requests, in issue order.
DelayStats region_stats(const RunResult& r, std::string_view region);

/**
 * Writes requests.csv, node_counters.csv, timeseries.csv and summary.txt.
 * Creates @p dir if needed; on failure removes whatever it wrote.
 */
void write_outputs(const Scenario& s, const RunResult& r, const std::filesystem::path& dir);

/// Writes @p files (name -> contents) into @p dir, removing them all again if any write fails.
void write_files(const std::filesystem::path& dir, const std::vector<std::pair<std::string, std::string>>& files);

struct PublishPoint
{
  std::uint64_t size_bytes = 0;
  double publish_ms = 0;
};

/**
 * Runs one independent single-request simulation per size (MiB) and reports
 * the gateway's fetch-to-publish time. The first population's content is
 * resized; @p jobs > 1 runs sizes on worker threads.
 */
std::vector<PublishPoint> publish_bench(const Scenario& base, const std::vector<double>& sizes_mib,
                                        unsigned jobs = 1);

std::string publish_csv(const std::vector<PublishPoint>& points);

} // namespace icdn::harness

#endif // ICDN_HARNESS_REPORTS_HPP
