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

#ifndef ICDN_HARNESS_SCENARIO_HPP
#define ICDN_HARNESS_SCENARIO_HPP

#include "icdn/cdn/origin.hpp"
#include "icdn/orch/orchestrator.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace icdn::harness {

enum class Mode : std::uint8_t { Icn, CdnOnly };

std::string_view to_string(Mode m) noexcept;

struct Knobs
{
  std::uint32_t chunk_size = 8192;
  std::uint64_t cs_capacity_bytes = 64ULL << 20;
  double gateway_weight = 0.5;
  double bucket_ms = 1000;
  double origin_timeout_ms = 30000;
  double per_packet_cost_ms = 0.02;
  double transcode_rate_Bps = 20e6;
  std::uint32_t window = 4;
  std::uint32_t max_attempts = 5;
  std::uint32_t freshness_ms = 3'600'000;
  std::uint64_t origin_piece_bytes = 64 * 1024;
  double scale_threshold = 0.8;
  double scale_window_ms = 10000; // 0 disables scaling checks
  double horizon_ms = 3'600'000;
};

struct ConsumerNode
{
  std::string name;
  std::string region;
};

struct TopologyLink
{
  std::string a;
  std::string b;
  double latency_ms = 0;
  double bandwidth_mbps = 1000;
};

struct CreateSlice
{
  orch::SliceSpec spec;
};

struct Upload
{
  std::string slice;
  std::string content_id;
};

struct Transcode
{
  std::string slice;
  std::string content_id;
  cdn::ResolutionProfile target;
};

struct LinkSlices
{
  std::string cdn;
  std::string icn;
  std::optional<double> weight;
};

struct DestroySlice
{
  std::string slice;
};

struct NorthboundOp
{
  double at_ms = 0;
  std::variant<CreateSlice, Upload, Transcode, LinkSlices, DestroySlice> op;
};

struct ContentDecl
{
  std::string content_id;
  std::uint64_t size_bytes = 0;
  std::vector<std::string> resolutions; // first is the uploaded source
};

struct Pattern
{
  enum class Kind : std::uint8_t { Uniform, Poisson };
  Kind kind = Kind::Uniform;
  double interval_ms = 10;  // uniform
  double rate_per_s = 100;  // poisson
};

struct Population
{
  std::string region;
  std::string consumer_node;
  std::string attach_node;
  std::uint32_t request_count = 0;
  ndn::Name content; // /cdn/<slice>/<content_id>/<resolution>
  Pattern pattern;
  double retransmit_ms = 1000;
  double start_ms = 0;
};

struct Scenario
{
  std::uint64_t seed = 1;
  Mode mode = Mode::Icn;
  Knobs knobs;
  std::vector<orch::DomainSpec> domains;
  std::vector<ConsumerNode> consumers;
  std::vector<TopologyLink> links;
  std::vector<NorthboundOp> northbound;
  std::vector<ContentDecl> contents;
  std::vector<Population> populations;

  const ContentDecl* content(std::string_view id) const;
};

struct Diagnostic
{
  std::string code;
  std::string path; // JSON pointer into the scenario document
  std::string message;

  /// One JSON object on a single line.
  std::string to_json() const;
};

struct LoadResult
{
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return scenario.has_value() && diagnostics.empty(); }
};

/// "a.b.0.c=value"; the value is JSON when it parses as JSON, text otherwise.
using Override = std::string;

/// Parses, applies overrides, and runs every static check.
LoadResult load_scenario(std::string_view text, const std::vector<Override>& overrides = {});
LoadResult load_scenario_file(const std::filesystem::path& file, const std::vector<Override>& overrides = {});

/// Static checks on an already-built scenario (references, invariants, quota feasibility).
std::vector<Diagnostic> check_scenario(const Scenario& s);

/// Splits a population content name into (cdn slice, content id, resolution).
std::optional<std::tuple<std::string, std::string, std::string>> split_content_name(const ndn::Name& name);

} // namespace icdn::harness

#endif // ICDN_HARNESS_SCENARIO_HPP
