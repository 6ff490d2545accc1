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

#include "icdn/harness/scenario.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace icdn::harness {

using nlohmann::json;

std::string_view
to_string(Mode m) noexcept
{
  return m == Mode::Icn ? "icn" : "cdn-only";
}

const ContentDecl*
Scenario::content(std::string_view id) const
{
  for (const auto& c : contents) {
    if (c.content_id == id) {
      return &c;
    }
  }
  return nullptr;
}

std::string
Diagnostic::to_json() const
{
  return json{{"code", code}, {"path", path}, {"message", message}}.dump();
}

std::optional<std::tuple<std::string, std::string, std::string>>
split_content_name(const ndn::Name& name)
{
  if (name.size() != 4 || name[0] != "cdn") {
    return std::nullopt;
  }
  return std::tuple{name[1], name[2], name[3]};
}

namespace {

/// Typed field access that records a diagnostic instead of throwing.
class Reader
{
public:
  explicit Reader(std::vector<Diagnostic>& out)
    : m_out(out)
  {}

  void report(std::string code, std::string path, std::string message)
  {
    m_out.push_back({std::move(code), std::move(path), std::move(message)});
  }

  bool object(const json& j, const std::string& path)
  {
    if (!j.is_object()) {
      report("BadType", path, "expected an object");
      return false;
    }
    return true;
  }

  const json* array(const json& obj, const std::string& key, const std::string& path, bool required)
  {
    const json* j = find(obj, key, path, required);
    if (j != nullptr && !j->is_array()) {
      report("BadType", path + "/" + key, "expected an array");
      return nullptr;
    }
    return j;
  }

  void known_fields(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys)
  {
    for (const auto& [k, v] : obj.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        report("UnknownField", path + "/" + k, fmt::format("unknown field '{}'", k));
      }
    }
  }

  template<typename T>
  void read(const json& obj, const std::string& key, const std::string& path, T& out, bool required)
  {
    const json* j = find(obj, key, path, required);
    if (j == nullptr) {
      return;
    }
    const std::string at = path + "/" + key;
    if constexpr (std::is_same_v<T, std::string>) {
      if (!j->is_string()) {
        report("BadType", at, "expected a string");
        return;
      }
      out = j->get<std::string>();
    }
    else if constexpr (std::is_integral_v<T>) {
      if (!j->is_number_integer() || (j->is_number_integer() && !j->is_number_unsigned() && j->get<std::int64_t>() < 0)) {
        report("BadType", at, "expected a non-negative integer");
        return;
      }
      auto v = j->get<std::uint64_t>();
      if (v > std::numeric_limits<T>::max()) {
        report("BadValue", at, "integer out of range");
        return;
      }
      out = static_cast<T>(v);
    }
    else {
      if (!j->is_number()) {
        report("BadType", at, "expected a number");
        return;
      }
      out = j->get<T>();
    }
  }

  template<typename T>
  void read(const json& obj, const std::string& key, const std::string& path, std::optional<T>& out)
  {
    if (obj.contains(key)) {
      T v{};
      std::size_t before = m_out.size();
      read(obj, key, path, v, true);
      if (m_out.size() == before) {
        out = v;
      }
    }
  }

  std::size_t errors() const noexcept { return m_out.size(); }

private:
  const json* find(const json& obj, const std::string& key, const std::string& path, bool required)
  {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) {
        report("MissingField", path + "/" + key, fmt::format("missing required field '{}'", key));
      }
      return nullptr;
    }
    return &*it;
  }

  std::vector<Diagnostic>& m_out;
};

orch::Flavor
read_resources(Reader& r, const json& obj, const std::string& key, const std::string& path)
{
  orch::Flavor f;
  if (!obj.contains(key)) {
    r.report("MissingField", path + "/" + key, fmt::format("missing required field '{}'", key));
    return f;
  }
  const json& j = obj.at(key);
  const std::string at = path + "/" + key;
  if (!r.object(j, at)) {
    return f;
  }
  r.known_fields(j, at, {"vcpus", "ram_mb", "disk_gb"});
  r.read(j, "vcpus", at, f.vcpus, true);
  r.read(j, "ram_mb", at, f.ram_mb, true);
  r.read(j, "disk_gb", at, f.disk_gb, true);
  return f;
}

void
read_knobs(Reader& r, const json& j, const std::string& path, Knobs& k)
{
  if (!r.object(j, path)) {
    return;
  }
  r.known_fields(j, path, {"chunk_size", "cs_capacity_bytes", "gateway_weight", "bucket_ms",
                           "origin_timeout_ms", "per_packet_cost_ms", "transcode_rate_Bps", "window",
                           "max_attempts", "freshness_ms", "origin_piece_bytes", "scale_threshold",
                           "scale_window_ms", "horizon_ms"});
  r.read(j, "chunk_size", path, k.chunk_size, false);
  r.read(j, "cs_capacity_bytes", path, k.cs_capacity_bytes, false);
  r.read(j, "gateway_weight", path, k.gateway_weight, false);
  r.read(j, "bucket_ms", path, k.bucket_ms, false);
  r.read(j, "origin_timeout_ms", path, k.origin_timeout_ms, false);
  r.read(j, "per_packet_cost_ms", path, k.per_packet_cost_ms, false);
  r.read(j, "transcode_rate_Bps", path, k.transcode_rate_Bps, false);
  r.read(j, "window", path, k.window, false);
  r.read(j, "max_attempts", path, k.max_attempts, false);
  r.read(j, "freshness_ms", path, k.freshness_ms, false);
  r.read(j, "origin_piece_bytes", path, k.origin_piece_bytes, false);
  r.read(j, "scale_threshold", path, k.scale_threshold, false);
  r.read(j, "scale_window_ms", path, k.scale_window_ms, false);
  r.read(j, "horizon_ms", path, k.horizon_ms, false);
}

void
read_link(Reader& r, const json& j, const std::string& path, std::string& a, std::string& b,
          double& latency, double& bandwidth)
{
  if (!r.object(j, path)) {
    return;
  }
  r.known_fields(j, path, {"a", "b", "latency_ms", "bandwidth_mbps"});
  r.read(j, "a", path, a, true);
  r.read(j, "b", path, b, true);
  r.read(j, "latency_ms", path, latency, true);
  r.read(j, "bandwidth_mbps", path, bandwidth, true);
}

std::optional<NorthboundOp>
read_op(Reader& r, const json& j, const std::string& path)
{
  if (!r.object(j, path)) {
    return std::nullopt;
  }
  std::string op;
  r.read(j, "op", path, op, true);
  NorthboundOp out;
  r.read(j, "at_ms", path, out.at_ms, false);

  if (op == "create_cdn_slice" || op == "create_icn_slice") {
    r.known_fields(j, path, {"op", "at_ms", "name", "duration_ms", "vnfs", "links"});
    orch::SliceSpec spec;
    spec.kind = op == "create_cdn_slice" ? orch::SliceKind::Cdn : orch::SliceKind::Icn;
    r.read(j, "name", path, spec.name, true);
    r.read(j, "duration_ms", path, spec.duration_ms);
    if (const json* vnfs = r.array(j, "vnfs", path, true)) {
      for (std::size_t i = 0; i < vnfs->size(); ++i) {
        const json& v = (*vnfs)[i];
        const std::string at = fmt::format("{}/vnfs/{}", path, i);
        if (!r.object(v, at)) {
          continue;
        }
        r.known_fields(v, at, {"name", "role", "domain", "flavor"});
        orch::VnfSpec vnf;
        std::string role;
        r.read(v, "name", at, vnf.name, true);
        r.read(v, "role", at, role, true);
        r.read(v, "domain", at, vnf.domain, true);
        vnf.flavor = read_resources(r, v, "flavor", at);
        if (v.contains("role") && v["role"].is_string()) {
          if (auto parsed = orch::parse_role(role)) {
            vnf.role = *parsed;
          }
          else {
            r.report("BadValue", at + "/role", fmt::format("unknown role '{}'", role));
          }
        }
        spec.vnfs.push_back(std::move(vnf));
      }
    }
    if (const json* links = r.array(j, "links", path, false)) {
      for (std::size_t i = 0; i < links->size(); ++i) {
        orch::SliceLinkSpec l;
        read_link(r, (*links)[i], fmt::format("{}/links/{}", path, i), l.a, l.b, l.latency_ms, l.bandwidth_mbps);
        spec.links.push_back(std::move(l));
      }
    }
    out.op = CreateSlice{std::move(spec)};
  }
  else if (op == "upload") {
    r.known_fields(j, path, {"op", "at_ms", "slice", "content_id"});
    Upload u;
    r.read(j, "slice", path, u.slice, true);
    r.read(j, "content_id", path, u.content_id, true);
    out.op = std::move(u);
  }
  else if (op == "transcode") {
    r.known_fields(j, path, {"op", "at_ms", "slice", "content_id", "resolution", "scale"});
    Transcode t;
    std::string tag;
    r.read(j, "slice", path, t.slice, true);
    r.read(j, "content_id", path, t.content_id, true);
    r.read(j, "resolution", path, tag, true);
    std::string scale;
    if (!j.contains("scale")) {
      r.report("MissingField", path + "/scale", "missing required field 'scale'");
    }
    else if (j["scale"].is_string()) {
      scale = j["scale"].get<std::string>();
    }
    else if (j["scale"].is_number()) {
      scale = j["scale"].dump();
    }
    else {
      r.report("BadType", path + "/scale", "expected \"p/q\" or a number");
    }
    if (!scale.empty()) {
      try {
        t.target = cdn::ResolutionProfile::parse(tag, scale);
      }
      catch (const std::invalid_argument& e) {
        r.report("BadValue", path + "/scale", e.what());
      }
    }
    out.op = std::move(t);
  }
  else if (op == "link") {
    r.known_fields(j, path, {"op", "at_ms", "cdn", "icn", "weight"});
    LinkSlices l;
    r.read(j, "cdn", path, l.cdn, true);
    r.read(j, "icn", path, l.icn, true);
    r.read(j, "weight", path, l.weight);
    out.op = std::move(l);
  }
  else if (op == "destroy") {
    r.known_fields(j, path, {"op", "at_ms", "slice"});
    DestroySlice d;
    r.read(j, "slice", path, d.slice, true);
    out.op = std::move(d);
  }
  else {
    if (j.contains("op")) {
      r.report("BadValue", path + "/op", fmt::format("unknown northbound op '{}'", op));
    }
    return std::nullopt;
  }
  return out;
}

Scenario
read_scenario(Reader& r, const json& root)
{
  Scenario s;
  if (!r.object(root, "")) {
    return s;
  }
  r.known_fields(root, "", {"seed", "mode", "knobs", "domains", "topology", "northbound", "contents",
                            "populations"});
  r.read(root, "seed", "", s.seed, false);
  std::string mode = "icn";
  r.read(root, "mode", "", mode, false);
  if (mode == "icn") {
    s.mode = Mode::Icn;
  }
  else if (mode == "cdn-only") {
    s.mode = Mode::CdnOnly;
  }
  else {
    r.report("BadValue", "/mode", fmt::format("mode must be 'icn' or 'cdn-only', not '{}'", mode));
  }
  if (root.contains("knobs")) {
    read_knobs(r, root["knobs"], "/knobs", s.knobs);
  }

  if (const json* domains = r.array(root, "domains", "", true)) {
    for (std::size_t i = 0; i < domains->size(); ++i) {
      const json& d = (*domains)[i];
      const std::string at = fmt::format("/domains/{}", i);
      if (!r.object(d, at)) {
        continue;
      }
      r.known_fields(d, at, {"name", "region", "quota"});
      orch::DomainSpec spec;
      r.read(d, "name", at, spec.name, true);
      r.read(d, "region", at, spec.region, true);
      spec.quota = read_resources(r, d, "quota", at);
      s.domains.push_back(std::move(spec));
    }
  }

  if (root.contains("topology")) {
    const json& topo = root["topology"];
    if (r.object(topo, "/topology")) {
      r.known_fields(topo, "/topology", {"nodes", "links"});
      if (const json* nodes = r.array(topo, "nodes", "/topology", false)) {
        for (std::size_t i = 0; i < nodes->size(); ++i) {
          const json& n = (*nodes)[i];
          const std::string at = fmt::format("/topology/nodes/{}", i);
          if (!r.object(n, at)) {
            continue;
          }
          r.known_fields(n, at, {"name", "kind", "region"});
          ConsumerNode c;
          std::string kind = "consumer";
          r.read(n, "name", at, c.name, true);
          r.read(n, "kind", at, kind, false);
          r.read(n, "region", at, c.region, true);
          if (kind != "consumer") {
            r.report("BadValue", at + "/kind", "topology nodes must be of kind 'consumer'");
          }
          s.consumers.push_back(std::move(c));
        }
      }
      if (const json* links = r.array(topo, "links", "/topology", false)) {
        for (std::size_t i = 0; i < links->size(); ++i) {
          TopologyLink l;
          read_link(r, (*links)[i], fmt::format("/topology/links/{}", i), l.a, l.b, l.latency_ms, l.bandwidth_mbps);
          s.links.push_back(std::move(l));
        }
      }
    }
  }

  if (const json* ops = r.array(root, "northbound", "", true)) {
    for (std::size_t i = 0; i < ops->size(); ++i) {
      if (auto op = read_op(r, (*ops)[i], fmt::format("/northbound/{}", i))) {
        s.northbound.push_back(std::move(*op));
      }
    }
  }

  if (const json* contents = r.array(root, "contents", "", false)) {
    for (std::size_t i = 0; i < contents->size(); ++i) {
      const json& c = (*contents)[i];
      const std::string at = fmt::format("/contents/{}", i);
      if (!r.object(c, at)) {
        continue;
      }
      r.known_fields(c, at, {"content_id", "size_bytes", "resolutions"});
      ContentDecl decl;
      r.read(c, "content_id", at, decl.content_id, true);
      r.read(c, "size_bytes", at, decl.size_bytes, true);
      if (const json* res = r.array(c, "resolutions", at, true)) {
        for (std::size_t k = 0; k < res->size(); ++k) {
          if (!(*res)[k].is_string()) {
            r.report("BadType", fmt::format("{}/resolutions/{}", at, k), "expected a string");
            continue;
          }
          decl.resolutions.push_back((*res)[k].get<std::string>());
        }
      }
      s.contents.push_back(std::move(decl));
    }
  }

  if (const json* pops = r.array(root, "populations", "", false)) {
    for (std::size_t i = 0; i < pops->size(); ++i) {
      const json& p = (*pops)[i];
      const std::string at = fmt::format("/populations/{}", i);
      if (!r.object(p, at)) {
        continue;
      }
      r.known_fields(p, at, {"region", "consumer_node", "attach_node", "request_count", "content", "pattern",
                             "retransmit_ms", "start_ms"});
      Population pop;
      r.read(p, "region", at, pop.region, true);
      r.read(p, "consumer_node", at, pop.consumer_node, true);
      r.read(p, "attach_node", at, pop.attach_node, true);
      r.read(p, "request_count", at, pop.request_count, true);
      r.read(p, "retransmit_ms", at, pop.retransmit_ms, false);
      r.read(p, "start_ms", at, pop.start_ms, false);
      std::string content;
      r.read(p, "content", at, content, true);
      if (!content.empty()) {
        try {
          pop.content = ndn::Name::parse(content);
        }
        catch (const ndn::MalformedUri& e) {
          r.report("BadValue", at + "/content", e.what());
        }
      }
      if (p.contains("pattern")) {
        const json& pat = p["pattern"];
        const std::string pat_at = at + "/pattern";
        if (r.object(pat, pat_at)) {
          r.known_fields(pat, pat_at, {"kind", "interval_ms", "rate"});
          std::string kind = "uniform";
          r.read(pat, "kind", pat_at, kind, false);
          if (kind == "uniform") {
            pop.pattern.kind = Pattern::Kind::Uniform;
            r.read(pat, "interval_ms", pat_at, pop.pattern.interval_ms, true);
          }
          else if (kind == "poisson") {
            pop.pattern.kind = Pattern::Kind::Poisson;
            r.read(pat, "rate", pat_at, pop.pattern.rate_per_s, true);
          }
          else {
            r.report("BadValue", pat_at + "/kind", fmt::format("pattern must be 'uniform' or 'poisson', not '{}'", kind));
          }
        }
      }
      s.populations.push_back(std::move(pop));
    }
  }
  return s;
}

bool
apply_override(json& root, const std::string& text, std::vector<Diagnostic>& out)
{
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    out.push_back({"BadOverride", "", fmt::format("override '{}' is not key=value", text)});
    return false;
  }
  std::string key = text.substr(0, eq);
  std::string raw = text.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) {
    value = raw;
  }

  json* cur = &root;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> tokens;
  while (std::getline(parts, part, '.')) {
    tokens.push_back(part);
  }
  std::string path;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    path += "/" + t;
    if (t.empty()) {
      out.push_back({"BadOverride", path, fmt::format("empty key segment in '{}'", key)});
      return false;
    }
    if (cur->is_array()) {
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), index);
      if (ec != std::errc{} || ptr != t.data() + t.size() || index >= cur->size()) {
        out.push_back({"BadOverride", path, fmt::format("'{}' is not a valid index", t)});
        return false;
      }
      cur = &(*cur)[index];
    }
    else if (cur->is_object() || cur->is_null()) {
      cur = &(*cur)[t];
    }
    else {
      out.push_back({"BadOverride", path, fmt::format("cannot descend into a scalar at '{}'", t)});
      return false;
    }
  }
  *cur = std::move(value);
  return true;
}

} // namespace

std::vector<Diagnostic>
check_scenario(const Scenario& s)
{
  std::vector<Diagnostic> out;
  auto report = [&out](std::string code, std::string path, std::string message) {
    out.push_back({std::move(code), std::move(path), std::move(message)});
  };

  const Knobs& k = s.knobs;
  if (k.chunk_size == 0) report("BadValue", "/knobs/chunk_size", "chunk_size must be positive");
  if (!(k.bucket_ms > 0)) report("BadValue", "/knobs/bucket_ms", "bucket_ms must be positive");
  if (k.window == 0) report("BadValue", "/knobs/window", "window must be at least 1");
  if (k.max_attempts == 0) report("BadValue", "/knobs/max_attempts", "max_attempts must be at least 1");
  if (!(k.gateway_weight >= 0 && k.gateway_weight <= 1)) report("BadValue", "/knobs/gateway_weight", "gateway_weight must lie in [0, 1]");
  if (!(k.origin_timeout_ms > 0)) report("BadValue", "/knobs/origin_timeout_ms", "origin_timeout_ms must be positive");
  if (k.per_packet_cost_ms < 0) report("BadValue", "/knobs/per_packet_cost_ms", "per_packet_cost_ms must be >= 0");
  if (!(k.transcode_rate_Bps > 0)) report("BadValue", "/knobs/transcode_rate_Bps", "transcode_rate_Bps must be positive");
  if (k.origin_piece_bytes == 0) report("BadValue", "/knobs/origin_piece_bytes", "origin_piece_bytes must be positive");
  if (k.scale_window_ms < 0) report("BadValue", "/knobs/scale_window_ms", "scale_window_ms must be >= 0");
  if (!(k.horizon_ms > 0)) report("BadValue", "/knobs/horizon_ms", "horizon_ms must be positive");

  std::map<std::string, orch::Vim> vims;
  for (std::size_t i = 0; i < s.domains.size(); ++i) {
    const auto& d = s.domains[i];
    if (!vims.try_emplace(d.name, d).second) {
      report("DuplicateName", fmt::format("/domains/{}/name", i), fmt::format("domain '{}' defined twice", d.name));
    }
  }

  // every node name that will ever exist: consumers plus VNFs of any created slice
  std::set<std::string> names;
  std::set<std::string> consumer_names;
  for (std::size_t i = 0; i < s.consumers.size(); ++i) {
    if (!names.insert(s.consumers[i].name).second) {
      report("DuplicateName", fmt::format("/topology/nodes/{}/name", i),
             fmt::format("node '{}' defined twice", s.consumers[i].name));
    }
    consumer_names.insert(s.consumers[i].name);
  }

  struct SliceState
  {
    orch::SliceKind kind;
    bool live;
    std::vector<orch::Allocation> allocations;
  };
  std::map<std::string, SliceState> slices;
  std::set<std::string> ever_cdn;
  std::map<std::string, std::set<std::string>> uploaded; // slice -> content ids
  std::map<std::string, std::set<std::pair<std::string, std::string>>> variants;

  std::vector<std::size_t> order(s.northbound.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.northbound[a].at_ms < s.northbound[b].at_ms; });

  for (std::size_t i : order) {
    const auto& nb = s.northbound[i];
    const std::string at = fmt::format("/northbound/{}", i);
    if (nb.at_ms < 0) {
      report("BadValue", at + "/at_ms", "at_ms must be >= 0");
    }
    auto live_slice = [&](const std::string& name, const std::string& field,
                          std::optional<orch::SliceKind> kind) -> bool {
      auto it = slices.find(name);
      if (it == slices.end() || !it->second.live) {
        report("UnknownSlice", at + "/" + field, fmt::format("no live slice '{}' at this point", name));
        return false;
      }
      if (kind && it->second.kind != *kind) {
        report("BadValue", at + "/" + field,
               fmt::format("slice '{}' is not a {} slice", name, orch::to_string(*kind)));
        return false;
      }
      return true;
    };

    if (const auto* c = std::get_if<CreateSlice>(&nb.op)) {
      const auto& spec = c->spec;
      for (const auto& problem : orch::check_slice_spec(spec)) {
        report("InvalidSlice", at, problem);
      }
      if (slices.contains(spec.name)) {
        report("DuplicateName", at + "/name", fmt::format("slice '{}' defined twice", spec.name));
      }
      bool domains_ok = true;
      for (std::size_t v = 0; v < spec.vnfs.size(); ++v) {
        const auto& vnf = spec.vnfs[v];
        if (!vnf.name.empty() && !names.insert(vnf.name).second) {
          report("DuplicateName", fmt::format("{}/vnfs/{}/name", at, v), fmt::format("node '{}' defined twice", vnf.name));
        }
        if (!vims.contains(vnf.domain)) {
          report("UnknownDomain", fmt::format("{}/vnfs/{}/domain", at, v), fmt::format("unknown domain '{}'", vnf.domain));
          domains_ok = false;
        }
      }
      SliceState state{spec.kind, true, {}};
      if (domains_ok) {
        for (std::size_t v = 0; v < spec.vnfs.size(); ++v) {
          const auto& vnf = spec.vnfs[v];
          if (!orch::valid_flavor(vnf.flavor)) {
            continue;
          }
          try {
            state.allocations.push_back(vims.at(vnf.domain).allocate(vnf.flavor));
          }
          catch (const orch::QuotaExceeded& e) {
            report("QuotaExceeded", fmt::format("{}/vnfs/{}/flavor", at, v), e.what());
            for (const auto& a : state.allocations) {
              vims.at(a.domain).release(a);
            }
            state.allocations.clear();
            break;
          }
        }
      }
      if (!slices.contains(spec.name)) {
        slices.emplace(spec.name, std::move(state));
        if (spec.kind == orch::SliceKind::Cdn) {
          ever_cdn.insert(spec.name);
        }
      }
    }
    else if (const auto* u = std::get_if<Upload>(&nb.op)) {
      if (live_slice(u->slice, "slice", orch::SliceKind::Cdn)) {
        const ContentDecl* decl = s.content(u->content_id);
        if (decl == nullptr) {
          report("UnknownContent", at + "/content_id", fmt::format("content '{}' is not declared", u->content_id));
        }
        else if (!uploaded[u->slice].insert(u->content_id).second) {
          report("DuplicateName", at + "/content_id", fmt::format("content '{}' uploaded twice", u->content_id));
        }
        else if (!decl->resolutions.empty()) {
          variants[u->slice].emplace(u->content_id, decl->resolutions.front());
        }
      }
    }
    else if (const auto* t = std::get_if<Transcode>(&nb.op)) {
      if (live_slice(t->slice, "slice", orch::SliceKind::Cdn)) {
        const ContentDecl* decl = s.content(t->content_id);
        if (!uploaded[t->slice].contains(t->content_id) || decl == nullptr) {
          report("UnknownContent", at + "/content_id",
                 fmt::format("content '{}' is not uploaded to '{}' before this transcode", t->content_id, t->slice));
        }
        else if (std::find(decl->resolutions.begin(), decl->resolutions.end(), t->target.tag) ==
                 decl->resolutions.end()) {
          report("BadValue", at + "/resolution",
                 fmt::format("resolution '{}' is not declared for content '{}'", t->target.tag, t->content_id));
        }
        else if (!variants[t->slice].emplace(t->content_id, t->target.tag).second) {
          report("DuplicateName", at + "/resolution",
                 fmt::format("content '{}' already has resolution '{}'", t->content_id, t->target.tag));
        }
      }
    }
    else if (const auto* l = std::get_if<LinkSlices>(&nb.op)) {
      live_slice(l->cdn, "cdn", orch::SliceKind::Cdn);
      live_slice(l->icn, "icn", orch::SliceKind::Icn);
      if (l->weight && !(*l->weight >= 0 && *l->weight <= 1)) {
        report("BadValue", at + "/weight", "weight must lie in [0, 1]");
      }
    }
    else if (const auto* d = std::get_if<DestroySlice>(&nb.op)) {
      if (live_slice(d->slice, "slice", std::nullopt)) {
        auto& st = slices.at(d->slice);
        for (const auto& a : st.allocations) {
          vims.at(a.domain).release(a);
        }
        st.live = false;
      }
    }
  }

  for (std::size_t i = 0; i < s.links.size(); ++i) {
    const auto& l = s.links[i];
    const std::string at = fmt::format("/topology/links/{}", i);
    if (!names.contains(l.a)) report("UnknownNode", at + "/a", fmt::format("unknown node '{}'", l.a));
    if (!names.contains(l.b)) report("UnknownNode", at + "/b", fmt::format("unknown node '{}'", l.b));
    if (l.a == l.b) report("BadValue", at, "link endpoints must differ");
    if (l.latency_ms < 0) report("BadValue", at + "/latency_ms", "latency_ms must be >= 0");
    if (!(l.bandwidth_mbps > 0)) report("BadValue", at + "/bandwidth_mbps", "bandwidth_mbps must be positive");
  }

  std::set<std::string> content_ids;
  for (std::size_t i = 0; i < s.contents.size(); ++i) {
    const auto& c = s.contents[i];
    const std::string at = fmt::format("/contents/{}", i);
    if (!content_ids.insert(c.content_id).second) {
      report("DuplicateName", at + "/content_id", fmt::format("content '{}' declared twice", c.content_id));
    }
    if (c.resolutions.empty()) {
      report("BadValue", at + "/resolutions", "at least one resolution (the source) is required");
    }
    std::set<std::string> tags(c.resolutions.begin(), c.resolutions.end());
    if (tags.size() != c.resolutions.size()) {
      report("DuplicateName", at + "/resolutions", "resolution tags must be unique");
    }
  }

  for (std::size_t i = 0; i < s.populations.size(); ++i) {
    const auto& p = s.populations[i];
    const std::string at = fmt::format("/populations/{}", i);
    if (!consumer_names.contains(p.consumer_node)) {
      report("UnknownNode", at + "/consumer_node", fmt::format("'{}' is not a consumer node", p.consumer_node));
    }
    bool attached = std::any_of(s.links.begin(), s.links.end(), [&](const TopologyLink& l) {
      return (l.a == p.consumer_node && l.b == p.attach_node) || (l.b == p.consumer_node && l.a == p.attach_node);
    });
    if (!names.contains(p.attach_node)) {
      report("UnknownNode", at + "/attach_node", fmt::format("unknown node '{}'", p.attach_node));
    }
    else if (!attached) {
      report("BadValue", at + "/attach_node",
             fmt::format("no topology link between '{}' and '{}'", p.consumer_node, p.attach_node));
    }
    if (auto parts = split_content_name(p.content)) {
      auto& [slice, cid, res] = *parts;
      if (!ever_cdn.contains(slice)) {
        report("UnknownSlice", at + "/content", fmt::format("no CDN slice '{}'", slice));
      }
      else if (!variants[slice].contains({cid, res})) {
        report("UnknownContent", at + "/content",
               fmt::format("slice '{}' never holds content '{}' at resolution '{}'", slice, cid, res));
      }
    }
    else {
      report("BadValue", at + "/content", "content must look like /cdn/<slice>/<content_id>/<resolution>");
    }
    if (p.pattern.kind == Pattern::Kind::Uniform && p.pattern.interval_ms < 0) {
      report("BadValue", at + "/pattern/interval_ms", "interval_ms must be >= 0");
    }
    if (p.pattern.kind == Pattern::Kind::Poisson && !(p.pattern.rate_per_s > 0)) {
      report("BadValue", at + "/pattern/rate", "rate must be positive");
    }
    if (!(p.retransmit_ms > 0)) report("BadValue", at + "/retransmit_ms", "retransmit_ms must be positive");
    if (p.start_ms < 0) report("BadValue", at + "/start_ms", "start_ms must be >= 0");
  }
  return out;
}

LoadResult
load_scenario(std::string_view text, const std::vector<Override>& overrides)
{
  LoadResult result;
  json root;
  try {
    root = json::parse(text);
  }
  catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      }
      else {
        ++column;
      }
    }
    result.diagnostics.push_back({"ParseError", "", fmt::format("line {} column {}: {}", line, column, e.what())});
    return result;
  }

  for (const auto& o : overrides) {
    apply_override(root, o, result.diagnostics);
  }
  if (!result.diagnostics.empty()) {
    return result;
  }

  Reader reader(result.diagnostics);
  Scenario s = read_scenario(reader, root);
  if (!result.diagnostics.empty()) {
    return result;
  }
  result.diagnostics = check_scenario(s);
  result.scenario = std::move(s);
  return result;
}

LoadResult
load_scenario_file(const std::filesystem::path& file, const std::vector<Override>& overrides)
{
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    LoadResult r;
    r.diagnostics.push_back({"ParseError", "", fmt::format("cannot read '{}'", file.string())});
    return r;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str(), overrides);
}

} // namespace icdn::harness
