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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "icdn/cdn/origin_node.hpp"
#include "icdn/gw/ndn_node.hpp"
#include "icdn/harness/reports.hpp"
#include "icdn/sim/consumer.hpp"

#include <fmt/format.h>

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

using namespace icdn;

namespace {

const std::filesystem::path scenario_dir = ICDN_SCENARIO_DIR;

struct Verdict
{
  bool pass = false;
  std::string detail;
};

int failures = 0;

void
report(int number, std::string_view name, const std::function<Verdict()>& check)
{
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  }
  catch (const std::exception& e) {
    v = {false, fmt::format("exception: {}", e.what())};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += v.pass ? 0 : 1;
  fmt::print("{} {:>2} {}: {} [{:.2f} s]\n", v.pass ? "PASS" : "FAIL", number, name, v.detail, secs);
  std::fflush(stdout);
}

harness::Scenario
load(const std::string& file, const std::vector<std::string>& overrides = {})
{
  auto r = harness::load_scenario_file(scenario_dir / file, overrides);
  if (!r.ok()) {
    throw std::runtime_error(fmt::format("{} does not validate: {}", file, r.diagnostics.front().to_json()));
  }
  return *r.scenario;
}

harness::RunResult
run(const harness::Scenario& s, harness::Testbed::Options options = {})
{
  harness::Testbed bed(s, options);
  bed.run();
  return bed.result();
}

bool
is_ndn_role(const std::string& role)
{
  return role == "ndn-node" || role == "ndn-gateway";
}

std::string
hash_tree(const std::filesystem::path& dir)
{
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  ndn::DigestBuilder h;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    h.update(std::filesystem::relative(f, dir).string());
    h.update(body);
  }
  return ndn::to_hex(h.finish());
}

// consumer -- router -- gateway -- origin, for the byte-corruption trials
struct Chain
{
  Chain()
    : net(s)
  {
    consumer = net.add_node("consumer", "consumer");
    router = net.add_node("router", "ndn-node");
    gateway = net.add_node("gw", "ndn-gateway");
    origin = net.add_node("cdn", "cache");
    catalog->upload("v1", cdn::synthetic_payload(3, "v1", 300000), "1080p");
    origin_node = std::make_unique<cdn::OriginNode>(net, origin, catalog);
    router_node = std::make_unique<gw::NdnNode>(net, router, gw::NdnNode::Config{});
    gw_node = std::make_unique<gw::NdnNode>(net, gateway, gw::NdnNode::Config{});
    app = std::make_unique<sim::ConsumerApp>(net, consumer,
                                             sim::ConsumerApp::Config{.retransmit_ms = 200, .keep_content = true});
    net.add_link({consumer, router, 1.0, 1000.0});
    net.add_link({router, gateway, 2.0, 1000.0});
    net.add_link({gateway, origin, 5.0, 100.0});
    auto& g = gw_node->promote({});
    g.serve(ndn::Name::parse("/cdn/s"), origin);
    g.map_content(ndn::Name::parse("/cdn/s/v1/1080p"), {"v1", "1080p"});
    router_node->forwarder().fib_insert(ndn::Name::parse("/cdn/s"), {{gw::NdnNode::face_of(gateway), 1}});
  }

  sim::Simulator s;
  sim::Network net;
  sim::NodeId consumer, router, gateway, origin;
  std::shared_ptr<cdn::CdnOrigin> catalog = std::make_shared<cdn::CdnOrigin>();
  std::unique_ptr<cdn::OriginNode> origin_node;
  std::unique_ptr<gw::NdnNode> router_node;
  std::unique_ptr<gw::NdnNode> gw_node;
  std::unique_ptr<sim::ConsumerApp> app;
};

double
r_squared(const std::vector<harness::PublishPoint>& pts)
{
  double n = static_cast<double>(pts.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    double x = static_cast<double>(p.size_bytes);
    sx += x, sy += p.publish_ms, sxx += x * x, sxy += x * p.publish_ms;
  }
  double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double a = (sy - b * sx) / n;
  double res = 0, tot = 0;
  for (const auto& p : pts) {
    double x = static_cast<double>(p.size_bytes);
    res += std::pow(p.publish_ms - a - b * x, 2);
    tot += std::pow(p.publish_ms - sy / n, 2);
  }
  return 1 - res / tot;
}

} // namespace

int
main()
{
  const harness::Scenario reference = load("reference.json");
  std::optional<harness::RunResult> ref;
  double ref_seconds = 0;

  report(1, "origin-once", [&] {
    auto t0 = std::chrono::steady_clock::now();
    ref = run(reference);
    ref_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::uint64_t fetches = 0, cdn_tx = 0, ndn_tx_max = 0;
    std::size_t completed = 0;
    for (const auto& n : ref->nodes) {
      fetches += n.origin_fetches;
      if (n.role == "cache" || n.role == "streamer" || n.role == "transcoder") cdn_tx += n.tx_bytes;
      if (is_ndn_role(n.role)) ndn_tx_max = std::max(ndn_tx_max, n.tx_bytes);
    }
    for (const auto& q : ref->requests) completed += q.status == "ok";
    double share = ndn_tx_max == 0 ? 1.0 : static_cast<double>(cdn_tx) / static_cast<double>(ndn_tx_max);
    bool pass = completed == 3000 && ref->requests.size() == 3000 && fetches == 1 && share < 0.01 &&
                ref_seconds < 60;
    return Verdict{pass, fmt::format("completed={}/3000 origin_fetches={} cdn_tx/max_ndn_tx={:.4f}% runtime={:.1f}s",
                                     completed, fetches, share * 100, ref_seconds)};
  });

  report(2, "aggregation", [] {
    auto t0 = std::chrono::steady_clock::now();
    std::string bad;
    for (std::uint32_t k = 2; k <= 64; ++k) {
      fw::Forwarder f;
      fw::FaceId up{1000};
      f.register_face(up);
      for (std::uint32_t i = 0; i < k; ++i) f.register_face(fw::FaceId{i});
      f.fib_insert(ndn::Name::parse("/v"), {{up, 0}});
      auto name = ndn::Name::parse("/v/seg=0");
      std::size_t upstream = 0, downstream = 0;
      for (std::uint32_t i = 0; i < k; ++i) {
        for (const auto& a : f.on_interest(0, fw::FaceId{i}, ndn::Interest{name, 7000 + i, 4000, 32})) {
          upstream += std::holds_alternative<fw::SendInterest>(a);
        }
      }
      auto data = std::make_shared<const ndn::Data>(ndn::Data::make(name, ndn::Bytes(64, 1), 1000, 0));
      for (const auto& a : f.on_data(1, up, data)) downstream += std::holds_alternative<fw::SendData>(a);
      if (upstream != 1 || downstream != k) {
        bad = fmt::format("k={} upstream={} downstream={}", k, upstream, downstream);
        break;
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Verdict{bad.empty() && secs < 5,
                   bad.empty() ? fmt::format("k=2..64: 1 upstream, k downstream each ({:.3f} s)", secs) : bad};
  });

  report(3, "delivery-time-decay", [&] {
    if (!ref) return Verdict{false, "reference run unavailable"};
    bool pass = true;
    std::string detail;
    for (auto region : {"JP", "EU", "US"}) {
      auto st = harness::region_stats(*ref, region);
      double reduction = 1 - st.last_decile_mean / st.first_decile_mean;
      pass = pass && st.completed > 0 && st.last_decile_mean < st.first_decile_mean && reduction >= 0.20;
      detail += fmt::format("{} first={:.1f} last={:.1f} (-{:.0f}%) ", region, st.first_decile_mean,
                            st.last_decile_mean, reduction * 100);
    }
    return Verdict{pass, detail};
  });

  report(4, "locality-beats-origin-proximity", [&] {
    if (!ref) return Verdict{false, "reference run unavailable"};
    auto access = [&](const std::string& consumer) {
      for (const auto& l : reference.links) {
        if (l.a == consumer || l.b == consumer) return l.latency_ms;
      }
      return -1.0;
    };
    auto gw_row = std::find_if(ref->nodes.begin(), ref->nodes.end(),
                               [](const auto& n) { return n.role == "ndn-gateway"; });
    const auto* cdn_row = ref->node("cdn-cache");
    bool setup = gw_row != ref->nodes.end() && cdn_row && gw_row->region == "EU" &&
                 cdn_row->region == "EU" && access("consumer-JP") < access("consumer-EU");
    auto jp = harness::region_stats(*ref, "JP");
    auto eu = harness::region_stats(*ref, "EU");
    return Verdict{setup && jp.last_decile_mean < eu.last_decile_mean,
                   fmt::format("gateway+cdn in EU={} access JP={}ms EU={}ms; steady JP={:.3f}ms EU={:.3f}ms",
                               setup, access("consumer-JP"), access("consumer-EU"), jp.last_decile_mean,
                               eu.last_decile_mean)};
  });

  report(5, "publish-time-linearity", [&] {
    auto pts = harness::publish_bench(reference, {1, 2, 4, 8}, 4);
    bool increasing = true;
    for (std::size_t i = 1; i < pts.size(); ++i) increasing = increasing && pts[i].publish_ms > pts[i - 1].publish_ms;
    double r2 = r_squared(pts);
    std::string values;
    for (const auto& p : pts) values += fmt::format("{:.3f} ", p.publish_ms);
    return Verdict{increasing && r2 >= 0.99, fmt::format("publish_ms {}R^2={:.6f}", values, r2)};
  });

  report(6, "analytic-oracle-equivalence", [] {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> lat(0, 200), bw(1, 10000);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      sim::Simulator s;
      sim::Network net(s);
      std::size_t n = 2 + trial % 2;
      std::vector<sim::NodeId> nodes;
      for (std::size_t i = 0; i < n; ++i) nodes.push_back(net.add_node(fmt::format("n{}", i), "t"));
      double oracle = 0;
      std::uint64_t bytes = 1 + rng() % 200000;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        double l = lat(rng), b = bw(rng);
        net.add_link({nodes[i], nodes[i + 1], l, b});
        oracle += static_cast<double>(bytes) * 8.0 / (b * 1000.0) + l;
      }
      struct Sink : sim::NodeHandler
      {
        sim::Simulator* s;
        double at = -1;
        void on_message(sim::NodeId, const sim::Message&) override { at = s->now(); }
      } sink;
      sink.s = &s;
      net.attach(nodes.back(), &sink);
      sim::IpResponse r;
      r.src = nodes.front();
      r.dst = nodes.back();
      r.length = r.total = bytes;
      r.last = true;
      net.send_ip(nodes.front(), sim::Message{r, {}});
      s.run_to_completion();
      worst = std::max(worst, std::abs(sink.at - oracle));
    }

    std::size_t mismatches = 0;
    auto comp = [&rng] { return std::string(1, static_cast<char>('a' + rng() % 3)); };
    for (int trial = 0; trial < 1000; ++trial) {
      fw::Fib fib;
      std::vector<ndn::Name> prefixes;
      for (std::size_t i = 0, m = 1 + rng() % 12; i < m; ++i) {
        ndn::Name p;
        for (std::size_t c = 0, len = rng() % 4; c < len; ++c) p.append(comp());
        fib.insert(p, {{fw::FaceId{static_cast<std::uint32_t>(i)}, 0}});
        prefixes.push_back(p);
      }
      ndn::Name name;
      for (std::size_t c = 0, len = rng() % 5; c < len; ++c) name.append(comp());
      const ndn::Name* best = nullptr;
      for (const auto& p : prefixes) {
        if (p.is_prefix_of(name) && (best == nullptr || p.size() > best->size())) best = &p;
      }
      const auto* got = fib.longest_prefix_match(name);
      bool same = (best == nullptr && got == nullptr) || (best && got && got->prefix == *best);
      mismatches += same ? 0 : 1;
    }
    return Verdict{worst <= 1e-9 && mismatches == 0,
                   fmt::format("chains: max |sim-oracle|={:.3e} ms over 1000; FIB LPM mismatches={}/1000", worst,
                               mismatches)};
  });

  report(7, "conservation-and-integrity", [&] {
    std::size_t bad_bytes = 0, completed = 0;
    if (ref) {
      for (const auto& q : ref->requests) {
        if (q.status == "ok") {
          ++completed;
          bad_bytes += q.bytes != q.expected_bytes;
        }
      }
    }
    auto small = run(load("small.json"), {.keep_content = true});
    std::size_t mismatched = 0;
    for (const auto& q : small.requests) {
      mismatched += !(q.status == "ok" && q.bytes == q.expected_bytes && q.content_matches.value_or(false));
    }

    int trials = 0, good = 0;
    for (double at : {0.0, 5.0, 12.0, 20.0, 31.0, 40.0, 47.5}) {
      ++trials;
      Chain c;
      c.s.schedule(at, sim::EventKind::Control, c.router, [&c] { c.net.corrupt_next_data(c.gateway, c.router, 1); });
      std::optional<sim::FetchResult> got;
      c.app->fetch_ndn(1, ndn::Name::parse("/cdn/s/v1/1080p"), [&got](const sim::FetchResult& r) { got = r; });
      c.s.run_to_completion();
      bool dropped = c.router_node->forwarder().counters().drops_for(fw::DropReason::Integrity) == 1;
      bool exact = got && got->ok() && got->content && *got->content == *c.catalog->find("v1", "1080p").payload;
      good += dropped && got && got->retransmissions >= 1 && exact && c.app->counters().integrity_failures == 0;
    }
    bool pass = ref && completed == ref->requests.size() && bad_bytes == 0 && ref->consumers.integrity_failures == 0 &&
                mismatched == 0 && good == trials;
    return Verdict{pass, fmt::format("reference bytes mismatches={}/{}; small content mismatches={}/{}; "
                                     "corruption trials with drop+retransmit+exact delivery={}/{}",
                                     bad_bytes, completed, mismatched, small.requests.size(), good, trials)};
  });

  report(8, "determinism", [&] {
    auto base = std::filesystem::temp_directory_path() / "icdn_acceptance";
    std::filesystem::remove_all(base);
    std::vector<std::string> lines;
    bool same = true;
    auto twice = [&](const std::string& label, const harness::Scenario& s, const harness::RunResult* first) {
      harness::write_outputs(s, first ? *first : run(s), base / (label + "-a"));
      harness::write_outputs(s, run(s), base / (label + "-b"));
      auto a = hash_tree(base / (label + "-a"));
      auto b = hash_tree(base / (label + "-b"));
      same = same && a == b;
      lines.push_back(fmt::format("{}={}", label, a == b ? a.substr(0, 12) : "DIFFERENT"));
    };
    twice("small-icn", load("small.json"), nullptr);
    twice("small-cdn-only", load("small.json", {"mode=cdn-only"}), nullptr);
    twice("reference", reference, ref ? &*ref : nullptr);
    std::filesystem::remove_all(base);
    std::string detail;
    for (const auto& l : lines) detail += l + " ";
    return Verdict{same, detail};
  });

  report(9, "resource-model-us-saturation", [&] {
    if (!ref) return Verdict{false, "reference run unavailable"};
    const auto* us = ref->node("ndn-US");
    if (us == nullptr || us->vcpus != 1) return Verdict{false, "no 1-vcpu ndn-US node"};
    double us_above = ref->time_above("ndn-US", 0.5);
    bool pass = true;
    std::string detail = fmt::format("ndn-US {:.0f} ms;", us_above);
    for (const auto& n : ref->nodes) {
      if (n.vcpus != 4) continue;
      double above = ref->time_above(n.node, 0.5);
      pass = pass && us_above > above;
      detail += fmt::format(" {} {:.0f} ms", n.node, above);
    }
    return Verdict{pass && us_above > 0, detail};
  });

  report(10, "quota-conservation", [] {
    std::mt19937_64 rng(10);
    sim::Simulator s;
    sim::Network net(s);
    std::vector<orch::DomainSpec> domains{{"a", "X", {16, 32768, 400}}, {"b", "Y", {8, 8192, 100}}};
    orch::Orchestrator o(net, domains, {});
    std::deque<orch::SliceId> live;
    std::map<std::string, orch::Resources> in_use;
    std::size_t violations = 0, creates = 0, denials = 0, destroys = 0;
    for (int op = 0; op < 10'000; ++op) {
      if (live.empty() || rng() % 2 == 0) {
        orch::SliceSpec spec;
        spec.name = fmt::format("s{}", op);
        std::vector<std::pair<std::string, orch::Flavor>> asked;
        for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) {
          std::string d = rng() % 2 ? "a" : "b";
          orch::Flavor f{static_cast<std::uint32_t>(1 + rng() % 4), static_cast<std::uint32_t>(256 * (1 + rng() % 16)),
                         static_cast<std::uint32_t>(1 + rng() % 50)};
          spec.vnfs.push_back({fmt::format("{}-{}", spec.name, i), orch::VnfRole::NdnNode, d, f});
          asked.emplace_back(d, f);
        }
        try {
          live.push_back(o.create_slice(spec));
          ++creates;
          for (auto& [d, f] : asked) {
            auto& u = in_use[d];
            u = {u.vcpus + f.vcpus, u.ram_mb + f.ram_mb, u.disk_gb + f.disk_gb};
          }
        }
        catch (const orch::QuotaExceeded&) {
          ++denials;
        }
      }
      else {
        std::size_t pick = rng() % live.size();
        for (auto vid : o.slice(live[pick]).vnfs) {
          const auto& v = o.vnf(vid);
          auto& u = in_use[v.domain];
          u = {u.vcpus - v.flavor.vcpus, u.ram_mb - v.flavor.ram_mb, u.disk_gb - v.flavor.disk_gb};
        }
        o.destroy_slice(live[pick]);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
        ++destroys;
      }
      for (const auto& d : domains) {
        const auto& rem = o.vim(d.name).remaining();
        const auto& u = in_use[d.name];
        orch::Resources total{rem.vcpus + u.vcpus, rem.ram_mb + u.ram_mb, rem.disk_gb + u.disk_gb};
        violations += !(total == d.quota);
      }
    }
    return Verdict{violations == 0 && denials > 0,
                   fmt::format("10000 ops ({} creates, {} quota denials, {} destroys), violations={}", creates,
                               denials, destroys, violations)};
  });

  fmt::print("{} of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
