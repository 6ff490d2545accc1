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

#include "icdn/orch/orchestrator.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <random>

using namespace icdn;
using namespace icdn::orch;

namespace {

std::vector<DomainSpec>
table_domains()
{
  return {
    {"jp", "JP", {8, 16384, 200}},
    {"eu", "EU", {16, 16384, 300}},
    {"us", "US", {2, 4096, 16}},
  };
}

VnfSpec
vnf(std::string name, VnfRole role, std::string domain, Flavor f)
{
  return VnfSpec{std::move(name), role, std::move(domain), f};
}

SliceSpec
table_icn_slice()
{
  SliceSpec s;
  s.name = "icn";
  s.kind = SliceKind::Icn;
  s.vnfs = {
    vnf("ndn-JP", VnfRole::NdnNode, "jp", {4, 8192, 54}),
    vnf("ndn-EU", VnfRole::NdnNode, "eu", {4, 4096, 20}),
    vnf("ndn-US", VnfRole::NdnNode, "us", {1, 2048, 8}),
  };
  s.links = {
    {"ndn-JP", "ndn-US", 60, 1000},
    {"ndn-US", "ndn-EU", 90, 1000},
    {"ndn-JP", "ndn-EU", 130, 1000},
  };
  return s;
}

SliceSpec
cdn_slice(std::string name = "cdn")
{
  SliceSpec s;
  s.name = std::move(name);
  s.kind = SliceKind::Cdn;
  s.vnfs = {vnf(s.name + "-cache", VnfRole::Cache, "eu", {4, 4096, 120})};
  return s;
}

struct World
{
  World()
    : net(s)
    , orch(net, table_domains(), {})
  {}
  sim::Simulator s;
  sim::Network net;
  Orchestrator orch;
};

Resources
sum(const Resources& a, const Resources& b)
{
  return {a.vcpus + b.vcpus, a.ram_mb + b.ram_mb, a.disk_gb + b.disk_gb};
}

} // namespace

TEST(Vim, ComponentwiseAccounting)
{
  Vim v({"jp", "JP", {8, 16384, 200}});
  auto a = v.allocate({4, 8192, 54});
  auto b = v.allocate({4, 8192, 54});
  EXPECT_EQ(v.remaining(), (Resources{0, 0, 92}));
  EXPECT_THROW(v.allocate({4, 8192, 54}), QuotaExceeded);
  try {
    v.allocate({1, 1, 1});
    FAIL();
  }
  catch (const QuotaExceeded& e) {
    EXPECT_EQ(e.domain(), "jp");
  }
  v.release(b);
  v.release(a);
  EXPECT_EQ(v.remaining(), v.quota());
  EXPECT_THROW(v.release(a), std::invalid_argument);
  EXPECT_THROW(v.allocate({0, 1, 1}), std::invalid_argument);
}

TEST(Orchestrator, TableSliceFitsDefaultQuotas)
{
  World w;
  auto id = w.orch.create_slice(table_icn_slice());
  const auto& rec = w.orch.slice(id);
  EXPECT_EQ(rec.vnfs.size(), 3u);
  EXPECT_EQ(w.orch.vim("us").remaining(), (Resources{1, 2048, 8}));
  const auto* us = w.orch.find_vnf("ndn-US");
  ASSERT_NE(us, nullptr);
  EXPECT_EQ(us->region, "US");
  EXPECT_TRUE(w.net.has_link(w.orch.find_vnf("ndn-JP")->node, us->node));
}

TEST(Orchestrator, FailedCreateRollsBack)
{
  sim::Simulator s;
  sim::Network net(s);
  Orchestrator orch(net, {{"small", "EU", {6, 65536, 1000}}}, {});
  SliceSpec spec;
  spec.name = "x";
  spec.vnfs = {vnf("a", VnfRole::NdnNode, "small", {4, 1024, 10}),
               vnf("b", VnfRole::NdnNode, "small", {4, 1024, 10})};
  auto nodes_before = net.all_nodes().size();
  EXPECT_THROW(orch.create_slice(spec), QuotaExceeded);
  EXPECT_EQ(orch.vim("small").remaining(), (Resources{6, 65536, 1000}));
  EXPECT_EQ(orch.vim("small").live(), 0u);
  EXPECT_TRUE(orch.slices().empty());
  EXPECT_EQ(net.all_nodes().size(), nodes_before);

  spec.vnfs.pop_back();
  EXPECT_NO_THROW(orch.create_slice(spec));
}

TEST(Orchestrator, RejectsInvalidSlices)
{
  World w;
  SliceSpec empty;
  empty.name = "e";
  EXPECT_THROW(w.orch.create_slice(empty), InvalidSlice);

  SliceSpec bad = table_icn_slice();
  bad.vnfs[0].role = VnfRole::Cache;
  EXPECT_THROW(w.orch.create_slice(bad), InvalidSlice);

  SliceSpec unknown = table_icn_slice();
  unknown.vnfs[0].domain = "mars";
  EXPECT_THROW(w.orch.create_slice(unknown), UnknownDomain);

  w.orch.create_slice(table_icn_slice());
  EXPECT_THROW(w.orch.create_slice(table_icn_slice()), InvalidSlice);
}

TEST(Orchestrator, LinkPicksNodeNearestTheCache)
{
  World w;
  auto icn = w.orch.create_slice(table_icn_slice());
  auto cdn = w.orch.create_slice(cdn_slice());
  const auto* eu = w.orch.find_vnf("ndn-EU");
  w.net.add_link({eu->node, w.orch.find_vnf("cdn-cache")->node, 5, 100});

  auto gw = w.orch.link_slices(cdn, icn, 1.0);
  EXPECT_EQ(gw, eu->node);
  EXPECT_EQ(w.orch.link_slices(cdn, icn, 1.0), gw);
  EXPECT_EQ(w.orch.slice_links().size(), 1u);
  EXPECT_EQ(w.net.role(gw), "ndn-gateway");

  w.orch.destroy_slice(cdn);
  EXPECT_THROW(w.orch.link_slices(cdn, icn, 1.0), UnknownSlice);
  EXPECT_THROW(w.orch.destroy_slice(cdn), UnknownSlice);
}

TEST(OrchestratorProperty, GatewayFibClosure)
{
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    World w;
    SliceSpec icn;
    icn.name = "icn";
    std::size_t n = 2 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      icn.vnfs.push_back(vnf("n" + std::to_string(i), VnfRole::NdnNode, "eu", {1, 512, 10}));
    }
    // random spanning tree plus extra edges keeps the slice connected
    for (std::size_t i = 1; i < n; ++i) {
      icn.links.push_back({"n" + std::to_string(rng() % i), "n" + std::to_string(i),
                           static_cast<double>(1 + rng() % 50), 1000});
    }
    for (std::size_t extra = 0; extra < n / 2; ++extra) {
      std::size_t a = rng() % n, b = rng() % n;
      bool dup = a == b;
      for (const auto& l : icn.links) {
        dup = dup || (l.a == "n" + std::to_string(a) && l.b == "n" + std::to_string(b)) ||
              (l.b == "n" + std::to_string(a) && l.a == "n" + std::to_string(b));
      }
      if (!dup) {
        icn.links.push_back({"n" + std::to_string(a), "n" + std::to_string(b),
                             static_cast<double>(1 + rng() % 50), 1000});
      }
    }
    auto icn_id = w.orch.create_slice(icn);
    auto cdn_id = w.orch.create_slice(cdn_slice());
    auto attach = w.orch.find_vnf("n" + std::to_string(rng() % n))->node;
    w.net.add_link({attach, w.orch.find_vnf("cdn-cache")->node, 5, 100});
    auto gw = w.orch.link_slices(cdn_id, icn_id, static_cast<double>(rng() % 3) / 2.0);

    // follow next hops from every node; each walk must reach the gateway without revisiting
    auto name = Orchestrator::content_name("cdn", "v", "r").segment(0);
    for (std::size_t i = 0; i < n; ++i) {
      auto at = w.orch.find_vnf("n" + std::to_string(i))->node;
      std::set<sim::NodeId> seen;
      while (at != gw) {
        ASSERT_TRUE(seen.insert(at).second) << "loop in trial " << trial;
        const auto* entry = w.orch.ndn_node(at)->forwarder().fib_longest_prefix_match(name);
        ASSERT_NE(entry, nullptr) << "no route in trial " << trial;
        ASSERT_FALSE(entry->next_hops.empty());
        auto hop = std::min_element(entry->next_hops.begin(), entry->next_hops.end(),
                                    [](const auto& x, const auto& y) {
                                      return x.cost != y.cost ? x.cost < y.cost : x.face < y.face;
                                    });
        at = gw::NdnNode::node_of(hop->face);
        ASSERT_TRUE(w.net.alive(at));
      }
    }
  }
}

TEST(Orchestrator, ExpiryRestoresQuotaAndRemovesRoutes)
{
  World w;
  auto before = w.orch.vim("eu").remaining();
  SliceSpec spec;
  spec.name = "short";
  spec.duration_ms = 60000;
  spec.vnfs = {vnf("edge", VnfRole::NdnNode, "eu", {2, 1024, 10})};
  w.orch.create_slice(spec);
  EXPECT_NE(w.orch.vim("eu").remaining(), before);

  // an outside router with a route toward the slice node
  auto outside = w.net.add_node("outside", "ndn-node");
  gw::NdnNode router(w.net, outside, {});
  auto edge = w.orch.find_vnf("edge")->node;
  w.net.add_link({outside, edge, 1, 100});
  router.forwarder().fib_insert(ndn::Name::parse("/cdn"), {{gw::NdnNode::face_of(edge), 1}});

  w.s.run_until(59999);
  EXPECT_TRUE(w.net.alive(edge));
  w.s.run_until(60000);
  EXPECT_FALSE(w.net.alive(edge));
  EXPECT_EQ(w.orch.vim("eu").remaining(), before);

  router.forwarder().register_face(fw::FaceId{999});
  auto actions = router.forwarder().on_interest(
    60001, fw::FaceId{999}, ndn::Interest{ndn::Name::parse("/cdn/x/seg=0"), 1, 4000, 32});
  ASSERT_EQ(actions.size(), 1u);
  auto* drop = std::get_if<fw::Drop>(&actions[0]);
  ASSERT_NE(drop, nullptr);
  EXPECT_EQ(drop->reason, fw::DropReason::NoRoute);
}

TEST(Orchestrator, ScaleOutOnSustainedLoad)
{
  World w;
  auto icn = w.orch.create_slice(table_icn_slice());
  const auto* us = w.orch.find_vnf("ndn-US");
  auto us_id = us->id;
  // 1 vcpu busy for 81% of the 10 s window
  w.net.metrics(us->node).add_cpu_time(0, 8100);
  const auto* eu = w.orch.find_vnf("ndn-EU");
  w.net.metrics(eu->node).add_cpu_time(0, 4 * 5000);
  w.s.run_until(10000);

  auto req = w.orch.scale_check(icn);
  ASSERT_TRUE(req);
  EXPECT_EQ(req->vnf, us_id);
  EXPECT_NEAR(req->utilization, 0.81, 1e-9);
  w.orch.handle_scale(*req);
  w.orch.handle_scale(*req);
  ASSERT_EQ(w.orch.scale_log().size(), 1u);
  EXPECT_TRUE(w.orch.scale_log()[0].granted);
  EXPECT_EQ(w.orch.slice(icn).vnfs.size(), 4u);
  auto* clone = w.orch.find_vnf("ndn-US-s1");
  ASSERT_NE(clone, nullptr);
  EXPECT_EQ(clone->flavor, (Flavor{1, 2048, 8}));
  EXPECT_FALSE(w.orch.scale_check(icn));
}

TEST(Orchestrator, ScaleOutDeniedByQuota)
{
  World w;
  SliceSpec spec = table_icn_slice();
  spec.vnfs[2].flavor = {2, 4096, 16};
  auto icn = w.orch.create_slice(spec);
  const auto* us = w.orch.find_vnf("ndn-US");
  w.net.metrics(us->node).add_cpu_time(0, 2 * 9000);
  w.s.run_until(10000);
  auto req = w.orch.scale_check(icn);
  ASSERT_TRUE(req);
  w.orch.handle_scale(*req);
  ASSERT_EQ(w.orch.scale_log().size(), 1u);
  EXPECT_FALSE(w.orch.scale_log()[0].granted);
  EXPECT_NE(w.orch.scale_log()[0].detail.find("us"), std::string::npos);
  EXPECT_EQ(w.orch.slice(icn).vnfs.size(), 3u);
}

TEST(Orchestrator, ModerateLoadDoesNotScale)
{
  World w;
  auto icn = w.orch.create_slice(table_icn_slice());
  w.net.metrics(w.orch.find_vnf("ndn-US")->node).add_cpu_time(0, 5000);
  w.s.run_until(10000);
  EXPECT_FALSE(w.orch.scale_check(icn));
}

TEST(OrchestratorProperty, QuotaConservationUnderRandomLifecycles)
{
  std::mt19937_64 rng(10'000);
  sim::Simulator s;
  sim::Network net(s);
  std::vector<DomainSpec> domains{{"a", "X", {16, 32768, 400}}, {"b", "Y", {8, 8192, 100}}};
  Orchestrator orch(net, domains, {});
  std::deque<SliceId> live;
  std::uint64_t created = 0;

  auto check = [&] {
    for (const auto& d : domains) {
      Resources in_use{};
      for (const auto& [id, v] : orch.vnfs()) {
        if (v.live && v.domain == d.name) in_use = sum(in_use, v.flavor);
      }
      ASSERT_EQ(sum(orch.vim(d.name).remaining(), in_use), d.quota) << d.name;
      ASSERT_EQ(orch.vim(d.name).allocated(), in_use);
    }
  };

  for (int op = 0; op < 10'000; ++op) {
    if (live.empty() || rng() % 2 == 0) {
      SliceSpec spec;
      spec.name = "s" + std::to_string(created++);
      std::size_t n = 1 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) {
        spec.vnfs.push_back(vnf(spec.name + "-" + std::to_string(i), VnfRole::NdnNode, rng() % 2 ? "a" : "b",
                                {static_cast<std::uint32_t>(1 + rng() % 4),
                                 static_cast<std::uint32_t>(256 * (1 + rng() % 16)),
                                 static_cast<std::uint32_t>(1 + rng() % 50)}));
      }
      try {
        live.push_back(orch.create_slice(spec));
      }
      catch (const QuotaExceeded&) {
      }
    }
    else {
      std::size_t pick = rng() % live.size();
      orch.destroy_slice(live[pick]);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    check();
  }
  while (!live.empty()) {
    orch.destroy_slice(live.front());
    live.pop_front();
  }
  for (const auto& d : domains) {
    EXPECT_EQ(orch.vim(d.name).remaining(), d.quota);
  }
}
