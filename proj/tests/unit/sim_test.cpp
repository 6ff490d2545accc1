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

#include "icdn/sim/network.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace icdn;
using namespace icdn::sim;

namespace {

struct Sink : NodeHandler
{
  explicit Sink(Simulator& s)
    : sim(s)
  {}
  void on_message(NodeId from, const Message& msg) override { got.push_back({sim.now(), from, msg}); }

  struct Arrival
  {
    SimTime at;
    NodeId from;
    Message msg;
  };
  Simulator& sim;
  std::vector<Arrival> got;
};

Message
ip_piece(NodeId src, NodeId dst, std::uint64_t bytes)
{
  IpResponse r;
  r.src = src;
  r.dst = dst;
  r.length = bytes;
  r.total = bytes;
  r.last = true;
  return Message{r, {}};
}

// closed form for a store-and-forward chain with idle links
double
chain_oracle(const std::vector<std::pair<double, double>>& hops, double bytes)
{
  double t = 0;
  for (auto [latency, mbps] : hops) {
    t += bytes * 8.0 / (mbps * 1000.0) + latency;
  }
  return t;
}

} // namespace

TEST(Simulator, EqualTimeEventsRunInSchedulingOrder)
{
  Simulator sim;
  std::vector<int> order;
  for (int i = 0; i < 5; ++i) {
    sim.schedule(10, EventKind::Timer, NodeId{0}, [&order, i] { order.push_back(i); });
  }
  sim.schedule(5, EventKind::Timer, NodeId{0}, [&order] { order.push_back(-1); });
  sim.run_to_completion();
  EXPECT_EQ(order, (std::vector<int>{-1, 0, 1, 2, 3, 4}));
  EXPECT_DOUBLE_EQ(sim.now(), 10);
}

TEST(Simulator, CancelAndDaemons)
{
  Simulator sim;
  int fired = 0;
  auto id = sim.schedule(1, EventKind::Timer, NodeId{0}, [&fired] { ++fired; });
  sim.cancel(id);
  sim.cancel(id);
  sim.schedule(100, EventKind::Timer, NodeId{0}, [&fired] { fired += 10; }, true);
  EXPECT_EQ(sim.pending(), 0u);
  sim.run_to_completion();
  EXPECT_EQ(fired, 0);

  sim.schedule(2, EventKind::Timer, NodeId{0}, [&fired] { ++fired; });
  EXPECT_DOUBLE_EQ(sim.run_until(50), 50);
  EXPECT_EQ(fired, 1);
}

TEST(Simulator, HorizonExceeded)
{
  Simulator sim;
  sim.schedule(10, EventKind::Timer, NodeId{0}, [] {});
  EXPECT_THROW(sim.run_to_completion(5.0), HorizonExceeded);
}

TEST(SimulatorProperty, CausalityAndReplay)
{
  auto play = [](std::uint64_t seed) {
    Simulator sim;
    std::mt19937_64 rng(seed);
    bool causal = true;
    std::function<void(int)> spawn = [&](int depth) {
      SimTime scheduled_at = sim.now();
      double delay = static_cast<double>(rng() % 50) / 4.0;
      sim.schedule_in(delay, EventKind::Deliver, NodeId{static_cast<std::uint32_t>(rng() % 7)},
                      [&, scheduled_at, depth] {
                        causal = causal && sim.now() >= scheduled_at;
                        if (depth < 6) {
                          spawn(depth + 1);
                          if (rng() % 3 == 0) spawn(depth + 1);
                        }
                      });
    };
    for (int i = 0; i < 20; ++i) spawn(0);
    sim.run_to_completion();
    EXPECT_TRUE(causal);
    return std::pair{sim.trace_hash(), sim.executed()};
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EXPECT_EQ(play(seed), play(seed));
  }
  EXPECT_NE(play(1).first, play(2).first);
}

TEST(Network, SingleTransferMatchesHandComputedTime)
{
  Simulator sim;
  Network net(sim);
  auto a = net.add_node("a", "test");
  auto b = net.add_node("b", "test");
  Sink sink(sim);
  net.attach(b, &sink);
  net.add_link({a, b, 50.0, 100.0});

  // 8192 B at 100 Mbit/s is 0.65536 ms on the wire
  ASSERT_TRUE(net.send(a, b, ip_piece(a, b, 8192)));
  ASSERT_TRUE(net.send(a, b, ip_piece(a, b, 8192)));
  sim.run_to_completion();
  ASSERT_EQ(sink.got.size(), 2u);
  EXPECT_NEAR(sink.got[0].at, 50.65536, 1e-9);
  // the second message waits for the first to leave the transmitter
  EXPECT_NEAR(sink.got[1].at, 51.31072, 1e-9);
  EXPECT_EQ(net.metrics(a).counters().tx_bytes, 16384u);
  EXPECT_EQ(net.metrics(b).counters().rx_pkts, 2u);
}

TEST(Network, DirectionsAreIndependent)
{
  Simulator sim;
  Network net(sim);
  auto a = net.add_node("a", "test");
  auto b = net.add_node("b", "test");
  Sink sa(sim), sb(sim);
  net.attach(a, &sa);
  net.attach(b, &sb);
  net.add_link({a, b, 1.0, 8.0});
  net.send(a, b, ip_piece(a, b, 1000));
  net.send(b, a, ip_piece(b, a, 1000));
  sim.run_to_completion();
  ASSERT_EQ(sa.got.size(), 1u);
  ASSERT_EQ(sb.got.size(), 1u);
  EXPECT_NEAR(sa.got[0].at, 2.0, 1e-12);
  EXPECT_NEAR(sb.got[0].at, 2.0, 1e-12);
}

TEST(NetworkProperty, ChainsMatchClosedForm)
{
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> latency(0.0, 200.0);
  std::uniform_real_distribution<double> mbps(1.0, 10000.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Simulator sim;
    Network net(sim);
    std::size_t n = 2 + trial % 2;
    std::vector<NodeId> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back(net.add_node("n" + std::to_string(i), "test"));
    std::vector<std::pair<double, double>> hops;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      hops.emplace_back(latency(rng), mbps(rng));
      net.add_link({nodes[i], nodes[i + 1], hops.back().first, hops.back().second});
    }
    Sink sink(sim);
    net.attach(nodes.back(), &sink);
    std::uint64_t bytes = 1 + rng() % 100000;
    ASSERT_TRUE(net.send_ip(nodes.front(), ip_piece(nodes.front(), nodes.back(), bytes)));
    sim.run_to_completion();
    ASSERT_EQ(sink.got.size(), 1u);
    EXPECT_NEAR(sink.got[0].at, chain_oracle(hops, static_cast<double>(bytes)), 1e-9) << "trial " << trial;
  }
}

TEST(Network, LinkValidationAndMissingLinks)
{
  Simulator sim;
  Network net(sim);
  auto a = net.add_node("a", "test");
  auto b = net.add_node("b", "test");
  EXPECT_THROW(net.add_link({a, a, 1, 1}), std::invalid_argument);
  EXPECT_THROW(net.add_link({a, b, -1, 1}), std::invalid_argument);
  EXPECT_THROW(net.add_link({a, b, 1, 0}), std::invalid_argument);
  net.add_link({a, b, 1, 1});
  EXPECT_THROW(net.add_link({b, a, 1, 1}), std::invalid_argument);

  auto c = net.add_node("c", "test");
  EXPECT_FALSE(net.send(a, c, ip_piece(a, c, 10)));
  EXPECT_EQ(net.metrics(a).counters().no_link_drops, 1u);

  net.remove_node(b);
  EXPECT_FALSE(net.alive(b));
  EXPECT_FALSE(net.has_link(a, b));
  EXPECT_EQ(net.find("b"), b);
}

TEST(Network, RoutesFollowLowestLatencyWithIdTieBreak)
{
  Simulator sim;
  Network net(sim);
  auto a = net.add_node("a", "t");
  auto b = net.add_node("b", "t");
  auto c = net.add_node("c", "t");
  auto d = net.add_node("d", "t");
  net.add_link({a, b, 10, 100});
  net.add_link({b, d, 10, 100});
  net.add_link({a, c, 10, 100});
  net.add_link({c, d, 10, 100});
  net.add_link({a, d, 25, 100});
  EXPECT_EQ(net.next_hop(a, d), b);
  EXPECT_DOUBLE_EQ(net.path_latency(a, d), 20);

  net.remove_link(a, b);
  EXPECT_EQ(net.next_hop(a, d), c);
}

TEST(CpuMeter, WorkConservingBacklog)
{
  CpuMeter cpu(1, 0.02);
  auto first = cpu.add(0, 10);
  auto second = cpu.add(0, 10);
  EXPECT_DOUBLE_EQ(first.second, 10);
  EXPECT_DOUBLE_EQ(second.first, 10);
  EXPECT_DOUBLE_EQ(second.second, 20);

  CpuMeter quad(4, 0.02);
  EXPECT_DOUBLE_EQ(quad.add(0, 10).second, 2.5);
}

TEST(NodeMetrics, BucketsSpreadBusyTime)
{
  NodeMetrics m(1000, CpuMeter(1, 0.02));
  m.add_cpu_time(500, 1000);
  ASSERT_GE(m.buckets().size(), 2u);
  EXPECT_NEAR(m.buckets()[0].cpu_busy_ms, 500, 1e-9);
  EXPECT_NEAR(m.buckets()[1].cpu_busy_ms, 500, 1e-9);
  EXPECT_NEAR(m.cpu_utilization(0, 2000), 0.5, 1e-9);
}
