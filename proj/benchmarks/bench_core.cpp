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

#include "icdn/fw/forwarder.hpp"
#include "icdn/harness/testbed.hpp"
#include "icdn/ndn/tlv.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace icdn;

namespace {

ndn::Data
sample_data(std::size_t size)
{
  return ndn::Data::make(ndn::Name::parse("/cdn/eu-cdn/v42/1080p/seg=17"), ndn::Bytes(size, 0x42), 3600000, 255);
}

void
BM_EncodeData(benchmark::State& state)
{
  auto d = sample_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ndn::encode_packet(d));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeData)->Arg(1024)->Arg(8192);

void
BM_DecodeData(benchmark::State& state)
{
  auto wire = ndn::encode_packet(sample_data(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ndn::decode_packet(wire));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DecodeData)->Arg(1024)->Arg(8192);

void
BM_Digest(benchmark::State& state)
{
  ndn::Bytes payload(static_cast<std::size_t>(state.range(0)), 0x17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ndn::compute_digest(payload));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Digest)->Arg(8192)->Arg(65536);

void
BM_FibLongestPrefixMatch(benchmark::State& state)
{
  std::mt19937_64 rng(1);
  fw::Fib fib;
  std::vector<ndn::Name> names;
  for (int i = 0; i < state.range(0); ++i) {
    ndn::Name p;
    for (std::size_t c = 0, len = 1 + rng() % 4; c < len; ++c) p.append("c" + std::to_string(rng() % 32));
    fib.insert(p, {{fw::FaceId{static_cast<std::uint32_t>(i)}, 0}});
    names.push_back(p.appended("seg=" + std::to_string(i)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fib.longest_prefix_match(names[i++ % names.size()]));
  }
}
BENCHMARK(BM_FibLongestPrefixMatch)->Arg(100)->Arg(10000);

void
BM_ForwarderCsHit(benchmark::State& state)
{
  fw::Forwarder f;
  f.register_face(fw::FaceId{1});
  std::vector<ndn::Name> names;
  for (std::uint32_t s = 0; s < 256; ++s) {
    auto n = ndn::Name::parse("/cdn/eu-cdn/v42/1080p").segment(s);
    f.cs_insert(0, std::make_shared<const ndn::Data>(ndn::Data::make(n, ndn::Bytes(8192, 1), 3600000, 255)));
    names.push_back(n);
  }
  std::uint64_t nonce = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.on_interest(1, fw::FaceId{1}, ndn::Interest{names[nonce % 256], nonce, 4000, 32}));
    ++nonce;
  }
}
BENCHMARK(BM_ForwarderCsHit);

void
BM_ForwarderMissThenData(benchmark::State& state)
{
  fw::Forwarder f;
  f.register_face(fw::FaceId{1});
  f.register_face(fw::FaceId{2});
  f.fib_insert(ndn::Name::parse("/cdn"), {{fw::FaceId{2}, 0}});
  auto base = ndn::Name::parse("/cdn/eu-cdn/v42/1080p");
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto n = base.segment(static_cast<std::uint32_t>(i));
    f.on_interest(0, fw::FaceId{1}, ndn::Interest{n, i, 4000, 32});
    auto d = std::make_shared<const ndn::Data>(ndn::Data::make(n, ndn::Bytes(64, 1), 3600000));
    benchmark::DoNotOptimize(f.on_data(0, fw::FaceId{2}, d));
    ++i;
  }
}
BENCHMARK(BM_ForwarderMissThenData);

void
BM_SmallScenario(benchmark::State& state)
{
  auto loaded = harness::load_scenario_file(std::string(ICDN_SCENARIO_DIR) + "/small.json");
  if (!loaded.ok()) {
    state.SkipWithError("small.json does not validate");
    return;
  }
  for (auto _ : state) {
    harness::Testbed bed(*loaded.scenario);
    bed.run();
    benchmark::DoNotOptimize(bed.result().events);
  }
}
BENCHMARK(BM_SmallScenario)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
