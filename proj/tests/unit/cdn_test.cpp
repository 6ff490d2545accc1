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

#include "icdn/cdn/origin_node.hpp"
#include "icdn/sim/consumer.hpp"

#include <gtest/gtest.h>

using namespace icdn;
using namespace icdn::cdn;

namespace {

constexpr std::uint64_t two_mib = 2 * 1024 * 1024;

CdnOrigin
origin_with_v42()
{
  CdnOrigin o;
  o.upload("v42", synthetic_payload(42, "v42", two_mib), "1080p");
  return o;
}

} // namespace

TEST(CdnOrigin, UploadAndLookup)
{
  CdnOrigin o = origin_with_v42();
  const auto& obj = o.find("v42", "1080p");
  EXPECT_EQ(obj.size_bytes(), two_mib);
  EXPECT_TRUE(obj.source);
  EXPECT_EQ(o.stored_bytes(), two_mib);
  EXPECT_THROW(o.upload("v42", ndn::Bytes(3), "720p"), DuplicateContent);
  EXPECT_THROW(o.find("v42", "720p"), UnknownContent);
  EXPECT_THROW(o.find("nope", "1080p"), UnknownContent);

  const auto& empty = o.upload("empty", {}, "1080p");
  EXPECT_EQ(empty.size_bytes(), 0u);
}

TEST(CdnOrigin, TranscodeHalvesSizeAndChargesCpu)
{
  CdnOrigin o = origin_with_v42();
  auto r = o.transcode("v42", ResolutionProfile::parse("540p", "1/2"), 20e6);
  EXPECT_EQ(r.object.size_bytes(), 1048576u);
  EXPECT_FALSE(r.object.source);
  // 2 MiB read at 20 MB/s
  EXPECT_NEAR(r.cpu_ms, 104.8576, 1e-9);
  EXPECT_THROW(o.transcode("v42", ResolutionProfile::parse("540p", "1/2"), 20e6), DuplicateVariant);
  EXPECT_THROW(o.transcode("v43", ResolutionProfile::parse("540p", "1/2"), 20e6), UnknownContent);
}

TEST(CdnOrigin, TranscodeIsDeterministic)
{
  CdnOrigin a = origin_with_v42();
  CdnOrigin b = origin_with_v42();
  auto pa = a.transcode("v42", ResolutionProfile::parse("720p", "0.5"), 20e6).object.payload;
  auto pb = b.transcode("v42", ResolutionProfile::parse("720p", "1/2"), 20e6).object.payload;
  EXPECT_EQ(*pa, *pb);
  EXPECT_NE(*pa, ndn::Bytes(a.find("v42", "1080p").payload->begin(),
                            a.find("v42", "1080p").payload->begin() + 1048576));
}

TEST(ResolutionProfile, ScaledUsesFloorWithoutOverflow)
{
  auto third = ResolutionProfile::parse("x", "1/3");
  EXPECT_EQ(third.scaled(10), 3u);
  auto big = ResolutionProfile::parse("x", "3/4");
  EXPECT_EQ(big.scaled(std::uint64_t{1} << 62), (std::uint64_t{1} << 62) / 4 * 3);
  EXPECT_THROW(ResolutionProfile::parse("x", "1/0"), std::invalid_argument);
  EXPECT_THROW(ResolutionProfile::parse("x", "abc"), std::invalid_argument);
}

TEST(CdnOrigin, ReadRanges)
{
  CdnOrigin o = origin_with_v42();
  auto piece = o.read("v42", "1080p", sim::ByteRange{0, 8192});
  EXPECT_EQ(piece->size(), 8192u);
  EXPECT_TRUE(std::equal(piece->begin(), piece->end(), o.find("v42", "1080p").payload->begin()));
  EXPECT_EQ(o.read("v42", "1080p", std::nullopt)->size(), two_mib);
  EXPECT_THROW(o.read("v42", "1080p", sim::ByteRange{0, two_mib + 1}), BadRange);
  EXPECT_THROW(o.read("v42", "1080p", sim::ByteRange{10, 5}), BadRange);
}

TEST(SyntheticPayload, DependsOnSeedAndId)
{
  EXPECT_EQ(synthetic_payload(1, "a", 100), synthetic_payload(1, "a", 100));
  EXPECT_NE(synthetic_payload(1, "a", 100), synthetic_payload(2, "a", 100));
  EXPECT_NE(synthetic_payload(1, "a", 100), synthetic_payload(1, "b", 100));
  auto longer = synthetic_payload(1, "a", 1000);
  auto shorter = synthetic_payload(1, "a", 100);
  EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST(OriginNode, FullStreamMatchesAnalyticTime)
{
  sim::Simulator s;
  sim::Network net(s);
  auto client = net.add_node("client", "consumer");
  auto server = net.add_node("cdn", "cache");
  auto catalog = std::make_shared<CdnOrigin>(origin_with_v42());
  OriginNode node(net, server, catalog);
  sim::ConsumerApp app(net, client, {.keep_content = true});
  net.add_link({client, server, 50.0, 100.0});

  std::optional<sim::FetchResult> got;
  app.fetch_ip(1, server, "v42", "1080p", [&](const sim::FetchResult& r) { got = r; });
  s.run_to_completion();
  ASSERT_TRUE(got && got->ok());
  EXPECT_EQ(got->bytes, two_mib);
  EXPECT_EQ(*got->content, *catalog->find("v42", "1080p").payload);
  // request serialization + latency, then the body back-to-back + latency
  double oracle = 512 * 8.0 / 1e5 + 50.0 + static_cast<double>(two_mib) * 8.0 / 1e5 + 50.0;
  EXPECT_NEAR(*got->t_complete - got->t_issue, oracle, 1e-9);
  EXPECT_EQ(node.full_transmissions("v42", "1080p", client), 1u);
  EXPECT_EQ(node.bytes_out(), two_mib);
}

TEST(OriginNode, UnknownContentReturnsError)
{
  sim::Simulator s;
  sim::Network net(s);
  auto client = net.add_node("client", "consumer");
  auto server = net.add_node("cdn", "cache");
  OriginNode node(net, server, std::make_shared<CdnOrigin>());
  sim::ConsumerApp app(net, client, {});
  net.add_link({client, server, 1.0, 100.0});
  std::optional<sim::FetchResult> got;
  app.fetch_ip(1, server, "missing", "1080p", [&](const sim::FetchResult& r) { got = r; });
  s.run_to_completion();
  ASSERT_TRUE(got);
  EXPECT_FALSE(got->ok());
}
