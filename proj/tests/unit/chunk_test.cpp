#include "icdn/ndn/packet.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace icdn::ndn;

namespace {

// independent oracle: expected segment sizes by repeated subtraction
std::vector<std::size_t>
expected_sizes(std::size_t len, std::size_t chunk)
{
  std::vector<std::size_t> out;
  do {
    std::size_t take = len < chunk ? len : chunk;
    out.push_back(take);
    len -= take;
  } while (len > 0);
  return out;
}

Bytes
concat(const std::vector<Data>& segs)
{
  Bytes out;
  for (const auto& s : segs) out.insert(out.end(), s.payload.begin(), s.payload.end());
  return out;
}

Bytes
pattern(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

} // namespace

TEST(Chunk, TwoMegabyteContent)
{
  const Name base = Name::parse("/cdn/s1/v42/720p");
  Bytes payload = pattern(2'097'152, 1);
  auto segs = chunk_content(base, payload, 8192, 60000);
  auto sizes = expected_sizes(payload.size(), 8192);
  ASSERT_EQ(segs.size(), sizes.size());
  ASSERT_EQ(segs.size(), 256u);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    EXPECT_EQ(segs[i].name, base.segment(static_cast<std::uint32_t>(i)));
    EXPECT_EQ(segs[i].payload.size(), sizes[i]);
    EXPECT_EQ(segs[i].final_segment, 255u);
    EXPECT_TRUE(segs[i].digest_valid());
    EXPECT_EQ(segs[i].freshness_ms, 60000u);
  }
  EXPECT_EQ(concat(segs), payload);
}

TEST(Chunk, OneByteOverBoundary)
{
  auto segs = chunk_content(Name::parse("/a"), pattern(8193, 2), 8192, 0);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].payload.size(), 8192u);
  EXPECT_EQ(segs[1].payload.size(), 1u);
  EXPECT_EQ(segs[1].final_segment, 1u);
}

TEST(Chunk, EmptyPayloadYieldsOneEmptySegment)
{
  auto segs = chunk_content(Name::parse("/a"), {}, 8192, 0);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_TRUE(segs[0].payload.empty());
  EXPECT_EQ(segs[0].final_segment, 0u);
  EXPECT_EQ(segs[0].name, Name::parse("/a/seg=0"));
  EXPECT_EQ(segs[0].digest.size(), 32u);
}

TEST(Chunk, ZeroChunkSizeRejected)
{
  EXPECT_THROW(chunk_content(Name::parse("/a"), pattern(3, 3), 0, 0), std::invalid_argument);
}

TEST(ChunkProperty, ReassemblyReproducesInput)
{
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> len(0, 1 << 20);
  for (std::uint32_t chunk : {1u, 7u, 8192u}) {
    for (int iter = 0; iter < (chunk == 1 ? 3 : 12); ++iter) {
      std::size_t n = chunk == 1 ? len(rng) / 64 : len(rng);
      Bytes payload = pattern(n, rng());
      auto segs = chunk_content(Name::parse("/p"), payload, chunk, 0);
      ASSERT_EQ(segs.size(), expected_sizes(n, chunk).size());
      ASSERT_EQ(concat(segs), payload) << "size " << n << " chunk " << chunk;
      ASSERT_EQ(segs.size(), segment_count(n, chunk));
    }
  }
}

TEST(Digest, DeterministicAndSensitive)
{
  Bytes a = pattern(1000, 4);
  Bytes b = a;
  EXPECT_EQ(compute_digest(a), compute_digest(b));
  for (std::size_t pos : {std::size_t{0}, std::size_t{499}, std::size_t{999}}) {
    Bytes c = a;
    c[pos] ^= 0x01;
    EXPECT_NE(compute_digest(a), compute_digest(c));
  }
  EXPECT_EQ(compute_digest({}).size(), 32u);

  DigestBuilder builder;
  builder.update(std::span<const std::uint8_t>(a).first(300));
  builder.update(std::span<const std::uint8_t>(a).subspan(300));
  EXPECT_EQ(builder.finish(), compute_digest(a));
}
