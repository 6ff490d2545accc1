#include "icdn/ndn/tlv.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace icdn::ndn;

TEST(Tlv, InterestWireIsBitExact)
{
  Interest i{Name::parse("/a"), 1, 4000, 32};
  const Bytes expected = {
    0x05, 0x00, 0x00, 0x00, 0x27,
    0x07, 0x00, 0x00, 0x00, 0x06,
    0x08, 0x00, 0x00, 0x00, 0x01, 'a',
    0x0A, 0x00, 0x00, 0x00, 0x08, 0, 0, 0, 0, 0, 0, 0, 1,
    0x0C, 0x00, 0x00, 0x00, 0x04, 0x00, 0x00, 0x0F, 0xA0,
    0x22, 0x00, 0x00, 0x00, 0x01, 0x20,
  };
  Bytes wire = encode_packet(i);
  EXPECT_EQ(wire, expected);
  EXPECT_EQ(encoded_size(i), expected.size());
  EXPECT_EQ(std::get<Interest>(decode_packet(wire)), i);
}

TEST(Tlv, DataOverheadMatchesLayout)
{
  // outer 5 + Name(5 + 5 components * 5 + 17 bytes) + Payload 5 + Digest 37
  // + Freshness 9 + FinalSegment 9
  Bytes payload(8192, 0x5A);
  Data d = Data::make(Name::parse("/cdn/s1/v42/720p/seg=0"), payload, 1000, 255);
  Bytes wire = encode_packet(d);
  EXPECT_EQ(wire.size(), 8192u + 112u);
  EXPECT_EQ(encoded_size(d), wire.size());
  EXPECT_EQ(std::get<Data>(decode_packet(wire)), d);

  d.final_segment.reset();
  EXPECT_EQ(encode_packet(d).size(), 8192u + 103u);
  EXPECT_EQ(std::get<Data>(decode_packet(encode_packet(d))), d);
}

TEST(Tlv, DecodeErrors)
{
  auto kind_of = [](const Bytes& b) {
    try {
      decode_packet(b);
    }
    catch (const DecodeError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "decode did not fail";
    return DecodeErrorKind::Malformed;
  };

  EXPECT_EQ(kind_of({0xFF, 0, 0, 0, 0}), DecodeErrorKind::UnknownType);
  EXPECT_EQ(kind_of({0x05, 0, 0}), DecodeErrorKind::TruncatedPacket);
  EXPECT_EQ(kind_of({}), DecodeErrorKind::TruncatedPacket);

  Bytes wire = encode_packet(Interest{Name::parse("/a/b"), 9, 100, 3});
  Bytes cut(wire.begin(), wire.end() - 1);
  EXPECT_EQ(kind_of(cut), DecodeErrorKind::TruncatedPacket);

  Bytes longer = wire;
  longer.push_back(0);
  EXPECT_EQ(kind_of(longer), DecodeErrorKind::Malformed);

  // nested element out of order
  Bytes swapped = wire;
  swapped[5] = 0x0A;
  EXPECT_EQ(kind_of(swapped), DecodeErrorKind::Malformed);
}

TEST(Tlv, DecodeDoesNotCheckDigest)
{
  Data d = Data::make(Name::parse("/x/seg=0"), Bytes{1, 2, 3}, 0, 0);
  d.payload[0] ^= 0xFF;
  Data back = std::get<Data>(decode_packet(encode_packet(d)));
  EXPECT_FALSE(back.digest_valid());
  EXPECT_EQ(back, d);
}

namespace {

Name
random_name(std::mt19937_64& rng)
{
  std::uniform_int_distribution<std::size_t> len(0, 8), clen(1, 40);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::string> comps(len(rng));
  for (auto& c : comps) {
    c.resize(clen(rng));
    for (auto& ch : c) ch = static_cast<char>(byte(rng));
  }
  return Name(comps);
}

} // namespace

TEST(TlvProperty, RoundTripIsIdentity)
{
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> plen(0, 9000);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int iter = 0; iter < 500; ++iter) {
    Interest i{random_name(rng), rng(), static_cast<std::uint32_t>(rng()),
               static_cast<std::uint8_t>(rng())};
    Bytes iw = encode_packet(i);
    ASSERT_EQ(iw.size(), encoded_size(i));
    ASSERT_EQ(std::get<Interest>(decode_packet(iw)), i);

    Bytes payload(plen(rng));
    for (auto& b : payload) b = static_cast<std::uint8_t>(byte(rng));
    std::optional<std::uint32_t> fin;
    if (rng() & 1) fin = static_cast<std::uint32_t>(rng());
    Data d = Data::make(random_name(rng), payload, static_cast<std::uint32_t>(rng()), fin);
    if (rng() & 1) d.digest[0] ^= 1; // codec must carry whatever digest it is given
    Bytes dw = encode_packet(d);
    ASSERT_EQ(dw.size(), encoded_size(d));
    ASSERT_EQ(std::get<Data>(decode_packet(dw)), d);
  }
}

TEST(TlvProperty, GarbageNeverCrashes)
{
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> len(0, 64);
  int decoded = 0;
  for (int iter = 0; iter < 5000; ++iter) {
    Bytes junk(len(rng));
    for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
    if (!junk.empty() && (iter % 2 == 0)) junk[0] = (iter % 4 == 0) ? 0x05 : 0x06;
    try {
      decode_packet(junk);
      ++decoded;
    }
    catch (const DecodeError&) {
    }
  }
  SUCCEED() << decoded << " random buffers decoded";
}
