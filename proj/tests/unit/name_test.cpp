#include "icdn/ndn/name.hpp"

#include <gtest/gtest.h>

#include <random>

using icdn::ndn::MalformedUri;
using icdn::ndn::Name;

TEST(Name, ParsesHierarchicalUri)
{
  Name n = Name::parse("/cdn/s1/v42/720p");
  ASSERT_EQ(n.size(), 4u);
  EXPECT_EQ(n[0], "cdn");
  EXPECT_EQ(n[3], "720p");
  EXPECT_EQ(n.to_uri(), "/cdn/s1/v42/720p");
}

TEST(Name, RootIsEmpty)
{
  Name n = Name::parse("/");
  EXPECT_TRUE(n.empty());
  EXPECT_EQ(n.to_uri(), "/");
}

TEST(Name, RejectsMalformedUris)
{
  EXPECT_THROW(Name::parse("/a//b"), MalformedUri);
  EXPECT_THROW(Name::parse("a/b"), MalformedUri);
  EXPECT_THROW(Name::parse(""), MalformedUri);
  EXPECT_THROW(Name::parse("/a/"), MalformedUri);
  EXPECT_THROW(Name::parse("/a%2"), MalformedUri);
  EXPECT_THROW(Name::parse("/a%zz"), MalformedUri);
  EXPECT_THROW(Name::parse("/" + std::string(256, 'x')), MalformedUri);
  EXPECT_NO_THROW(Name::parse("/" + std::string(255, 'x')));

  std::string many;
  for (int i = 0; i < 33; ++i) {
    many += "/c";
  }
  EXPECT_THROW(Name::parse(many), MalformedUri);
  EXPECT_EQ(Name::parse(many.substr(2)).size(), 32u);
}

TEST(Name, PercentDecoding)
{
  Name n = Name::parse("/a%2Fb/%00%FF");
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0], "a/b");
  EXPECT_EQ(n[1], std::string("\x00\xff", 2));
  EXPECT_EQ(Name::parse(n.to_uri()), n);
}

TEST(Name, PrefixRelation)
{
  EXPECT_TRUE(Name::parse("/a/b").is_prefix_of(Name::parse("/a/b/c")));
  EXPECT_FALSE(Name::parse("/a/b").is_prefix_of(Name::parse("/a")));
  EXPECT_TRUE(Name::parse("/x").is_prefix_of(Name::parse("/x")));
  EXPECT_TRUE(Name().is_prefix_of(Name::parse("/anything")));
}

TEST(Name, SegmentComponents)
{
  Name base = Name::parse("/cdn/s1/v42/720p");
  EXPECT_EQ(base.segment(0).to_uri(), "/cdn/s1/v42/720p/seg=0");
  EXPECT_EQ(Name::parse("/a").segment(255).to_uri(), "/a/seg=255");
  EXPECT_EQ(Name::parse(base.segment(17).to_uri()), base.segment(17));
  EXPECT_EQ(base.segment(4294967295u).segment_number(), 4294967295u);

  EXPECT_EQ(icdn::ndn::parse_segment_component("seg=0"), 0u);
  EXPECT_FALSE(icdn::ndn::parse_segment_component("seg=01"));
  EXPECT_FALSE(icdn::ndn::parse_segment_component("seg="));
  EXPECT_FALSE(icdn::ndn::parse_segment_component("seg=4294967296"));
  EXPECT_FALSE(icdn::ndn::parse_segment_component("seg=1x"));
  EXPECT_FALSE(base.segment_number());

  std::vector<std::string> full(32, "c");
  EXPECT_THROW(Name(full).segment(1), MalformedUri);
}

namespace {

Name
random_name(std::mt19937_64& rng, std::size_t max_len = 6)
{
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::size_t> clen(1, 12);
  std::vector<std::string> comps(len(rng));
  for (auto& c : comps) {
    c.resize(clen(rng));
    for (auto& ch : c) {
      ch = static_cast<char>(byte(rng));
    }
  }
  return Name(comps);
}

} // namespace

TEST(NameProperty, UriRoundTrip)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Name n = random_name(rng);
    ASSERT_EQ(Name::parse(n.to_uri()), n) << n.to_uri();
  }
}

TEST(NameProperty, PrefixLaws)
{
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int i = 0; i < 2000; ++i) {
    // small alphabet so prefixes actually collide
    std::vector<std::string> ca, cb;
    std::uniform_int_distribution<std::size_t> len(0, 4);
    for (std::size_t k = len(rng); k > 0; --k) ca.push_back(std::string(1, static_cast<char>('a' + pick(rng))));
    for (std::size_t k = len(rng); k > 0; --k) cb.push_back(std::string(1, static_cast<char>('a' + pick(rng))));
    Name a(ca), b(cb);

    EXPECT_TRUE(a.is_prefix_of(a));
    if (a.size() == b.size() && a.is_prefix_of(b) && b.is_prefix_of(a)) {
      EXPECT_EQ(a, b);
    }
    if (a.is_prefix_of(b)) {
      EXPECT_TRUE(a.is_prefix_of(b.appended("z")));
    }
    EXPECT_FALSE(a.appended("z").is_prefix_of(a));
  }
}
