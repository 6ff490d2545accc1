#include "icdn/fw/fib.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace icdn::fw;
using icdn::ndn::Name;

namespace {

FaceId f(std::uint32_t v) { return FaceId{v}; }

// brute-force oracle: scan every entry, keep the longest matching prefix
std::optional<Name>
scan_longest(const std::vector<Name>& prefixes, const Name& name)
{
  std::optional<Name> best;
  for (const auto& p : prefixes) {
    if (p.is_prefix_of(name) && (!best || p.size() > best->size())) {
      best = p;
    }
  }
  return best;
}

} // namespace

TEST(Fib, LongestPrefixWins)
{
  Fib fib;
  fib.insert(Name::parse("/a"), {{f(1), 0}});
  fib.insert(Name::parse("/a/b"), {{f(2), 0}});
  ASSERT_NE(fib.longest_prefix_match(Name::parse("/a/b/c")), nullptr);
  EXPECT_EQ(fib.longest_prefix_match(Name::parse("/a/b/c"))->prefix, Name::parse("/a/b"));
  EXPECT_EQ(fib.longest_prefix_match(Name::parse("/a/x"))->prefix, Name::parse("/a"));
  EXPECT_EQ(fib.longest_prefix_match(Name::parse("/z")), nullptr);

  fib.insert(Name(), {{f(9), 0}});
  EXPECT_EQ(fib.longest_prefix_match(Name::parse("/z"))->prefix, Name());
}

TEST(Fib, InsertRemove)
{
  Fib fib;
  fib.insert(Name::parse("/a"), {{f(1), 0}});
  fib.remove(Name::parse("/a"));
  EXPECT_EQ(fib.longest_prefix_match(Name::parse("/a/b")), nullptr);
  EXPECT_THROW(fib.remove(Name::parse("/a")), UnknownPrefix);
  EXPECT_THROW(fib.insert(Name::parse("/a"), {}), std::invalid_argument);
  EXPECT_EQ(fib.size(), 0u);
}

TEST(Fib, OneEntryPerPrefix)
{
  Fib fib;
  fib.insert(Name::parse("/a"), {{f(1), 5}});
  fib.insert(Name::parse("/a"), {{f(2), 1}});
  EXPECT_EQ(fib.size(), 1u);
  fib.add_next_hop(Name::parse("/a"), {f(3), 1});
  fib.add_next_hop(Name::parse("/a"), {f(2), 7});
  const FibEntry* e = fib.find_exact(Name::parse("/a"));
  ASSERT_NE(e, nullptr);
  ASSERT_EQ(e->next_hops.size(), 2u);
  EXPECT_EQ(e->next_hops[0], (NextHop{f(2), 7}));

  fib.remove_face(f(2));
  fib.remove_face(f(3));
  EXPECT_EQ(fib.size(), 0u);
}

TEST(FibProperty, MatchesBruteForceScan)
{
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> comp(0, 3);
  std::uniform_int_distribution<std::size_t> len(0, 5), count(0, 20);
  auto gen = [&] {
    std::vector<std::string> c(len(rng));
    for (auto& x : c) x = std::string(1, static_cast<char>('a' + comp(rng)));
    return Name(c);
  };

  for (int instance = 0; instance < 1000; ++instance) {
    Fib fib;
    std::vector<Name> prefixes;
    for (std::size_t k = count(rng); k > 0; --k) {
      Name p = gen();
      fib.insert(p, {{f(static_cast<std::uint32_t>(k)), 0}});
      if (std::find(prefixes.begin(), prefixes.end(), p) == prefixes.end()) prefixes.push_back(p);
    }
    ASSERT_EQ(fib.size(), prefixes.size());
    for (int q = 0; q < 10; ++q) {
      Name name = gen();
      auto expected = scan_longest(prefixes, name);
      const FibEntry* got = fib.longest_prefix_match(name);
      ASSERT_EQ(got != nullptr, expected.has_value()) << name.to_uri();
      if (got) ASSERT_EQ(got->prefix, *expected);
    }
  }
}
