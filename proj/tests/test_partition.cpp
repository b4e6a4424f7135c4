#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "insep/partition.hpp"

using namespace insep;

namespace {

// p(w) by Euler's pentagonal-number recurrence.
std::vector<std::int64_t> euler_partition_counts(int max_w) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(max_w) + 1, 0);
  p[0] = 1;
  for (int w = 1; w <= max_w; ++w) {
    std::int64_t total = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > w) break;
      int sign = (k % 2 == 1) ? 1 : -1;
      total += sign * p[static_cast<std::size_t>(w - g1)];
      if (g2 <= w) total += sign * p[static_cast<std::size_t>(w - g2)];
    }
    p[static_cast<std::size_t>(w)] = total;
  }
  return p;
}

Partition random_partition(std::mt19937_64& rng, int max_sum) {
  std::uniform_int_distribution<int> total(1, max_sum);
  int left = total(rng);
  std::vector<int> parts;
  while (left > 0) {
    int x = std::uniform_int_distribution<int>(1, left)(rng);
    parts.push_back(x);
    left -= x;
  }
  return Partition(parts);
}

}  // namespace

TEST(Partition, SumExamples) {
  EXPECT_EQ(sum(Partition{6}), 6);
  EXPECT_EQ(sum(Partition{1, 1, 1, 3}), 6);
  EXPECT_EQ(sum(Partition{2, 2, 2}), 6);
}

TEST(Partition, CanonicalOrder) {
  Partition p{1, 3, 1, 1};
  EXPECT_EQ(p.parts(), (std::vector<int>{3, 1, 1, 1}));
  EXPECT_EQ(p.to_string(), "{3,1,1,1}");
  EXPECT_THROW(Partition({2, 0}), std::invalid_argument);
}

TEST(Partition, ScaleExamples) {
  EXPECT_EQ(scale(2, Partition{3, 1}), (Partition{6, 2}));
  EXPECT_EQ(scale(1, Partition{5, 2}), (Partition{5, 2}));
  EXPECT_EQ(scale(4, Partition{2}), (Partition{8}));
  EXPECT_THROW(scale(0, Partition{1}), std::invalid_argument);
}

TEST(Partition, RepeatExamples) {
  EXPECT_EQ(repeat(2, Partition{3, 1}), (Partition{3, 3, 1, 1}));
  EXPECT_EQ(repeat(1, Partition{5, 2}), (Partition{5, 2}));
  EXPECT_EQ(repeat(3, Partition{2}), (Partition{2, 2, 2}));
}

TEST(Partition, DivideRepetition) {
  EXPECT_EQ(divide_repetition(2, Partition{3, 3, 1, 1}), (Partition{3, 1}));
  EXPECT_FALSE(divide_repetition(2, Partition{3, 1, 1}).has_value());
}

TEST(Partition, Conjugate) {
  EXPECT_EQ(conjugate(Partition{3, 1}), (Partition{2, 1, 1}));
  EXPECT_EQ(conjugate(Partition{2, 2, 2}), (Partition{3, 3}));
}

TEST(Partition, ParseText) {
  EXPECT_EQ(parse_partition("{6,2,1}"), (Partition{6, 2, 1}));
  EXPECT_EQ(parse_partition(" { 1, 3 ,1 } "), (Partition{3, 1, 1}));
  EXPECT_EQ(parse_partition("{}"), Partition{});
  EXPECT_THROW(parse_partition("{1,,2}"), std::invalid_argument);
  EXPECT_THROW(parse_partition("6,2"), std::invalid_argument);
  EXPECT_THROW(parse_partition("{0}"), std::invalid_argument);
  EXPECT_THROW(parse_partition("{1}x"), std::invalid_argument);
}

TEST(Enumerate, TwoPartsOfFour) {
  auto ps = partitions_of(4, {.num_parts = 2});
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0], (Partition{3, 1}));
  EXPECT_EQ(ps[1], (Partition{2, 2}));
}

TEST(Enumerate, SixWithLooseMaxPart) {
  EXPECT_EQ(partitions_of(6, {.max_part = 8}).size(), 11u);
}

TEST(Enumerate, UnsatisfiableIsEmpty) {
  EXPECT_TRUE(partitions_of(3, {.min_part = 4}).empty());
  EXPECT_TRUE(partitions_of(5, {.num_parts = 6}).empty());
}

TEST(Enumerate, OrderIsLexDecreasing) {
  auto ps = partitions_of(7);
  for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_GT(ps[i - 1], ps[i]);
}

TEST(Enumerate, StreamIsLazyAndIterable) {
  auto stream = enumerate(30);
  auto first = stream.next();
  ASSERT_TRUE(first);
  EXPECT_EQ(*first, (Partition{30}));
  int count = 1;
  for (const auto& p : stream) {
    EXPECT_EQ(p.sum(), 30);
    ++count;
  }
  EXPECT_EQ(count, 5604);
}

TEST(Enumerate, CountMatchesEulerRecurrence) {
  auto p = euler_partition_counts(30);
  for (int w = 1; w <= 30; ++w)
    EXPECT_EQ(static_cast<std::int64_t>(partitions_of(w).size()), p[static_cast<std::size_t>(w)])
        << "w=" << w;
}

TEST(Enumerate, ConstraintsMatchFilteredFullListing) {
  for (int w = 1; w <= 14; ++w) {
    auto all = partitions_of(w);
    for (int lo = 1; lo <= 3; ++lo)
      for (int hi = 1; hi <= w; hi += 2)
        for (int k = 1; k <= 5; ++k) {
          std::vector<Partition> expected;
          for (const auto& p : all)
            if (p.smallest() >= lo && p.largest() <= hi && static_cast<int>(p.size()) == k)
              expected.push_back(p);
          EXPECT_EQ(partitions_of(w, {.min_part = lo, .max_part = hi, .num_parts = k}), expected)
              << w << " " << lo << " " << hi << " " << k;
        }
  }
}

TEST(PartitionProperty, ScaleRepeatIdentities) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 500; ++trial) {
    Partition lam = random_partition(rng, 20);
    int k = std::uniform_int_distribution<int>(1, 8)(rng);
    EXPECT_EQ(sum(scale(k, lam)), k * sum(lam));
    EXPECT_EQ(scale(k, lam).size(), lam.size());
    EXPECT_EQ(sum(repeat(k, lam)), k * sum(lam));
    EXPECT_EQ(repeat(k, lam).size(), k * lam.size());
  }
}

TEST(PartitionProperty, PermutationRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Partition lam = random_partition(rng, 20);
    std::vector<int> shuffled(lam.begin(), lam.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(Partition(shuffled), lam);
    EXPECT_EQ(parse_partition(lam.to_string()), lam);
  }
}
