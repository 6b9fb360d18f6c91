#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qairy/partitions.hpp"

using namespace qairy;

namespace {

// Counts p(r) by the pentagonal recurrence, independent of the generator.
long partition_count(int r) {
  std::vector<long> p(r + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= r; ++n) {
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const long sign = (k % 2) ? 1 : -1;
      p[n] += sign * p[n - g1];
      if (g2 <= n) p[n] += sign * p[n - g2];
    }
  }
  return p[r];
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
  Partition p({3, 1});
  CHECK(p.size() == 4);
  CHECK(p.length() == 2);
}

TEST_CASE("lambda of a partition") {
  Partition p({3, 1});
  CHECK(lambda_of(p, 1) == 1);
  CHECK(lambda_of(p, 3) == 1);
  CHECK(lambda_of(p, 4) == 2);
  CHECK_THROWS_AS(lambda_of(p, 0), std::out_of_range);
  CHECK_THROWS_AS(lambda_of(p, 5), std::out_of_range);
  Partition q({2, 2, 1, 1});
  std::vector<int> got;
  for (int i = 1; i <= 6; ++i) got.push_back(lambda_of(q, i));
  CHECK(got == std::vector<int>{1, 1, 2, 2, 3, 4});
}

TEST_CASE("lambda-good set") {
  auto set = lambda_good_set(Partition({2, 1, 1}));
  CHECK(set.r == 4);
  CHECK(set.bounds == std::map<int, int>{{1, 0}, {2, 1}, {3, 1}, {4, 1}});
  CHECK(set.contains(2, 1));
  CHECK_FALSE(set.contains(2, 0));
  CHECK_FALSE(set.contains(5, 10));
}

TEST_CASE("partition enumeration") {
  for (int r = 0; r <= 14; ++r) {
    auto all = partitions_of(r);
    CHECK(static_cast<long>(all.size()) == partition_count(r));
    for (std::size_t k = 1; k < all.size(); ++k) CHECK(all[k - 1] > all[k]);
    for (const auto& p : all) CHECK(p.size() == r);
  }
}

TEST_CASE("profile search") {
  // every partition is recovered from its own full profile
  for (int r = 1; r <= 9; ++r) {
    for (const auto& p : partitions_of(r)) {
      std::map<int, int> prof;
      for (int i = 1; i <= r; ++i) prof[i] = lambda_of(p, i);
      auto found = find_partition_with_profile(r, prof);
      REQUIRE(found.has_value());
      CHECK(*found == p);
    }
  }
  CHECK_FALSE(find_partition_with_profile(3, {{1, 2}}).has_value());
  CHECK_FALSE(find_partition_with_profile(4, {{1, 1}, {2, 1}, {3, 3}, {4, 3}}).has_value());
  auto partial = partitions_matching(4, {{1, 1}, {2, 1}});
  CHECK(partial.size() == 4);  // (4), (3,1), (2,2), (2,1,1)
}
