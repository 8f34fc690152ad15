#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "conecalc/combinatorics.hpp"
#include "conecalc/error.hpp"

using namespace conecalc;
using testing::W;

TEST_CASE("interval partitions") {
  auto p = IntervalPartition::from_sizes({4, 4});
  CHECK(p.universe() == 8);
  CHECK(p.interval(1) == Interval{5, 8});
  CHECK(p.interval(1).length() == 4);
  CHECK(IntervalPartition::from_ends({2, 8}).interval(1) == Interval{3, 8});
  CHECK_THROWS_AS(IntervalPartition::from_sizes({}), PreconditionViolated);
  CHECK_THROWS_AS(IntervalPartition::from_sizes({2, 0}), PreconditionViolated);
  CHECK_THROWS_AS(IntervalPartition::from_ends({3, 3}), PreconditionViolated);
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(all_interval_partitions(n).size() == (std::size_t{1} << (n - 1)));
  }
}

TEST_CASE("packets") {
  CHECK(is_theta_packet(W("a b a b a"), W("a b")));
  CHECK_FALSE(is_theta_packet(W("a b b a"), W("a b")));
  auto m = is_theta_packet(W("b a b"), W("a b"));
  REQUIRE(m);
  CHECK(m->n > 0);
  CHECK(m->offset == 1);
  CHECK(is_theta_packet(W("b' a'"), W("a b")));
  CHECK_THROWS_AS(is_theta_packet(W("a"), W("a a'")), PreconditionViolated);
  CHECK_THROWS_AS(is_theta_packet(W("a"), Word{}), PreconditionViolated);

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    Word g = cyclically_reduce(oracle::random_word(rng, 2, 4)).core;
    if (g.empty()) {
      continue;
    }
    Word big = g.power(5);
    std::size_t first = rng() % big.size();
    std::size_t len   = 1 + rng() % (big.size() - first);
    Word v = big.subword(first, len);
    CHECK(is_theta_packet(v, g));
    Word u = oracle::random_reduced(rng, 2, 1 + rng() % 8);
    CHECK(is_theta_packet(u, g).has_value() == oracle::occurs_in_power(u, g));
  }
}

TEST_CASE("collisions") {
  auto p1 = IntervalPartition::from_sizes({4, 4});
  auto p2 = IntervalPartition::from_sizes({2, 6});
  auto c  = find_interval_collision(p1, p2, 2);
  // [1..4] already meets [1..2] in two points.
  CHECK(c.i == 0);
  CHECK(c.j == 0);
  CHECK(c.common == Interval{1, 2});
  c = find_interval_collision(p1, IntervalPartition::from_sizes({1, 7}), 2);
  CHECK(c.i == 0);
  CHECK(c.j == 1);
  CHECK(c.common == Interval{2, 4});

  auto whole = IntervalPartition::from_sizes({2});
  c          = find_interval_collision(whole, whole, 1);
  CHECK(c.common == Interval{1, 2});

  CHECK_THROWS_AS(find_interval_collision(p1, IntervalPartition::from_sizes({3}), 1),
                  PreconditionViolated);
  // N = 8 < 3 (2 + 2).
  CHECK_THROWS_AS(find_interval_collision(p1, p2, 3), PreconditionViolated);
}

TEST_CASE("collisions agree with the row-major scan") {
  for (std::size_t n = 1; n <= 9; ++n) {
    auto parts = all_interval_partitions(n);
    for (auto const& p : parts) {
      for (auto const& q : parts) {
        for (std::size_t ell = 1; ell <= 3; ++ell) {
          if (n < ell * (p.size() + q.size())) {
            continue;
          }
          auto expected = oracle::collision(p, q, ell);
          REQUIRE(expected);
          auto got = find_interval_collision(p, q, ell);
          CHECK(got.i == expected->i);
          CHECK(got.j == expected->j);
          CHECK(got.common == Interval{expected->first, expected->last});
        }
      }
    }
  }
}

TEST_CASE("exhaustive sweep") {
  auto sweep = exhaustive_collision_sweep(10, 3);
  CHECK(sweep.failures == 0);
  std::uint64_t expected = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    auto parts = all_interval_partitions(n);
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      for (auto const& p : parts) {
        for (auto const& q : parts) {
          expected += n >= ell * (p.size() + q.size());
        }
      }
    }
  }
  CHECK(sweep.pairs == expected);
}

TEST_CASE("small-interval bound") {
  auto r = check_small_interval_bound(W("a"), 10, {}, 1);
  CHECK(r.deleted.empty());
  CHECK(r.holds());

  r = check_small_interval_bound(W("a"), 10, {2, 6}, 1);
  CHECK(r.residual == W("a^8"));
  CHECK(r.removed == 2);
  CHECK(r.deleted.size() == 2);
  CHECK(r.total_length == 2);
  CHECK(r.bound == 4);
  CHECK(r.holds());

  // Removing the middle b of (ab)^2 makes the two a-letters adjacent; the
  // deleted run is just the b.
  r = check_small_interval_bound(W("a b"), 2, {1}, 2);
  CHECK(r.residual == W("a a b"));
  CHECK(r.total_length == 1);

  CHECK_THROWS_AS(check_small_interval_bound(W("a"), 3, {}, 0), PreconditionViolated);
  CHECK_THROWS_AS(check_small_interval_bound(W("a b a'"), 3, {}, 1), PreconditionViolated);

  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 10);
    std::size_t  len = 2 * static_cast<std::size_t>(n);
    std::vector<std::size_t> removal;
    for (std::size_t i = 0, m = rng() % (len / 2 + 1); i < m; ++i) {
      removal.push_back(rng() % len);
    }
    auto rep = check_small_interval_bound(W("a b"), n, removal, 2);
    CHECK(rep.holds());
    // Independent count of surviving positions: reduce the kept letters and
    // compare lengths.
    Word kept;
    std::vector<bool> gone(len, false);
    for (auto i : removal) {
      gone[i] = true;
    }
    Word big = W("a b").power(n);
    for (std::size_t i = 0; i < len; ++i) {
      if (!gone[i]) {
        kept.push_back(big[i]);
      }
    }
    CHECK(rep.residual == oracle::free_reduce(kept));
    CHECK(len - rep.total_length == rep.residual.size());
  }
}
