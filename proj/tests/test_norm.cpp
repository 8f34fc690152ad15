#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "conecalc/error.hpp"
#include "conecalc/norm.hpp"

using namespace conecalc;
using testing::ab;
using testing::W;

namespace {
  WeightedAlphabet random_weights(std::mt19937_64& rng, bool allow_zero) {
    auto pick = [&] {
      std::int64_t num = static_cast<std::int64_t>(rng() % 5);
      if (!allow_zero && num == 0) {
        num = 1;
      }
      return Rational(num, 1 + static_cast<std::int64_t>(rng() % 3));
    };
    Rational wa = pick(), wb = pick();
    return WeightedAlphabet({{"a", wa}, {"b", wb}});
  }

  Rational N(Word const& w, WeightedAlphabet const& a = ab()) {
    return cancellation_norm(w, a).value;
  }
}  // namespace

TEST_CASE("closed-form norms") {
  auto cert = cancellation_norm(W("a^5"), ab());
  CHECK(cert.value == 5);
  CHECK(cert.removed == std::vector<std::size_t>{0, 1, 2, 3, 4});
  cert = cancellation_norm(Word{}, ab());
  CHECK(cert.value == 0);
  CHECK(cert.removed.empty());
  CHECK(N(W("a b")) == 2);
  CHECK(N(W("a a'")) == 0);
  CHECK(N(W("a b a' b'")) == 2);
  CHECK(norm_bruteforce(W("a b a' b'"), ab()) == 2);
  CHECK(norm_bruteforce(W("a a'"), ab()) == 0);

  auto zero_a = testing::weights("a=0,b=1");
  CHECK(N(W("a b a", zero_a), zero_a) == 1);
  CHECK(N(W("b", zero_a), zero_a) == 1);

  auto scaled = testing::weights("a=3/2,b=1");
  CHECK(N(W("a^4", scaled), scaled) == 6);
}

TEST_CASE("commutator certificate") {
  Word w    = W("a b a' b'");
  auto cert = cancellation_norm(w, ab());
  CHECK(cert.removed == std::vector<std::size_t>{1, 3});
  CHECK(verify_certificate(cert, w, ab()));

  // Removing the a-letters instead: a b a' b' = (a) (b a' b').
  auto other = certificate_from_removal(w, ab(), {0, 2});
  CHECK(other.value == 2);
  auto factors = factor_into_conjugates(other, w, ab());
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].conjugator.empty());
  CHECK(factors[0].letter == pos(0));
  CHECK(factors[1].conjugator == W("b"));
  CHECK(factors[1].letter == neg(0));
  CHECK(reduce(product_of(factors)) == w);

  auto single = factor_into_conjugates(cancellation_norm(W("a"), ab()), W("a"), ab());
  REQUIRE(single.size() == 1);
  CHECK(single[0].conjugator.empty());

  CHECK_THROWS_AS(certificate_from_removal(w, ab(), {0}), InvalidCertificate);
  CHECK_THROWS_AS(certificate_from_removal(w, ab(), {0, 0, 2}), InvalidCertificate);
}

TEST_CASE("psi_d scales the norm") {
  CHECK(psi_d(W("a b'"), 3) == W("a^3 b^-3"));
  CHECK(N(psi_d(W("a b"), 3)) == 6);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_weights(rng, true);
    Word w = oracle::random_word(rng, 2, 8);
    for (std::int64_t d = 1; d <= 5; ++d) {
      CHECK(N(psi_d(w, d), a) == Rational(d) * N(w, a));
    }
  }
}

TEST_CASE("dynamic programme matches exhaustive search") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 400; ++trial) {
    auto a = random_weights(rng, true);
    Word w = oracle::random_word(rng, 2, 12);
    auto n = N(w, a);
    CHECK(n == oracle::norm(w, a));
    CHECK(n == norm_bruteforce(w, a));
    NormOptions serial;
    serial.kernel = Kernel::serial;
    CHECK(cancellation_norm(w, a, serial).value == n);
  }
  CHECK_THROWS_AS(norm_bruteforce(Word::power_of(0, 15), ab()), TooLong);
}

TEST_CASE("norm axioms on random words") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_weights(rng, trial % 2 == 0);
    Word u = oracle::random_word(rng, 2, 12), v = oracle::random_word(rng, 2, 12);
    Word h = oracle::random_word(rng, 2, 6);
    CHECK(N(h * u * h.inverse(), a) == N(u, a));
    CHECK(N(u.inverse(), a) == N(u, a));
    CHECK(N(u * v, a) <= N(u, a) + N(v, a));
    CHECK(N(u, a) == N(sharp_project(u, a), a));

    auto cert = cancellation_norm(u, a);
    CHECK(verify_certificate(cert, u, a));
    auto factors = factor_into_conjugates(cert, u, a);
    CHECK(factors.size() == cert.removed.size());
    CHECK(reduce(product_of(factors)) == reduce(u));
  }
}

TEST_CASE("telescoping bound") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    auto     a = random_weights(rng, false);
    Word     g, h;
    Rational sum = 0;
    for (int i = 0; i < 3; ++i) {
      Word gi = oracle::random_word(rng, 2, 4), hi = oracle::random_word(rng, 2, 4);
      g.append(gi);
      h.append(hi);
      sum += N(gi.inverse() * hi, a);
    }
    CHECK(N(g.inverse() * h, a) <= sum);
  }
}

TEST_CASE("length cap") {
  NormOptions small;
  small.max_len = 4;
  CHECK_THROWS_AS(cancellation_norm(W("a b a b a"), ab(), small), BudgetExceeded);
  // The cap applies after reduction.
  CHECK(cancellation_norm(W("a b a b b' a' b' a' a"), ab(), small).value == 1);
  CHECK_THROWS_AS(cancellation_norm(Word{pos(2)}, ab()), UnknownGenerator);
}

TEST_CASE("weighted length") {
  CHECK(weighted_length(W("a b b"), testing::weights("a=2,b=1/2")) == 3);
}
