#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "conecalc/cone.hpp"
#include "conecalc/error.hpp"
#include "conecalc/norm.hpp"

using namespace conecalc;
using testing::ab;
using testing::Q;
using testing::W;

namespace {
  ConeElementDesc free_desc(std::vector<std::pair<char const*, char const*>> syllables) {
    std::vector<std::pair<Word, Rational>> s;
    for (auto [w, r] : syllables) {
      s.emplace_back(W(w), Q(r));
    }
    return ConeElementDesc::free_group(ab(), s);
  }

  ConeNormBracket bracket_of(ConeElementDesc const& d, std::vector<Rational> const& grid) {
    auto canon = cone_canonicalize(d);
    return cone_norm_bracket(canon, grid, tau_brackets_for(canon));
  }
}  // namespace

TEST_CASE("Heisenberg group law") {
  HeisElement x{1, 0, 0}, y{0, 1, 0};
  CHECK(x * y == HeisElement{1, 1, 1});
  CHECK(y * x == HeisElement{1, 1, 0});
  CHECK(x * y * inverse(x) * inverse(y) == HeisElement{0, 0, 1});
  HeisElement g{2, -3, 5};
  CHECK(g * inverse(g) == HeisElement{});
  HeisElement acc;
  for (int n = 0; n <= 6; ++n) {
    CHECK(power(g, n) == acc);
    CHECK(power(g, n) == HeisElement{2 * n, -3 * n, 5 * n + 2 * -3 * n * (n - 1) / 2});
    CHECK(power(g, -n) == inverse(acc));
    acc = acc * g;
  }
  CHECK(heisenberg_image(W("a b a' b'")) == HeisElement{0, 0, 1});
  CHECK(heisenberg_image(W("a b^3 a' b^-3")) == HeisElement{0, 0, 3});
}

TEST_CASE("canonicalization") {
  auto c = cone_canonicalize(free_desc({{"a b a b", "1/2"}}));
  CHECK(c == cone_canonicalize(free_desc({{"a b", "1"}})));
  REQUIRE(c.word().size() == 1);
  CHECK(c.word()[0].exponent == 1);
  CHECK(std::get<Word>(c.generators()[c.word()[0].gen]) == W("a b"));

  c = cone_canonicalize(free_desc({{"b a b'", "3/2"}}));
  CHECK(c == cone_canonicalize(free_desc({{"a", "3/2"}})));
  CHECK(cone_canonicalize(free_desc({{"a a'", "5"}})).word().empty());
  // Inverse roots flip the exponent and adjacent equal thetas merge.
  c = cone_canonicalize(free_desc({{"a'", "1/2"}, {"a a", "1"}}));
  REQUIRE(c.word().size() == 1);
  CHECK(c.word()[0].exponent == Rational(3, 2));
  CHECK(is_canonical(c));
  CHECK_FALSE(is_canonical(free_desc({{"a a", "1"}})));

  auto zn = ConeElementDesc::zn(2, {{{1, 0}, Q("1")}});
  CHECK_THROWS_AS(cone_canonicalize(zn), UnsupportedBase);
}

TEST_CASE("curves and samples") {
  auto a1 = free_desc({{"a", "1"}});
  std::vector<Rational> ten = {10};
  auto s = cone_curve_sample(a1, ten);
  REQUIRE(s.size() == 1);
  CHECK(s[0].value == 1);
  CHECK(curve_word(free_desc({{"a", "3/2"}, {"b", "-1"}}), 4) == W("a^6 b^-4"));
  CHECK(default_cone_grid(free_desc({{"a", "1/3"}, {"b", "1/2"}}), 3)
        == std::vector<Rational>{6, 12, 24});

  // theta = [a, b]: the curve is ||theta^trunc(t)|| / t.
  auto comm = free_desc({{"a b a' b'", "1"}});
  std::vector<Rational> grid = {1, 2, 3, 4, 5, Q("11/2")};
  for (auto const& sample : cone_curve_sample(comm, grid)) {
    Word power = W("a b a' b'").power(to_int64(trunc_toward_zero(sample.t)));
    CHECK(sample.value == cancellation_norm(power, ab()).value / sample.t);
  }
  for (auto const& sample : cone_curve_sample(comm, std::vector<Rational>{1, 2, 3})) {
    Word power = W("a b a' b'").power(to_int64(trunc_toward_zero(sample.t)));
    CHECK(sample.value == oracle::norm(power, ab()) / sample.t);
  }

  NormOptions small;
  small.max_len = 8;
  CHECK_THROWS_AS(cone_curve_sample(a1, std::vector<Rational>{9}, small), BudgetExceeded);
  auto heis = ConeElementDesc::heisenberg({{{1, 0, 0}, Q("1")}});
  CHECK_THROWS_AS(cone_curve_sample(heis, ten), UnsupportedBase);
}

TEST_CASE("single-syllable brackets") {
  auto a2 = free_desc({{"a", "2"}});
  std::vector<Rational> whole = {1, 2, 3, 5, 8, 13};
  for (auto const& s : cone_curve_sample(a2, whole)) {
    CHECK(s.value == 2 * trunc_toward_zero(s.t) / s.t * 1);
  }
  // Off the integers the sample is |trunc(2t)| / t.
  std::vector<Rational> grid = {1, Q("4/3"), Q("3/2"), Q("7/4"), Q("5/2"), 8};
  for (auto const& s : cone_curve_sample(a2, grid)) {
    CHECK(s.value == trunc_toward_zero(2 * s.t) / s.t);
  }
  auto b = bracket_of(a2, grid);
  CHECK(b.lower == 2);
  CHECK(b.upper == 2);

  b = bracket_of(free_desc({}), {});
  CHECK(b.lower == 0);
  CHECK(b.upper == 0);

  auto two = free_desc({{"a", "1"}, {"b", "1"}});
  b        = bracket_of(two, default_cone_grid(two));
  CHECK(b.upper == 2);
  CHECK(b.lower <= b.upper);
  for (auto const& s : b.samples) {
    CHECK(s.value == 2);
  }
}

TEST_CASE("brackets are certified") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::pair<Word, Rational>> syl;
    for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) {
      Word g = oracle::random_word(rng, 2, 3);
      syl.emplace_back(g, Rational(static_cast<std::int64_t>(rng() % 7) - 3,
                                   1 + static_cast<std::int64_t>(rng() % 2)));
    }
    auto canon = cone_canonicalize(ConeElementDesc::free_group(ab(), syl));
    auto tau   = tau_brackets_for(canon);
    for (auto const& [theta, br] : tau) {
      CHECK(br.lower <= br.upper);
    }
    auto b = cone_norm_bracket(canon, default_cone_grid(canon, 3), tau);
    CHECK(b.lower <= b.upper);
    CHECK(b.lower >= 0);
  }
  // With theta = a every sample lies under the upper bound.
  auto a = cone_canonicalize(free_desc({{"a", "7/3"}}));
  auto b = cone_norm_bracket(a, std::vector<Rational>{1, 2, 3, 5, 9}, tau_brackets_for(a));
  for (auto const& s : b.samples) {
    CHECK(s.value <= b.upper);
  }
  TauBrackets broken = {{W("a"), {Rational(2), Rational(1)}}};
  CHECK_THROWS_AS(cone_norm_bracket(a, {}, broken), InvalidBracket);
  CHECK_THROWS_AS(cone_norm_bracket(a, {}, TauBrackets{}), PreconditionViolated);
  CHECK_THROWS_AS(cone_norm_bracket(free_desc({{"a a", "1"}}), {}, tau_brackets_for(a)),
                  PreconditionViolated);
}

TEST_CASE("abelian bases") {
  auto z2 = ConeElementDesc::zn(2, {{{1, 0}, Q("3/2")}, {{0, 1}, Q("-2")}});
  CHECK(abelian_cone_norm(z2) == Rational(7, 2));
  for (auto const& s : cone_curve_sample(z2, std::vector<Rational>{2, 4, 6, 8, 100})) {
    CHECK(s.value == Rational(7, 2));
  }
  CHECK(abelian_cone_norm(ConeElementDesc::zn(2, {})) == 0);
  CHECK(abelian_cone_norm(ConeElementDesc::zn(2, {{{3, -1}, Q("0")}})) == 0);

  for (std::int64_t drift : {0, 1, -7, 1000}) {
    auto h = ConeElementDesc::heisenberg({{{1, 0, drift}, Q("3/2")}, {{0, 1, -drift}, Q("-2")}});
    CHECK(abelian_cone_norm(h) == Rational(7, 2));
    auto b = cone_norm_bracket(h, {}, {});
    CHECK(b.lower == Rational(7, 2));
    CHECK(b.upper == Rational(7, 2));
  }
  CHECK_THROWS_AS(abelian_cone_norm(free_desc({{"a", "1"}})), UnsupportedBase);
}

TEST_CASE("product bases add") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<ZnVector, Rational>> both, left, right;
    for (int i = 0; i < 3; ++i) {
      ZnVector u = {static_cast<std::int64_t>(rng() % 7) - 3};
      ZnVector v = {static_cast<std::int64_t>(rng() % 7) - 3,
                    static_cast<std::int64_t>(rng() % 7) - 3};
      Rational r(static_cast<std::int64_t>(rng() % 9) - 4, 1 + static_cast<std::int64_t>(rng() % 3));
      both.emplace_back(ZnVector{u[0], v[0], v[1]}, r);
      left.emplace_back(u, r);
      right.emplace_back(v, r);
    }
    CHECK(abelian_cone_norm(ConeElementDesc::zn(3, both))
          == abelian_cone_norm(ConeElementDesc::zn(1, left))
                 + abelian_cone_norm(ConeElementDesc::zn(2, right)));
  }
}

TEST_CASE("canonical forms describe nearby curves") {
  auto d     = free_desc({{"b a b a b' b'", "3/2"}, {"b a' b'", "1/2"}});
  auto canon = cone_canonicalize(d);
  Rational previous = -1;
  for (auto const& t : default_cone_grid(d, 4)) {
    Word     diff = curve_word(d, t).inverse() * curve_word(canon, t);
    Rational gap  = cancellation_norm(diff, ab()).value / t;
    if (previous >= 0) {
      CHECK(gap <= previous);
    }
    previous = gap;
  }
  CHECK(previous <= Rational(1, 2));
}

TEST_CASE("description grammar") {
  auto d = parse_cone_description("base=free alphabet=a,b; word= [aba'b'](1/2) [ab](2)");
  CHECK(d.kind() == BaseKind::free_group);
  REQUIRE(d.word().size() == 2);
  CHECK(d.word()[0].exponent == Rational(1, 2));
  CHECK(std::get<Word>(d.generators()[d.word()[1].gen]) == W("a b"));
  CHECK(parse_cone_description(to_string(d)) == d);

  auto z = parse_cone_description("base=zn rank=2; word= (1,0)(3/2) (0,1)(-2)");
  CHECK(abelian_cone_norm(z) == Rational(7, 2));
  auto h = parse_cone_description("base=heis; word= (1,0,0)(3/2) (0,1,7)(-2)");
  CHECK(abelian_cone_norm(h) == Rational(7, 2));
  auto weighted = parse_cone_description("base=free alphabet=a=2,b; word= [a](1)");
  CHECK(weighted.alphabet().weight(0) == 2);

  CHECK_THROWS_AS(parse_cone_description("base=torus; word= [a](1)"), ParseError);
  CHECK_THROWS_AS(parse_cone_description("base=zn rank=2; word= (1,0,0)(1)"), ParseError);
  CHECK_THROWS_AS(parse_cone_description("base=free alphabet=a; word= [a](1/0)"), ParseError);
  try {
    parse_cone_description("base=zn rank=2 colour=red");
    FAIL("expected an error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 16);
  }
}
