#include <algorithm>

#include "doctest.h"

#include "conecalc/error.hpp"
#include "conecalc/lemmas.hpp"

using namespace conecalc;

TEST_CASE("every property suite passes at reduced size") {
  LemmaOptions opts;
  opts.scale = 0.2;
  for (auto const& name : lemma_suite_names()) {
    CAPTURE(name);
    auto check = run_lemma_suite(name, opts);
    CHECK(check.trials > 0);
    CHECK_MESSAGE(check.passed(), check.counterexample);
  }
}

TEST_CASE("suites are deterministic for a seed") {
  LemmaOptions opts;
  opts.scale = 0.1;
  auto a     = run_lemma_suite("oracle-equivalence", opts);
  auto b     = run_lemma_suite("oracle-equivalence", opts);
  CHECK(a.trials == b.trials);
  CHECK(a.failures == b.failures);
}

TEST_CASE("suite catalogue") {
  auto names = lemma_suite_names();
  CHECK(std::find(names.begin(), names.end(), "collision-exhaustive") != names.end());
  CHECK(names.size() >= 20);
  CHECK_THROWS_AS(run_lemma_suite("nope", {}), PreconditionViolated);
}
