#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conecalc {

  // Randomized and exhaustive property checks of the algebraic identities the
  // library relies on.  Each trial draws from its own generator seeded by
  // (seed, trial index), so results are independent of thread scheduling.
  struct LemmaCheck {
    std::string   name;
    std::uint64_t trials   = 0;
    std::uint64_t failures = 0;
    std::string   counterexample;  // lowest failing trial, if any
    double        seconds = 0;

    bool passed() const noexcept {
      return failures == 0 && trials > 0;
    }
  };

  struct LemmaOptions {
    std::uint64_t seed  = 20240531;
    double        scale = 1.0;  // multiplies every suite's trial count
  };

  std::vector<std::string> lemma_suite_names();

  // Throws PreconditionViolated for an unknown suite name.
  LemmaCheck run_lemma_suite(std::string const& name, LemmaOptions const& options = {});

  std::vector<LemmaCheck> run_all_lemma_suites(LemmaOptions const& options = {});

}  // namespace conecalc
