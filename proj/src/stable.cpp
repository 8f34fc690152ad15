#include "conecalc/stable.hpp"

#include <cstdlib>
#include <numeric>

#include "conecalc/error.hpp"

namespace conecalc {

  std::vector<std::int64_t> default_power_schedule(Word const& g,
                                                   std::size_t max_len) {
    std::size_t const         len = cyclically_reduce(g).core.size();
    std::vector<std::int64_t> out;
    for (std::int64_t n : {1, 2, 4, 8, 16}) {
      if (static_cast<std::size_t>(n) * len <= max_len) {
        out.push_back(n);
      }
    }
    return out;
  }

  Rational abelianization_lower_bound(Word const&             g,
                                      WeightedAlphabet const& alphabet) {
    check_letters(g, alphabet);
    auto const ab    = abelianize(g, alphabet.size());
    Rational   total = 0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
      total += alphabet.weight(i) * Rational(std::llabs(ab[i]));
    }
    return total;
  }

  StableLengthEstimate stable_length_bounds(Word const&                      g,
                                            WeightedAlphabet const&          alphabet,
                                            std::vector<std::int64_t> const& schedule,
                                            NormOptions const&  options,
                                            NormFunction const& norm) {
    check_letters(g, alphabet);
    if (schedule.empty()) {
      throw PreconditionViolated("power schedule is empty");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1])) {
        throw PreconditionViolated("power schedule must be increasing and >= 1");
      }
    }
    // ||g^n|| = ||core^n|| by conjugation invariance.
    Word const core = cyclically_reduce(g).core;
    for (auto n : schedule) {
      if (static_cast<std::size_t>(n) * core.size() > options.max_len) {
        throw BudgetExceeded("power " + std::to_string(n) + " has "
                             + std::to_string(n * core.size())
                             + " letters, above the cap of "
                             + std::to_string(options.max_len));
      }
    }

    StableLengthEstimate out;
    out.method = "abelianization";
    out.lower  = abelianization_lower_bound(g, alphabet);
    for (auto n : schedule) {
      Word const power = core.power(n);
      Rational   value = norm ? norm(power)
                              : cancellation_norm(power, alphabet, options).value;
      Rational ratio = value / Rational(n);
      if (out.upper_sequence.empty() || ratio < out.upper) {
        out.upper = ratio;
      }
      out.upper_sequence.emplace_back(n, ratio);
    }
    return out;
  }

  Rational kappa(std::size_t theta_length, std::size_t ell, Rational const& tau) {
    Rational const len(theta_length);
    return len / (Rational(9 * ell) + len * (1 + len) / tau);
  }

  std::size_t lcm_of_lengths(std::vector<ConjugacyClassRep> const& thetas) {
    std::size_t ell = 1;
    for (auto const& t : thetas) {
      ell = std::lcm(ell, t.length());
    }
    return ell;
  }

  Rational product_lower_bound(std::vector<ConjugacyClassRep> const& thetas,
                               std::vector<std::int64_t> const&      exps,
                               std::vector<Rational> const&          tau_lower) {
    if (thetas.empty() || thetas.size() != exps.size()
        || thetas.size() != tau_lower.size()) {
      throw PreconditionViolated("thetas, exponents and tau bounds must be "
                                 "non-empty and of equal length");
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      Word const& t = thetas[i].theta();
      if (t.empty() || ConjugacyClassRep::of(t) != thetas[i]) {
        throw PreconditionViolated("theta " + std::to_string(i)
                                   + " is not a canonical representative");
      }
      if (i + 1 < thetas.size() && thetas[i] == thetas[i + 1]) {
        throw PreconditionViolated("adjacent thetas " + std::to_string(i)
                                   + " and " + std::to_string(i + 1)
                                   + " coincide");
      }
      if (tau_lower[i] <= 0) {
        throw PreconditionViolated("tau lower bound " + std::to_string(i)
                                   + " is not positive");
      }
    }
    std::size_t const ell = lcm_of_lengths(thetas);
    Rational          best;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      std::int64_t const n   = std::llabs(exps[i]);
      std::size_t const  len = thetas[i].length();
      if (static_cast<std::size_t>(n) * len <= 6 * ell) {
        throw PreconditionViolated("|n_" + std::to_string(i)
                                   + "| must exceed 6 ell / |theta|");
      }
      Rational bound = Rational(n) * kappa(len, ell, tau_lower[i]);
      if (i == 0 || bound < best) {
        best = bound;
      }
    }
    return best;
  }

}  // namespace conecalc
