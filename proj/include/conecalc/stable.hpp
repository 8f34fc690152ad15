#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/alphabet.hpp"
#include "conecalc/norm.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  // Norm oracle used for the powers g^n; lets callers interpose a cache.
  using NormFunction = std::function<Rational(Word const&)>;

  // Bracket lower <= tau(g) <= upper for the stable length
  // tau(g) = lim ||g^n|| / n = inf ||g^n|| / n.
  struct StableLengthEstimate {
    std::vector<std::pair<std::int64_t, Rational>> upper_sequence;
    Rational                                       upper;
    Rational                                       lower;
    std::string                                    method;
  };

  // {1, 2, 4, 8, 16} restricted to powers whose cyclic core fits the cap.
  std::vector<std::int64_t> default_power_schedule(Word const& g,
                                                   std::size_t max_len);

  // Upper bound from exact power norms along the schedule; lower bound from
  // the weighted L1 norm of the abelianization.  Throws BudgetExceeded when a
  // scheduled power is longer than options.max_len, PreconditionViolated for
  // a schedule that is empty, non-increasing or below 1.
  StableLengthEstimate stable_length_bounds(Word const&                      g,
                                            WeightedAlphabet const&          alphabet,
                                            std::vector<std::int64_t> const& schedule,
                                            NormOptions const& options = {},
                                            NormFunction const& norm = {});

  // The lower bound by itself: sum_a mu(a) |exponent sum of a in g|.
  Rational abelianization_lower_bound(Word const&             g,
                                      WeightedAlphabet const& alphabet);

  // kappa = |theta| / (9 ell + |theta| (1 + |theta|) / tau)
  Rational kappa(std::size_t theta_length, std::size_t ell, Rational const& tau);

  std::size_t lcm_of_lengths(std::vector<ConjugacyClassRep> const& thetas);

  // min_i |n_i| kappa_i with tau replaced by certified lower bounds.  Any
  // product theta_1^{n_1} ... theta_p^{n_p} has norm strictly above it.
  // Throws PreconditionViolated when |n_i| <= 6 ell / |theta_i|, adjacent
  // thetas coincide, a theta is not canonical or a lower bound is not > 0.
  Rational product_lower_bound(std::vector<ConjugacyClassRep> const& thetas,
                               std::vector<std::int64_t> const&      exps,
                               std::vector<Rational> const&          tau_lower);

}  // namespace conecalc
