#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "conecalc/alphabet.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  enum class Kernel { serial, parallel };

  struct NormOptions {
    std::size_t max_len = 3000;  // cap on the reduced length fed to the DP
    Kernel      kernel  = Kernel::parallel;
  };

  // Proof that ||w|| <= value: deleting `removed` (positions in the input
  // word) leaves a word whose free reduction cancels exactly the position
  // pairs in `cancelled`.  Certificates from cancellation_norm are optimal.
  struct NormCertificate {
    Rational                                         value;
    std::vector<std::size_t>                         removed;
    std::vector<std::pair<std::size_t, std::size_t>> cancelled;
  };

  // The conjugation-invariant word norm of F(A; mu), computed as a
  // minimum-weight cancellation sequence on the reduced form of w.
  // Throws UnknownGenerator, BudgetExceeded.
  NormCertificate cancellation_norm(Word const&             w,
                                    WeightedAlphabet const& alphabet,
                                    NormOptions const&      options = {});

  // Builds a certificate for an arbitrary removal set.  Throws
  // InvalidCertificate if the residual is non-trivial or positions repeat.
  NormCertificate certificate_from_removal(Word const&              w,
                                           WeightedAlphabet const&  alphabet,
                                           std::vector<std::size_t> removed);

  bool verify_certificate(NormCertificate const&  cert,
                          Word const&             w,
                          WeightedAlphabet const& alphabet);

  inline constexpr std::size_t default_bruteforce_limit = 14;

  // Minimum over all 2^|w| removal subsets.  Throws TooLong above `limit`.
  Rational norm_bruteforce(Word const&             w,
                           WeightedAlphabet const& alphabet,
                           std::size_t             limit
                           = default_bruteforce_limit);

  // The endomorphism a -> a^d, followed by reduction.
  Word psi_d(Word const& w, std::int64_t d);

  struct Conjugate {
    Word   conjugator;  // the factor is conjugator * letter * conjugator^{-1}
    Letter letter;
  };

  // Writes w as a product of conjugates of the removed letters, in order.
  // Throws InvalidCertificate if cert does not verify against w.
  std::vector<Conjugate> factor_into_conjugates(NormCertificate const&  cert,
                                                Word const&             w,
                                                WeightedAlphabet const& alphabet);

  Word product_of(std::vector<Conjugate> const& factors);

  // Sum of mu over the letters of w (the word length for mu = 1).
  Rational weighted_length(Word const& w, WeightedAlphabet const& alphabet);

}  // namespace conecalc
