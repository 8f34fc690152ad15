#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/alphabet.hpp"
#include "conecalc/norm.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  // The symbol a(r) of the rational free group F_Q(A).
  struct Syllable {
    std::uint32_t gen = 0;
    Rational      exponent;

    bool operator==(Syllable const&) const = default;
  };

  // A finite word in the symbols a(r).  Only `normalize` yields the unique
  // reduced form (no zero exponents, no adjacent equal generators).
  class RealWord {
   public:
    RealWord() = default;
    RealWord(std::initializer_list<Syllable> s) : syllables_(s) {}
    explicit RealWord(std::vector<Syllable> s) : syllables_(std::move(s)) {}

    // Integer-exponent word with one syllable per letter.
    static RealWord from_word(Word const& w);

    std::size_t size() const noexcept {
      return syllables_.size();
    }
    bool empty() const noexcept {
      return syllables_.empty();
    }
    Syllable const& operator[](std::size_t i) const {
      return syllables_[i];
    }
    std::span<Syllable const> syllables() const noexcept {
      return syllables_;
    }
    auto begin() const noexcept {
      return syllables_.begin();
    }
    auto end() const noexcept {
      return syllables_.end();
    }

    void push_back(Syllable s) {
      syllables_.push_back(std::move(s));
    }

    RealWord inverse() const;

    bool operator==(RealWord const&) const = default;

   private:
    std::vector<Syllable> syllables_;
  };

  RealWord operator*(RealWord lhs, RealWord const& rhs);

  RealWord normalize(RealWord const& w);
  bool     is_trivial(RealWord const& w);

  // a(r) -> a(t r), normalized.
  RealWord psi_t(RealWord const& w, Rational const& t);

  // Sum over syllables of |trunc(t r_i)|: the length of truncate(w, t).
  Integer truncated_length(RealWord const& w, Rational const& t);

  // a_1(r_1) ... a_k(r_k) -> a_1^{trunc(t r_1)} ... a_k^{trunc(t r_k)},
  // unreduced.  Throws PreconditionViolated unless t > 0.
  Word truncate(RealWord const& w, Rational const& t);

  // Integer exponents only; throws PreconditionViolated otherwise.
  Word to_word(RealWord const& w);

  // amounts[i] lies between 0 and r_i; a_1(r_1 - s_1) ... a_n(r_n - s_n) is
  // trivial.
  struct RealCancellationWitness {
    std::vector<Rational> amounts;
  };

  struct RealNormCertificate {
    Rational                value;
    RealCancellationWitness witness;
    Integer                 scale;        // m, lcm of exponent denominators
    NormCertificate         integer_cert;  // for truncate(w, m)
  };

  // Exact norm on F_Q(A; mu): (1/m) ||truncate(w, m)||.  Throws
  // BudgetExceeded when the truncated word is longer than options.max_len.
  RealNormCertificate rational_norm_exact(RealWord const&         w,
                                          WeightedAlphabet const& alphabet,
                                          NormOptions const&      options = {});

  // Sum of mu(a_i) |s_i|.
  Rational witness_weight(RealWord const&                w,
                          RealCancellationWitness const& witness,
                          WeightedAlphabet const&        alphabet);

  bool verify_witness(RealWord const&                w,
                      RealCancellationWitness const& witness);

  struct LimitSample {
    Rational t;
    Rational value;  // (1/t) ||truncate(w, t)||
  };

  struct LimitEstimate {
    std::vector<LimitSample> samples;
    Rational                 estimate;  // last sample
    Rational                 spread;    // max - min over the last three
  };

  // Exact samples of t -> (1/t)||w<t>||.  Samples are independent and run on
  // the OpenMP pool; the result does not depend on scheduling.
  LimitEstimate norm_limit_estimate(RealWord const&         w,
                                    WeightedAlphabet const& alphabet,
                                    std::span<Rational const> t_grid,
                                    NormOptions const&      options = {});

  // Sum of mu(a_i) |r_i - q_i| for words sharing a generator skeleton.
  // Throws SkeletonMismatch.
  Rational approximation_error_bound(RealWord const&         w,
                                     RealWord const&         v,
                                     WeightedAlphabet const& alphabet);

  // alpha(t) = a_1(r_1 - s_1 t) ... a_n(r_n - s_n t), normalized.  Throws
  // InvalidWitness, and PreconditionViolated for t outside [0, 1].
  std::vector<RealWord>
  geodesic_sample(RealWord const&                w,
                  RealCancellationWitness const& witness,
                  std::span<Rational const>      t_samples);

  std::string to_string(RealWord const& w, WeightedAlphabet const& alphabet);

}  // namespace conecalc
