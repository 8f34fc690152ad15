#include "conecalc/real_word.hpp"

#include <algorithm>
#include <exception>

#include "conecalc/error.hpp"

namespace conecalc {

  RealWord RealWord::from_word(Word const& w) {
    RealWord out;
    for (auto l : w) {
      out.push_back({l.gen(), Rational(l.sign())});
    }
    return out;
  }

  RealWord RealWord::inverse() const {
    RealWord out;
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it) {
      out.push_back({it->gen, -it->exponent});
    }
    return out;
  }

  RealWord operator*(RealWord lhs, RealWord const& rhs) {
    for (auto const& s : rhs) {
      lhs.push_back(s);
    }
    return lhs;
  }

  RealWord normalize(RealWord const& w) {
    std::vector<Syllable> stack;
    for (auto const& s : w) {
      if (s.exponent == 0) {
        continue;
      }
      if (!stack.empty() && stack.back().gen == s.gen) {
        stack.back().exponent += s.exponent;
        if (stack.back().exponent == 0) {
          stack.pop_back();
        }
      } else {
        stack.push_back(s);
      }
    }
    return RealWord(std::move(stack));
  }

  bool is_trivial(RealWord const& w) {
    return normalize(w).empty();
  }

  RealWord psi_t(RealWord const& w, Rational const& t) {
    RealWord out;
    for (auto const& s : w) {
      out.push_back({s.gen, s.exponent * t});
    }
    return normalize(out);
  }

  Integer truncated_length(RealWord const& w, Rational const& t) {
    Integer total = 0;
    for (auto const& s : w) {
      total += boost::multiprecision::abs(trunc_toward_zero(t * s.exponent));
    }
    return total;
  }

  namespace {
    void require_positive(Rational const& t) {
      if (t <= 0) {
        throw PreconditionViolated("truncation parameter must be positive, got "
                                   + to_compact_string(t));
      }
    }

    // truncate(w, t) with the index of the owning syllable per letter.
    Word truncate_traced(RealWord const&           w,
                         Rational const&           t,
                         std::vector<std::size_t>& owner) {
      Word out;
      owner.clear();
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::int64_t const k = to_int64(trunc_toward_zero(t * w[i].exponent));
        out.append(Word::power_of(w[i].gen, k));
        owner.insert(owner.end(), static_cast<std::size_t>(k < 0 ? -k : k), i);
      }
      return out;
    }
  }  // namespace

  Word truncate(RealWord const& w, Rational const& t) {
    require_positive(t);
    std::vector<std::size_t> owner;
    return truncate_traced(w, t, owner);
  }

  Word to_word(RealWord const& w) {
    Word out;
    for (auto const& s : w) {
      if (denominator(s.exponent) != 1) {
        throw PreconditionViolated("exponent " + to_compact_string(s.exponent)
                                   + " is not an integer");
      }
      out.append(Word::power_of(s.gen, to_int64(numerator(s.exponent))));
    }
    return out;
  }

  RealNormCertificate rational_norm_exact(RealWord const&         w,
                                          WeightedAlphabet const& alphabet,
                                          NormOptions const&      options) {
    for (auto const& s : w) {
      if (s.gen >= alphabet.size()) {
        throw UnknownGenerator("generator index " + std::to_string(s.gen)
                               + " is not in the alphabet");
      }
    }
    std::vector<Rational> exps;
    for (auto const& s : w) {
      exps.push_back(s.exponent);
    }
    RealNormCertificate out;
    out.scale = lcm_of_denominators(exps);
    Rational const m(out.scale);
    if (truncated_length(w, m) > Integer(options.max_len)) {
      throw BudgetExceeded("truncated word at t = " + out.scale.str()
                           + " exceeds the cap of "
                           + std::to_string(options.max_len) + " letters");
    }
    std::vector<std::size_t> owner;
    Word const               scaled = truncate_traced(w, m, owner);
    out.integer_cert               = cancellation_norm(scaled, alphabet, options);
    out.value                      = out.integer_cert.value / m;

    std::vector<Integer> counts(w.size(), 0);
    for (auto p : out.integer_cert.removed) {
      counts[owner[p]] += 1;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rational s = Rational(counts[i]) / m;
      out.witness.amounts.push_back(w[i].exponent < 0 ? Rational(-s) : s);
    }
    return out;
  }

  Rational witness_weight(RealWord const&                w,
                          RealCancellationWitness const& witness,
                          WeightedAlphabet const&        alphabet) {
    Rational total = 0;
    for (std::size_t i = 0; i < w.size() && i < witness.amounts.size(); ++i) {
      total += alphabet.weight(w[i].gen) * abs(witness.amounts[i]);
    }
    return total;
  }

  bool verify_witness(RealWord const&                w,
                      RealCancellationWitness const& witness) {
    if (witness.amounts.size() != w.size()) {
      return false;
    }
    RealWord residual;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rational const& r = w[i].exponent;
      Rational const& s = witness.amounts[i];
      bool const inside = r >= 0 ? (s >= 0 && s <= r) : (s <= 0 && s >= r);
      if (!inside) {
        return false;
      }
      residual.push_back({w[i].gen, r - s});
    }
    return is_trivial(residual);
  }

  LimitEstimate norm_limit_estimate(RealWord const&           w,
                                    WeightedAlphabet const&   alphabet,
                                    std::span<Rational const> t_grid,
                                    NormOptions const&        options) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (t_grid[i] <= 0 || (i > 0 && t_grid[i] <= t_grid[i - 1])) {
        throw PreconditionViolated("t grid must be positive and increasing");
      }
    }
    if (t_grid.empty()) {
      throw PreconditionViolated("t grid is empty");
    }
    std::size_t const        n = t_grid.size();
    std::vector<Rational>    values(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      auto const i = static_cast<std::size_t>(ii);
      try {
        Rational const& t = t_grid[i];
        if (truncated_length(w, t) > Integer(options.max_len)) {
          throw BudgetExceeded("truncated word at t = " + to_compact_string(t)
                               + " exceeds the letter cap");
        }
        values[i] = cancellation_norm(truncate(w, t), alphabet, options).value / t;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto const& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
    LimitEstimate out;
    for (std::size_t i = 0; i < n; ++i) {
      out.samples.push_back({t_grid[i], values[i]});
    }
    out.estimate           = values.back();
    std::size_t const from = n >= 3 ? n - 3 : 0;
    auto [lo, hi] = std::minmax_element(values.begin() + from, values.end());
    out.spread    = *hi - *lo;
    return out;
  }

  Rational approximation_error_bound(RealWord const&         w,
                                     RealWord const&         v,
                                     WeightedAlphabet const& alphabet) {
    if (w.size() != v.size()) {
      throw SkeletonMismatch("words have different numbers of syllables");
    }
    Rational total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].gen != v[i].gen) {
        throw SkeletonMismatch("syllable " + std::to_string(i)
                               + " uses different generators");
      }
      total += alphabet.weight(w[i].gen) * abs(w[i].exponent - v[i].exponent);
    }
    return total;
  }

  std::vector<RealWord>
  geodesic_sample(RealWord const&                w,
                  RealCancellationWitness const& witness,
                  std::span<Rational const>      t_samples) {
    if (!verify_witness(w, witness)) {
      throw InvalidWitness("witness does not cancel the word");
    }
    std::vector<RealWord> out;
    for (auto const& t : t_samples) {
      if (t < 0 || t > 1) {
        throw PreconditionViolated("geodesic parameter outside [0, 1]: "
                                   + to_compact_string(t));
      }
      RealWord point;
      for (std::size_t i = 0; i < w.size(); ++i) {
        point.push_back({w[i].gen, w[i].exponent - witness.amounts[i] * t});
      }
      out.push_back(normalize(point));
    }
    return out;
  }

  std::string to_string(RealWord const& w, WeightedAlphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& s : w) {
      if (!out.empty()) {
        out += ' ';
      }
      out += alphabet.name(s.gen) + "(" + to_compact_string(s.exponent) + ")";
    }
    return out;
  }

}  // namespace conecalc
