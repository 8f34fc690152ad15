#include "conecalc/norm.hpp"

#include <algorithm>
#include <limits>

#include "conecalc/error.hpp"
#include "conecalc/kernels.hpp"

namespace conecalc {

  namespace {
    struct TracedReduction {
      std::vector<std::uint32_t>                       codes;
      std::vector<std::size_t>                         origin;
      std::vector<std::pair<std::size_t, std::size_t>> cancelled;
    };

    // Left-to-right stack reduction that remembers where survivors came
    // from and which positions cancelled.
    TracedReduction traced_reduce(Word const&                     w,
                                  std::vector<std::size_t> const& positions) {
      TracedReduction out;
      for (std::size_t p : positions) {
        std::uint32_t const code = w[p].code();
        if (!out.codes.empty() && out.codes.back() == (code ^ 1U)) {
          out.cancelled.emplace_back(out.origin.back(), p);
          out.codes.pop_back();
          out.origin.pop_back();
        } else {
          out.codes.push_back(code);
          out.origin.push_back(p);
        }
      }
      return out;
    }

    std::vector<std::size_t> all_positions(std::size_t n) {
      std::vector<std::size_t> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = i;
      }
      return v;
    }

    struct ScaledWeights {
      Integer                           scale;
      std::vector<kernels::Cost>        per_generator;
    };

    ScaledWeights scale_weights(WeightedAlphabet const& alphabet,
                                std::size_t             length) {
      ScaledWeights out;
      out.scale = lcm_of_denominators(alphabet.weights());
      Integer largest = 0;
      for (auto const& mu : alphabet.weights()) {
        Integer scaled = numerator(mu) * (out.scale / denominator(mu));
        largest        = std::max(largest, scaled);
        out.per_generator.push_back(to_int64(scaled));
      }
      Integer const bound = largest * Integer(length + 1);
      if (bound > Integer(std::numeric_limits<kernels::Cost>::max() / 4)) {
        throw BudgetExceeded("scaled weights overflow the DP cost type");
      }
      return out;
    }
  }  // namespace

  NormCertificate cancellation_norm(Word const&             w,
                                    WeightedAlphabet const& alphabet,
                                    NormOptions const&      options) {
    check_letters(w, alphabet);
    TracedReduction red = traced_reduce(w, all_positions(w.size()));
    std::size_t const n = red.codes.size();
    if (n > options.max_len) {
      throw BudgetExceeded("reduced word has " + std::to_string(n)
                           + " letters, above the cap of "
                           + std::to_string(options.max_len));
    }
    ScaledWeights const        sw = scale_weights(alphabet, n);
    std::vector<kernels::Cost> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = sw.per_generator[red.codes[i] >> 1];
    }

    kernels::CostTable table
        = options.kernel == Kernel::serial
              ? kernels::cancellation_table_serial(red.codes, weights)
              : kernels::cancellation_table_parallel(red.codes, weights);
    kernels::Witness wit = kernels::backtrack(table, red.codes, weights);

    NormCertificate cert;
    cert.value     = Rational(Integer(n == 0 ? 0 : table(0, n)), sw.scale);
    cert.cancelled = std::move(red.cancelled);
    for (auto r : wit.removed) {
      cert.removed.push_back(red.origin[r]);
    }
    for (auto [i, k] : wit.pairs) {
      cert.cancelled.emplace_back(red.origin[i], red.origin[k]);
    }
    std::sort(cert.removed.begin(), cert.removed.end());
    std::sort(cert.cancelled.begin(), cert.cancelled.end());
    return cert;
  }

  NormCertificate certificate_from_removal(Word const&              w,
                                           WeightedAlphabet const&  alphabet,
                                           std::vector<std::size_t> removed) {
    check_letters(w, alphabet);
    std::sort(removed.begin(), removed.end());
    if (std::adjacent_find(removed.begin(), removed.end()) != removed.end()
        || (!removed.empty() && removed.back() >= w.size())) {
      throw InvalidCertificate("removal positions repeat or are out of range");
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0, r = 0; i < w.size(); ++i) {
      if (r < removed.size() && removed[r] == i) {
        ++r;
      } else {
        kept.push_back(i);
      }
    }
    TracedReduction red = traced_reduce(w, kept);
    if (!red.codes.empty()) {
      throw InvalidCertificate("residual word does not reduce to the identity");
    }
    NormCertificate cert;
    cert.value = 0;
    for (auto p : removed) {
      cert.value += alphabet.weight(w[p].gen());
    }
    cert.removed   = std::move(removed);
    cert.cancelled = std::move(red.cancelled);
    std::sort(cert.cancelled.begin(), cert.cancelled.end());
    return cert;
  }

  bool verify_certificate(NormCertificate const&  cert,
                          Word const&             w,
                          WeightedAlphabet const& alphabet) {
    try {
      NormCertificate rebuilt = certificate_from_removal(w, alphabet, cert.removed);
      return rebuilt.value == cert.value;
    } catch (InvalidCertificate const&) {
      return false;
    }
  }

  Rational norm_bruteforce(Word const&             w,
                           WeightedAlphabet const& alphabet,
                           std::size_t             limit) {
    check_letters(w, alphabet);
    std::size_t const n = w.size();
    if (n > limit) {
      throw TooLong("brute-force norm limited to " + std::to_string(limit)
                    + " letters, got " + std::to_string(n));
    }
    Rational                   best = -1;
    std::vector<std::uint32_t> stack;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      stack.clear();
      Rational cost = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) {
          cost += alphabet.weight(w[i].gen());
          continue;
        }
        std::uint32_t const code = w[i].code();
        if (!stack.empty() && stack.back() == (code ^ 1U)) {
          stack.pop_back();
        } else {
          stack.push_back(code);
        }
      }
      if (stack.empty() && (best < 0 || cost < best)) {
        best = cost;
      }
    }
    return best;
  }

  Word psi_d(Word const& w, std::int64_t d) {
    Word out;
    for (auto l : w) {
      out.append(Word::power_of(l.gen(), l.sign() * d));
    }
    return reduce(out);
  }

  std::vector<Conjugate> factor_into_conjugates(NormCertificate const&  cert,
                                                Word const&             w,
                                                WeightedAlphabet const& alphabet) {
    if (!verify_certificate(cert, w, alphabet)) {
      throw InvalidCertificate("certificate does not verify against the word");
    }
    // With w = v_0 r_1 v_1 ... r_k v_k and v_0 ... v_k trivial, the factors
    // c_i r_i c_i^{-1} with c_i = v_0 ... v_{i-1} multiply to w.
    std::vector<Conjugate> out;
    Word                   prefix;
    std::size_t            r = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (r < cert.removed.size() && cert.removed[r] == i) {
        out.push_back({reduce(prefix), w[i]});
        ++r;
      } else {
        prefix.push_back(w[i]);
      }
    }
    return out;
  }

  Word product_of(std::vector<Conjugate> const& factors) {
    Word out;
    for (auto const& f : factors) {
      out.append(f.conjugator * Word{f.letter} * f.conjugator.inverse());
    }
    return reduce(out);
  }

  Rational weighted_length(Word const& w, WeightedAlphabet const& alphabet) {
    check_letters(w, alphabet);
    Rational total = 0;
    for (auto l : w) {
      total += alphabet.weight(l.gen());
    }
    return total;
  }

}  // namespace conecalc
