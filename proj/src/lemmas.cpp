#include "conecalc/lemmas.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "conecalc/combinatorics.hpp"
#include "conecalc/cone.hpp"
#include "conecalc/error.hpp"
#include "conecalc/kernels.hpp"
#include "conecalc/norm.hpp"
#include "conecalc/real_word.hpp"
#include "conecalc/stable.hpp"

namespace conecalc {

  namespace {
    using Rng   = std::mt19937_64;
    using Trial = std::function<bool(Rng&, std::string&)>;

    std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    }
    std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
      return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    WeightedAlphabet ab_unit() {
      return WeightedAlphabet::uniform({"a", "b"});
    }

    WeightedAlphabet random_weights(Rng& rng, std::size_t rank, bool allow_zero) {
      static char const* names[] = {"a", "b", "c", "d"};
      std::vector<std::pair<std::string, Rational>> gens;
      for (std::size_t i = 0; i < rank; ++i) {
        std::int64_t num = uniform_int(rng, allow_zero ? 0 : 1, 4);
        std::int64_t den = uniform_int(rng, 1, 3);
        gens.emplace_back(names[i], Rational(num, den));
      }
      return WeightedAlphabet(std::move(gens));
    }

    Word random_word(Rng& rng, std::size_t rank, std::size_t max_len) {
      Word        w;
      std::size_t n = uniform(rng, 0, max_len);
      for (std::size_t i = 0; i < n; ++i) {
        w.push_back(Letter(static_cast<std::uint32_t>(uniform(rng, 0, rank - 1)),
                           uniform(rng, 0, 1) == 0));
      }
      return w;
    }

    Word random_reduced(Rng& rng, std::size_t rank, std::size_t len) {
      Word w;
      while (w.size() < len) {
        Letter l(static_cast<std::uint32_t>(uniform(rng, 0, rank - 1)), uniform(rng, 0, 1) == 0);
        if (!w.empty() && w.back() == l.inverse()) {
          continue;
        }
        w.push_back(l);
      }
      return w;
    }

    RealWord random_real(Rng& rng, std::size_t rank, std::size_t max_syllables,
                         std::int64_t max_den, std::int64_t max_num) {
      RealWord    w;
      std::size_t n = uniform(rng, 0, max_syllables);
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t num = 0;
        while (num == 0) {
          num = uniform_int(rng, -max_num, max_num);
        }
        w.push_back({static_cast<std::uint32_t>(uniform(rng, 0, rank - 1)),
                     Rational(num, uniform_int(rng, 1, max_den))});
      }
      return w;
    }

    Rational norm(Word const& w, WeightedAlphabet const& a) {
      return cancellation_norm(w, a).value;
    }

    Rational rnorm(RealWord const& w, WeightedAlphabet const& a) {
      return rational_norm_exact(w, a).value;
    }

    std::string show(Word const& w) {
      static WeightedAlphabet const names
          = WeightedAlphabet::uniform({"a", "b", "c", "d"});
      return to_string(w, names);
    }

    std::string show(RealWord const& w) {
      static WeightedAlphabet const names
          = WeightedAlphabet::uniform({"a", "b", "c", "d"});
      return to_string(w, names);
    }

    // Free reduction and roots

    bool reduce_laws(Rng& rng, std::string& why) {
      Word u = random_word(rng, 3, 10), v = random_word(rng, 3, 10);
      Word r = reduce(u);
      why    = show(u) + " ; " + show(v);
      return reduce(r) == r && is_reduced(r)
             && reduce(u * v * v.inverse() * u.inverse()).empty()
             && reduce(reduce(u * v) * rotate(Word{}, 0)) == reduce(r * reduce(v));
    }

    bool cyclic_reduction(Rng& rng, std::string& why) {
      Word w  = random_word(rng, 3, 12);
      auto cr = cyclically_reduce(w);
      why     = show(w);
      return is_cyclically_reduced(cr.core)
             && reduce(cr.conjugator * cr.core * cr.conjugator.inverse()) == reduce(w);
    }

    bool primitive_roots(Rng& rng, std::string& why) {
      Word base = random_word(rng, 2, 4);
      if (reduce(base).empty()) {
        return true;
      }
      Word w = base.power(uniform_int(rng, 1, 4) * (uniform(rng, 0, 1) ? 1 : -1));
      Word h = random_word(rng, 2, 4);
      why    = show(w) + " conj " + show(h);
      auto pr = primitive_root(w);
      Word const& theta = pr.theta.theta();
      if (reduce(pr.conjugator * theta.power(pr.k) * pr.conjugator.inverse()) != reduce(w)) {
        return false;
      }
      if (std::size_t(std::llabs(pr.k)) * theta.size() != cyclically_reduce(w).core.size()) {
        return false;
      }
      if (primitive_root(theta).k != 1) {
        return false;
      }
      auto other = primitive_root(conjugate(h, w.inverse()));
      return other.theta == pr.theta && other.k == -pr.k;
    }

    bool abelianization(Rng& rng, std::string& why) {
      Word u = random_word(rng, 3, 10), v = random_word(rng, 3, 10);
      why    = show(u) + " ; " + show(v);
      auto au = abelianize(u, 3), av = abelianize(v, 3), auv = abelianize(u * v, 3);
      for (std::size_t i = 0; i < 3; ++i) {
        if (auv[i] != au[i] + av[i]) {
          return false;
        }
      }
      return abelianize(reduce(u), 3) == au;
    }

    // The cancellation norm

    bool oracle_equivalence(Rng& rng, std::string& why) {
      auto a = random_weights(rng, 2, true);
      Word w = random_word(rng, 2, 12);
      why    = show(w);
      return norm(w, a) == norm_bruteforce(w, a);
    }

    bool kernels_agree(Rng& rng, std::string& why) {
      Word w = random_reduced(rng, uniform(rng, 1, 3), uniform(rng, 0, 60));
      why    = show(w);
      std::vector<std::uint32_t> codes;
      std::vector<kernels::Cost> weights;
      for (auto l : w) {
        codes.push_back(l.code());
        weights.push_back(static_cast<kernels::Cost>(uniform(rng, 0, 5)));
      }
      return kernels::cancellation_table_serial(codes, weights)
             == kernels::cancellation_table_parallel(codes, weights);
    }

    bool conjugation_invariance(Rng& rng, std::string& why) {
      auto a = random_weights(rng, 2, false);
      Word w = random_word(rng, 2, 12), h = random_word(rng, 2, 8);
      why    = show(w) + " by " + show(h);
      return norm(h * w * h.inverse(), a) == norm(w, a);
    }

    bool symmetry_triangle(Rng& rng, std::string& why) {
      auto a = random_weights(rng, 2, true);
      Word u = random_word(rng, 2, 12), v = random_word(rng, 2, 12);
      why    = show(u) + " ; " + show(v);
      Rational nu = norm(u, a), nv = norm(v, a);
      return norm(u.inverse(), a) == nu && norm(u * v, a) <= nu + nv && nu >= 0;
    }

    bool telescoping(Rng& rng, std::string& why) {
      auto        a = random_weights(rng, 2, false);
      std::size_t n = uniform(rng, 1, 4);
      Word        g, h;
      Rational    rhs = 0;
      for (std::size_t i = 0; i < n; ++i) {
        Word gi = random_word(rng, 2, 5), hi = random_word(rng, 2, 5);
        g.append(gi);
        h.append(hi);
        rhs += norm(gi.inverse() * hi, a);
      }
      why = show(g) + " vs " + show(h);
      return norm(g.inverse() * h, a) <= rhs;
    }

    bool psi_d_homogeneity(Rng& rng, std::string& why) {
      auto         a = random_weights(rng, 2, false);
      Word         w = random_word(rng, 2, 8);
      std::int64_t d = uniform_int(rng, 1, 5);
      why            = show(w) + " d=" + std::to_string(d);
      return norm(psi_d(w, d), a) == Rational(d) * norm(w, a);
    }

    bool sharp_invariance(Rng& rng, std::string& why) {
      auto a = random_weights(rng, 3, true);
      Word w = random_word(rng, 3, 12);
      why    = show(w);
      Rational n = norm(w, a);
      return n == norm(sharp_project(w, a), a)
             && ((n == 0) == sharp_project(w, a).empty());
    }

    bool certificates(Rng& rng, std::string& why) {
      auto a    = random_weights(rng, 2, true);
      Word w    = random_word(rng, 2, 14);
      why       = show(w);
      auto cert = cancellation_norm(w, a);
      if (!verify_certificate(cert, w, a)) {
        return false;
      }
      auto factors = factor_into_conjugates(cert, w, a);
      Rational weight = 0;
      for (auto const& f : factors) {
        weight += a.weight(f.letter.gen());
      }
      return product_of(factors) == reduce(w) && weight == cert.value;
    }

    // Rational words

    bool psi_t_laws(Rng& rng, std::string& why) {
      auto     a = random_weights(rng, 2, false);
      RealWord w = random_real(rng, 2, 3, 3, 4);
      Rational t(uniform_int(rng, -4, 4), uniform_int(rng, 1, 3));
      why = show(w) + " t=" + to_compact_string(t);
      if (psi_t(psi_t(w, Rational(3)), Rational(1, 3)) != normalize(w)) {
        return false;
      }
      if (psi_t(psi_t(w, t), Rational(2)) != psi_t(w, t * 2)) {
        return false;
      }
      return rnorm(psi_t(w, t), a) == abs(t) * rnorm(w, a);
    }

    bool restriction(Rng& rng, std::string& why) {
      auto a = random_weights(rng, 2, true);
      Word w = random_word(rng, 2, 12);
      why    = show(w);
      return rnorm(RealWord::from_word(w), a) == norm(w, a);
    }

    bool scaling_stability(Rng& rng, std::string& why) {
      auto     a = ab_unit();
      RealWord w = random_real(rng, 2, 4, 4, 6);
      why        = show(w);
      Rational const exact = rnorm(w, a);
      std::vector<Rational> exps;
      for (auto const& s : w) {
        exps.push_back(s.exponent);
      }
      Rational const m(lcm_of_denominators(exps));
      for (int n = 1; n <= 3; ++n) {
        Rational t = m * n;
        if (norm(truncate(w, t), a) / t != exact) {
          return false;
        }
      }
      return true;
    }

    bool witnesses(Rng& rng, std::string& why) {
      auto     a = random_weights(rng, 2, true);
      RealWord w = random_real(rng, 2, 4, 3, 5);
      why        = show(w);
      auto cert  = rational_norm_exact(w, a);
      return verify_witness(w, cert.witness)
             && witness_weight(w, cert.witness, a) == cert.value;
    }

    bool truncation_morphism(Rng& rng, std::string& why) {
      RealWord u = random_real(rng, 2, 3, 4, 9), v = random_real(rng, 2, 3, 4, 9);
      Rational t(uniform_int(rng, 1, 20), uniform_int(rng, 1, 3));
      why = show(u) + " ; " + show(v) + " t=" + to_compact_string(t);
      return truncate(u * v, t) == truncate(u, t) * truncate(v, t)
             && truncate(u.inverse(), t) == truncate(u, t).inverse();
    }

    bool geodesic(Rng& rng, std::string& why) {
      auto     a = ab_unit();
      RealWord w = random_real(rng, 2, 3, 2, 3);
      why        = show(w);
      auto cert  = rational_norm_exact(w, a);
      std::vector<Rational> ts = {0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
      auto path = geodesic_sample(w, cert.witness, ts);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i; j < ts.size(); ++j) {
          if (rnorm(path[i].inverse() * path[j], a) != (ts[j] - ts[i]) * cert.value) {
            return false;
          }
        }
      }
      return path.front() == normalize(w) && path.back().empty();
    }

    bool approximation(Rng& rng, std::string& why) {
      auto     a = random_weights(rng, 2, false);
      RealWord w = random_real(rng, 2, 3, 3, 5);
      RealWord v;
      for (auto const& s : w) {
        v.push_back({s.gen, s.exponent + Rational(uniform_int(rng, -2, 2), 3)});
      }
      why = show(w) + " vs " + show(v);
      return abs(rnorm(w, a) - rnorm(v, a)) <= approximation_error_bound(w, v, a);
    }

    // Stable length

    bool subadditivity(Rng& rng, std::string& why) {
      auto         a = ab_unit();
      Word         g = cyclically_reduce(random_word(rng, 2, 5)).core;
      std::int64_t m = uniform_int(rng, 1, 8), n = uniform_int(rng, 1, 8);
      why            = show(g);
      return norm(g.power(m + n), a) <= norm(g.power(m), a) + norm(g.power(n), a);
    }

    bool fekete(Rng& rng, std::string& why) {
      auto a   = ab_unit();
      Word g   = random_word(rng, 2, 5);
      why      = show(g);
      auto est = stable_length_bounds(g, a, {1, 2, 4, 8});
      Rational running;
      for (std::size_t i = 0; i < est.upper_sequence.size(); ++i) {
        Rational const& v = est.upper_sequence[i].second;
        Rational next = i == 0 ? v : std::min(running, v);
        if (i > 0 && next > running) {
          return false;
        }
        running = next;
      }
      // doubling: ||g^{2n}|| / 2n <= ||g^n|| / n
      for (std::size_t i = 1; i < est.upper_sequence.size(); ++i) {
        if (est.upper_sequence[i].second > est.upper_sequence[i - 1].second) {
          return false;
        }
      }
      return est.lower <= est.upper && running == est.upper;
    }

    bool product_bound(Rng& rng, std::string& why) {
      auto const                     a = ab_unit();
      std::vector<Word> const        pool = {Word{pos(0)}, Word{pos(1)}, Word{pos(0), pos(1)}};
      std::size_t const              p    = uniform(rng, 1, 3);
      std::vector<ConjugacyClassRep> thetas;
      std::vector<std::size_t>       picks;
      while (picks.size() < p) {
        std::size_t k = uniform(rng, 0, 2);
        if (!picks.empty() && picks.back() == k) {
          continue;
        }
        picks.push_back(k);
        thetas.push_back(ConjugacyClassRep::of(pool[k]));
      }
      std::size_t const         ell = lcm_of_lengths(thetas);
      std::vector<std::int64_t> exps;
      std::vector<Rational>     taus;
      Word                      product;
      for (auto const& t : thetas) {
        std::int64_t least = static_cast<std::int64_t>(6 * ell / t.length()) + 1;
        std::int64_t n     = uniform_int(rng, least, least + 8) * (uniform(rng, 0, 1) ? 1 : -1);
        exps.push_back(n);
        taus.push_back(abelianization_lower_bound(t.theta(), a));
        product.append(t.theta().power(n));
      }
      why = show(product);
      return norm(product, a) > product_lower_bound(thetas, exps, taus);
    }

    // Packets and intervals

    bool equal_packets(Rng& rng, std::string& why) {
      auto random_theta = [&rng] {
        while (true) {
          Word w = random_word(rng, 2, 4);
          if (!reduce(w).empty()) {
            return ConjugacyClassRep::of(w);
          }
        }
      };
      ConjugacyClassRep t1 = random_theta();
      ConjugacyClassRep t2 = uniform(rng, 0, 1) ? t1 : random_theta();
      std::size_t const ell = std::lcm(t1.length(), t2.length());
      std::size_t const len = ell + uniform(rng, 0, 4);
      Word const        big = t1.theta().power(static_cast<std::int64_t>(len / t1.length() + 3));
      Word const        v   = big.subword(uniform(rng, 0, t1.length() - 1), len);
      why = show(t1.theta()) + " / " + show(t2.theta()) + " v=" + show(v);
      if (!is_theta_packet(v, t1.theta()) || !is_reduced(v)) {
        return false;
      }
      if (is_theta_packet(v.inverse(), t2.theta())) {
        return t1 == t2;
      }
      return t1 != t2;
    }

    bool small_intervals(Rng& rng, std::string& why) {
      std::vector<Word> const pool = {Word{pos(0)}, Word{pos(0), pos(1)},
                                      Word{pos(0), pos(0), pos(1)},
                                      Word{pos(0), neg(1), pos(0), pos(1), pos(1)}};
      auto const&        g = pool[uniform(rng, 0, pool.size() - 1)];
      std::int64_t const n = uniform_int(rng, 1, 10);
      std::size_t const  len = g.size() * static_cast<std::size_t>(n);
      std::vector<std::size_t> removal;
      std::size_t const count = uniform(rng, 0, len / 2);
      for (std::size_t i = 0; i < count; ++i) {
        removal.push_back(uniform(rng, 0, len - 1));
      }
      why = show(g) + "^" + std::to_string(n);
      auto report = check_small_interval_bound(
          g, n, removal, abelianization_lower_bound(g, ab_unit()));
      return report.holds();
    }

    // Cone descriptions

    bool cone_products(Rng& rng, std::string& why) {
      std::size_t const ra = uniform(rng, 1, 3), rb = uniform(rng, 1, 3);
      std::vector<std::pair<ZnVector, Rational>> both, first, second;
      std::size_t const n = uniform(rng, 0, 4);
      for (std::size_t i = 0; i < n; ++i) {
        ZnVector u, v;
        for (std::size_t k = 0; k < ra; ++k) {
          u.push_back(uniform_int(rng, -3, 3));
        }
        for (std::size_t k = 0; k < rb; ++k) {
          v.push_back(uniform_int(rng, -3, 3));
        }
        Rational r(uniform_int(rng, -6, 6), uniform_int(rng, 1, 4));
        ZnVector uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        both.emplace_back(uv, r);
        first.emplace_back(u, r);
        second.emplace_back(v, r);
      }
      auto whole = ConeElementDesc::zn(ra + rb, both);
      why        = to_string(whole);
      return abelian_cone_norm(whole)
             == abelian_cone_norm(ConeElementDesc::zn(ra, first))
                    + abelian_cone_norm(ConeElementDesc::zn(rb, second));
    }

    bool canonicalization(Rng& rng, std::string& why) {
      auto const a = ab_unit();
      std::vector<std::pair<Word, Rational>> syllables;
      Rational                              budget = 0;
      std::size_t const                     n      = uniform(rng, 1, 2);
      for (std::size_t i = 0; i < n; ++i) {
        Word root = random_word(rng, 2, 2);
        Word h    = random_word(rng, 2, 2);
        if (reduce(root).empty()) {
          root = Word{pos(0)};
        }
        std::int64_t const p = uniform_int(rng, 1, 2);
        Word const         g = h * root.power(p) * h.inverse();
        Rational           r(uniform_int(rng, -3, 3), uniform_int(rng, 1, 2));
        syllables.emplace_back(g, r);
        auto pr = primitive_root(g);
        budget += 2 * weighted_length(pr.conjugator, a)
                  + Rational(std::llabs(pr.k) + 1) * weighted_length(pr.theta.theta(), a);
      }
      auto desc  = ConeElementDesc::free_group(a, syllables);
      auto canon = cone_canonicalize(desc);
      why        = to_string(desc);
      if (!is_canonical(canon)) {
        return false;
      }
      for (auto const& t : default_cone_grid(desc, 4)) {
        Word diff = curve_word(desc, t).inverse() * curve_word(canon, t);
        if (norm(diff, a) > budget) {
          return false;
        }
      }
      return true;
    }

    struct Suite {
      char const*   name;
      std::uint64_t trials;
      Trial         trial;
    };

    std::vector<Suite> const& suites() {
      static std::vector<Suite> const all = {
          {"reduce-laws", 300, reduce_laws},
          {"cyclic-reduction", 300, cyclic_reduction},
          {"primitive-root", 300, primitive_roots},
          {"abelianize-homomorphism", 300, abelianization},
          {"oracle-equivalence", 300, oracle_equivalence},
          {"kernels-agree", 100, kernels_agree},
          {"conjugation-invariance", 300, conjugation_invariance},
          {"symmetry-triangle", 300, symmetry_triangle},
          {"telescoping", 200, telescoping},
          {"psi-d-homogeneity", 200, psi_d_homogeneity},
          {"sharp-invariance", 300, sharp_invariance},
          {"certificate-soundness", 300, certificates},
          {"psi-t-laws", 100, psi_t_laws},
          {"restriction-consistency", 200, restriction},
          {"scaling-stability", 50, scaling_stability},
          {"witness-soundness", 100, witnesses},
          {"truncation-morphism", 300, truncation_morphism},
          {"geodesic-equation", 30, geodesic},
          {"approximation-bound", 100, approximation},
          {"subadditivity", 100, subadditivity},
          {"fekete-monotonicity", 50, fekete},
          {"product-lower-bound", 30, product_bound},
          {"equal-packets", 300, equal_packets},
          {"small-interval-bound", 200, small_intervals},
          {"cone-product-consistency", 200, cone_products},
          {"canonicalization-invariance", 50, canonicalization},
      };
      return all;
    }

    LemmaCheck run_trials(Suite const& suite, LemmaOptions const& options) {
      LemmaCheck out;
      out.name = suite.name;
      out.trials = std::max<std::uint64_t>(
          1, static_cast<std::uint64_t>(std::llround(suite.trials * options.scale)));
      std::uint64_t failures  = 0;
      std::uint64_t first_bad = std::numeric_limits<std::uint64_t>::max();
      std::string   example;
      auto const    n = static_cast<std::int64_t>(out.trials);
#pragma omp parallel for schedule(dynamic) reduction(+ : failures)
      for (std::int64_t i = 0; i < n; ++i) {
        std::seed_seq seq{options.seed, static_cast<std::uint64_t>(i)};
        Rng           rng(seq);
        std::string   why;
        bool          ok = false;
        try {
          ok = suite.trial(rng, why);
        } catch (std::exception const& e) {
          why += std::string(" threw: ") + e.what();
        }
        if (!ok) {
          ++failures;
#pragma omp critical(conecalc_lemma_example)
          if (static_cast<std::uint64_t>(i) < first_bad) {
            first_bad = static_cast<std::uint64_t>(i);
            example   = "trial " + std::to_string(i) + ": " + why;
          }
        }
      }
      out.failures       = failures;
      out.counterexample = example;
      return out;
    }

    LemmaCheck run_collision_sweep(LemmaOptions const& options) {
      LemmaCheck out;
      out.name = "collision-exhaustive";
      std::size_t const max_n = options.scale >= 1 ? 14 : 10;
      auto              sweep = exhaustive_collision_sweep(max_n, 3);
      out.trials              = sweep.pairs;
      out.failures            = sweep.failures;
      if (sweep.failures) {
        out.counterexample = std::to_string(sweep.failures) + " partition pairs missed";
      }
      return out;
    }
  }  // namespace

  std::vector<std::string> lemma_suite_names() {
    std::vector<std::string> names;
    for (auto const& s : suites()) {
      names.emplace_back(s.name);
    }
    names.emplace_back("collision-exhaustive");
    return names;
  }

  LemmaCheck run_lemma_suite(std::string const& name, LemmaOptions const& options) {
    auto const start = std::chrono::steady_clock::now();
    LemmaCheck out;
    if (name == "collision-exhaustive") {
      out = run_collision_sweep(options);
    } else {
      auto const& all = suites();
      auto        it  = std::find_if(all.begin(), all.end(),
                             [&](Suite const& s) { return name == s.name; });
      if (it == all.end()) {
        throw PreconditionViolated("unknown lemma suite '" + name + "'");
      }
      out = run_trials(*it, options);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  std::vector<LemmaCheck> run_all_lemma_suites(LemmaOptions const& options) {
    std::vector<LemmaCheck> out;
    for (auto const& name : lemma_suite_names()) {
      out.push_back(run_lemma_suite(name, options));
    }
    return out;
  }

}  // namespace conecalc
