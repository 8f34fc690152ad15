#include "conecalc/cone.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <exception>

#include "conecalc/error.hpp"
#include "conecalc/parse.hpp"

namespace conecalc {

  HeisElement operator*(HeisElement const& a, HeisElement const& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y};
  }

  HeisElement inverse(HeisElement const& a) {
    return {-a.x, -a.y, -a.z + a.x * a.y};
  }

  HeisElement power(HeisElement const& a, std::int64_t n) {
    HeisElement const base = n < 0 ? inverse(a) : a;
    std::int64_t const m   = std::llabs(n);
    return {m * base.x, m * base.y, m * base.z + base.x * base.y * (m * (m - 1) / 2)};
  }

  HeisElement heisenberg_image(Word const& w) {
    HeisElement out;
    for (auto l : w) {
      if (l.gen() > 1) {
        throw UnknownGenerator("Heisenberg image uses generators 0 and 1 only");
      }
      HeisElement g = l.gen() == 0 ? HeisElement{1, 0, 0} : HeisElement{0, 1, 0};
      out           = out * (l.positive() ? g : inverse(g));
    }
    return out;
  }

  ConeElementDesc
  ConeElementDesc::free_group(WeightedAlphabet                              alphabet,
                              std::vector<std::pair<Word, Rational>> const& syllables) {
    ConeElementDesc d(BaseKind::free_group);
    d.alphabet_ = std::move(alphabet);
    for (auto const& [g, r] : syllables) {
      d.append(g, r);
    }
    return d;
  }

  ConeElementDesc
  ConeElementDesc::zn(std::size_t                                       rank,
                      std::vector<std::pair<ZnVector, Rational>> const& syllables) {
    ConeElementDesc d(BaseKind::zn);
    d.rank_ = rank;
    for (auto const& [g, r] : syllables) {
      d.append(g, r);
    }
    return d;
  }

  ConeElementDesc ConeElementDesc::heisenberg(
      std::vector<std::pair<HeisElement, Rational>> const& syllables) {
    ConeElementDesc d(BaseKind::heisenberg);
    d.rank_ = 2;
    for (auto const& [g, r] : syllables) {
      d.append(g, r);
    }
    return d;
  }

  void ConeElementDesc::append(BaseElement g, Rational r) {
    switch (kind_) {
      case BaseKind::free_group: {
        auto const* w = std::get_if<Word>(&g);
        if (w == nullptr) {
          throw PreconditionViolated("free-group description needs word generators");
        }
        check_letters(*w, alphabet_);
        g = reduce(*w);
        break;
      }
      case BaseKind::zn: {
        auto const* v = std::get_if<ZnVector>(&g);
        if (v == nullptr || v->size() != rank_) {
          throw PreconditionViolated("Z^n generator must be a vector of length "
                                     + std::to_string(rank_));
        }
        break;
      }
      case BaseKind::heisenberg:
        if (!std::holds_alternative<HeisElement>(g)) {
          throw PreconditionViolated("Heisenberg description needs matrix triples");
        }
        break;
    }
    auto it = std::find(generators_.begin(), generators_.end(), g);
    std::size_t gen = static_cast<std::size_t>(it - generators_.begin());
    if (it == generators_.end()) {
      generators_.push_back(std::move(g));
    }
    word_.push_back({static_cast<std::uint32_t>(gen), std::move(r)});
  }

  namespace {
    void require_free(ConeElementDesc const& desc, char const* what) {
      if (desc.kind() != BaseKind::free_group) {
        throw UnsupportedBase(std::string(what) + " needs a free-group base");
      }
    }

    Word const& free_generator(ConeElementDesc const& desc, std::size_t gen) {
      return std::get<Word>(desc.generators()[gen]);
    }

    // Rebuilds a compact generator table for an already rewritten word.
    ConeElementDesc compact(ConeElementDesc const& desc, RealWord const& word) {
      ConeElementDesc out = ConeElementDesc::free_group(desc.alphabet(), {});
      for (auto const& s : word) {
        out.append(desc.generators()[s.gen], s.exponent);
      }
      return out;
    }
  }  // namespace

  ConeElementDesc cone_canonicalize(ConeElementDesc const& desc) {
    require_free(desc, "canonicalization");
    ConeElementDesc rewritten = ConeElementDesc::free_group(desc.alphabet(), {});
    for (auto const& s : desc.word()) {
      Word const& g = free_generator(desc, s.gen);
      if (g.empty() || s.exponent == 0) {
        continue;
      }
      PrimitiveRoot pr = primitive_root(g);
      rewritten.append(pr.theta.theta(), Rational(pr.k) * s.exponent);
    }
    return compact(rewritten, normalize(rewritten.word()));
  }

  bool is_canonical(ConeElementDesc const& desc) {
    if (desc.kind() != BaseKind::free_group) {
      return false;
    }
    if (normalize(desc.word()) != desc.word()) {
      return false;
    }
    for (auto const& s : desc.word()) {
      Word const& g = free_generator(desc, s.gen);
      if (g.empty()) {
        return false;
      }
      PrimitiveRoot pr = primitive_root(g);
      if (pr.k != 1 || pr.theta.theta() != g) {
        return false;
      }
    }
    return true;
  }

  Word curve_word(ConeElementDesc const& desc, Rational const& t) {
    require_free(desc, "curve_word");
    if (t <= 0) {
      throw PreconditionViolated("curve parameter must be positive");
    }
    Word out;
    for (auto const& s : desc.word()) {
      std::int64_t const k = to_int64(trunc_toward_zero(t * s.exponent));
      out.append(free_generator(desc, s.gen).power(k));
    }
    return out;
  }

  std::vector<Rational> default_cone_grid(ConeElementDesc const& desc,
                                          std::size_t            count) {
    std::vector<Rational> exps;
    for (auto const& s : desc.word()) {
      exps.push_back(s.exponent);
    }
    Rational              t(lcm_of_denominators(exps));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(t);
      t *= 2;
    }
    return out;
  }

  namespace {
    void check_grid(std::span<Rational const> t_grid) {
      for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] <= 0 || (i > 0 && t_grid[i] <= t_grid[i - 1])) {
          throw PreconditionViolated("t grid must be positive and increasing");
        }
      }
    }

    Rational zn_sample(ConeElementDesc const& desc, Rational const& t) {
      ZnVector sum(desc.rank(), 0);
      for (auto const& s : desc.word()) {
        std::int64_t const k = to_int64(trunc_toward_zero(t * s.exponent));
        auto const& v = std::get<ZnVector>(desc.generators()[s.gen]);
        for (std::size_t i = 0; i < sum.size(); ++i) {
          sum[i] += k * v[i];
        }
      }
      Integer l1 = 0;
      for (auto x : sum) {
        l1 += std::llabs(x);
      }
      return Rational(l1) / t;
    }

    Integer curve_length(ConeElementDesc const& desc, Rational const& t) {
      Integer total = 0;
      for (auto const& s : desc.word()) {
        total += boost::multiprecision::abs(trunc_toward_zero(t * s.exponent))
                 * free_generator(desc, s.gen).size();
      }
      return total;
    }
  }  // namespace

  std::vector<LimitSample> cone_curve_sample(ConeElementDesc const&    desc,
                                             std::span<Rational const> t_grid,
                                             NormOptions const&        options) {
    check_grid(t_grid);
    if (desc.kind() == BaseKind::heisenberg) {
      throw UnsupportedBase("no exact norm sampler for the Heisenberg group");
    }
    std::size_t const               n = t_grid.size();
    std::vector<Rational>           values(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      auto const      i = static_cast<std::size_t>(ii);
      Rational const& t = t_grid[i];
      try {
        if (desc.kind() == BaseKind::zn) {
          values[i] = zn_sample(desc, t);
          continue;
        }
        if (curve_length(desc, t) > Integer(options.max_len)) {
          throw BudgetExceeded("curve word at t = " + to_compact_string(t)
                               + " exceeds the letter cap of "
                               + std::to_string(options.max_len));
        }
        values[i] = cancellation_norm(curve_word(desc, t), desc.alphabet(), options)
                        .value
                    / t;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto const& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
    std::vector<LimitSample> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({t_grid[i], values[i]});
    }
    return out;
  }

  TauBrackets tau_brackets_for(ConeElementDesc const& desc,
                               NormOptions const&     options,
                               NormFunction const&    norm) {
    require_free(desc, "tau brackets");
    TauBrackets out;
    for (auto const& s : desc.word()) {
      Word const& theta = free_generator(desc, s.gen);
      if (out.contains(theta)) {
        continue;
      }
      auto schedule = default_power_schedule(theta, options.max_len);
      if (schedule.empty()) {
        throw BudgetExceeded("theta is longer than the letter cap");
      }
      auto est   = stable_length_bounds(theta, desc.alphabet(), schedule, options, norm);
      out[theta] = {est.lower, est.upper};
    }
    return out;
  }

  namespace {
    Rational weighted_l1_slope(ConeElementDesc const& desc) {
      std::size_t const     rank = desc.alphabet().size();
      std::vector<Rational> slope(rank, 0);
      for (auto const& s : desc.word()) {
        auto ab = abelianize(free_generator(desc, s.gen), rank);
        for (std::size_t i = 0; i < rank; ++i) {
          slope[i] += s.exponent * Rational(ab[i]);
        }
      }
      Rational total = 0;
      for (std::size_t i = 0; i < rank; ++i) {
        total += desc.alphabet().weight(i) * abs(slope[i]);
      }
      return total;
    }
  }  // namespace

  ConeNormBracket cone_norm_bracket(ConeElementDesc const&    desc,
                                    std::span<Rational const> t_grid,
                                    TauBrackets const&        tau,
                                    NormOptions const&        options) {
    ConeNormBracket out;
    if (!t_grid.empty() && desc.kind() != BaseKind::heisenberg) {
      out.samples = cone_curve_sample(desc, t_grid, options);
      for (auto const& s : out.samples) {
        out.sample_max = std::max(out.sample_max, s.value);
      }
    }
    if (desc.kind() != BaseKind::free_group) {
      out.lower = out.upper = abelian_cone_norm(desc);
      out.lower_method      = "closed-form";
      return out;
    }
    if (!is_canonical(desc)) {
      throw PreconditionViolated("cone description is not canonical");
    }
    if (desc.word().empty()) {
      out.lower = out.upper = 0;
      out.lower_method      = "identity";
      return out;
    }

    // Weighted alphabet Theta with mu = tau_upper, indexed like the
    // generator table.
    std::vector<std::pair<std::string, Rational>> theta_gens;
    std::vector<TauBracket>                       brackets;
    for (std::size_t g = 0; g < desc.generators().size(); ++g) {
      Word const& theta = free_generator(desc, g);
      auto        it    = tau.find(theta);
      if (it == tau.end()) {
        throw PreconditionViolated("no tau bracket for theta [" +
                                   to_string(theta, desc.alphabet()) + "]");
      }
      if (it->second.upper < it->second.lower) {
        throw InvalidBracket("tau bracket for [" + to_string(theta, desc.alphabet())
                             + "] has upper < lower");
      }
      brackets.push_back(it->second);
      theta_gens.emplace_back("theta" + std::to_string(g), it->second.upper);
    }
    WeightedAlphabet const theta_alphabet(std::move(theta_gens));
    out.upper = rational_norm_exact(desc.word(), theta_alphabet, options).value;

    RealWord const& w = desc.word();
    out.lower         = 0;
    out.lower_method  = "none";
    auto consider     = [&out](Rational const& candidate, char const* method) {
      if (candidate > out.lower) {
        out.lower        = candidate;
        out.lower_method = method;
      }
    };
    if (w.size() == 1) {
      consider(abs(w[0].exponent) * brackets[w[0].gen].lower, "single-syllable");
    }
    consider(weighted_l1_slope(desc), "abelianization");
    bool all_positive = true;
    std::vector<ConjugacyClassRep> thetas;
    for (auto const& s : w) {
      all_positive = all_positive && brackets[s.gen].lower > 0;
      thetas.push_back(ConjugacyClassRep::of(free_generator(desc, s.gen)));
    }
    if (all_positive) {
      std::size_t const ell = lcm_of_lengths(thetas);
      Rational          k_bound;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Rational b = abs(w[i].exponent)
                     * kappa(thetas[i].length(), ell, brackets[w[i].gen].lower);
        if (i == 0 || b < k_bound) {
          k_bound = b;
        }
      }
      consider(k_bound, "kappa");
    }
    return out;
  }

  Rational abelian_cone_norm(ConeElementDesc const& desc) {
    if (desc.kind() == BaseKind::free_group) {
      throw UnsupportedBase("closed-form cone norm needs a Z^n or Heisenberg base");
    }
    std::vector<Rational> slope(desc.rank(), 0);
    for (auto const& s : desc.word()) {
      auto const& g = desc.generators()[s.gen];
      if (desc.kind() == BaseKind::zn) {
        auto const& v = std::get<ZnVector>(g);
        for (std::size_t i = 0; i < v.size(); ++i) {
          slope[i] += s.exponent * Rational(v[i]);
        }
      } else {
        auto const& h = std::get<HeisElement>(g);
        slope[0] += s.exponent * Rational(h.x);
        slope[1] += s.exponent * Rational(h.y);
      }
    }
    Rational total = 0;
    for (auto const& x : slope) {
      total += abs(x);
    }
    return total;
  }

  namespace {
    std::vector<std::int64_t> parse_int_tuple(detail::Scanner& sc) {
      std::vector<std::int64_t> out;
      sc.expect('(');
      sc.skip_space();
      while (true) {
        out.push_back(to_int64(sc.integer()));
        sc.skip_space();
        if (sc.consume(')')) {
          break;
        }
        sc.expect(',');
        sc.skip_space();
      }
      return out;
    }

    Rational parse_exponent(detail::Scanner& sc) {
      sc.skip_space();
      sc.expect('(');
      sc.skip_space();
      Rational r = sc.rational();
      sc.skip_space();
      sc.expect(')');
      return r;
    }

    std::string_view value_run(detail::Scanner& sc) {
      auto        rest = sc.rest();
      std::size_t n    = 0;
      while (n < rest.size() && rest[n] != ';'
             && !std::isspace(static_cast<unsigned char>(rest[n]))) {
        ++n;
      }
      sc.advance(n);
      return rest.substr(0, n);
    }
  }  // namespace

  ConeElementDesc parse_cone_description(std::string_view text) {
    detail::Scanner sc(text);
    std::string     base;
    std::string     alphabet_spec;
    std::size_t     rank = 0;
    bool            have_rank = false;

    auto skip_separators = [&sc] {
      while (!sc.at_end()
             && (std::isspace(static_cast<unsigned char>(sc.peek())) || sc.peek() == ';')) {
        sc.advance();
      }
    };

    skip_separators();
    while (!sc.at_end()) {
      auto key = sc.identifier_run();
      if (key.empty()) {
        sc.fail("expected a clause name");
      }
      std::string       k(key);
      std::size_t const key_col = sc.column();
      sc.advance(key.size());
      sc.skip_space();
      sc.expect('=');
      if (k == "word") {
        break;
      }
      sc.skip_space();
      std::size_t const col = sc.column();
      std::string       v(value_run(sc));
      if (k == "base") {
        base = v;
      } else if (k == "alphabet") {
        alphabet_spec = v;
      } else if (k == "rank") {
        try {
          rank = static_cast<std::size_t>(to_int64(numerator(parse_rational(v))));
        } catch (ParseError const&) {
          throw ParseError("rank must be an integer", sc.line(), col);
        }
        have_rank = true;
      } else {
        throw ParseError("unknown clause '" + k + "'", sc.line(), key_col);
      }
      skip_separators();
    }

    if (base == "free") {
      if (alphabet_spec.empty()) {
        sc.fail("free base needs alphabet=");
      }
      ConeElementDesc desc
          = ConeElementDesc::free_group(parse_alphabet_spec(alphabet_spec), {});
      skip_separators();
      while (!sc.at_end()) {
        sc.expect('[');
        std::size_t const col   = sc.column();
        auto              rest  = sc.rest();
        auto              close = rest.find(']');
        if (close == std::string_view::npos) {
          sc.fail("unterminated '['");
        }
        Word g;
        try {
          g = parse_word(rest.substr(0, close), desc.alphabet());
        } catch (ParseError const& e) {
          throw ParseError("bad base word", sc.line(), col + e.column() - 1);
        }
        sc.advance(close + 1);
        desc.append(g, parse_exponent(sc));
        skip_separators();
      }
      return desc;
    }
    if (base == "zn" || base == "heis" || base == "heisenberg") {
      bool const heis = base != "zn";
      std::vector<std::pair<ZnVector, Rational>>    zn_syllables;
      std::vector<std::pair<HeisElement, Rational>> heis_syllables;
      skip_separators();
      while (!sc.at_end()) {
        std::size_t const col = sc.column();
        auto              v   = parse_int_tuple(sc);
        Rational          r   = parse_exponent(sc);
        if (heis) {
          if (v.size() != 3) {
            throw ParseError("Heisenberg elements are triples (x,y,z)", sc.line(), col);
          }
          heis_syllables.emplace_back(HeisElement{v[0], v[1], v[2]}, r);
        } else {
          if (!have_rank) {
            rank      = v.size();
            have_rank = true;
          }
          if (v.size() != rank) {
            throw ParseError("vector length differs from rank", sc.line(), col);
          }
          zn_syllables.emplace_back(std::move(v), r);
        }
        skip_separators();
      }
      if (heis) {
        return ConeElementDesc::heisenberg(heis_syllables);
      }
      if (!have_rank) {
        sc.fail("Z^n base needs rank= or at least one syllable");
      }
      return ConeElementDesc::zn(rank, zn_syllables);
    }
    throw ParseError("base must be free, zn or heis", 1, 1);
  }

  std::string to_string(ConeElementDesc const& desc) {
    std::string out;
    switch (desc.kind()) {
      case BaseKind::free_group: {
        out = "base=free alphabet=";
        auto const& a = desc.alphabet();
        for (std::size_t i = 0; i < a.size(); ++i) {
          out += (i ? "," : "") + a.name(i) + "=" + to_compact_string(a.weight(i));
        }
        break;
      }
      case BaseKind::zn:
        out = "base=zn rank=" + std::to_string(desc.rank());
        break;
      case BaseKind::heisenberg:
        out = "base=heis";
        break;
    }
    out += "; word=";
    for (auto const& s : desc.word()) {
      out += ' ';
      auto const& g = desc.generators()[s.gen];
      if (auto const* w = std::get_if<Word>(&g)) {
        out += "[" + (w->empty() ? std::string("1") : to_string(*w, desc.alphabet())) + "]";
      } else if (auto const* v = std::get_if<ZnVector>(&g)) {
        out += "(";
        for (std::size_t i = 0; i < v->size(); ++i) {
          out += (i ? "," : "") + std::to_string((*v)[i]);
        }
        out += ")";
      } else {
        auto const& h = std::get<HeisElement>(g);
        out += "(" + std::to_string(h.x) + "," + std::to_string(h.y) + ","
               + std::to_string(h.z) + ")";
      }
      out += "(" + to_compact_string(s.exponent) + ")";
    }
    return out;
  }

}  // namespace conecalc
