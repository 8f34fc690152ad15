#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "conecalc/alphabet.hpp"
#include "conecalc/norm.hpp"
#include "conecalc/real_word.hpp"
#include "conecalc/stable.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  enum class BaseKind { free_group, zn, heisenberg };

  using ZnVector = std::vector<std::int64_t>;

  // Integer Heisenberg group, (x, y, z)(x', y', z') = (x+x', y+y', z+z'+xy').
  // The abelianization is (x, y); z is central.
  struct HeisElement {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    auto operator<=>(HeisElement const&) const = default;
  };

  HeisElement operator*(HeisElement const& a, HeisElement const& b);
  HeisElement inverse(HeisElement const& a);
  HeisElement power(HeisElement const& a, std::int64_t n);

  // Image under F(x, y) -> H sending generator 0 to x and 1 to y.
  HeisElement heisenberg_image(Word const& w);

  using BaseElement = std::variant<Word, ZnVector, HeisElement>;

  // A finite description of a directional-cone element: a rational word
  // whose generators are elements of the base group G.  The associated curve
  // is t -> g_1^{trunc(t r_1)} ... g_k^{trunc(t r_k)} in G.
  class ConeElementDesc {
   public:
    static ConeElementDesc
    free_group(WeightedAlphabet                              alphabet,
               std::vector<std::pair<Word, Rational>> const& syllables);
    static ConeElementDesc
    zn(std::size_t                                        rank,
       std::vector<std::pair<ZnVector, Rational>> const& syllables);
    static ConeElementDesc
    heisenberg(std::vector<std::pair<HeisElement, Rational>> const& syllables);

    BaseKind kind() const noexcept {
      return kind_;
    }
    WeightedAlphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    std::size_t rank() const noexcept {
      return rank_;
    }
    std::vector<BaseElement> const& generators() const noexcept {
      return generators_;
    }
    RealWord const& word() const noexcept {
      return word_;
    }

    // Appends the syllable g(r); g is stored in canonical form and shared
    // with equal earlier generators.
    void append(BaseElement g, Rational r);

    // Replaces the word, keeping the generator table.
    void set_word(RealWord w) {
      word_ = std::move(w);
    }

    bool operator==(ConeElementDesc const&) const = default;

   private:
    explicit ConeElementDesc(BaseKind kind) : kind_(kind) {}

    BaseKind                 kind_;
    WeightedAlphabet         alphabet_;
    std::size_t              rank_ = 0;
    std::vector<BaseElement> generators_;
    RealWord                 word_;
  };

  // Rewrites every syllable g(r) with g conjugate to theta^k as theta(k r),
  // drops identity generators and merges adjacent equal thetas.  Free-group
  // base only; throws UnsupportedBase otherwise.
  ConeElementDesc cone_canonicalize(ConeElementDesc const& desc);

  bool is_canonical(ConeElementDesc const& desc);

  // g(t) as an unreduced free-group word.
  Word curve_word(ConeElementDesc const& desc, Rational const& t);

  // {m, 2m, 4m, ...} with m the lcm of the exponent denominators.
  std::vector<Rational> default_cone_grid(ConeElementDesc const& desc,
                                          std::size_t            count = 5);

  // (t, (1/t) ||g(t)||) in the base norm: cancellation norm for free groups,
  // L1 for Z^n.  Heisenberg has no exact sampler (UnsupportedBase); free
  // samples longer than options.max_len throw BudgetExceeded.
  std::vector<LimitSample> cone_curve_sample(ConeElementDesc const&    desc,
                                             std::span<Rational const> t_grid,
                                             NormOptions const& options = {});

  struct TauBracket {
    Rational lower;
    Rational upper;
  };

  using TauBrackets = std::map<Word, TauBracket>;

  // Stable-length brackets for every theta in a canonical free description.
  TauBrackets tau_brackets_for(ConeElementDesc const& desc,
                               NormOptions const&     options = {},
                               NormFunction const&    norm    = {});

  struct ConeNormBracket {
    Rational                 lower;
    Rational                 upper;
    std::string              lower_method;
    std::vector<LimitSample> samples;
    Rational                 sample_max;  // diagnostic, not certified
  };

  // Certified lower <= ||[g]|| <= upper.  The upper bound is the norm of the
  // description in F_Q(Theta; tau_upper).  The lower bound is the largest of
  // |r| tau_lower (single syllable), min_i |r_i| kappa_i, and the weighted L1
  // norm of the abelianized slope.  Throws PreconditionViolated if the
  // description is not canonical or a theta has no bracket, InvalidBracket if
  // some upper < lower.
  ConeNormBracket cone_norm_bracket(ConeElementDesc const&    desc,
                                    std::span<Rational const> t_grid,
                                    TauBrackets const&        tau,
                                    NormOptions const&        options = {});

  // Closed form for bases with bounded commutator subgroup: the L1 norm of
  // sum_i r_i ab(g_i).  Throws UnsupportedBase for free groups.
  Rational abelian_cone_norm(ConeElementDesc const& desc);

  // Grammar, clauses separated by whitespace or ';':
  //   base=free alphabet=a,b; word= [aba'b'](1/2) [ab](2)
  //   base=zn rank=2; word= (1,0)(3/2) (0,1)(-2)
  //   base=heis; word= (1,0,0)(3/2) (0,1,7)(-2)
  ConeElementDesc parse_cone_description(std::string_view text);

  std::string to_string(ConeElementDesc const& desc);

}  // namespace conecalc
