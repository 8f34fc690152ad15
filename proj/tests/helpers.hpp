#pragma once

#include <string_view>

#include "conecalc/alphabet.hpp"
#include "conecalc/parse.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/real_word.hpp"
#include "conecalc/word.hpp"

namespace testing {

  inline conecalc::WeightedAlphabet const& ab() {
    static auto const a = conecalc::WeightedAlphabet::uniform({"a", "b"});
    return a;
  }

  inline conecalc::WeightedAlphabet const& abc() {
    static auto const a = conecalc::WeightedAlphabet::uniform({"a", "b", "c"});
    return a;
  }

  inline conecalc::Word W(std::string_view text,
                          conecalc::WeightedAlphabet const& a = ab()) {
    return conecalc::parse_word(text, a);
  }

  inline conecalc::RealWord RW(std::string_view text,
                               conecalc::WeightedAlphabet const& a = ab()) {
    return conecalc::parse_real_word(text, a);
  }

  inline conecalc::Rational Q(std::string_view text) {
    return conecalc::parse_rational(text);
  }

  inline conecalc::WeightedAlphabet weights(std::string_view spec) {
    return conecalc::parse_alphabet_spec(spec);
  }

}  // namespace testing
