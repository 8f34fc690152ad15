#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "conecalc/alphabet.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/real_word.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  // Word grammar: whitespace-separated tokens `name`, `name'`, `name^k`
  // (k a signed integer) and `1` for the identity.  Generator names are
  // matched greedily against the alphabet, so `aba'b'` also parses when the
  // names are single characters.
  Word parse_word(std::string_view text, WeightedAlphabet const& alphabet);

  // Word tokens plus `name(r)` syllables with r = p/q or an integer.
  RealWord parse_real_word(std::string_view text,
                           WeightedAlphabet const& alphabet);

  // `a=1,b=3/2`; a bare name gets weight 1.
  WeightedAlphabet parse_alphabet_spec(std::string_view text);

  // One generator per line: `name weight`.  Blank lines and `#` comments are
  // skipped.
  WeightedAlphabet parse_alphabet_file(std::string_view contents);

  namespace detail {

    class Scanner {
     public:
      explicit Scanner(std::string_view text,
                       std::size_t      line   = 1,
                       std::size_t      column = 1)
          : text_(text), line_(line), column_(column) {}

      bool at_end() const noexcept {
        return pos_ >= text_.size();
      }
      char peek() const noexcept {
        return at_end() ? '\0' : text_[pos_];
      }
      std::string_view rest() const noexcept {
        return text_.substr(pos_);
      }
      std::size_t line() const noexcept {
        return line_;
      }
      std::size_t column() const noexcept {
        return column_;
      }

      void advance(std::size_t n = 1);
      void skip_space();
      bool consume(char c);
      void expect(char c);

      // [A-Za-z_][A-Za-z0-9_]*, possibly empty
      std::string_view identifier_run() const;

      Integer  integer();
      Rational rational();

      [[noreturn]] void fail(std::string const& message) const;

     private:
      std::string_view text_;
      std::size_t      pos_ = 0;
      std::size_t      line_;
      std::size_t      column_;
    };

    // Longest alphabet name that prefixes `run`; 0 when none does.
    std::size_t match_generator(std::string_view        run,
                                WeightedAlphabet const& alphabet,
                                std::size_t&            gen);

  }  // namespace detail

}  // namespace conecalc
