#include "conecalc/parse.hpp"

#include <cctype>

#include "conecalc/error.hpp"

namespace conecalc {

  namespace detail {

    namespace {
      bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
      }
      bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      }
    }  // namespace

    void Scanner::advance(std::size_t n) {
      for (std::size_t i = 0; i < n && !at_end(); ++i) {
        if (text_[pos_] == '\n') {
          ++line_;
          column_ = 1;
        } else {
          ++column_;
        }
        ++pos_;
      }
    }

    void Scanner::skip_space() {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      }
    }

    bool Scanner::consume(char c) {
      if (peek() == c && !at_end()) {
        advance();
        return true;
      }
      return false;
    }

    void Scanner::expect(char c) {
      if (!consume(c)) {
        fail(std::string("expected '") + c + "'");
      }
    }

    std::string_view Scanner::identifier_run() const {
      std::size_t end = pos_;
      if (end < text_.size() && ident_start(text_[end])) {
        while (end < text_.size() && ident_char(text_[end])) {
          ++end;
        }
      }
      return text_.substr(pos_, end - pos_);
    }

    Integer Scanner::integer() {
      bool negative = false;
      if (peek() == '-' || peek() == '+') {
        negative = peek() == '-';
        advance();
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("expected digits");
      }
      Integer value = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        value = value * 10 + (peek() - '0');
        advance();
      }
      return negative ? Integer(-value) : value;
    }

    Rational Scanner::rational() {
      Integer num = integer();
      if (!consume('/')) {
        return Rational(num);
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail("expected an unsigned denominator");
      }
      Integer den = integer();
      if (den == 0) {
        fail("zero denominator");
      }
      return Rational(num, den);
    }

    void Scanner::fail(std::string const& message) const {
      throw ParseError(message, line_, column_);
    }

    std::size_t match_generator(std::string_view        run,
                                WeightedAlphabet const& alphabet,
                                std::size_t&            gen) {
      std::size_t best = 0;
      for (std::size_t i = 0; i < alphabet.size(); ++i) {
        auto const& name = alphabet.name(i);
        if (name.size() > best && run.substr(0, name.size()) == name) {
          best = name.size();
          gen  = i;
        }
      }
      return best;
    }

  }  // namespace detail

  namespace {
    constexpr std::int64_t max_token_exponent = 1'000'000;

    // One token of the word grammar; returns false at end of input.  `real`
    // allows `name(r)` syllables.
    bool next_syllable(detail::Scanner&        sc,
                       WeightedAlphabet const& alphabet,
                       bool                    real,
                       Syllable&               out,
                       bool&                   identity) {
      sc.skip_space();
      if (sc.at_end()) {
        return false;
      }
      identity = false;
      if (sc.peek() == '1') {
        sc.advance();
        identity = true;
        return true;
      }
      auto run = sc.identifier_run();
      if (run.empty()) {
        sc.fail(std::string("unexpected character '") + sc.peek() + "'");
      }
      std::size_t gen = 0;
      std::size_t len = detail::match_generator(run, alphabet, gen);
      if (len == 0) {
        throw UnknownGenerator("unknown generator '" + std::string(run)
                               + "' at line " + std::to_string(sc.line())
                               + ", column " + std::to_string(sc.column()));
      }
      sc.advance(len);
      Rational exponent = 1;
      if (real && sc.peek() == '(') {
        sc.advance();
        sc.skip_space();
        exponent = sc.rational();
        sc.skip_space();
        sc.expect(')');
      } else {
        if (sc.consume('\'')) {
          exponent = -1;
        }
        if (sc.consume('^')) {
          Integer k = sc.integer();
          if (boost::multiprecision::abs(k) > max_token_exponent) {
            sc.fail("exponent too large");
          }
          exponent *= Rational(k);
        }
      }
      out = {static_cast<std::uint32_t>(gen), exponent};
      return true;
    }
  }  // namespace

  Word parse_word(std::string_view text, WeightedAlphabet const& alphabet) {
    detail::Scanner sc(text);
    Word            out;
    Syllable        s;
    bool            identity = false;
    while (next_syllable(sc, alphabet, false, s, identity)) {
      if (!identity) {
        out.append(Word::power_of(s.gen, to_int64(numerator(s.exponent))));
      }
    }
    return out;
  }

  RealWord parse_real_word(std::string_view        text,
                           WeightedAlphabet const& alphabet) {
    detail::Scanner sc(text);
    RealWord        out;
    Syllable        s;
    bool            identity = false;
    while (next_syllable(sc, alphabet, true, s, identity)) {
      if (!identity) {
        out.push_back(s);
      }
    }
    return out;
  }

  WeightedAlphabet parse_alphabet_spec(std::string_view text) {
    detail::Scanner                               sc(text);
    std::vector<std::pair<std::string, Rational>> gens;
    sc.skip_space();
    while (!sc.at_end()) {
      auto name = sc.identifier_run();
      if (name.empty()) {
        sc.fail("expected a generator name");
      }
      std::string n(name);
      sc.advance(name.size());
      sc.skip_space();
      Rational weight = 1;
      if (sc.consume('=')) {
        sc.skip_space();
        weight = sc.rational();
      }
      gens.emplace_back(std::move(n), std::move(weight));
      sc.skip_space();
      if (!sc.at_end()) {
        sc.expect(',');
        sc.skip_space();
      }
    }
    if (gens.empty()) {
      throw ParseError("empty alphabet", 1, 1);
    }
    return WeightedAlphabet(std::move(gens));
  }

  WeightedAlphabet parse_alphabet_file(std::string_view contents) {
    std::vector<std::pair<std::string, Rational>> gens;
    std::size_t                                   line = 1;
    while (!contents.empty()) {
      auto              nl   = contents.find('\n');
      std::string_view  text = contents.substr(0, nl);
      contents = nl == std::string_view::npos ? std::string_view{}
                                              : contents.substr(nl + 1);
      if (auto hash = text.find('#'); hash != std::string_view::npos) {
        text = text.substr(0, hash);
      }
      detail::Scanner sc(text, line, 1);
      sc.skip_space();
      if (!sc.at_end()) {
        auto name = sc.identifier_run();
        if (name.empty()) {
          sc.fail("expected a generator name");
        }
        std::string n(name);
        sc.advance(name.size());
        sc.skip_space();
        Rational weight = sc.rational();
        sc.skip_space();
        if (!sc.at_end()) {
          sc.fail("trailing characters");
        }
        gens.emplace_back(std::move(n), std::move(weight));
      }
      ++line;
    }
    if (gens.empty()) {
      throw ParseError("alphabet file defines no generators", 1, 1);
    }
    return WeightedAlphabet(std::move(gens));
  }

}  // namespace conecalc
