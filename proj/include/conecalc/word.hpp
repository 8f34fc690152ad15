#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "conecalc/alphabet.hpp"

namespace conecalc {

  // A signed generator a^{+1} or a^{-1}.  Letters are ordered by generator
  // index, positive before negative; words inherit the lexicographic order.
  class Letter {
   public:
    constexpr Letter() = default;
    constexpr Letter(std::uint32_t gen, bool positive)
        : code_(gen * 2 + (positive ? 0 : 1)) {}

    static constexpr Letter from_code(std::uint32_t code) {
      Letter l;
      l.code_ = code;
      return l;
    }

    constexpr std::uint32_t gen() const noexcept {
      return code_ >> 1;
    }
    constexpr bool positive() const noexcept {
      return (code_ & 1U) == 0;
    }
    constexpr int sign() const noexcept {
      return positive() ? 1 : -1;
    }
    constexpr std::uint32_t code() const noexcept {
      return code_;
    }
    constexpr Letter inverse() const noexcept {
      return from_code(code_ ^ 1U);
    }

    constexpr auto operator<=>(Letter const&) const = default;

   private:
    std::uint32_t code_ = 0;
  };

  inline constexpr Letter pos(std::uint32_t gen) {
    return Letter(gen, true);
  }
  inline constexpr Letter neg(std::uint32_t gen) {
    return Letter(gen, false);
  }

  // A finite sequence of letters, not necessarily reduced.
  class Word {
   public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    // a^k for a single generator, k of any sign.
    static Word power_of(std::uint32_t gen, std::int64_t k);

    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter operator[](std::size_t i) const {
      return letters_[i];
    }
    Letter front() const {
      return letters_.front();
    }
    Letter back() const {
      return letters_.back();
    }

    std::span<Letter const> letters() const noexcept {
      return letters_;
    }

    auto begin() const noexcept {
      return letters_.begin();
    }
    auto end() const noexcept {
      return letters_.end();
    }

    void push_back(Letter l) {
      letters_.push_back(l);
    }
    void append(Word const& w) {
      letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
    }

    Word subword(std::size_t first, std::size_t count) const;

    // Formal inverse: reversed with every letter inverted.
    Word inverse() const;

    // Unreduced n-fold concatenation; negative n uses the inverse.
    Word power(std::int64_t n) const;

    std::uint32_t max_generator() const;

    auto operator<=>(Word const&) const = default;
    bool operator==(Word const&) const  = default;

   private:
    std::vector<Letter> letters_;
  };

  // Unreduced concatenation.
  Word operator*(Word lhs, Word const& rhs);

  Word reduce(Word const& w);
  bool is_reduced(Word const& w);
  bool is_cyclically_reduced(Word const& w);
  bool is_trivial(Word const& w);

  // Reduced word `rhs` conjugated as c * w * c^{-1}.
  Word conjugate(Word const& c, Word const& w);

  struct CyclicReduction {
    Word core;
    Word conjugator;  // w = conjugator * core * conjugator^{-1}
  };

  CyclicReduction cyclically_reduce(Word const& w);

  // Cyclic rotation: letters [shift, n) followed by [0, shift).
  Word rotate(Word const& w, std::size_t shift);

  struct PrimitiveRoot;
  PrimitiveRoot primitive_root(Word const& w);

  // A cyclically reduced pure word that is minimal among all rotations of
  // itself and of its inverse.
  class ConjugacyClassRep {
   public:
    ConjugacyClassRep() = default;

    Word const& theta() const noexcept {
      return theta_;
    }
    std::size_t length() const noexcept {
      return theta_.size();
    }

    // Throws EmptyWord for the identity.  The class of w is taken to be the
    // class of its primitive root.
    static ConjugacyClassRep of(Word const& w);

    auto operator<=>(ConjugacyClassRep const&) const = default;
    bool operator==(ConjugacyClassRep const&) const  = default;

   private:
    friend PrimitiveRoot primitive_root(Word const& w);
    explicit ConjugacyClassRep(Word theta) : theta_(std::move(theta)) {}

    Word theta_;
  };

  // primitive_root(w) throws EmptyWord if w reduces to the identity.
  struct PrimitiveRoot {
    ConjugacyClassRep theta;
    std::int64_t      k = 0;
    Word              conjugator;  // w = conjugator * theta^k * conjugator^{-1}
  };


  // Exponent-sum vector indexed by generator.
  std::vector<std::int64_t> abelianize(Word const& w, std::size_t rank);

  // The homomorphism F(A) -> F(A^#) deleting zero-weight letters, followed by
  // reduction.
  Word sharp_project(Word const& w, WeightedAlphabet const& alphabet);

  // Throws UnknownGenerator when a letter is outside the alphabet.
  void check_letters(Word const& w, WeightedAlphabet const& alphabet);

  std::string to_string(Word const& w, WeightedAlphabet const& alphabet);

}  // namespace conecalc
