#include "conecalc/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "conecalc/error.hpp"

namespace conecalc {

  Word Word::power_of(std::uint32_t gen, std::int64_t k) {
    std::vector<Letter> letters(static_cast<std::size_t>(std::llabs(k)),
                                Letter(gen, k > 0));
    return Word(std::move(letters));
  }

  Word Word::subword(std::size_t first, std::size_t count) const {
    return Word(std::vector<Letter>(letters_.begin() + first,
                                    letters_.begin() + first + count));
  }

  Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word(std::move(out));
  }

  Word Word::power(std::int64_t n) const {
    Word const base = n < 0 ? inverse() : *this;
    Word       out;
    out.letters_.reserve(base.size() * static_cast<std::size_t>(std::llabs(n)));
    for (std::int64_t i = 0; i < std::llabs(n); ++i) {
      out.append(base);
    }
    return out;
  }

  std::uint32_t Word::max_generator() const {
    std::uint32_t m = 0;
    for (auto l : letters_) {
      m = std::max(m, l.gen());
    }
    return m;
  }

  Word operator*(Word lhs, Word const& rhs) {
    lhs.append(rhs);
    return lhs;
  }

  Word reduce(Word const& w) {
    std::vector<Letter> stack;
    stack.reserve(w.size());
    for (auto l : w) {
      if (!stack.empty() && stack.back() == l.inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(l);
      }
    }
    return Word(std::move(stack));
  }

  bool is_reduced(Word const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == w[i - 1].inverse()) {
        return false;
      }
    }
    return true;
  }

  bool is_cyclically_reduced(Word const& w) {
    return is_reduced(w) && (w.size() < 2 || w.front() != w.back().inverse());
  }

  bool is_trivial(Word const& w) {
    return reduce(w).empty();
  }

  Word conjugate(Word const& c, Word const& w) {
    return reduce(c * w * c.inverse());
  }

  CyclicReduction cyclically_reduce(Word const& w) {
    Word        r = reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
      ++lo;
      --hi;
    }
    return {r.subword(lo, hi - lo), r.subword(0, lo)};
  }

  Word rotate(Word const& w, std::size_t shift) {
    if (w.empty()) {
      return w;
    }
    shift %= w.size();
    return w.subword(shift, w.size() - shift) * w.subword(0, shift);
  }

  namespace {
    // Smallest p dividing n such that w has period p.
    std::size_t minimal_period(Word const& w) {
      std::size_t const n = w.size();
      for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) {
          continue;
        }
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) {
          periodic = w[i] == w[i - p];
        }
        if (periodic) {
          return p;
        }
      }
      return n;
    }
  }  // namespace

  PrimitiveRoot primitive_root(Word const& w) {
    auto [core, outer] = cyclically_reduce(w);
    if (core.empty()) {
      throw EmptyWord();
    }
    std::size_t const  p    = minimal_period(core);
    std::int64_t const k0   = static_cast<std::int64_t>(core.size() / p);
    Word const         root = core.subword(0, p);
    Word const         inv  = root.inverse();

    Word        best       = root;
    bool        from_inv   = false;
    std::size_t best_shift = 0;
    for (std::size_t s = 0; s < p; ++s) {
      Word r = rotate(root, s);
      if (r < best) {
        best       = std::move(r);
        from_inv   = false;
        best_shift = s;
      }
      Word ri = rotate(inv, s);
      if (ri < best) {
        best       = std::move(ri);
        from_inv   = true;
        best_shift = s;
      }
    }
    // rotate(x y, |x|) = y x = x^{-1} (x y) x, so x y = x * rotation * x^{-1}.
    Word const x = (from_inv ? inv : root).subword(0, best_shift);
    PrimitiveRoot result;
    result.theta      = ConjugacyClassRep(std::move(best));
    result.k          = from_inv ? -k0 : k0;
    result.conjugator = reduce(outer * x);
    return result;
  }

  ConjugacyClassRep ConjugacyClassRep::of(Word const& w) {
    return primitive_root(w).theta;
  }

  std::vector<std::int64_t> abelianize(Word const& w, std::size_t rank) {
    std::vector<std::int64_t> v(rank, 0);
    for (auto l : w) {
      if (l.gen() >= rank) {
        throw UnknownGenerator("generator index " + std::to_string(l.gen())
                               + " outside rank "
                               + std::to_string(rank));
      }
      v[l.gen()] += l.sign();
    }
    return v;
  }

  Word sharp_project(Word const& w, WeightedAlphabet const& alphabet) {
    check_letters(w, alphabet);
    Word kept;
    for (auto l : w) {
      if (alphabet.is_sharp(l.gen())) {
        kept.push_back(l);
      }
    }
    return reduce(kept);
  }

  void check_letters(Word const& w, WeightedAlphabet const& alphabet) {
    for (auto l : w) {
      if (l.gen() >= alphabet.size()) {
        throw UnknownGenerator("generator index " + std::to_string(l.gen())
                               + " is not in the alphabet");
      }
    }
  }

  std::string to_string(Word const& w, WeightedAlphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      std::size_t const run = j - i;
      if (!out.empty()) {
        out += ' ';
      }
      out += alphabet.name(w[i].gen());
      if (run == 1) {
        if (!w[i].positive()) {
          out += '\'';
        }
      } else {
        out += '^';
        if (!w[i].positive()) {
          out += '-';
        }
        out += std::to_string(run);
      }
      i = j;
    }
    return out;
  }

}  // namespace conecalc
