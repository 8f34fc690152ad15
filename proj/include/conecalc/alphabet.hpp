#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conecalc/rational.hpp"

namespace conecalc {

  // A finite ordered generating set A with a length function mu: A -> Q>=0.
  // The order is the generator index order and is used for canonical forms.
  class WeightedAlphabet {
   public:
    WeightedAlphabet() = default;

    // Throws PreconditionViolated on duplicate or empty names and negative
    // weights.
    explicit WeightedAlphabet(
        std::vector<std::pair<std::string, Rational>> generators);

    static WeightedAlphabet uniform(std::vector<std::string> const& names);

    std::size_t size() const noexcept {
      return names_.size();
    }

    std::string const& name(std::size_t gen) const {
      return names_.at(gen);
    }

    Rational const& weight(std::size_t gen) const {
      return weights_.at(gen);
    }

    std::vector<std::string> const& names() const noexcept {
      return names_;
    }

    std::vector<Rational> const& weights() const noexcept {
      return weights_;
    }

    std::optional<std::size_t> index_of(std::string_view name) const;

    // A^# = {a : mu(a) > 0}
    bool is_sharp(std::size_t gen) const {
      return weights_.at(gen) > 0;
    }

    // Returns a copy with generator `gen` reweighted.
    WeightedAlphabet with_weight(std::size_t gen, Rational weight) const;

    bool operator==(WeightedAlphabet const& that) const {
      return names_ == that.names_ && weights_ == that.weights_;
    }

   private:
    std::vector<std::string>                     names_;
    std::vector<Rational>                        weights_;
    std::unordered_map<std::string, std::size_t> index_;
  };

}  // namespace conecalc
