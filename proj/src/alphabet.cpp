#include "conecalc/alphabet.hpp"

#include "conecalc/error.hpp"

namespace conecalc {

  WeightedAlphabet::WeightedAlphabet(
      std::vector<std::pair<std::string, Rational>> generators) {
    names_.reserve(generators.size());
    weights_.reserve(generators.size());
    for (auto& [name, weight] : generators) {
      if (name.empty()) {
        throw PreconditionViolated("generator names must be non-empty");
      }
      if (weight < 0) {
        throw PreconditionViolated("weight of generator '" + name
                                   + "' is negative");
      }
      if (!index_.emplace(name, names_.size()).second) {
        throw PreconditionViolated("duplicate generator '" + name + "'");
      }
      names_.push_back(std::move(name));
      weights_.push_back(std::move(weight));
    }
  }

  WeightedAlphabet
  WeightedAlphabet::uniform(std::vector<std::string> const& names) {
    std::vector<std::pair<std::string, Rational>> gens;
    for (auto const& n : names) {
      gens.emplace_back(n, Rational(1));
    }
    return WeightedAlphabet(std::move(gens));
  }

  std::optional<std::size_t>
  WeightedAlphabet::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  WeightedAlphabet WeightedAlphabet::with_weight(std::size_t gen,
                                                 Rational    weight) const {
    std::vector<std::pair<std::string, Rational>> gens;
    for (std::size_t i = 0; i < size(); ++i) {
      gens.emplace_back(names_[i], i == gen ? weight : weights_[i]);
    }
    return WeightedAlphabet(std::move(gens));
  }

}  // namespace conecalc
