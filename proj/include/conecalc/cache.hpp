#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "conecalc/alphabet.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  inline constexpr char const* tool_version = "conecalc 1.0.0";

  // On-disk memo of exact norms keyed by SHA-256 of (alphabet weights,
  // reduced word).  One JSON file per entry, written to a temporary name and
  // renamed into place.  Unreadable or corrupt entries are recomputed and
  // overwritten; I/O failures degrade to computing without the cache.
  class NormCache {
   public:
    // A disabled cache always computes.
    NormCache() = default;
    explicit NormCache(std::filesystem::path directory, std::ostream* warnings = nullptr);

    NormCache(NormCache const&)            = delete;
    NormCache& operator=(NormCache const&) = delete;

    // $CONECALC_CACHE, else $XDG_CACHE_HOME/conecalc, else
    // $HOME/.cache/conecalc, else a directory under the system temp path.
    static std::filesystem::path default_directory();

    bool enabled() const noexcept {
      return directory_.has_value();
    }

    static std::string key(WeightedAlphabet const& alphabet, Word const& w);

    std::filesystem::path entry_path(std::string const& key) const;

    Rational get_or_compute(WeightedAlphabet const&          alphabet,
                            Word const&                      w,
                            std::function<Rational()> const& compute);

    std::size_t hits() const noexcept {
      return hits_;
    }
    std::size_t misses() const noexcept {
      return misses_;
    }

   private:
    std::optional<Rational> load(std::string const& key) const;
    void                    store(std::string const& key, Rational const& value);
    void                    warn(std::string const& message);

    std::optional<std::filesystem::path> directory_;
    std::ostream*                        warnings_ = nullptr;
    std::atomic<std::size_t>             hits_{0};
    std::atomic<std::size_t>             misses_{0};
  };

}  // namespace conecalc
