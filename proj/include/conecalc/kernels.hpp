#pragma once

// Interval dynamic programme for minimum-weight cancellation sequences.
//
// For a reduced word x_0 ... x_{n-1} with integer letter weights w_i, C(i, e)
// is the cheapest removal from the half-open interval [i, e) leaving a word
// that freely reduces to the identity:
//
//   C(i, i) = 0
//   C(i, e) = min( w_i + C(i+1, e),
//                  min_{i<k<e, x_k = x_i^{-1}} C(i+1, k) + C(k+1, e) )
//
// Two kernels compute the same table.  The serial one is the literal
// recurrence and serves as the reference; the parallel one sweeps
// anti-diagonals (interval length) with OpenMP and only visits matching k.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace conecalc::kernels {

  using Cost = std::int64_t;

  class CostTable {
   public:
    explicit CostTable(std::size_t n) : n_(n), data_((n + 1) * (n + 1), 0) {}

    std::size_t size() const noexcept {
      return n_;
    }
    Cost& operator()(std::size_t i, std::size_t e) {
      return data_[i * (n_ + 1) + e];
    }
    Cost operator()(std::size_t i, std::size_t e) const {
      return data_[i * (n_ + 1) + e];
    }
    bool operator==(CostTable const&) const = default;

   private:
    std::size_t       n_;
    std::vector<Cost> data_;
  };

  // `codes` are letter codes (inverse = code ^ 1); `weights` has one entry
  // per position.
  CostTable cancellation_table_serial(std::span<std::uint32_t const> codes,
                                      std::span<Cost const>          weights);

  CostTable cancellation_table_parallel(std::span<std::uint32_t const> codes,
                                        std::span<Cost const>          weights);

  struct Witness {
    std::vector<std::size_t>                         removed;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
  };

  // Optimal witness for [0, n).  Ties prefer pairing over removal and the
  // smallest partner index.
  Witness backtrack(CostTable const&               table,
                    std::span<std::uint32_t const> codes,
                    std::span<Cost const>          weights);

}  // namespace conecalc::kernels
