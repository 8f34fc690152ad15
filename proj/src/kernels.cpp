#include "conecalc/kernels.hpp"

#include <algorithm>
#include <stdexcept>


namespace conecalc::kernels {

  CostTable cancellation_table_serial(std::span<std::uint32_t const> codes,
                                      std::span<Cost const>          weights) {
    std::size_t const n = codes.size();
    CostTable         c(n);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t e = i + 1; e <= n; ++e) {
        Cost best = weights[i] + c(i + 1, e);
        for (std::size_t k = i + 1; k < e; ++k) {
          if (codes[k] == (codes[i] ^ 1U)) {
            best = std::min(best, c(i + 1, k) + c(k + 1, e));
          }
        }
        c(i, e) = best;
      }
    }
    return c;
  }

  CostTable cancellation_table_parallel(std::span<std::uint32_t const> codes,
                                        std::span<Cost const>          weights) {
    std::size_t const n = codes.size();
    CostTable         c(n);

    // partners[i]: ascending positions k > i with x_k = x_i^{-1}
    std::vector<std::vector<std::size_t>> partners(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        if (codes[k] == (codes[i] ^ 1U)) {
          partners[i].push_back(k);
        }
      }
    }

    for (std::size_t len = 1; len <= n; ++len) {
      std::ptrdiff_t const count = static_cast<std::ptrdiff_t>(n - len + 1);
#pragma omp parallel for schedule(static) if (count > 64)
      for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
        std::size_t const i    = static_cast<std::size_t>(ii);
        std::size_t const e    = i + len;
        Cost              best = weights[i] + c(i + 1, e);
        for (std::size_t k : partners[i]) {
          if (k >= e) {
            break;
          }
          best = std::min(best, c(i + 1, k) + c(k + 1, e));
        }
        c(i, e) = best;
      }
    }
    return c;
  }

  Witness backtrack(CostTable const&               table,
                    std::span<std::uint32_t const> codes,
                    std::span<Cost const>          weights) {
    Witness                                          out;
    std::vector<std::pair<std::size_t, std::size_t>> todo;
    if (table.size() > 0) {
      todo.emplace_back(0, table.size());
    }
    while (!todo.empty()) {
      auto [i, e] = todo.back();
      todo.pop_back();
      if (i >= e) {
        continue;
      }
      Cost const target  = table(i, e);
      bool       matched = false;
      for (std::size_t k = i + 1; k < e; ++k) {
        if (codes[k] == (codes[i] ^ 1U)
            && table(i + 1, k) + table(k + 1, e) == target) {
          out.pairs.emplace_back(i, k);
          todo.emplace_back(k + 1, e);
          todo.emplace_back(i + 1, k);
          matched = true;
          break;
        }
      }
      if (matched) {
        continue;
      }
      if (weights[i] + table(i + 1, e) != target) {
        throw std::logic_error("cancellation table is inconsistent");
      }
      out.removed.push_back(i);
      todo.emplace_back(i + 1, e);
    }
    std::sort(out.removed.begin(), out.removed.end());
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
  }

}  // namespace conecalc::kernels
