#include "conecalc/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

#include "conecalc/error.hpp"

namespace conecalc {

  IntervalPartition IntervalPartition::from_sizes(std::vector<std::size_t> const& sizes) {
    if (sizes.empty()) {
      throw PreconditionViolated("a partition needs at least one interval");
    }
    std::vector<std::size_t> ends;
    std::size_t              total = 0;
    for (auto s : sizes) {
      if (s == 0) {
        throw PreconditionViolated("partition intervals must be non-empty");
      }
      total += s;
      ends.push_back(total);
    }
    return IntervalPartition(std::move(ends));
  }

  IntervalPartition IntervalPartition::from_ends(std::vector<std::size_t> ends) {
    if (ends.empty() || ends.front() == 0
        || std::adjacent_find(ends.begin(), ends.end(), std::greater_equal<>())
               != ends.end()) {
      throw PreconditionViolated("interval ends must be positive and increasing");
    }
    return IntervalPartition(std::move(ends));
  }

  std::vector<IntervalPartition> all_interval_partitions(std::size_t n) {
    std::vector<IntervalPartition> out;
    if (n == 0) {
      return out;
    }
    // Bit c of the mask cuts between c+1 and c+2.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
      std::vector<std::size_t> ends;
      for (std::size_t c = 0; c + 1 < n; ++c) {
        if (mask & (std::uint64_t{1} << c)) {
          ends.push_back(c + 1);
        }
      }
      ends.push_back(n);
      out.push_back(IntervalPartition::from_ends(std::move(ends)));
    }
    return out;
  }

  std::optional<PacketMatch> is_theta_packet(Word const& v, Word const& g) {
    if (g.empty() || !is_cyclically_reduced(g)) {
      throw PreconditionViolated("packets need a non-empty cyclically reduced word");
    }
    std::size_t const p = g.size();
    for (int sign : {1, -1}) {
      Word const base = sign > 0 ? g : g.inverse();
      for (std::size_t offset = 0; offset < p; ++offset) {
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i) {
          ok = v[i] == base[(offset + i) % p];
        }
        if (ok) {
          std::size_t const copies = std::max<std::size_t>(1, (offset + v.size() + p - 1) / p);
          return PacketMatch{offset, sign * static_cast<std::int64_t>(copies)};
        }
      }
    }
    return std::nullopt;
  }

  Collision find_interval_collision(IntervalPartition const& p1,
                                    IntervalPartition const& p2,
                                    std::size_t              ell) {
    std::size_t const n = p1.universe();
    if (p2.universe() != n) {
      throw PreconditionViolated("partitions cover different sets");
    }
    if (ell == 0 || n < ell * (p1.size() + p2.size())) {
      throw PreconditionViolated("collision needs ell > 0 and N >= ell (m1 + m2)");
    }
    // Row-major scan; intervals J_j ending before I_i starts never meet
    // I_i or any later interval, so the column pointer only moves forward.
    std::size_t start = 0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
      Interval const a = p1.interval(i);
      while (p2.interval(start).last < a.first) {
        ++start;
      }
      for (std::size_t j = start; j < p2.size(); ++j) {
        Interval const b = p2.interval(j);
        if (b.first > a.last) {
          break;
        }
        Interval const c{std::max(a.first, b.first), std::min(a.last, b.last)};
        if (c.length() >= ell) {
          return {i, j, c};
        }
      }
    }
    throw std::logic_error("no interval collision under the lemma's precondition");
  }

  CollisionSweep exhaustive_collision_sweep(std::size_t max_n, std::size_t max_ell) {
    CollisionSweep total;
    for (std::size_t n = 1; n <= max_n; ++n) {
      auto const          parts = all_interval_partitions(n);
      std::ptrdiff_t const count = static_cast<std::ptrdiff_t>(parts.size());
      for (std::size_t ell = 1; ell <= max_ell; ++ell) {
        std::uint64_t pairs = 0, failures = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : pairs, failures)
        for (std::ptrdiff_t a = 0; a < count; ++a) {
          auto const& p1 = parts[static_cast<std::size_t>(a)];
          for (auto const& p2 : parts) {
            if (n < ell * (p1.size() + p2.size())) {
              continue;
            }
            ++pairs;
            try {
              Collision c = find_interval_collision(p1, p2, ell);
              Interval  x = p1.interval(c.i), y = p2.interval(c.j);
              bool      ok = c.common.length() >= ell && c.common.first >= x.first
                        && c.common.last <= x.last && c.common.first >= y.first
                        && c.common.last <= y.last;
              failures += ok ? 0 : 1;
            } catch (std::logic_error const&) {
              ++failures;
            }
          }
        }
        total.pairs += pairs;
        total.failures += failures;
      }
    }
    return total;
  }

  SmallIntervalReport check_small_interval_bound(Word const&              g,
                                                 std::int64_t             n,
                                                 std::vector<std::size_t> removal,
                                                 Rational const&          tau_lower) {
    if (tau_lower <= 0) {
      throw PreconditionViolated("tau lower bound must be positive");
    }
    if (g.empty() || !is_cyclically_reduced(g)) {
      throw PreconditionViolated("g must be non-empty and cyclically reduced");
    }
    if (n < 0) {
      throw PreconditionViolated("power must be non-negative");
    }
    Word const        word = g.power(n);
    std::size_t const len  = word.size();
    std::sort(removal.begin(), removal.end());
    removal.erase(std::unique(removal.begin(), removal.end()), removal.end());
    if (!removal.empty() && removal.back() >= len) {
      throw PreconditionViolated("removal position outside g^n");
    }

    std::vector<bool> skip(len, false);
    for (auto p : removal) {
      skip[p] = true;
    }
    std::vector<std::size_t> stack;
    for (std::size_t p = 0; p < len; ++p) {
      if (skip[p]) {
        continue;
      }
      if (!stack.empty() && word[stack.back()] == word[p].inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(p);
      }
    }
    std::vector<bool> survives(len, false);
    SmallIntervalReport out;
    for (auto p : stack) {
      survives[p] = true;
      out.residual.push_back(word[p]);
    }
    for (std::size_t p = 0; p < len;) {
      if (survives[p]) {
        ++p;
        continue;
      }
      std::size_t q = p;
      while (q < len && !survives[q]) {
        ++q;
      }
      out.deleted.push_back({p + 1, q});
      out.total_length += q - p;
      p = q;
    }
    out.removed = removal.size();
    Rational const glen(g.size());
    out.bound     = glen * (1 + glen) / tau_lower * Rational(out.removed);
    out.count_ok  = out.deleted.size() <= out.removed;
    out.length_ok = Rational(out.total_length) <= out.bound;
    return out;
  }

}  // namespace conecalc
