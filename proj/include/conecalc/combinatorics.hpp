#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "conecalc/rational.hpp"
#include "conecalc/word.hpp"

namespace conecalc {

  // Closed interval [first, last] of {1, ..., N}.
  struct Interval {
    std::size_t first = 0;
    std::size_t last  = 0;

    std::size_t length() const noexcept {
      return last + 1 - first;
    }
    bool operator==(Interval const&) const = default;
  };

  // Partition of {1, ..., N} into non-empty consecutive intervals, stored as
  // the increasing right endpoints (the last one is N).
  class IntervalPartition {
   public:
    // Throws PreconditionViolated for an empty list or a zero size.
    static IntervalPartition from_sizes(std::vector<std::size_t> const& sizes);

    // Right endpoints, strictly increasing, ending at N >= 1.
    static IntervalPartition from_ends(std::vector<std::size_t> ends);

    std::size_t universe() const noexcept {
      return ends_.back();
    }
    std::size_t size() const noexcept {
      return ends_.size();
    }
    Interval interval(std::size_t i) const {
      return {i == 0 ? 1 : ends_[i - 1] + 1, ends_[i]};
    }
    std::vector<std::size_t> const& ends() const noexcept {
      return ends_;
    }

   private:
    explicit IntervalPartition(std::vector<std::size_t> ends)
        : ends_(std::move(ends)) {}
    std::vector<std::size_t> ends_;
  };

  // All 2^{N-1} interval partitions of {1, ..., N}.
  std::vector<IntervalPartition> all_interval_partitions(std::size_t n);

  struct PacketMatch {
    std::size_t  offset = 0;  // start of v inside the periodic word
    std::int64_t n      = 0;  // v is an interval of g^n starting at offset
  };

  // Whether v is an interval of g^n for some n != 0, trying n > 0 first and
  // then the smallest offset.  Throws PreconditionViolated unless g is
  // non-empty and cyclically reduced.
  std::optional<PacketMatch> is_theta_packet(Word const& v, Word const& g);

  struct Collision {
    std::size_t i = 0;  // index into the first partition
    std::size_t j = 0;  // index into the second partition
    Interval    common;
  };

  // First pair (I_i, J_j) in row-major order whose intersection has length
  // >= ell.  Throws PreconditionViolated if the partitions cover different
  // sets or N < ell (m1 + m2); a miss under the precondition is a
  // std::logic_error.
  Collision find_interval_collision(IntervalPartition const& p1,
                                    IntervalPartition const& p2,
                                    std::size_t              ell);

  struct CollisionSweep {
    std::uint64_t pairs    = 0;  // pairs meeting the precondition
    std::uint64_t failures = 0;
  };

  // Every partition pair of {1..N} for N <= max_n and every ell <= max_ell
  // satisfying the precondition; each returned collision is re-checked.
  CollisionSweep exhaustive_collision_sweep(std::size_t max_n, std::size_t max_ell);

  struct SmallIntervalReport {
    std::vector<Interval> deleted;  // maximal deleted runs of g^n, 1-based
    std::size_t           removed      = 0;  // m
    std::size_t           total_length = 0;
    Rational              bound;  // |g| (1 + |g|) m / tau_lower
    Word                  residual;
    bool                  count_ok  = false;
    bool                  length_ok = false;

    bool holds() const noexcept {
      return count_ok && length_ok;
    }
  };

  // Deletes `removal` (0-based positions in g^n, n >= 0) from g^n, reduces
  // left to right and measures which positions of g^n did not survive.
  // Throws PreconditionViolated if tau_lower <= 0 or g is not cyclically
  // reduced.
  SmallIntervalReport check_small_interval_bound(Word const&              g,
                                                 std::int64_t             n,
                                                 std::vector<std::size_t> removal,
                                                 Rational const&          tau_lower);

}  // namespace conecalc
