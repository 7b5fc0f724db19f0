#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftadd/vars.hpp"

namespace shiftadd {

/// Ordering used everywhere variables are listed: kind a < b < d, index
/// descending within a kind (so a1 comes before a0, matching the usual
/// most-significant-first way of writing operands).
bool canonical_less(var_id lhs, var_id rhs);

/// A split (L, R) of the key variables Y = A-bits + B-bits with balance
/// weight omega: floor(|Y|*omega) <= |L| <= ceil(|Y|*omega). D variables
/// never appear on either side.
class balanced_partition {
public:
  balanced_partition(sadd_params params, std::vector<var_id> left,
                     double omega = 0.5);

  const sadd_params& params() const { return params_; }
  double omega() const { return omega_; }
  const std::vector<var_id>& left() const { return left_; }
  const std::vector<var_id>& right() const { return right_; }

  /// Membership test; `v` must be an A or B variable.
  bool in_left(var_id v) const;

  friend bool operator==(const balanced_partition&, const balanced_partition&) = default;

private:
  sadd_params params_;
  double omega_ = 0.5;
  std::vector<var_id> left_;
  std::vector<var_id> right_;
  std::vector<bool> left_mask_;  // indexed by Y ordinal
};

/// Every balanced partition of the 2n key variables for the given weight.
/// Guarded to n <= 8; use sample_partitions beyond that.
std::vector<balanced_partition> enumerate_partitions(sadd_params params,
                                                     double omega = 0.5);

/// `count` partitions drawn uniformly (sides chosen by seeded shuffle).
std::vector<balanced_partition> sample_partitions(sadd_params params, double omega,
                                                  std::size_t count,
                                                  std::uint64_t seed);

/// A pair (a_i, b_j) of bits that a shift by p = j - i aligns for addition.
struct index_pair {
  unsigned a_index;
  unsigned b_index;
  friend bool operator==(const index_pair&, const index_pair&) = default;
};

/// The aligned pairs (a_i, b_{i+p}) for 0 <= i <= n-1-p. Empty for p = n.
std::vector<index_pair> args_pairs(unsigned n, unsigned p);

/// Aligned pairs of one shift value, classified against a partition.
struct split_report {
  unsigned p = 0;
  std::vector<index_pair> args;
  std::vector<index_pair> split;  // the args pairs crossing the partition
  std::size_t a_left = 0, a_right = 0, b_left = 0, b_right = 0;
};

split_report split_pairs(const balanced_partition& partition, unsigned p);

struct split_sum_result {
  std::size_t sum = 0;    // sum of |split| over p = 0..n
  double bound = 0.0;     // n^2 / 4
  bool holds = false;     // 4 * sum >= n^2, compared in exact integers
};

/// Total crossing pairs over all shifts versus the claimed n^2/4 bound.
/// Note: the bound does not hold for every partition (see the tests for
/// counterexamples); the flag reports what is actually true.
split_sum_result sum_split_lower_bound(const balanced_partition& partition);

struct p_choice {
  split_report report;             // report.p is the chosen shift
  bool meets_quarter_bound = false;  // 4 * |split| >= n
};

/// The shift maximizing |split|, smallest p on ties.
p_choice choose_p(const balanced_partition& partition);

/// A family of (l, r) assignment pairs over (L, R) together with the fixed
/// context that embeds them into full inputs:
///   - A bits above the embedded window are 1 (carry propagation),
///   - B bits below the window are 0 (shifted out),
///   - D encodes the chosen shift p,
///   - aligned pairs not crossing the partition are pinned to (1, 0).
/// Pair k of the generated family gives the crossing pair at split position
/// t the values (u, v) = (s, !s) with s = !((k >> t) & 1), so pair 0
/// extends the (1, 0) pinning and the family has exactly 2^|split| members.
class fooling_set {
public:
  /// Generated family over the crossing pairs.
  fooling_set(balanced_partition partition, unsigned p, assignment context,
              std::vector<index_pair> split);

  /// Explicitly listed pairs (hand-built sets). Each l must assign exactly
  /// L and each r exactly R.
  fooling_set(balanced_partition partition, unsigned p, assignment context,
              std::vector<std::pair<assignment, assignment>> pairs);

  const balanced_partition& partition() const { return partition_; }
  unsigned shift() const { return p_; }
  const assignment& context() const { return context_; }
  const std::vector<index_pair>& split() const { return split_; }
  bool generated() const { return generated_; }

  std::uint64_t size() const;
  std::pair<assignment, assignment> pair_at(std::uint64_t index) const;

  /// All pairs in index order; guarded to 2^20 members.
  std::vector<std::pair<assignment, assignment>> materialize() const;

private:
  balanced_partition partition_;
  unsigned p_ = 0;
  assignment context_;
  std::vector<index_pair> split_;
  bool generated_ = false;
  std::vector<std::pair<assignment, assignment>> explicit_pairs_;
};

/// Rules 1-4 applied to the chosen shift of the partition.
fooling_set build_fooling_set(const balanced_partition& partition);

struct verify_witness {
  std::uint64_t first_index = 0;   // family indices of the offending pairs
  std::uint64_t second_index = 0;
  bool diagonal_value = false;
  bool cross_first = false;   // f(l_first . r_second)
  bool cross_second = false;  // f(l_second . r_first)
};

struct verify_options {
  std::uint64_t max_pairs = 1024;  // subsample cap for the pairwise check
  std::uint64_t seed = 0x5eedULL;
};

struct verify_result {
  bool valid = false;
  std::optional<verify_witness> witness;
  std::uint64_t pairs_checked = 0;
  bool subsampled = false;
  std::uint64_t evaluations = 0;
};

/// Checks the two-sided fooling property: all diagonal evaluations
/// f(l_i . r_i) agree, and for every two distinct pairs at least one of the
/// crossings f(l_i . r_j), f(l_j . r_i) differs from the diagonal value.
/// Families larger than max_pairs are checked on a seeded subsample.
verify_result verify_fooling_set(const bool_fn& f, const fooling_set& fs,
                                 verify_options options = {});

/// Closed form of the output MSB on the rule-constrained family: with
/// (u_i, v_i) the aligned window pairs and c the value at the highest
/// position below the top where u and v agree (0 if none), the MSB is
/// u_top ^ v_top ^ c for p = 0 and !majority(u_top, v_top, c) otherwise
/// (for p >= 1 the top operand bits are pinned to 1 and 0, so the MSB is
/// the negated carry out of the window). Throws not_applicable_error when
/// x contradicts the fixed context.
bool msb_case_formula(const assignment& x, const fooling_set& fs);

/// Number of distinct functions of the unfixed variables obtained by
/// pinning the context and each l of the family. Guarded to
/// |R| + d_width <= 20 tabulation bits.
std::size_t subfunction_count(const bool_fn& f, const balanced_partition& partition,
                              const fooling_set& fs);

std::string to_text(const split_report& report);
std::string to_text(const fooling_set& fs);

}  // namespace shiftadd
