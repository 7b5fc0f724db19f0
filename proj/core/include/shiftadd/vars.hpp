#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "shiftadd/errors.hpp"

namespace shiftadd {

/// Which operand of A + (B >> D) a variable belongs to.
enum class var_kind : std::uint8_t { a = 0, b = 1, d = 2 };

/// One input bit. Index 0 is the least significant bit of its operand.
struct var_id {
  var_kind kind{};
  unsigned index{};

  friend constexpr auto operator<=>(const var_id&, const var_id&) = default;
};

constexpr var_id a_var(unsigned i) { return {var_kind::a, i}; }
constexpr var_id b_var(unsigned i) { return {var_kind::b, i}; }
constexpr var_id d_var(unsigned i) { return {var_kind::d, i}; }

/// Renders as "a3", "b0", "d1".
std::string to_string(var_id v);

/// Parses the to_string format; empty optional on malformed input.
std::optional<var_id> parse_var(std::string_view s);

/// Operand widths of a shifted addition instance.
///
/// d_width defaults to bit_width(n), the smallest width able to express a
/// shift of n positions.
struct sadd_params {
  unsigned n = 1;
  unsigned d_width = 1;

  sadd_params() = default;
  explicit sadd_params(unsigned n_, unsigned d_width_ = 0)
      : n(n_), d_width(d_width_ == 0 ? default_d_width(n_) : d_width_) {
    if (n < 1) throw std::invalid_argument("sadd_params: n must be >= 1");
    if (d_width < default_d_width(n))
      throw std::invalid_argument("sadd_params: d_width too small to express a shift of n");
  }

  static unsigned default_d_width(unsigned n) { return std::bit_width(n); }

  unsigned var_count() const { return 2 * n + d_width; }

  bool contains(var_id v) const {
    return v.index < (v.kind == var_kind::d ? d_width : n);
  }

  /// Dense index: a_i -> i, b_i -> n+i, d_i -> 2n+i.
  unsigned ordinal(var_id v) const;
  var_id var_at(unsigned ordinal) const;

  /// Declaration order a0..a_{n-1}, b0..b_{n-1}, d0..d_{d_width-1}.
  std::vector<var_id> all_vars() const;

  friend constexpr auto operator<=>(const sadd_params&, const sadd_params&) = default;
};

class assignment;

/// A Boolean function evaluable on assignments; backed by either the
/// integer oracle or a BDD evaluation.
using bool_fn = std::function<bool(const assignment&)>;

/// Partial or total assignment of input bits, tri-state per variable.
class assignment {
public:
  explicit assignment(sadd_params p)
      : params_(p), bits_(p.var_count(), unset_value) {}

  const sadd_params& params() const { return params_; }

  void set(var_id v, bool value);
  void unset(var_id v);
  std::optional<bool> get(var_id v) const;
  bool contains(var_id v) const { return get(v).has_value(); }

  std::size_t support_size() const { return count_; }
  bool is_total() const { return count_ == bits_.size(); }
  std::vector<var_id> support() const;

  /// Copies every set bit of `other` into this assignment. Conflicting
  /// values are a logic error; re-setting an equal value is fine.
  void overlay(const assignment& other);

  /// Like overlay but silently replaces existing values; the fast path for
  /// reusing one scratch assignment across many evaluations.
  void overwrite(const assignment& other);

  /// Integer value of the A/B/D bits; every bit of the operand must be set.
  std::uint64_t a_value() const { return operand_value(var_kind::a, params_.n); }
  std::uint64_t b_value() const { return operand_value(var_kind::b, params_.n); }
  std::uint64_t d_value() const { return operand_value(var_kind::d, params_.d_width); }

  static assignment from_integers(sadd_params p, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t d);

  friend bool operator==(const assignment&, const assignment&) = default;

private:
  static constexpr std::int8_t unset_value = -1;

  std::uint64_t operand_value(var_kind kind, unsigned width) const;

  sadd_params params_;
  std::vector<std::int8_t> bits_;
  std::size_t count_ = 0;
};

/// A fixed variable order: permutation[i] is the variable at level i
/// (level 0 is the top of the diagram).
class var_order {
public:
  var_order(sadd_params p, std::vector<var_id> permutation);

  static var_order natural(sadd_params p);
  static var_order random(sadd_params p, std::mt19937_64& rng);

  const sadd_params& params() const { return params_; }
  unsigned size() const { return static_cast<unsigned>(permutation_.size()); }
  unsigned level_of(var_id v) const { return levels_[params_.ordinal(v)]; }
  var_id var_at(unsigned level) const { return permutation_.at(level); }
  const std::vector<var_id>& permutation() const { return permutation_; }

private:
  sadd_params params_;
  std::vector<var_id> permutation_;
  std::vector<unsigned> levels_;  // ordinal -> level
};

}  // namespace shiftadd
