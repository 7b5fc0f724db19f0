#include "shiftadd/vars.hpp"

#include <algorithm>
#include <charconv>

#include "shiftadd/rng.hpp"

namespace shiftadd {

std::string to_string(var_id v) {
  static constexpr char prefix[] = {'a', 'b', 'd'};
  return prefix[static_cast<int>(v.kind)] + std::to_string(v.index);
}

std::optional<var_id> parse_var(std::string_view s) {
  if (s.size() < 2) return std::nullopt;
  var_kind kind;
  switch (s[0]) {
    case 'a': kind = var_kind::a; break;
    case 'b': kind = var_kind::b; break;
    case 'd': kind = var_kind::d; break;
    default: return std::nullopt;
  }
  unsigned index = 0;
  const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), index);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return var_id{kind, index};
}

unsigned sadd_params::ordinal(var_id v) const {
  if (!contains(v))
    throw std::out_of_range("variable " + shiftadd::to_string(v) + " outside universe");
  switch (v.kind) {
    case var_kind::a: return v.index;
    case var_kind::b: return n + v.index;
    default: return 2 * n + v.index;
  }
}

var_id sadd_params::var_at(unsigned ordinal) const {
  if (ordinal < n) return a_var(ordinal);
  if (ordinal < 2 * n) return b_var(ordinal - n);
  if (ordinal < var_count()) return d_var(ordinal - 2 * n);
  throw std::out_of_range("ordinal outside universe");
}

std::vector<var_id> sadd_params::all_vars() const {
  std::vector<var_id> out;
  out.reserve(var_count());
  for (unsigned i = 0; i < var_count(); ++i) out.push_back(var_at(i));
  return out;
}

void assignment::set(var_id v, bool value) {
  auto& slot = bits_[params_.ordinal(v)];
  if (slot == unset_value) ++count_;
  slot = value ? 1 : 0;
}

void assignment::unset(var_id v) {
  auto& slot = bits_[params_.ordinal(v)];
  if (slot != unset_value) --count_;
  slot = unset_value;
}

std::optional<bool> assignment::get(var_id v) const {
  const auto slot = bits_[params_.ordinal(v)];
  if (slot == unset_value) return std::nullopt;
  return slot != 0;
}

std::vector<var_id> assignment::support() const {
  std::vector<var_id> out;
  out.reserve(count_);
  for (unsigned i = 0; i < bits_.size(); ++i)
    if (bits_[i] != unset_value) out.push_back(params_.var_at(i));
  return out;
}

void assignment::overlay(const assignment& other) {
  if (other.params_ != params_)
    throw std::invalid_argument("assignment::overlay: parameter mismatch");
  for (unsigned i = 0; i < bits_.size(); ++i) {
    if (other.bits_[i] == unset_value) continue;
    if (bits_[i] != unset_value && bits_[i] != other.bits_[i])
      throw std::logic_error("assignment::overlay: conflicting values for " +
                             shiftadd::to_string(params_.var_at(i)));
    if (bits_[i] == unset_value) ++count_;
    bits_[i] = other.bits_[i];
  }
}

void assignment::overwrite(const assignment& other) {
  if (other.params_ != params_)
    throw std::invalid_argument("assignment::overwrite: parameter mismatch");
  for (unsigned i = 0; i < bits_.size(); ++i) {
    if (other.bits_[i] == unset_value) continue;
    if (bits_[i] == unset_value) ++count_;
    bits_[i] = other.bits_[i];
  }
}

std::uint64_t assignment::operand_value(var_kind kind, unsigned width) const {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    const auto bit = get(var_id{kind, i});
    if (!bit)
      throw incomplete_assignment("bit " + shiftadd::to_string(var_id{kind, i}) +
                                  " is unset");
    value |= static_cast<std::uint64_t>(*bit) << i;
  }
  return value;
}

assignment assignment::from_integers(sadd_params p, std::uint64_t a, std::uint64_t b,
                                     std::uint64_t d) {
  assignment out(p);
  for (unsigned i = 0; i < p.n; ++i) {
    out.set(a_var(i), (a >> i) & 1);
    out.set(b_var(i), (b >> i) & 1);
  }
  for (unsigned i = 0; i < p.d_width; ++i) out.set(d_var(i), (d >> i) & 1);
  return out;
}

var_order::var_order(sadd_params p, std::vector<var_id> permutation)
    : params_(p), permutation_(std::move(permutation)), levels_(p.var_count(), 0) {
  if (permutation_.size() != params_.var_count())
    throw std::invalid_argument("var_order: permutation has wrong length");
  std::vector<bool> seen(params_.var_count(), false);
  for (unsigned level = 0; level < permutation_.size(); ++level) {
    const unsigned ord = params_.ordinal(permutation_[level]);
    if (seen[ord])
      throw std::invalid_argument("var_order: duplicate variable " +
                                  shiftadd::to_string(permutation_[level]));
    seen[ord] = true;
    levels_[ord] = level;
  }
}

var_order var_order::natural(sadd_params p) { return var_order(p, p.all_vars()); }

var_order var_order::random(sadd_params p, std::mt19937_64& eng) {
  auto perm = p.all_vars();
  rng::shuffle(perm, eng);
  return var_order(p, std::move(perm));
}

}  // namespace shiftadd
