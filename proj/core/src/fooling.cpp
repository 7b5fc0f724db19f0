#include "shiftadd/fooling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "shiftadd/rng.hpp"

namespace shiftadd {

bool canonical_less(var_id lhs, var_id rhs) {
  if (lhs.kind != rhs.kind) return lhs.kind < rhs.kind;
  return lhs.index > rhs.index;
}

namespace {

unsigned y_ordinal(const sadd_params& p, var_id v) {
  return v.kind == var_kind::a ? v.index : p.n + v.index;
}

void check_size_window(std::size_t y_size, double omega, std::size_t left_size) {
  const double target = static_cast<double>(y_size) * omega;
  if (static_cast<double>(left_size) < std::floor(target) ||
      static_cast<double>(left_size) > std::ceil(target))
    throw std::invalid_argument(
        "balanced_partition: |L| = " + std::to_string(left_size) +
        " outside the balance window for omega");
}

std::string join_vars(const std::vector<var_id>& vars) {
  std::string out;
  for (const var_id v : vars) {
    if (!out.empty()) out += ',';
    out += to_string(v);
  }
  return out;
}

std::string join_pairs(const std::vector<index_pair>& pairs) {
  std::string out;
  for (const index_pair& q : pairs) {
    if (!out.empty()) out += ',';
    out += "(a" + std::to_string(q.a_index) + ",b" + std::to_string(q.b_index) + ")";
  }
  return out;
}

std::string assignment_text(const assignment& x, char sep) {
  auto vars = x.support();
  std::sort(vars.begin(), vars.end(), canonical_less);
  std::string out;
  for (const var_id v : vars) {
    if (!out.empty()) out += sep;
    out += to_string(v) + "=" + (*x.get(v) ? "1" : "0");
  }
  return out;
}

}  // namespace

balanced_partition::balanced_partition(sadd_params params, std::vector<var_id> left,
                                       double omega)
    : params_(params), omega_(omega), left_(std::move(left)),
      left_mask_(2 * params.n, false) {
  if (omega < 0.0 || omega > 1.0)
    throw std::invalid_argument("balanced_partition: omega outside [0, 1]");
  for (const var_id v : left_) {
    if (v.kind == var_kind::d)
      throw std::invalid_argument("balanced_partition: D variables are not "
                                  "key variables");
    if (!params_.contains(v))
      throw std::invalid_argument("balanced_partition: " + to_string(v) +
                                  " outside universe");
    if (left_mask_[y_ordinal(params_, v)])
      throw std::invalid_argument("balanced_partition: duplicate " + to_string(v));
    left_mask_[y_ordinal(params_, v)] = true;
  }
  check_size_window(2 * params_.n, omega_, left_.size());
  for (unsigned i = 0; i < params_.n; ++i) {
    if (!left_mask_[y_ordinal(params_, a_var(i))]) right_.push_back(a_var(i));
    if (!left_mask_[y_ordinal(params_, b_var(i))]) right_.push_back(b_var(i));
  }
  std::sort(left_.begin(), left_.end(), canonical_less);
  std::sort(right_.begin(), right_.end(), canonical_less);
}

bool balanced_partition::in_left(var_id v) const {
  if (v.kind == var_kind::d)
    throw std::invalid_argument("in_left: D variables are on neither side");
  return left_mask_[y_ordinal(params_, v)];
}

std::vector<balanced_partition> enumerate_partitions(sadd_params params,
                                                     double omega) {
  if (params.n > 8)
    throw enumeration_too_large("enumerate_partitions: n > 8; use "
                                "sample_partitions instead");
  const unsigned y_size = 2 * params.n;
  const double target = static_cast<double>(y_size) * omega;
  const auto lo = static_cast<unsigned>(std::floor(target));
  const auto hi = static_cast<unsigned>(std::ceil(target));

  std::vector<balanced_partition> out;
  std::vector<var_id> ys;
  for (unsigned i = 0; i < params.n; ++i) ys.push_back(a_var(i));
  for (unsigned i = 0; i < params.n; ++i) ys.push_back(b_var(i));

  for (unsigned k = lo; k <= hi; ++k) {
    std::vector<bool> select(y_size, false);
    std::fill(select.begin(), select.begin() + k, true);
    // std::prev_permutation walks all k-subsets of a sorted selector
    do {
      std::vector<var_id> left;
      for (unsigned i = 0; i < y_size; ++i)
        if (select[i]) left.push_back(ys[i]);
      out.emplace_back(params, std::move(left), omega);
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  return out;
}

std::vector<balanced_partition> sample_partitions(sadd_params params, double omega,
                                                  std::size_t count,
                                                  std::uint64_t seed) {
  const unsigned y_size = 2 * params.n;
  const double target = static_cast<double>(y_size) * omega;
  const auto lo = static_cast<std::uint64_t>(std::floor(target));
  const auto hi = static_cast<std::uint64_t>(std::ceil(target));

  std::mt19937_64 eng(rng::derive_seed(seed, 0x9a27));
  std::vector<var_id> ys;
  for (unsigned i = 0; i < params.n; ++i) ys.push_back(a_var(i));
  for (unsigned i = 0; i < params.n; ++i) ys.push_back(b_var(i));

  std::vector<balanced_partition> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const auto k = static_cast<std::size_t>(lo + rng::uniform_below(eng, hi - lo + 1));
    rng::shuffle(ys, eng);
    out.emplace_back(params, std::vector<var_id>(ys.begin(), ys.begin() + k), omega);
  }
  return out;
}

std::vector<index_pair> args_pairs(unsigned n, unsigned p) {
  if (p > n) throw std::out_of_range("args_pairs: p > n");
  std::vector<index_pair> out;
  for (unsigned i = 0; i + p < n; ++i) out.push_back({i, i + p});
  return out;
}

split_report split_pairs(const balanced_partition& partition, unsigned p) {
  const unsigned n = partition.params().n;
  split_report report;
  report.p = p;
  report.args = args_pairs(n, p);
  for (const index_pair& q : report.args) {
    if (partition.in_left(a_var(q.a_index)) != partition.in_left(b_var(q.b_index)))
      report.split.push_back(q);
  }
  for (unsigned i = 0; i < n; ++i) {
    (partition.in_left(a_var(i)) ? report.a_left : report.a_right) += 1;
    (partition.in_left(b_var(i)) ? report.b_left : report.b_right) += 1;
  }
  return report;
}

split_sum_result sum_split_lower_bound(const balanced_partition& partition) {
  const unsigned n = partition.params().n;
  split_sum_result result;
  for (unsigned p = 0; p <= n; ++p)
    result.sum += split_pairs(partition, p).split.size();
  result.bound = static_cast<double>(n) * n / 4.0;
  result.holds = 4 * result.sum >= static_cast<std::size_t>(n) * n;
  return result;
}

p_choice choose_p(const balanced_partition& partition) {
  const unsigned n = partition.params().n;
  p_choice best;
  for (unsigned p = 0; p <= n; ++p) {
    split_report report = split_pairs(partition, p);
    if (p == 0 || report.split.size() > best.report.split.size())
      best.report = std::move(report);
  }
  best.meets_quarter_bound = 4 * best.report.split.size() >= n;
  return best;
}

fooling_set::fooling_set(balanced_partition partition, unsigned p,
                         assignment context, std::vector<index_pair> split)
    : partition_(std::move(partition)), p_(p), context_(std::move(context)),
      split_(std::move(split)), generated_(true) {
  if (split_.size() > 63)
    throw enumeration_too_large("fooling_set: split too large to index");
}

fooling_set::fooling_set(balanced_partition partition, unsigned p,
                         assignment context,
                         std::vector<std::pair<assignment, assignment>> pairs)
    : partition_(std::move(partition)), p_(p), context_(std::move(context)),
      explicit_pairs_(std::move(pairs)) {
  for (const auto& [l, r] : explicit_pairs_) {
    auto ls = l.support();
    auto rs = r.support();
    std::sort(ls.begin(), ls.end(), canonical_less);
    std::sort(rs.begin(), rs.end(), canonical_less);
    if (ls != partition_.left() || rs != partition_.right())
      throw std::invalid_argument("fooling_set: pair supports must be exactly "
                                  "L and R");
  }
}

std::uint64_t fooling_set::size() const {
  if (!generated_) return explicit_pairs_.size();
  return std::uint64_t{1} << split_.size();
}

std::pair<assignment, assignment> fooling_set::pair_at(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("fooling_set: pair index");
  if (!generated_) return explicit_pairs_[static_cast<std::size_t>(index)];

  assignment l(partition_.params());
  assignment r(partition_.params());
  const auto place = [&](var_id v, bool value) {
    (partition_.in_left(v) ? l : r).set(v, value);
  };
  for (const var_id v : partition_.left())
    if (const auto bit = context_.get(v)) l.set(v, *bit);
  for (const var_id v : partition_.right())
    if (const auto bit = context_.get(v)) r.set(v, *bit);
  for (std::size_t t = 0; t < split_.size(); ++t) {
    const bool u_value = ((index >> t) & 1) == 0;  // pair 0 extends (1, 0)
    place(a_var(split_[t].a_index), u_value);
    place(b_var(split_[t].b_index), !u_value);
  }
  return {std::move(l), std::move(r)};
}

std::vector<std::pair<assignment, assignment>> fooling_set::materialize() const {
  if (size() > (std::uint64_t{1} << 20))
    throw enumeration_too_large("fooling_set: too many pairs to materialize");
  std::vector<std::pair<assignment, assignment>> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t i = 0; i < size(); ++i) out.push_back(pair_at(i));
  return out;
}

fooling_set build_fooling_set(const balanced_partition& partition) {
  const sadd_params params = partition.params();
  const unsigned n = params.n;
  const p_choice choice = choose_p(partition);
  const unsigned p = choice.report.p;
  const unsigned m = n - p;

  assignment context(params);
  for (unsigned i = m; i < n; ++i) context.set(a_var(i), true);   // rule 1
  for (unsigned i = 0; i < p; ++i) context.set(b_var(i), false);  // rule 2
  for (unsigned i = 0; i < params.d_width; ++i)                   // rule 3
    context.set(d_var(i), (p >> i) & 1);
  std::vector<bool> is_split(m, false);
  for (const index_pair& q : choice.report.split) is_split[q.a_index] = true;
  for (unsigned i = 0; i < m; ++i) {                              // rule 4
    if (!is_split[i]) {
      context.set(a_var(i), true);
      context.set(b_var(i + p), false);
    }
  }
  return {partition, p, std::move(context), choice.report.split};
}

verify_result verify_fooling_set(const bool_fn& f, const fooling_set& fs,
                                 verify_options options) {
  verify_result result;

  std::vector<std::uint64_t> indices;
  if (fs.size() <= options.max_pairs) {
    indices.resize(static_cast<std::size_t>(fs.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  } else {
    std::mt19937_64 eng(rng::derive_seed(options.seed, fs.size()));
    indices = rng::sample_distinct(eng, fs.size(),
                                   static_cast<std::size_t>(options.max_pairs));
    std::sort(indices.begin(), indices.end());
    result.subsampled = true;
  }
  result.pairs_checked = indices.size();

  std::vector<std::pair<assignment, assignment>> pairs;
  pairs.reserve(indices.size());
  for (const std::uint64_t i : indices) pairs.push_back(fs.pair_at(i));

  assignment scratch = fs.context();
  const auto evaluate = [&](const assignment& l, const assignment& r) {
    scratch.overwrite(l);
    scratch.overwrite(r);
    ++result.evaluations;
    return f(scratch);
  };

  // (a) identical diagonal
  bool diagonal = false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const bool value = evaluate(pairs[i].first, pairs[i].second);
    if (i == 0) {
      diagonal = value;
    } else if (value != diagonal) {
      result.witness = verify_witness{indices[0], indices[i], diagonal,
                                      value, value};
      return result;
    }
  }

  // (b) every two distinct pairs disagree on at least one crossing
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const bool cross_ij = evaluate(pairs[i].first, pairs[j].second);
      if (cross_ij != diagonal) continue;
      const bool cross_ji = evaluate(pairs[j].first, pairs[i].second);
      if (cross_ji != diagonal) continue;
      result.witness =
          verify_witness{indices[i], indices[j], diagonal, cross_ij, cross_ji};
      return result;
    }
  }
  result.valid = true;
  return result;
}

bool msb_case_formula(const assignment& x, const fooling_set& fs) {
  const sadd_params params = fs.partition().params();
  const unsigned n = params.n;
  const unsigned p = fs.shift();
  const unsigned m = n - p;

  for (unsigned i = 0; i < n; ++i) {
    if (!x.contains(a_var(i)) || !x.contains(b_var(i)))
      throw incomplete_assignment("msb_case_formula: all key bits must be set");
  }
  for (const var_id v : fs.context().support()) {
    const auto expected = fs.context().get(v);
    const auto actual = x.get(v);
    if (actual && *actual != *expected)
      throw not_applicable_error("msb_case_formula: " + to_string(v) +
                                 " contradicts the fixed context");
  }

  if (m == 0) return true;  // p = n: sum is A = all ones, MSB = 1

  const auto u = [&](unsigned i) { return *x.get(a_var(i)); };
  const auto v = [&](unsigned i) { return *x.get(b_var(i + p)); };

  bool carry = false;
  for (unsigned i = 0; i + 1 < m; ++i)
    if (u(i) == v(i)) carry = u(i);  // highest agreeing position wins

  const bool u_top = u(m - 1);
  const bool v_top = v(m - 1);
  if (p == 0) return u_top ^ v_top ^ carry;
  const bool majority = (u_top && v_top) || (carry && (u_top ^ v_top));
  return !majority;
}

std::size_t subfunction_count(const bool_fn& f, const balanced_partition& partition,
                              const fooling_set& fs) {
  const sadd_params params = partition.params();
  if (partition.right().size() + params.d_width > 20)
    throw enumeration_too_large("subfunction_count: tabulation too large");

  // Everything not pinned by the context or by an l varies in the table.
  std::vector<var_id> free_vars;
  for (const var_id v : params.all_vars()) {
    if (fs.context().contains(v)) continue;
    if (v.kind != var_kind::d && partition.in_left(v)) continue;
    free_vars.push_back(v);
  }

  const auto pairs = fs.materialize();
  const std::size_t table_bits = free_vars.size();
  const std::size_t table_words = ((std::size_t{1} << table_bits) + 63) / 64;

  std::set<std::vector<std::uint64_t>> tables;
  assignment scratch = fs.context();
  for (const auto& [l, r] : pairs) {
    scratch.overwrite(l);
    std::vector<std::uint64_t> table(table_words, 0);
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << table_bits);
         ++pattern) {
      for (std::size_t t = 0; t < free_vars.size(); ++t)
        scratch.set(free_vars[t], (pattern >> t) & 1);
      if (f(scratch)) table[pattern / 64] |= std::uint64_t{1} << (pattern % 64);
    }
    tables.insert(std::move(table));
  }
  return tables.size();
}

std::string to_text(const split_report& report) {
  std::ostringstream os;
  os << "p=" << report.p << '\n';
  os << "args=" << join_pairs(report.args) << '\n';
  os << "split=" << join_pairs(report.split) << '\n';
  os << "sizes=A_L:" << report.a_left << ",A_R:" << report.a_right
     << ",B_L:" << report.b_left << ",B_R:" << report.b_right << '\n';
  return os.str();
}

std::string to_text(const fooling_set& fs) {
  const sadd_params& params = fs.partition().params();
  std::ostringstream os;
  os << "n=" << params.n << " d_width=" << params.d_width
     << " omega=" << fs.partition().omega() << '\n';
  os << "L=" << join_vars(fs.partition().left()) << '\n';
  os << "R=" << join_vars(fs.partition().right()) << '\n';
  os << "p=" << fs.shift() << '\n';
  os << "split=" << join_pairs(fs.split()) << '\n';
  os << "context=" << assignment_text(fs.context(), ' ') << '\n';
  os << "pairs=" << fs.size() << '\n';
  if (fs.size() <= 64) {
    for (const auto& [l, r] : fs.materialize())
      os << "pair l={" << assignment_text(l, ',') << "} r={"
         << assignment_text(r, ',') << "}\n";
  }
  return os.str();
}

}  // namespace shiftadd
