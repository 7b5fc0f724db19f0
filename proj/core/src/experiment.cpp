#include "shiftadd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "shiftadd/rng.hpp"

namespace shiftadd {

const char* to_string(build_target t) {
  return t == build_target::msb_only ? "msb_only" : "all_outputs";
}

std::optional<build_target> parse_target(std::string_view s) {
  if (s == "msb_only") return build_target::msb_only;
  if (s == "all_outputs") return build_target::all_outputs;
  return std::nullopt;
}

namespace {

// Smallest k with k^den >= 2^num, i.e. ceil(2^{num/den}).
std::uint64_t ceil_pow2_frac(unsigned num, unsigned den) {
  if (num == 0) return 1;
  if (num % den == 0) return std::uint64_t{1} << (num / den);
  std::uint64_t lo = 1, hi = std::uint64_t{1} << (num / den + 1);
  const auto big_enough = [&](std::uint64_t k) {
    unsigned __int128 power = 1;
    for (unsigned i = 0; i < den; ++i) power *= k;
    return power >= (static_cast<unsigned __int128>(1) << num);
  };
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (big_enough(mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

std::vector<bdd> target_roots(bdd_manager& manager, build_target target) {
  const bitvec_fn out = build_sadd(manager, manager.params());
  if (target == build_target::all_outputs) return out.bits;
  return {output_bit(out, manager.params().n - 1)};
}

}  // namespace

std::uint64_t proven_width_bound(unsigned n) { return ceil_pow2_frac(n, 4); }

std::uint64_t reference_figure_bound(unsigned n) {
  if (n < 2) return 1;
  return ceil_pow2_frac(n - 2, 2);
}

std::vector<bound_entry> lower_bound_curve(std::span<const unsigned> n_values) {
  std::vector<bound_entry> out;
  out.reserve(n_values.size());
  for (const unsigned n : n_values)
    out.push_back({n, proven_width_bound(n), reference_figure_bound(n)});
  return out;
}

experiment_record measure_order(const var_order& order, build_target target,
                                std::size_t node_cap) {
  bdd_manager manager(order, node_cap);
  const std::vector<bdd> roots = target_roots(manager, target);
  experiment_record record;
  record.n = order.params().n;
  record.ordering = order.permutation();
  record.size = manager.dag_size(roots);
  record.width = manager.max_level_width(roots);
  record.target = target;
  return record;
}

experiment_result run_experiment(const experiment_config& config) {
  if (config.trials < 1 || config.n_values.empty())
    throw std::invalid_argument("run_experiment: need at least one n and one trial");

  struct task {
    unsigned n;
    unsigned trial;
  };
  std::vector<task> tasks;
  for (const unsigned n : config.n_values)
    for (unsigned t = 0; t < config.trials; ++t) tasks.push_back({n, t});

  std::vector<experiment_record> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || failed.load()) return;
      try {
        const auto [n, trial] = tasks[i];
        const sadd_params params(n);
        const std::uint64_t trial_seed = rng::derive_seed(config.seed, n, trial);
        std::mt19937_64 eng(trial_seed);
        const var_order order = var_order::random(params, eng);
        experiment_record record = measure_order(order, config.target, config.node_cap);
        record.trial = trial;
        record.seed = trial_seed;
        if (config.target == build_target::msb_only &&
            record.width < proven_width_bound(n))
          throw theorem_violation(
              "width " + std::to_string(record.width) + " below proven bound " +
              std::to_string(proven_width_bound(n)) + " at n=" + std::to_string(n) +
              " seed=" + std::to_string(trial_seed));
        records[i] = std::move(record);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  experiment_result result;
  result.records = std::move(records);
  for (const unsigned n : config.n_values) {
    experiment_summary s{n, SIZE_MAX, SIZE_MAX, proven_width_bound(n)};
    for (const experiment_record& r : result.records) {
      if (r.n != n) continue;
      s.min_size = std::min(s.min_size, r.size);
      s.min_width = std::min(s.min_width, r.width);
    }
    result.summary.push_back(s);
  }
  return result;
}

experiment_result run_exhaustive_orders(unsigned n, build_target target,
                                        std::size_t node_cap) {
  const sadd_params params(n);
  if (params.var_count() > 8)
    throw enumeration_too_large("run_exhaustive_orders: more than 8 variables");

  std::vector<var_id> perm = params.all_vars();
  std::sort(perm.begin(), perm.end());
  experiment_result result;
  unsigned trial = 0;
  do {
    experiment_record record = measure_order(var_order(params, perm), target, node_cap);
    record.trial = trial++;
    if (target == build_target::msb_only && record.width < proven_width_bound(n))
      throw theorem_violation("width " + std::to_string(record.width) +
                              " below proven bound at n=" + std::to_string(n));
    result.records.push_back(std::move(record));
  } while (std::next_permutation(perm.begin(), perm.end()));

  experiment_summary s{n, SIZE_MAX, SIZE_MAX, proven_width_bound(n)};
  for (const experiment_record& r : result.records) {
    s.min_size = std::min(s.min_size, r.size);
    s.min_width = std::min(s.min_width, r.width);
  }
  result.summary.push_back(s);
  return result;
}

void emit_csv(std::span<const experiment_record> records, std::ostream& os) {
  os << "n,trial,target,seed,size,width\n";
  for (const experiment_record& r : records)
    os << r.n << ',' << r.trial << ',' << to_string(r.target) << ',' << r.seed
       << ',' << r.size << ',' << r.width << '\n';
}

void emit_summary_csv(std::span<const experiment_summary> summary,
                      std::ostream& os) {
  os << "n,min_size,min_width,lower_bound\n";
  for (const experiment_summary& s : summary)
    os << s.n << ',' << s.min_size << ',' << s.min_width << ',' << s.lower_bound
       << '\n';
}

namespace {

template <typename Rows>
void write_file(const Rows& rows, const std::filesystem::path& path,
                void (*emit)(Rows, std::ostream&)) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit(rows, os);
  os.flush();
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

void emit_csv(std::span<const experiment_record> records,
              const std::filesystem::path& path) {
  write_file<std::span<const experiment_record>>(records, path, emit_csv);
}

void emit_summary_csv(std::span<const experiment_summary> summary,
                      const std::filesystem::path& path) {
  write_file<std::span<const experiment_summary>>(summary, path, emit_summary_csv);
}

lemma_report verify_lemma(unsigned n, bool exhaustive, std::size_t samples,
                          std::uint64_t seed, verify_options options) {
  if (exhaustive && n > 6)
    throw enumeration_too_large("verify_lemma: exhaustive mode guarded to n <= 6");

  const sadd_params params(n);
  const std::vector<balanced_partition> partitions =
      exhaustive ? enumerate_partitions(params, 0.5)
                 : sample_partitions(params, 0.5, samples, seed);

  const bool_fn oracle = [params](const assignment& x) {
    return oracle_sadd_bit(params, x.a_value(), x.b_value(), x.d_value(),
                           params.n - 1);
  };

  lemma_report report;
  report.n = n;
  report.exhaustive = exhaustive;
  report.partitions_checked = partitions.size();
  report.min_split = SIZE_MAX;
  report.min_pairs = UINT64_MAX;

  for (const balanced_partition& partition : partitions) {
    partition_check check{partition};
    const split_sum_result sum = sum_split_lower_bound(partition);
    check.split_sum = sum.sum;
    check.sum_bound_holds = sum.holds;

    const fooling_set fs = build_fooling_set(partition);
    check.split_size = fs.split().size();
    check.pairs = fs.size();
    check.quarter_bound_holds = 4 * check.split_size >= n;

    const verify_result verdict = verify_fooling_set(oracle, fs, options);
    check.verify_valid = verdict.valid;
    check.subsampled = verdict.subsampled;

    report.min_split = std::min(report.min_split, check.split_size);
    report.min_pairs = std::min(report.min_pairs, check.pairs);
    if (check.subsampled) ++report.subsampled_partitions;
    if (!check.sum_bound_holds) report.sum_bound_violations.push_back(check);
    const bool pairs_exponential = check.pairs >= proven_width_bound(n);
    if (!check.verify_valid || !check.quarter_bound_holds || !pairs_exponential)
      report.construction_failures.push_back(check);
  }
  return report;
}

namespace {

std::string left_side_text(const balanced_partition& partition) {
  std::string out;
  for (const var_id v : partition.left()) {
    if (!out.empty()) out += ',';
    out += to_string(v);
  }
  return out;
}

}  // namespace

std::string to_text(const lemma_report& report) {
  std::ostringstream os;
  os << "n=" << report.n << " mode=" << (report.exhaustive ? "exhaustive" : "sample")
     << " partitions=" << report.partitions_checked << '\n';
  os << "min_split=" << report.min_split << " min_pairs=" << report.min_pairs
     << " required_pairs=" << proven_width_bound(report.n) << '\n';
  os << "subsampled_partitions=" << report.subsampled_partitions << '\n';
  os << "construction_failures=" << report.construction_failures.size() << '\n';
  for (const partition_check& c : report.construction_failures)
    os << "  FAIL L=" << left_side_text(c.partition) << " split=" << c.split_size
       << " pairs=" << c.pairs << " valid=" << c.verify_valid << '\n';
  os << "sum_bound_violations=" << report.sum_bound_violations.size() << '\n';
  for (std::size_t i = 0; i < std::min<std::size_t>(report.sum_bound_violations.size(), 5); ++i) {
    const partition_check& c = report.sum_bound_violations[i];
    os << "  sum L=" << left_side_text(c.partition) << " sum=" << c.split_sum
       << " claimed_bound=" << (static_cast<double>(report.n) * report.n / 4.0)
       << '\n';
  }
  return os.str();
}

width_consequence_result check_width_consequence(const fooling_set& fs,
                                                 const var_order& order,
                                                 std::size_t node_cap) {
  const balanced_partition& partition = fs.partition();
  unsigned max_left = 0, min_right = order.size();
  for (const var_id v : partition.left())
    max_left = std::max(max_left, order.level_of(v));
  for (const var_id v : partition.right())
    min_right = std::min(min_right, order.level_of(v));
  if (max_left >= min_right)
    throw std::invalid_argument("check_width_consequence: order does not place "
                                "all of L above all of R");

  bdd_manager manager(order, node_cap);
  const std::vector<bdd> roots = target_roots(manager, build_target::msb_only);

  width_consequence_result result;
  result.boundary_level = min_right;
  result.required = fs.size();
  for (const auto& [level, width] : manager.level_widths(roots))
    if (level >= min_right) result.nodes_at_or_below += width;
  result.holds = result.nodes_at_or_below >= result.required;
  return result;
}

var_order left_first_order(const balanced_partition& partition, std::uint64_t seed) {
  const sadd_params params = partition.params();
  std::mt19937_64 eng(rng::derive_seed(seed, 0x1f0d));
  std::vector<var_id> left = partition.left();
  std::vector<var_id> right = partition.right();
  rng::shuffle(left, eng);
  rng::shuffle(right, eng);
  std::vector<var_id> perm;
  perm.insert(perm.end(), left.begin(), left.end());
  perm.insert(perm.end(), right.begin(), right.end());
  for (unsigned i = 0; i < params.d_width; ++i) {
    const auto pos = static_cast<std::size_t>(rng::uniform_below(eng, perm.size() + 1));
    perm.insert(perm.begin() + static_cast<std::ptrdiff_t>(pos), d_var(i));
  }
  return {params, std::move(perm)};
}

}  // namespace shiftadd
