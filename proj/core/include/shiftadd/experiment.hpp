#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "shiftadd/bdd.hpp"
#include "shiftadd/fooling.hpp"
#include "shiftadd/sadd.hpp"

namespace shiftadd {

enum class build_target { msb_only, all_outputs };

const char* to_string(build_target t);
std::optional<build_target> parse_target(std::string_view s);

struct experiment_config {
  std::vector<unsigned> n_values;
  unsigned trials = 50;
  std::uint64_t seed = 0;
  build_target target = build_target::all_outputs;
  double omega = 0.5;
  std::size_t node_cap = bdd_manager::default_node_limit;
  unsigned jobs = 1;  // trials run on private managers, so any value is safe
};

struct experiment_record {
  unsigned n = 0;
  unsigned trial = 0;
  std::vector<var_id> ordering;
  std::size_t size = 0;
  std::size_t width = 0;
  std::uint64_t seed = 0;  // per-trial derived seed
  build_target target = build_target::all_outputs;
};

struct experiment_summary {
  unsigned n = 0;
  std::size_t min_size = 0;
  std::size_t min_width = 0;
  std::uint64_t lower_bound = 0;  // ceil(2^{n/4})
};

struct experiment_result {
  std::vector<experiment_record> records;
  std::vector<experiment_summary> summary;
};

/// ceil(2^{n/4}), computed in exact integer arithmetic.
std::uint64_t proven_width_bound(unsigned n);

/// ceil(2^{n/2 - 1}); the steeper series some reference plots use.
std::uint64_t reference_figure_bound(unsigned n);

struct bound_entry {
  unsigned n;
  std::uint64_t proven;
  std::uint64_t reference;
};
std::vector<bound_entry> lower_bound_curve(std::span<const unsigned> n_values);

/// Builds the target diagram under `trials` seeded random orders per n and
/// records size and maximum level width; the summary keeps per-n minima.
/// Deterministic for a fixed config, including under jobs > 1. Throws
/// theorem_violation if an msb_only record falls below the proven width
/// bound, and node_limit_exceeded when a build exceeds the cap.
experiment_result run_experiment(const experiment_config& config);

/// Every permutation of the 2n + d_width variables; guarded to at most 8
/// variables (n <= 3 at the default d_width).
experiment_result run_exhaustive_orders(unsigned n, build_target target,
                                        std::size_t node_cap = bdd_manager::default_node_limit);

/// Builds one diagram and measures it.
experiment_record measure_order(const var_order& order, build_target target,
                                std::size_t node_cap);

/// Records CSV: header n,trial,target,seed,size,width. LF line endings.
void emit_csv(std::span<const experiment_record> records, std::ostream& os);
void emit_csv(std::span<const experiment_record> records,
              const std::filesystem::path& path);

/// Summary CSV: header n,min_size,min_width,lower_bound.
void emit_summary_csv(std::span<const experiment_summary> summary, std::ostream& os);
void emit_summary_csv(std::span<const experiment_summary> summary,
                      const std::filesystem::path& path);

/// One partition's outcome in a lemma sweep.
struct partition_check {
  balanced_partition partition;
  std::size_t split_size = 0;
  std::uint64_t pairs = 0;
  std::size_t split_sum = 0;
  bool sum_bound_holds = false;
  bool quarter_bound_holds = false;
  bool verify_valid = false;
  bool subsampled = false;
};

struct lemma_report {
  unsigned n = 0;
  bool exhaustive = false;
  std::size_t partitions_checked = 0;
  std::size_t min_split = 0;
  std::uint64_t min_pairs = 0;
  std::size_t subsampled_partitions = 0;
  // Failures of the fooling-set construction itself (expected none).
  std::vector<partition_check> construction_failures;
  // Partitions where the claimed sum bound does not hold. These exist; the
  // aggregate bound is weaker than claimed (see sum_split_lower_bound).
  std::vector<partition_check> sum_bound_violations;
};

/// Sweeps partitions (exhaustive for n <= 6, otherwise seeded samples) and
/// checks the construction: |pairs| = 2^|split| >= 2^{n/4} and the fooling
/// property against the integer oracle of the output MSB.
lemma_report verify_lemma(unsigned n, bool exhaustive, std::size_t samples,
                          std::uint64_t seed, verify_options options = {});

std::string to_text(const lemma_report& report);

struct width_consequence_result {
  unsigned boundary_level = 0;        // level of the topmost R key variable
  std::size_t nodes_at_or_below = 0;  // internal MSB-diagram nodes from there down
  std::uint64_t required = 0;         // fooling-set size
  bool holds = false;
};

/// The checkable consequence of the width argument: under any order placing
/// all of L above all of R, the MSB diagram must keep at least one node per
/// distinct fooling-set subfunction below the boundary.
width_consequence_result check_width_consequence(const fooling_set& fs,
                                                 const var_order& order,
                                                 std::size_t node_cap = bdd_manager::default_node_limit);

/// A partition-respecting order: shuffled L, then shuffled R, with the D
/// variables inserted at seeded positions.
var_order left_first_order(const balanced_partition& partition, std::uint64_t seed);

}  // namespace shiftadd
