#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "shiftadd/experiment.hpp"
#include "shiftadd/fooling.hpp"
#include "shiftadd/rng.hpp"
#include "shiftadd/sadd.hpp"

using namespace shiftadd;

namespace {

std::vector<var_id> parse_var_list(const std::string& spec) {
  std::vector<var_id> out;
  std::string body = spec;
  if (body.rfind("L=", 0) == 0) body = body.substr(2);
  std::stringstream ss(body);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto v = parse_var(token);
    if (!v) throw CLI::ValidationError("variable list", "bad variable '" + token + "'");
    out.push_back(*v);
  }
  return out;
}

int run_build(unsigned n, unsigned d_width, const std::string& target_name,
              std::uint64_t order_seed, bool seeded, const std::string& order_spec,
              const std::string& dot_path, std::size_t cap) {
  const sadd_params params(n, d_width);
  const auto target = parse_target(target_name);
  if (!target) throw CLI::ValidationError("--target", "unknown target");

  var_order order = var_order::natural(params);
  if (!order_spec.empty()) {
    order = var_order(params, parse_var_list(order_spec));
  } else if (seeded) {
    std::mt19937_64 eng(rng::derive_seed(order_seed, 0));
    order = var_order::random(params, eng);
  }

  bdd_manager manager(order, cap);
  const bitvec_fn out = build_sadd(manager, params);
  std::vector<bdd> roots;
  std::vector<std::string> labels;
  if (*target == build_target::msb_only) {
    roots.push_back(output_bit(out, n - 1));
    labels.push_back("msb");
  } else {
    roots = out.bits;
    for (unsigned i = 0; i < out.width(); ++i)
      labels.push_back("out" + std::to_string(i));
  }

  std::cout << "n=" << n << " d_width=" << params.d_width
            << " target=" << to_string(*target) << '\n';
  std::cout << "order=";
  for (std::size_t i = 0; i < order.permutation().size(); ++i)
    std::cout << (i ? "," : "") << to_string(order.permutation()[i]);
  std::cout << '\n';
  std::cout << "size=" << manager.dag_size(roots) << '\n';
  std::cout << "width=" << manager.max_level_width(roots) << '\n';

  if (!dot_path.empty()) {
    std::ofstream os(dot_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + dot_path);
    manager.write_dot(os, roots, labels);
  }
  return 0;
}

int run_experiment_cmd(std::vector<unsigned> n_values, unsigned trials,
                       std::uint64_t seed, const std::string& target_name,
                       const std::string& out_path, std::string summary_path,
                       std::size_t cap, unsigned jobs, bool exhaustive) {
  const auto target = parse_target(target_name);
  if (!target) throw CLI::ValidationError("--target", "unknown target");

  experiment_result result;
  if (exhaustive) {
    if (n_values.size() != 1)
      throw CLI::ValidationError("--exhaustive", "needs exactly one --n");
    result = run_exhaustive_orders(n_values[0], *target, cap);
  } else {
    experiment_config config;
    config.n_values = std::move(n_values);
    config.trials = trials;
    config.seed = seed;
    config.target = *target;
    config.node_cap = cap;
    config.jobs = jobs;
    result = run_experiment(config);
  }

  if (out_path.empty()) {
    emit_csv(result.records, std::cout);
    emit_summary_csv(result.summary, std::cout);
  } else {
    emit_csv(result.records, std::filesystem::path(out_path));
    if (summary_path.empty()) {
      std::filesystem::path p(out_path);
      p.replace_extension(".summary.csv");
      summary_path = p.string();
    }
    emit_summary_csv(result.summary, std::filesystem::path(summary_path));
    std::cerr << "wrote " << out_path << " and " << summary_path << '\n';
  }
  for (const experiment_summary& s : result.summary)
    std::cerr << "n=" << s.n << " min_size=" << s.min_size
              << " min_width=" << s.min_width << " lower_bound=" << s.lower_bound
              << '\n';
  return 0;
}

int run_verify_lemma(unsigned n, const std::string& mode, std::size_t samples,
                     std::uint64_t seed, std::uint64_t max_pairs) {
  if (mode != "exhaustive" && mode != "sample")
    throw CLI::ValidationError("--mode", "expected exhaustive or sample");
  verify_options options;
  options.max_pairs = max_pairs;
  options.seed = seed;
  const lemma_report report =
      verify_lemma(n, mode == "exhaustive", samples, seed, options);
  std::cout << to_text(report);
  return report.construction_failures.empty() ? 0 : 1;
}

int run_bounds(const std::vector<unsigned>& n_values) {
  std::cout << "n,proven_bound,reference_bound\n";
  for (const bound_entry& e : lower_bound_curve(n_values))
    std::cout << e.n << ',' << e.proven << ',' << e.reference << '\n';
  return 0;
}

int run_fooling(unsigned n, const std::string& left_spec, double omega) {
  const sadd_params params(n);
  const balanced_partition partition(params, parse_var_list(left_spec), omega);
  const p_choice choice = choose_p(partition);
  std::cout << to_text(choice.report);
  std::cout << "meets_quarter_bound=" << (choice.meets_quarter_bound ? 1 : 0)
            << '\n';

  const fooling_set fs = build_fooling_set(partition);
  std::cout << to_text(fs);

  const bool_fn oracle = [params](const assignment& x) {
    return oracle_sadd_bit(params, x.a_value(), x.b_value(), x.d_value(),
                           params.n - 1);
  };
  const verify_result verdict = verify_fooling_set(oracle, fs);
  std::cout << "valid=" << (verdict.valid ? 1 : 0)
            << " pairs_checked=" << verdict.pairs_checked
            << " subsampled=" << (verdict.subsampled ? 1 : 0)
            << " evaluations=" << verdict.evaluations << '\n';
  if (verdict.witness) {
    std::cout << "witness pair_indices=" << verdict.witness->first_index << ","
              << verdict.witness->second_index
              << " diagonal=" << verdict.witness->diagonal_value
              << " crossings=" << verdict.witness->cross_first << ","
              << verdict.witness->cross_second << '\n';
  }
  return verdict.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shifted-addition BDD toolkit: circuits, ordering experiments "
               "and fooling-set lower bounds"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build one diagram and print its size");
  unsigned build_n = 4, build_d = 0;
  std::string build_target_name = "all_outputs", build_order, build_dot;
  std::uint64_t build_seed = 0;
  bool build_seeded = false;
  std::size_t build_cap = bdd_manager::default_node_limit;
  build->add_option("--n", build_n, "operand width")->required();
  build->add_option("--d-width", build_d, "shift operand width (default minimal)");
  build->add_option("--target", build_target_name, "msb_only or all_outputs");
  build->add_option("--order", build_order, "explicit comma-separated variable order");
  build->add_option("--order-seed", build_seed, "seed for a random order");
  build->add_option("--dot", build_dot, "write the diagram in DOT format");
  build->add_option("--cap", build_cap, "node limit");

  // experiment
  auto* experiment = app.add_subcommand(
      "experiment", "measure sizes and widths under random variable orders");
  std::vector<unsigned> exp_n;
  unsigned exp_trials = 50, exp_jobs = 1;
  std::uint64_t exp_seed = 0;
  std::string exp_target_name = "all_outputs", exp_out, exp_summary;
  std::size_t exp_cap = bdd_manager::default_node_limit;
  bool exp_exhaustive = false;
  experiment->add_option("--n", exp_n, "operand widths")->required();
  experiment->add_option("--trials", exp_trials, "orderings per width");
  experiment->add_option("--seed", exp_seed, "experiment seed");
  experiment->add_option("--target", exp_target_name, "msb_only or all_outputs");
  experiment->add_option("--out", exp_out, "records CSV path (stdout if absent)");
  experiment->add_option("--summary-out", exp_summary, "summary CSV path");
  experiment->add_option("--cap", exp_cap, "node limit per build");
  experiment->add_option("--jobs", exp_jobs, "worker threads");
  experiment->add_flag("--exhaustive", exp_exhaustive,
                       "try every ordering (guarded to small n)");

  // verify-lemma
  auto* lemma = app.add_subcommand("verify-lemma",
                                   "sweep partitions and verify the fooling-set "
                                   "construction against the integer oracle");
  unsigned lemma_n = 4;
  std::string lemma_mode = "exhaustive";
  std::size_t lemma_samples = 500;
  std::uint64_t lemma_seed = 0, lemma_max_pairs = 1024;
  lemma->add_option("--n", lemma_n, "operand width")->required();
  lemma->add_option("--mode", lemma_mode, "exhaustive or sample");
  lemma->add_option("--samples", lemma_samples, "partitions in sample mode");
  lemma->add_option("--seed", lemma_seed, "sampling seed");
  lemma->add_option("--max-pairs", lemma_max_pairs,
                    "pairwise-check cap per partition");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "print the lower-bound curves");
  std::vector<unsigned> bounds_n{2, 4, 8, 16};
  bounds->add_option("--n", bounds_n, "operand widths");

  // fooling
  auto* fooling = app.add_subcommand(
      "fooling", "construct and verify a fooling set for one partition");
  unsigned fooling_n = 2;
  std::string fooling_left;
  double fooling_omega = 0.5;
  fooling->add_option("--n", fooling_n, "operand width")->required();
  fooling->add_option("--left,-L", fooling_left,
                      "left side, e.g. a1,b1 (or L=a1,b1)")->required();
  fooling->add_option("--omega", fooling_omega, "balance weight");

  CLI11_PARSE(app, argc, argv);

  build_seeded = build->count("--order-seed") > 0;

  try {
    if (build->parsed())
      return run_build(build_n, build_d, build_target_name, build_seed,
                       build_seeded, build_order, build_dot, build_cap);
    if (experiment->parsed())
      return run_experiment_cmd(exp_n, exp_trials, exp_seed, exp_target_name,
                                exp_out, exp_summary, exp_cap, exp_jobs,
                                exp_exhaustive);
    if (lemma->parsed())
      return run_verify_lemma(lemma_n, lemma_mode, lemma_samples, lemma_seed,
                              lemma_max_pairs);
    if (bounds->parsed()) return run_bounds(bounds_n);
    if (fooling->parsed()) return run_fooling(fooling_n, fooling_left, fooling_omega);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
