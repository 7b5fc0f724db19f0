#include "shiftadd/bdd.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "shiftadd/rng.hpp"

namespace shiftadd {

namespace {

constexpr std::uint32_t false_idx = 0;
constexpr std::uint32_t true_idx = 1;

// Cache sizes are fixed powers of two; 2^18 entries keep the hot path in a
// few MB while staying effective up to the default node limit.
constexpr std::size_t apply_cache_bits = 18;
constexpr std::size_t ite_cache_bits = 18;

constexpr std::uint64_t mix(std::uint64_t x) { return rng::splitmix64(x); }

}  // namespace

std::size_t bdd_manager::unique_key_hash::operator()(const unique_key& k) const {
  return static_cast<std::size_t>(
      mix((static_cast<std::uint64_t>(k.level) << 40) ^
          (static_cast<std::uint64_t>(k.low) << 20) ^ k.high));
}

bdd_manager::bdd_manager(var_order order, std::size_t node_limit)
    : order_(std::move(order)),
      node_limit_(node_limit),
      apply_cache_(std::size_t{1} << apply_cache_bits),
      ite_cache_(std::size_t{1} << ite_cache_bits) {
  nodes_.push_back({terminal_level, false_idx, false_idx});  // 0 = FALSE
  nodes_.push_back({terminal_level, true_idx, true_idx});    // 1 = TRUE
}

const bdd& bdd_manager::check(const bdd& f) const {
  if (f.mgr_ != this)
    throw manager_mismatch("bdd handle belongs to a different manager");
  return f;
}

bdd bdd_manager::var(var_id v) {
  return mk(order_.level_of(v), false_bdd(), true_bdd());
}

bdd bdd_manager::mk(unsigned level, bdd low, bdd high) {
  check(low);
  check(high);
  if (level >= order_.size())
    throw ordering_error("mk: level outside the variable order");
  return {this, mk_node(level, low.idx_, high.idx_)};
}

std::uint32_t bdd_manager::mk_node(unsigned level, std::uint32_t low,
                                   std::uint32_t high) {
  if (low == high) return low;  // reduction: identical children collapse
  if (nodes_[low].level <= level || nodes_[high].level <= level)
    throw ordering_error("mk: child level not below parent level");
  const unique_key key{level, low, high};
  if (const auto it = unique_table_.find(key); it != unique_table_.end())
    return it->second;
  if (node_count() >= node_limit_)
    throw node_limit_exceeded("node limit of " + std::to_string(node_limit_) +
                              " reached");
  const auto idx = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({level, low, high});
  unique_table_.emplace(key, idx);
  return idx;
}

bdd bdd_manager::apply(bool_op op, bdd f, bdd g) {
  check(f);
  check(g);
  return {this, apply_rec(op, f.idx_, g.idx_)};
}

std::uint32_t bdd_manager::apply_rec(bool_op op, std::uint32_t f, std::uint32_t g) {
  switch (op) {
    case bool_op::and_op:
      if (f == g) return f;
      if (f == false_idx || g == false_idx) return false_idx;
      if (f == true_idx) return g;
      if (g == true_idx) return f;
      break;
    case bool_op::or_op:
      if (f == g) return f;
      if (f == true_idx || g == true_idx) return true_idx;
      if (f == false_idx) return g;
      if (g == false_idx) return f;
      break;
    case bool_op::xor_op:
      if (f == g) return false_idx;
      if (f == false_idx) return g;
      if (g == false_idx) return f;
      break;
  }
  if (f > g) std::swap(f, g);  // all three ops commute

  const std::uint64_t key = (static_cast<std::uint64_t>(op) + 1) << 62 |
                            static_cast<std::uint64_t>(f) << 31 | g;
  auto& slot = apply_cache_[mix(key) & ((1u << apply_cache_bits) - 1)];
  if (slot.key == key) return slot.result;

  const node& fn = nodes_[f];
  const node& gn = nodes_[g];
  const unsigned level = std::min(fn.level, gn.level);
  const std::uint32_t f0 = fn.level == level ? fn.low : f;
  const std::uint32_t f1 = fn.level == level ? fn.high : f;
  const std::uint32_t g0 = gn.level == level ? gn.low : g;
  const std::uint32_t g1 = gn.level == level ? gn.high : g;

  const std::uint32_t low = apply_rec(op, f0, g0);
  const std::uint32_t high = apply_rec(op, f1, g1);
  const std::uint32_t result = mk_node(level, low, high);
  slot = {key, result};
  return result;
}

bdd bdd_manager::ite(bdd c, bdd t, bdd e) {
  check(c);
  check(t);
  check(e);
  return {this, ite_rec(c.idx_, t.idx_, e.idx_)};
}

std::uint32_t bdd_manager::ite_rec(std::uint32_t c, std::uint32_t t,
                                   std::uint32_t e) {
  if (c == true_idx) return t;
  if (c == false_idx) return e;
  if (t == e) return t;
  if (t == true_idx && e == false_idx) return c;

  auto& slot = ite_cache_[mix(mix(static_cast<std::uint64_t>(c) << 32 | t) ^ e) &
                          ((1u << ite_cache_bits) - 1)];
  if (slot.c == c && slot.t == t && slot.e == e) return slot.result;

  const unsigned level =
      std::min({nodes_[c].level, nodes_[t].level, nodes_[e].level});
  const auto cofactor = [&](std::uint32_t f, bool hi) {
    const node& n = nodes_[f];
    return n.level == level ? (hi ? n.high : n.low) : f;
  };
  const std::uint32_t low = ite_rec(cofactor(c, false), cofactor(t, false),
                                    cofactor(e, false));
  const std::uint32_t high = ite_rec(cofactor(c, true), cofactor(t, true),
                                     cofactor(e, true));
  const std::uint32_t result = mk_node(level, low, high);
  slot = {c, t, e, result};
  return result;
}

bool bdd_manager::eval(bdd f, const assignment& x) const {
  check(f);
  if (x.params() != params())
    throw std::invalid_argument("eval: assignment parameters mismatch");
  std::uint32_t cur = f.idx_;
  while (cur > true_idx) {
    const node& n = nodes_[cur];
    const auto bit = x.get(order_.var_at(n.level));
    if (!bit)
      throw incomplete_assignment("eval: variable " +
                                  to_string(order_.var_at(n.level)) + " unset");
    cur = *bit ? n.high : n.low;
  }
  return cur == true_idx;
}

void bdd_manager::visit_reachable(
    std::span<const bdd> roots,
    const std::function<void(std::uint32_t)>& fn) const {
  std::vector<bool> seen(nodes_.size(), false);
  seen[false_idx] = seen[true_idx] = true;
  std::vector<std::uint32_t> stack;
  for (const bdd& r : roots) {
    check(r);
    if (!seen[r.idx_]) {
      seen[r.idx_] = true;
      stack.push_back(r.idx_);
    }
  }
  while (!stack.empty()) {
    const std::uint32_t cur = stack.back();
    stack.pop_back();
    fn(cur);
    for (const std::uint32_t child : {nodes_[cur].low, nodes_[cur].high}) {
      if (!seen[child]) {
        seen[child] = true;
        stack.push_back(child);
      }
    }
  }
}

std::map<unsigned, std::size_t> bdd_manager::level_widths(
    std::span<const bdd> roots) const {
  std::map<unsigned, std::size_t> widths;
  visit_reachable(roots, [&](std::uint32_t n) { ++widths[nodes_[n].level]; });
  return widths;
}

std::size_t bdd_manager::dag_size(std::span<const bdd> roots) const {
  std::size_t count = 0;
  visit_reachable(roots, [&](std::uint32_t) { ++count; });
  return count;
}

std::size_t bdd_manager::max_level_width(std::span<const bdd> roots) const {
  std::size_t best = 0;
  for (const auto& [level, width] : level_widths(roots))
    best = std::max(best, width);
  return best;
}

bdd bdd_manager::low(bdd f) const {
  if (is_terminal(f)) throw std::out_of_range("low: terminal node");
  return {f.mgr_, nodes_[f.idx_].low};
}

bdd bdd_manager::high(bdd f) const {
  if (is_terminal(f)) throw std::out_of_range("high: terminal node");
  return {f.mgr_, nodes_[f.idx_].high};
}

void bdd_manager::write_dot(std::ostream& os, std::span<const bdd> roots,
                            std::span<const std::string> root_labels) const {
  os << "digraph bdd {\n";
  os << "  n0 [label=\"0\", shape=box];\n";
  os << "  n1 [label=\"1\", shape=box];\n";
  std::vector<std::uint32_t> internal;
  visit_reachable(roots, [&](std::uint32_t n) { internal.push_back(n); });
  std::sort(internal.begin(), internal.end());
  for (const std::uint32_t n : internal) {
    os << "  n" << n << " [label=\"" << to_string(order_.var_at(nodes_[n].level))
       << "\"];\n";
    os << "  n" << n << " -> n" << nodes_[n].high << ";\n";
    os << "  n" << n << " -> n" << nodes_[n].low << " [style=dashed];\n";
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const std::string label =
        i < root_labels.size() ? root_labels[i] : "root" + std::to_string(i);
    os << "  " << label << " [shape=plaintext];\n";
    os << "  " << label << " -> n" << roots[i].idx_ << ";\n";
  }
  os << "}\n";
}

bool bdd_manager::check_reduced() const {
  std::unordered_set<unique_key, unique_key_hash> triples;
  for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
    const node& n = nodes_[i];
    if (n.low == n.high) return false;
    if (nodes_[n.low].level <= n.level || nodes_[n.high].level <= n.level)
      return false;
    if (!triples.insert({n.level, n.low, n.high}).second) return false;
  }
  return true;
}

}  // namespace shiftadd
