#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftadd/vars.hpp"

namespace shiftadd {

class bdd_manager;

enum class bool_op : std::uint8_t { and_op = 0, or_op = 1, xor_op = 2 };

/// Handle to a node of one manager. Because diagrams are hash-consed and
/// reduced, two handles compare equal iff they denote the same function
/// in the same manager.
class bdd {
public:
  bdd() = default;

  bool valid() const { return mgr_ != nullptr; }
  bdd_manager* manager() const { return mgr_; }
  std::uint32_t id() const { return idx_; }

  friend bool operator==(const bdd&, const bdd&) = default;

private:
  friend class bdd_manager;
  bdd(bdd_manager* m, std::uint32_t i) : mgr_(m), idx_(i) {}

  bdd_manager* mgr_ = nullptr;
  std::uint32_t idx_ = 0;
};

/// Hash-consed ROBDD store with a fixed variable order.
///
/// Plain representation: no complement edges, no garbage collection. Nodes
/// accumulate until the manager is destroyed; a configurable node limit
/// guards against runaway constructions. Not copyable or movable, since
/// handles keep a pointer to their manager. Use one manager per thread.
class bdd_manager {
public:
  static constexpr std::size_t default_node_limit = 5'000'000;
  static constexpr unsigned terminal_level = 0xffffffffu;

  explicit bdd_manager(var_order order, std::size_t node_limit = default_node_limit);

  bdd_manager(const bdd_manager&) = delete;
  bdd_manager& operator=(const bdd_manager&) = delete;

  const var_order& order() const { return order_; }
  const sadd_params& params() const { return order_.params(); }

  bdd false_bdd() { return {this, 0}; }
  bdd true_bdd() { return {this, 1}; }
  bdd constant(bool value) { return {this, value ? 1u : 0u}; }

  /// The single-variable function of `v` (at the level assigned by the order).
  bdd var(var_id v);

  /// Reduce-aware hash-consing constructor: returns `low` when low == high,
  /// otherwise the unique node for (level, low, high). Child levels must be
  /// strictly below `level`.
  bdd mk(unsigned level, bdd low, bdd high);

  bdd apply(bool_op op, bdd f, bdd g);
  bdd ite(bdd c, bdd t, bdd e);
  bdd negate(bdd f) { return apply(bool_op::xor_op, f, true_bdd()); }

  /// Follows low/high edges under a (possibly partial) assignment; every
  /// variable on the traversed path must be set.
  bool eval(bdd f, const assignment& x) const;

  /// Distinct internal nodes per level over the shared multi-rooted DAG.
  /// Terminals are excluded; levels with no nodes are absent from the map.
  std::map<unsigned, std::size_t> level_widths(std::span<const bdd> roots) const;

  /// Total distinct internal nodes reachable from `roots`.
  std::size_t dag_size(std::span<const bdd> roots) const;

  std::size_t max_level_width(std::span<const bdd> roots) const;

  /// Internal nodes allocated so far (reachable or not; there is no GC).
  std::size_t node_count() const { return nodes_.size() - 2; }
  std::size_t node_limit() const { return node_limit_; }
  void set_node_limit(std::size_t limit) { node_limit_ = limit; }

  bool is_terminal(bdd f) const { return check(f).idx_ <= 1; }
  unsigned level(bdd f) const { return nodes_[check(f).idx_].level; }
  bdd low(bdd f) const;
  bdd high(bdd f) const;

  /// Debug dump in DOT format: one box per terminal, solid high edges,
  /// dashed low edges, levels labelled with their variable names.
  void write_dot(std::ostream& os, std::span<const bdd> roots,
                 std::span<const std::string> root_labels = {}) const;

  /// Scans every stored node for reducedness and orderedness; used by tests.
  bool check_reduced() const;

private:
  struct node {
    unsigned level;
    std::uint32_t low;
    std::uint32_t high;
  };

  struct unique_key {
    unsigned level;
    std::uint32_t low;
    std::uint32_t high;
    friend bool operator==(const unique_key&, const unique_key&) = default;
  };
  struct unique_key_hash {
    std::size_t operator()(const unique_key& k) const;
  };

  // Direct-mapped lossy caches; collisions overwrite. Exactness lives in
  // the unique table only.
  struct apply_entry {
    std::uint64_t key = 0;
    std::uint32_t result = 0;
  };
  struct ite_entry {
    std::uint32_t c = 0xffffffffu, t = 0, e = 0;
    std::uint32_t result = 0;
  };

  const bdd& check(const bdd& f) const;
  std::uint32_t mk_node(unsigned level, std::uint32_t low, std::uint32_t high);
  std::uint32_t apply_rec(bool_op op, std::uint32_t f, std::uint32_t g);
  std::uint32_t ite_rec(std::uint32_t c, std::uint32_t t, std::uint32_t e);
  void visit_reachable(std::span<const bdd> roots,
                       const std::function<void(std::uint32_t)>& fn) const;

  var_order order_;
  std::size_t node_limit_;
  std::vector<node> nodes_;
  std::unordered_map<unique_key, std::uint32_t, unique_key_hash> unique_table_;
  std::vector<apply_entry> apply_cache_;
  std::vector<ite_entry> ite_cache_;
};

}  // namespace shiftadd
