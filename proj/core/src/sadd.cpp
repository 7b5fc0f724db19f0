#include "shiftadd/sadd.hpp"

namespace shiftadd {

bdd output_bit(const bitvec_fn& f, unsigned m) {
  if (m >= f.width())
    throw std::out_of_range("output_bit: index " + std::to_string(m) +
                            " out of range for width " +
                            std::to_string(f.width()));
  return f.bits[m];
}

std::uint64_t eval_value(const bitvec_fn& f, const assignment& x) {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < f.width(); ++i)
    value |= static_cast<std::uint64_t>(f.manager->eval(f.bits[i], x)) << i;
  return value;
}

std::uint64_t oracle_sadd(sadd_params p, std::uint64_t a, std::uint64_t b,
                          std::uint64_t d) {
  if (a >> p.n || b >> p.n)
    throw std::domain_error("oracle_sadd: operand wider than n bits");
  if (d >> p.d_width)
    throw std::domain_error("oracle_sadd: shift wider than d_width bits");
  return a + (d >= 64 ? 0 : b >> d);
}

bool oracle_sadd_bit(sadd_params p, std::uint64_t a, std::uint64_t b,
                     std::uint64_t d, unsigned m) {
  return (oracle_sadd(p, a, b, d) >> m) & 1;
}

static void check_params(const bdd_manager& manager, const sadd_params& p) {
  if (manager.params() != p)
    throw std::invalid_argument("circuit builder: manager was created for "
                                "different parameters");
}

bitvec_fn build_shifter(bdd_manager& manager, sadd_params p) {
  check_params(manager, p);
  std::vector<bdd> bits;
  bits.reserve(p.n);
  for (unsigned i = 0; i < p.n; ++i) bits.push_back(manager.var(b_var(i)));
  for (unsigned j = 0; j < p.d_width; ++j) {
    const bdd select = manager.var(d_var(j));
    const std::uint64_t amount = 1ULL << j;
    std::vector<bdd> next(p.n);
    for (unsigned i = 0; i < p.n; ++i) {
      const bdd shifted =
          i + amount < p.n ? bits[i + amount] : manager.false_bdd();
      next[i] = manager.ite(select, shifted, bits[i]);
    }
    bits = std::move(next);
  }
  return {&manager, std::move(bits)};
}

bitvec_fn build_sadd(bdd_manager& manager, sadd_params p) {
  const bitvec_fn shifted = build_shifter(manager, p);
  std::vector<bdd> sum;
  sum.reserve(p.n + 1);
  bdd carry = manager.false_bdd();
  for (unsigned i = 0; i < p.n; ++i) {
    const bdd ai = manager.var(a_var(i));
    const bdd si = shifted.bits[i];
    const bdd axs = manager.apply(bool_op::xor_op, ai, si);
    sum.push_back(manager.apply(bool_op::xor_op, axs, carry));
    // carry_{i+1} = majority(a_i, s_i, c_i)
    carry = manager.apply(bool_op::or_op,
                          manager.apply(bool_op::and_op, ai, si),
                          manager.apply(bool_op::and_op, carry, axs));
  }
  sum.push_back(carry);
  return {&manager, std::move(sum)};
}

}  // namespace shiftadd
