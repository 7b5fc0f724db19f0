#pragma once

#include <cstdint>

#include "shiftadd/bdd.hpp"
#include "shiftadd/vars.hpp"

namespace shiftadd {

/// A multi-bit function as a vector of BDD roots, index 0 = LSB.
struct bitvec_fn {
  bdd_manager* manager = nullptr;
  std::vector<bdd> bits;

  unsigned width() const { return static_cast<unsigned>(bits.size()); }
};

/// The m-th root. Throws std::out_of_range for m >= width.
bdd output_bit(const bitvec_fn& f, unsigned m);

/// Evaluates all bits under a total assignment and packs them into an integer.
std::uint64_t eval_value(const bitvec_fn& f, const assignment& x);

/// Reference semantics: a + (b >> d), plain integer arithmetic. Shift
/// values of d_width bits are accepted; shifts >= n zero out b entirely.
/// Throws std::domain_error on out-of-range operands.
std::uint64_t oracle_sadd(sadd_params p, std::uint64_t a, std::uint64_t b,
                          std::uint64_t d);

/// Output bit m of the oracle.
bool oracle_sadd_bit(sadd_params p, std::uint64_t a, std::uint64_t b,
                     std::uint64_t d, unsigned m);

/// Barrel shifter for b >> d: a cascade of multiplexer stages, one per D
/// bit, stage j selecting between a shift by 0 and by 2^j. Width n.
bitvec_fn build_shifter(bdd_manager& manager, sadd_params p);

/// The full shifted addition a + (b >> d) via a ripple-carry adder on top
/// of the shifter. Width n+1; bit n is the carry-out.
bitvec_fn build_sadd(bdd_manager& manager, sadd_params p);

}  // namespace shiftadd
