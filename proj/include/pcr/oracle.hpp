#ifndef PCR_ORACLE_HPP
#define PCR_ORACLE_HPP

#include <utility>
#include <vector>

#include "pcr/core.hpp"
#include "pcr/solver.hpp"

namespace pcr {
namespace oracle {

/// Straight-loop energy evaluation, deliberately independent of the energy
/// module (no shared helpers).
double evaluate(const std::vector<int>& labels, const Palette& A,
                const Instance& inst);

/// Exhaustive minimum over all k^n labelings; ties broken lexicographically
/// on the label vector. Requires k^n <= 10^7.
std::pair<Labeling, double> brute_force_fixed_palette(const Instance& inst,
                                                      const Palette& A);

/// Exhaustive minimum over the 2^n keep-or-alpha move space of l.
/// Requires n <= 20.
Labeling brute_force_binary_move(const Labeling& l, int alpha,
                                 const Instance& inst, const Palette& A);

}  // namespace oracle
}  // namespace pcr

#endif
