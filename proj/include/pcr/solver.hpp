#ifndef PCR_SOLVER_HPP
#define PCR_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcr/core.hpp"
#include "pcr/distortion.hpp"
#include "pcr/energy.hpp"

namespace pcr {

/// Everything fixed during a solve except the palette.
struct Instance {
  ColorImage f;
  DamageMask D;
  GreyObservation g;
  DistortionTable L;
  ModelParams params;
};

enum class MoveOrder { Sequential, RandomSeeded };
enum class Engine { Expansion, ICM };

struct SolveOptions {
  int max_sweeps = 20;
  MoveOrder move_order = MoveOrder::Sequential;
  uint64_t seed = 0;
  Engine engine = Engine::Expansion;
  double epsilon_improve = 1e-12;
};

struct SolveTrace {
  std::vector<double> energy;  // after each accepted move (non-increasing)
  int sweeps = 0;
  std::string termination;  // "converged" or "max_sweeps"
};

/// Per-pixel cost of assigning each label: lambda*h^2*|a_i - f|^p outside D,
/// mu*h^2*|L(a_i.e) - g|^p inside. Layout: cost[(i-1)*n + p].
std::vector<double> data_costs(const Instance& inst, const Palette& A);

/// Data-driven initial labeling: nearest palette color outside D, nearest by
/// |L(a_i.e) - g| inside; ties to the smallest index.
Labeling initial_labeling(const Instance& inst, const Palette& A);

/// Best labeling over the binary space where every pixel keeps its label or
/// switches to alpha, via one min-cut. Never increases total energy; returns
/// the input labeling unchanged when no strict improvement exists.
Labeling expansion_move(const Labeling& l, int alpha, const Instance& inst,
                        const Palette& A);

/// Sets one pixel's label to the energy-minimizing choice holding all others
/// fixed; ties broken toward the smallest index.
Labeling icm_move(const Labeling& l, int pixel, const Instance& inst,
                  const Palette& A);

std::pair<Labeling, SolveTrace> solve_fixed_palette(const Instance& inst,
                                                    const Palette& A,
                                                    const SolveOptions& opts);
std::pair<Labeling, SolveTrace> solve_fixed_palette(const Instance& inst,
                                                    const Palette& A,
                                                    const Labeling& init,
                                                    const SolveOptions& opts);

}  // namespace pcr

#endif
