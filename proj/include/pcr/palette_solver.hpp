#ifndef PCR_PALETTE_SOLVER_HPP
#define PCR_PALETTE_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcr/core.hpp"
#include "pcr/solver.hpp"

namespace pcr {

struct MergeEvent {
  int kept;     // lower label index (1-based)
  int removed;  // merged-away label index before remap
  int iteration;
};

struct PaletteSolveResult {
  Palette palette;
  Labeling labeling;
  std::vector<double> outer_energy;  // non-increasing
  std::vector<MergeEvent> merges;
  SolveTrace last_trace;
};

/// argmin over a in R^M of the region fidelity of label i:
///   lambda*h^2*sum_{Omega_i\D}|a - f|^p + mu*h^2*sum_{Omega_i^D}|L(a.e) - g|^p.
/// Components orthogonal to e from the outside sum alone (mean for p=2,
/// component-wise median for p=1, 1-D convex search otherwise); the component
/// along e by grid search on [-0.5, 1.5] at 1e-3 plus golden-section
/// refinement to 1e-8. Empty region: previous color returned unchanged.
std::vector<double> update_color(int i, const Labeling& l, const Instance& inst,
                                 const Palette& A);

/// Merges colors within tol (Euclidean) to their lowest index and remaps
/// labels; k decreases accordingly.
struct MergeResult {
  Palette palette;
  Labeling labeling;
  std::vector<MergeEvent> merges;
};
MergeResult merge_degenerate(const Palette& A, const Labeling& l,
                             double tol = 1e-6);

struct KMeansResult {
  Palette palette;
  std::vector<std::string> warnings;
};

/// k-means++ seeding + Lloyd iterations (max 50) on undamaged pixel colors;
/// deterministic given seed. If k exceeds the number of distinct undamaged
/// colors, the distinct colors are padded by duplicates and a warning raised.
KMeansResult init_palette_kmeans(const ColorImage& f, const DamageMask& D, int k,
                                 uint64_t seed);

/// Alternates solve_fixed_palette and update_color for all labels, merging
/// degenerate colors each outer iteration; stops when the outer improvement
/// drops below 1e-10 or after 30 iterations.
PaletteSolveResult solve_free_palette(const Instance& inst, int k,
                                      const SolveOptions& opts);
PaletteSolveResult solve_free_palette(const Instance& inst, const Palette& init,
                                      const SolveOptions& opts);

}  // namespace pcr

#endif
