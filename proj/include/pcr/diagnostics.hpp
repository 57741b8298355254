#ifndef PCR_DIAGNOSTICS_HPP
#define PCR_DIAGNOSTICS_HPP

#include <vector>

#include "pcr/core.hpp"
#include "pcr/energy.hpp"

namespace pcr {

struct JumpEdge {
  int p, q;  // pixel indices, p < q in scan order of construction
  int dir;   // direction index into EdgeWeights
};

/// Edges between differently labeled pixels (discrete jump set).
std::vector<JumpEdge> extract_jump_edges(const Labeling& l);

/// (sum of jump-edge weights with midpoint within rho of the pixel center)
/// divided by rho. Requires rho >= 2h and the ball inside the grid.
double density_ratio(const Labeling& l, int cx, int cy, double rho);

/// True iff the ball of radius rho around pixel (cx, cy) lies inside the grid.
bool ball_inside_grid(const GridGeometry& geom, int cx, int cy, double rho);

struct EliminationViolation {
  int cx, cy;
  double r;
  int kept_i, kept_j;
  double fraction;      // volume fraction of third phases in B_r
  int inner_third_count; // third-phase pixels left in B_{r/2}
};

/// For every interior ball and retained label pair (i,j): if the volume
/// fraction of the remaining labels in B_r is <= eta*r^2/|B_r| but B_{r/2}
/// still contains one of them, record a violation. A measurement only; the
/// discrete eta is unknown.
std::vector<EliminationViolation> elimination_scan(const Labeling& l, int k,
                                                   double eta,
                                                   const std::vector<double>& radii,
                                                   int center_stride = 1);

struct H3Report {
  bool satisfied = true;  // vacuously true for k < 3
  int i = 0, j = 0, l = 0;
  double slack = 0.0;  // |a_i-a_l| + |a_l-a_j| - |a_i-a_j| of the worst triple
};

H3Report check_h3(const Palette& A);

struct DensityStat {
  double rho;
  double min_ratio;
  std::vector<double> histogram;  // counts over [0, 4) in 0.25 bins
};

struct RegularityReport {
  int jump_pixel_count = 0;  // pixels incident to at least one jump edge
  std::vector<DensityStat> density;
  std::vector<EliminationViolation> elimination_violations;
  H3Report h3;
};

/// Density ratios at jump pixels over the given radii plus an elimination
/// scan and the (H3) check.
RegularityReport regularity_report(const Labeling& l, const Palette& A,
                                   const std::vector<double>& radii,
                                   double eta = 0.05);

}  // namespace pcr

#endif
