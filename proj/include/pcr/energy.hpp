#ifndef PCR_ENERGY_HPP
#define PCR_ENERGY_HPP

#include "pcr/core.hpp"
#include "pcr/distortion.hpp"

namespace pcr {

/// lambda and mu are already folded into the fidelity terms;
/// total = perimeter_term + fidelity_outside_D + fidelity_inside_D.
struct EnergyBreakdown {
  double perimeter_term = 0.0;
  double fidelity_outside_D = 0.0;
  double fidelity_inside_D = 0.0;
  double total = 0.0;
};

/// Per-direction edge weights discretizing the interface measure.
/// N4: w = h (exact l1 perimeter). N8: Cauchy-Crofton,
/// w_dir = h^2 * (pi/4) / (2 * |e_dir|) for each of the 4 directions.
struct EdgeWeights {
  double w[4] = {0, 0, 0, 0};

  static EdgeWeights from_geometry(const GridGeometry& geom);
};

double weighted_perimeter(const Labeling& l, const Palette& A,
                          const GridGeometry& geom);
double unweighted_interface_length(const Labeling& l, const GridGeometry& geom);
double per_label_boundary_length(const Labeling& l, int i,
                                 const GridGeometry& geom);

/// outside = lambda * h^2 * sum_{p not in D} |a_{l(p)} - f(p)|^p
/// inside  = mu * h^2 * sum_{p in D} |L(a_{l(p)}.e) - g(p)|^p
std::pair<double, double> fidelity_terms(const Labeling& l, const Palette& A,
                                         const ColorImage& f, const DamageMask& D,
                                         const GreyObservation& g,
                                         const DistortionTable& Ltab,
                                         const ModelParams& params);

EnergyBreakdown total_energy(const Labeling& l, const Palette& A,
                             const ColorImage& f, const DamageMask& D,
                             const GreyObservation& g, const DistortionTable& Ltab,
                             const ModelParams& params);

enum class Triviality { Nontrivial, Trivial, Inconclusive };

struct NontrivialityResult {
  Triviality verdict = Triviality::Inconclusive;
  double gamma_hat = 0.0;  // estimated tail growth exponent of L
};

/// Estimates the growth exponent of L on the outer 25% of samples of each
/// tail (max of both) by least squares on log L vs log |t|. Nontrivial iff
/// gamma_hat <= 1 + 0.05.
NontrivialityResult nontriviality_check(const DistortionTable& tab);

}  // namespace pcr

#endif
