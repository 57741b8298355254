#ifndef PCR_DISTORTION_HPP
#define PCR_DISTORTION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pcr/core.hpp"

namespace pcr {

enum class Extrapolation { ClampEnds, LinearEnds };

/// Sampled grey distortion: unit direction e in R^M and a piecewise-linear
/// table t -> L(t) with strictly increasing knots and L(t) >= 0.
struct DistortionTable {
  std::vector<double> e;                          // unit vector, |e| = 1
  std::vector<std::pair<double, double>> samples; // sorted (t, L(t))
  Extrapolation extrapolation = Extrapolation::ClampEnds;

  DistortionTable() = default;
  DistortionTable(std::vector<double> direction,
                  std::vector<std::pair<double, double>> table,
                  Extrapolation mode = Extrapolation::ClampEnds);

  double dot_e(const double* color) const {
    double s = 0.0;
    for (size_t c = 0; c < e.size(); ++c) s += e[c] * color[c];
    return s;
  }

  /// Identity L(t) = max(t, 0) sampled on [lo, hi], e = (1,...,1)/sqrt(M).
  static DistortionTable identity(int channels, double lo = -0.5, double hi = 1.5,
                                  int samples = 64);
  /// L(t) = |t|^gamma sampled on [lo, hi] (used for non-triviality studies).
  static DistortionTable power(int channels, double gamma, double lo, double hi,
                               int samples);
  bool is_monotone() const;
};

double eval_L(const DistortionTable& tab, double t);

/// Fit e (first principal direction, sign fixed so mean(f.e) >= 0) and L
/// (equal-count binning of g against f.e followed by pool-adjacent-violators)
/// from calibration pixels where both f and g are known.
/// calibration: list of pixel indices into f/g.
struct FitResult {
  DistortionTable table;
  std::vector<std::string> warnings;
};
FitResult fit_distortion(const ColorImage& f, const GreyObservation& g,
                         const std::vector<int>& calibration, int bins);

/// Build a damaged instance from a clean image: outside D, f = clean (+ noise,
/// clamped to [0,1]); inside D, f = mid-grey sentinel and g = L(clean.e)
/// (+ noise, clamped >= 0). Deterministic given seed.
std::pair<ColorImage, GreyObservation> synthesize_instance(
    const ColorImage& clean, const DamageMask& D, const DistortionTable& tab,
    double noise_sigma, uint64_t seed);

}  // namespace pcr

#endif
