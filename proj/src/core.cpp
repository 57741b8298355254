#include "pcr/core.hpp"

namespace pcr {

ValidationReport validate_instance(const ColorImage& f, const DamageMask& D,
                                   const GreyObservation& g, const Palette& A,
                                   const ModelParams& params) {
  ValidationReport report;

  if (!f.geometry.same_grid(D.geometry))
    report.add(true, "geometry mismatch between image and mask");
  if (!f.geometry.same_grid(g.geometry))
    report.add(true, "geometry mismatch between image and grey observation");
  if (A.channels != f.channels)
    report.add(true, "palette channel count differs from image");

  bool any_clean = false;
  for (bool d : D.damaged)
    if (!d) { any_clean = true; break; }
  if (!any_clean) report.add(true, "complement of D is empty");

  for (double v : f.data)
    if (!std::isfinite(v)) { report.add(true, "non-finite image value"); break; }
  if (f.geometry.same_grid(g.geometry)) {
    for (int p = 0; p < f.geometry.pixel_count(); ++p) {
      if (D.damaged.size() == g.value.size() && D.damaged[p] &&
          !std::isfinite(g.value[p])) {
        report.add(true, "non-finite grey value on damaged pixel");
        break;
      }
    }
  }

  for (int i = 1; i <= A.size(); ++i) {
    for (int j = i + 1; j <= A.size(); ++j) {
      if (A.distance(i, j) == 0.0) {
        report.add(false, "duplicate colors " + std::to_string(i) + "," +
                              std::to_string(j) + "; zero interface cost");
      }
    }
  }

  (void)params;  // constructor already enforced lambda, mu, p
  return report;
}

}  // namespace pcr
