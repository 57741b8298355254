#ifndef PCR_TEST_HELPERS_HPP
#define PCR_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "pcr/core.hpp"
#include "pcr/distortion.hpp"
#include "pcr/solver.hpp"

namespace pcr::testing {

struct RandomInstance {
  Instance inst;
  Palette palette;
};

inline RandomInstance make_random_instance(int w, int h, int k, uint64_t seed,
                                           double damaged_fraction = 0.3,
                                           double lambda = 1.0, double mu = 1.0,
                                           double p = 2.0,
                                           Neighborhood nb = Neighborhood::N4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  GridGeometry geom(w, h, 1.0, nb);
  const int n = geom.pixel_count();
  const int m = 3;

  std::vector<double> fdata(n * m);
  for (double& v : fdata) v = u01(rng);

  std::vector<bool> mask(n, false);
  for (int i = 0; i < n; ++i) mask[i] = u01(rng) < damaged_fraction;
  mask[0] = false;  // keep the complement of D nonempty

  std::vector<double> gdata(n);
  for (double& v : gdata) v = u01(rng);

  std::vector<double> colors(k * m);
  for (double& v : colors) v = u01(rng);

  RandomInstance r{
      Instance{ColorImage(geom, m, std::move(fdata)),
               DamageMask(geom, std::move(mask)),
               GreyObservation(geom, std::move(gdata)),
               DistortionTable::identity(m), ModelParams(lambda, mu, p)},
      Palette(m, std::move(colors))};
  return r;
}

inline Labeling random_labeling(const GridGeometry& geom, int k, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ul(1, k);
  std::vector<int> labels(geom.pixel_count());
  for (int& v : labels) v = ul(rng);
  return Labeling(geom, std::move(labels));
}

}  // namespace pcr::testing

#endif
