#include "pcr/energy.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace pcr {

EdgeWeights EdgeWeights::from_geometry(const GridGeometry& geom) {
  EdgeWeights w;
  const double h = geom.spacing_h;
  if (geom.neighborhood == Neighborhood::N4) {
    w.w[0] = w.w[1] = h;
  } else {
    const double dphi = std::numbers::pi / 4.0;
    w.w[0] = w.w[1] = h * h * dphi / (2.0 * h);
    w.w[2] = w.w[3] = h * h * dphi / (2.0 * h * std::numbers::sqrt2);
  }
  return w;
}

namespace {

void check_labels(const Labeling& l, int k) {
  for (int v : l.label)
    if (v < 1 || v > k)
      throw std::out_of_range("label out of palette range");
}

// Calls fn(p, q, dir) for each undirected neighbor pair.
template <typename Fn>
void for_each_edge(const GridGeometry& geom, Fn&& fn) {
  const int dirs = geom.direction_count();
  for (int y = 0; y < geom.height; ++y) {
    for (int x = 0; x < geom.width; ++x) {
      for (int d = 0; d < dirs; ++d) {
        int nx = x + GridGeometry::kDirDx[d];
        int ny = y + GridGeometry::kDirDy[d];
        if (!geom.in_bounds(nx, ny)) continue;
        fn(geom.index(x, y), geom.index(nx, ny), d);
      }
    }
  }
}

double pth_power(double v, double p) {
  if (p == 2.0) return v * v;
  if (p == 1.0) return v;
  return std::pow(v, p);
}

}  // namespace

double weighted_perimeter(const Labeling& l, const Palette& A,
                          const GridGeometry& geom) {
  check_labels(l, A.size());
  const EdgeWeights ew = EdgeWeights::from_geometry(geom);
  double sum = 0.0;
  for_each_edge(geom, [&](int p, int q, int d) {
    if (l.label[p] != l.label[q])
      sum += ew.w[d] * A.distance(l.label[p], l.label[q]);
  });
  return sum;
}

double unweighted_interface_length(const Labeling& l, const GridGeometry& geom) {
  const EdgeWeights ew = EdgeWeights::from_geometry(geom);
  double sum = 0.0;
  for_each_edge(geom, [&](int p, int q, int d) {
    if (l.label[p] != l.label[q]) sum += ew.w[d];
  });
  return sum;
}

double per_label_boundary_length(const Labeling& l, int i,
                                 const GridGeometry& geom) {
  if (i < 1) throw std::out_of_range("label out of range");
  const EdgeWeights ew = EdgeWeights::from_geometry(geom);
  double sum = 0.0;
  for_each_edge(geom, [&](int p, int q, int d) {
    if ((l.label[p] == i) != (l.label[q] == i)) sum += ew.w[d];
  });
  return sum;
}

std::pair<double, double> fidelity_terms(const Labeling& l, const Palette& A,
                                         const ColorImage& f, const DamageMask& D,
                                         const GreyObservation& g,
                                         const DistortionTable& Ltab,
                                         const ModelParams& params) {
  check_labels(l, A.size());
  const int n = f.geometry.pixel_count();
  const int m = f.channels;
  const double area = f.geometry.spacing_h * f.geometry.spacing_h;

  // L(a_i.e) per palette entry, computed once.
  std::vector<double> la(A.size());
  for (int i = 1; i <= A.size(); ++i)
    la[i - 1] = eval_L(Ltab, Ltab.dot_e(A.color(i)));

  double outside = 0.0, inside = 0.0;
  for (int p = 0; p < n; ++p) {
    const double* a = A.color(l.label[p]);
    if (D.damaged[p]) {
      inside += pth_power(std::abs(la[l.label[p] - 1] - g.value[p]), params.p);
    } else {
      double s = 0.0;
      const double* fp = f.pixel(p);
      for (int c = 0; c < m; ++c) s += (a[c] - fp[c]) * (a[c] - fp[c]);
      outside += pth_power(std::sqrt(s), params.p);
    }
  }
  return {params.lambda * area * outside, params.mu * area * inside};
}

EnergyBreakdown total_energy(const Labeling& l, const Palette& A,
                             const ColorImage& f, const DamageMask& D,
                             const GreyObservation& g, const DistortionTable& Ltab,
                             const ModelParams& params) {
  EnergyBreakdown b;
  b.perimeter_term = weighted_perimeter(l, A, f.geometry);
  auto [outside, inside] = fidelity_terms(l, A, f, D, g, Ltab, params);
  b.fidelity_outside_D = outside;
  b.fidelity_inside_D = inside;
  b.total = b.perimeter_term + outside + inside;
  return b;
}

namespace {

// Least-squares slope of log L vs log |t| over one tail; returns false if the
// tail is too short or contains non-positive L values.
bool tail_slope(const std::vector<std::pair<double, double>>& pts, double* slope) {
  if (pts.size() < 8) return false;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = 0;
  for (auto& [t, v] : pts) {
    if (std::abs(t) < 1e-12) continue;
    if (v <= 0.0) return false;
    double x = std::log(std::abs(t));
    double y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 8) return false;
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) return false;
  *slope = (n * sxy - sx * sy) / denom;
  return true;
}

}  // namespace

NontrivialityResult nontriviality_check(const DistortionTable& tab) {
  if (tab.samples.empty())
    throw std::invalid_argument("nontriviality_check: empty table");
  const double tol = 0.05;
  const size_t n = tab.samples.size();
  size_t tail = std::max<size_t>(n / 4, 1);

  std::vector<std::pair<double, double>> left(tab.samples.begin(),
                                              tab.samples.begin() + tail);
  std::vector<std::pair<double, double>> right(tab.samples.end() - tail,
                                               tab.samples.end());

  NontrivialityResult res;
  double gamma = -std::numeric_limits<double>::infinity();
  bool any = false;
  double s;
  // Only tails reaching into large |t| say anything about growth at infinity.
  if (left.front().first < -1.0 && tail_slope(left, &s)) {
    gamma = std::max(gamma, s);
    any = true;
  }
  if (right.back().first > 1.0 && tail_slope(right, &s)) {
    gamma = std::max(gamma, s);
    any = true;
  }
  if (!any) {
    // A bounded positive table on a short range is still Nontrivial when all
    // values are finite; classify Inconclusive only when no tail is usable.
    bool constantish = true;
    for (auto& [t, v] : tab.samples)
      if (std::abs(v - tab.samples.front().second) > 1e-12) constantish = false;
    if (constantish && n >= 8) {
      res.verdict = Triviality::Nontrivial;
      res.gamma_hat = 0.0;
      return res;
    }
    res.verdict = Triviality::Inconclusive;
    return res;
  }
  res.gamma_hat = gamma;
  res.verdict = (gamma <= 1.0 + tol) ? Triviality::Nontrivial : Triviality::Trivial;
  return res;
}

}  // namespace pcr
