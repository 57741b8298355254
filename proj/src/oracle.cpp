#include "pcr/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace pcr {
namespace oracle {

double evaluate(const std::vector<int>& labels, const Palette& A,
                const Instance& inst) {
  const int w = inst.f.geometry.width;
  const int h = inst.f.geometry.height;
  const double sp = inst.f.geometry.spacing_h;
  const int m = inst.f.channels;
  const double pi = 3.14159265358979323846;

  double axis_w, diag_w;
  bool n8 = inst.f.geometry.neighborhood == Neighborhood::N8;
  if (n8) {
    axis_w = sp * sp * (pi / 4.0) / (2.0 * sp);
    diag_w = sp * sp * (pi / 4.0) / (2.0 * sp * std::sqrt(2.0));
  } else {
    axis_w = sp;
    diag_w = 0.0;
  }

  auto color_dist = [&](int i, int j) {
    double s = 0.0;
    for (int c = 0; c < m; ++c) {
      double d = A.colors[(i - 1) * m + c] - A.colors[(j - 1) * m + c];
      s += d * d;
    }
    return std::sqrt(s);
  };

  double perim = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int p = y * w + x;
      if (x + 1 < w && labels[p] != labels[p + 1])
        perim += axis_w * color_dist(labels[p], labels[p + 1]);
      if (y + 1 < h && labels[p] != labels[p + w])
        perim += axis_w * color_dist(labels[p], labels[p + w]);
      if (n8) {
        if (x + 1 < w && y + 1 < h && labels[p] != labels[p + w + 1])
          perim += diag_w * color_dist(labels[p], labels[p + w + 1]);
        if (x + 1 < w && y - 1 >= 0 && labels[p] != labels[p - w + 1])
          perim += diag_w * color_dist(labels[p], labels[p - w + 1]);
      }
    }
  }

  double fid = 0.0;
  const double area = sp * sp;
  for (int p = 0; p < w * h; ++p) {
    int lab = labels[p];
    if (inst.D.damaged[p]) {
      double t = 0.0;
      for (int c = 0; c < m; ++c)
        t += inst.L.e[c] * A.colors[(lab - 1) * m + c];
      // Piecewise-linear table lookup, written out long-hand.
      double lt;
      const auto& s = inst.L.samples;
      if (t <= s.front().first) {
        lt = (inst.L.extrapolation == Extrapolation::ClampEnds || s.size() < 2)
                 ? s.front().second
                 : std::max(0.0, s[0].second + (s[1].second - s[0].second) /
                                                   (s[1].first - s[0].first) *
                                                   (t - s[0].first));
      } else if (t >= s.back().first) {
        size_t nn = s.size();
        lt = (inst.L.extrapolation == Extrapolation::ClampEnds || nn < 2)
                 ? s.back().second
                 : std::max(0.0, s[nn - 1].second +
                                     (s[nn - 1].second - s[nn - 2].second) /
                                         (s[nn - 1].first - s[nn - 2].first) *
                                         (t - s[nn - 1].first));
      } else {
        size_t i = 1;
        while (s[i].first < t) ++i;
        double u = (t - s[i - 1].first) / (s[i].first - s[i - 1].first);
        lt = s[i - 1].second + u * (s[i].second - s[i - 1].second);
      }
      fid += inst.params.mu * area *
             std::pow(std::abs(lt - inst.g.value[p]), inst.params.p);
    } else {
      double s2 = 0.0;
      for (int c = 0; c < m; ++c) {
        double d = A.colors[(lab - 1) * m + c] - inst.f.data[p * m + c];
        s2 += d * d;
      }
      fid += inst.params.lambda * area * std::pow(std::sqrt(s2), inst.params.p);
    }
  }
  return perim + fid;
}

std::pair<Labeling, double> brute_force_fixed_palette(const Instance& inst,
                                                      const Palette& A) {
  const int n = inst.f.geometry.pixel_count();
  const int k = A.size();
  double combos = std::pow(static_cast<double>(k), n);
  if (combos > 1e7)
    throw std::invalid_argument("brute_force_fixed_palette: instance too large");

  std::vector<int> labels(n, 1), best(n, 1);
  double best_e = evaluate(labels, A, inst);
  // Odometer enumeration in lexicographic order; first minimum wins ties.
  while (true) {
    int pos = n - 1;
    while (pos >= 0 && labels[pos] == k) {
      labels[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++labels[pos];
    double e = evaluate(labels, A, inst);
    if (e < best_e) {
      best_e = e;
      best = labels;
    }
  }
  return {Labeling(inst.f.geometry, best), best_e};
}

Labeling brute_force_binary_move(const Labeling& l, int alpha,
                                 const Instance& inst, const Palette& A) {
  const int n = inst.f.geometry.pixel_count();
  if (n > 20)
    throw std::invalid_argument("brute_force_binary_move: instance too large");

  std::vector<int> best = l.label;
  double best_e = evaluate(best, A, inst);
  std::vector<int> cand(n);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int p = 0; p < n; ++p)
      cand[p] = (mask >> p) & 1u ? alpha : l.label[p];
    double e = evaluate(cand, A, inst);
    if (e < best_e) {
      best_e = e;
      best = cand;
    }
  }
  return Labeling(l.geometry, best);
}

}  // namespace oracle
}  // namespace pcr
