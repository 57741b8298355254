#include "pcr/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace pcr {

DistortionTable::DistortionTable(std::vector<double> direction,
                                 std::vector<std::pair<double, double>> table,
                                 Extrapolation mode)
    : e(std::move(direction)), samples(std::move(table)), extrapolation(mode) {
  if (e.empty()) throw std::invalid_argument("DistortionTable: empty direction");
  double norm = 0.0;
  for (double c : e) norm += c * c;
  norm = std::sqrt(norm);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("DistortionTable: |e| must be 1");
  if (samples.empty()) throw std::invalid_argument("DistortionTable: empty table");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second) ||
        samples[i].second < 0.0)
      throw std::invalid_argument("DistortionTable: L values must be finite and >= 0");
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      throw std::invalid_argument("DistortionTable: t must be strictly increasing");
  }
}

static std::vector<double> unit_direction(int channels) {
  std::vector<double> e(channels, 1.0 / std::sqrt(static_cast<double>(channels)));
  return e;
}

DistortionTable DistortionTable::identity(int channels, double lo, double hi,
                                          int n) {
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < n; ++i) {
    double t = lo + (hi - lo) * i / (n - 1);
    samples.push_back({t, std::max(t, 0.0)});
  }
  return DistortionTable(unit_direction(channels), std::move(samples));
}

DistortionTable DistortionTable::power(int channels, double gamma, double lo,
                                       double hi, int n) {
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < n; ++i) {
    double t = lo + (hi - lo) * i / (n - 1);
    samples.push_back({t, std::pow(std::abs(t), gamma)});
  }
  return DistortionTable(unit_direction(channels), std::move(samples));
}

bool DistortionTable::is_monotone() const {
  for (size_t i = 1; i < samples.size(); ++i)
    if (samples[i].second < samples[i - 1].second) return false;
  return true;
}

double eval_L(const DistortionTable& tab, double t) {
  const auto& s = tab.samples;
  if (s.size() == 1) return s.front().second;
  if (t <= s.front().first) {
    if (tab.extrapolation == Extrapolation::ClampEnds) return s.front().second;
    double slope = (s[1].second - s[0].second) / (s[1].first - s[0].first);
    return std::max(0.0, s[0].second + slope * (t - s[0].first));
  }
  if (t >= s.back().first) {
    if (tab.extrapolation == Extrapolation::ClampEnds) return s.back().second;
    size_t n = s.size();
    double slope = (s[n - 1].second - s[n - 2].second) /
                   (s[n - 1].first - s[n - 2].first);
    return std::max(0.0, s[n - 1].second + slope * (t - s[n - 1].first));
  }
  auto it = std::lower_bound(
      s.begin(), s.end(), t,
      [](const std::pair<double, double>& a, double v) { return a.first < v; });
  if (it->first == t) return it->second;
  auto prev = it - 1;
  double w = (t - prev->first) / (it->first - prev->first);
  return prev->second + w * (it->second - prev->second);
}

// Pool-adjacent-violators, non-decreasing fit with equal weights.
static void pava_nondecreasing(std::vector<double>& y) {
  const size_t n = y.size();
  std::vector<double> level(n), weight(n);
  std::vector<size_t> count(n);
  size_t blocks = 0;
  for (size_t i = 0; i < n; ++i) {
    level[blocks] = y[i];
    weight[blocks] = 1.0;
    count[blocks] = 1;
    ++blocks;
    while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
      double w = weight[blocks - 2] + weight[blocks - 1];
      level[blocks - 2] =
          (level[blocks - 2] * weight[blocks - 2] + level[blocks - 1] * weight[blocks - 1]) / w;
      weight[blocks - 2] = w;
      count[blocks - 2] += count[blocks - 1];
      --blocks;
    }
  }
  size_t i = 0;
  for (size_t b = 0; b < blocks; ++b)
    for (size_t c = 0; c < count[b]; ++c) y[i++] = level[b];
}

FitResult fit_distortion(const ColorImage& f, const GreyObservation& g,
                         const std::vector<int>& calibration, int bins) {
  if (calibration.size() < 2)
    throw std::invalid_argument("fit_distortion: need >= 2 calibration pixels");
  if (bins < 2) throw std::invalid_argument("fit_distortion: bins must be >= 2");

  FitResult result;
  const int m = f.channels;
  const size_t n = calibration.size();

  // Principal direction of the calibration colors.
  std::vector<double> mean(m, 0.0);
  for (int p : calibration)
    for (int c = 0; c < m; ++c) mean[c] += f.pixel(p)[c];
  for (double& v : mean) v /= static_cast<double>(n);

  std::vector<double> cov(static_cast<size_t>(m) * m, 0.0);
  for (int p : calibration)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        cov[a * m + b] += (f.pixel(p)[a] - mean[a]) * (f.pixel(p)[b] - mean[b]);

  double trace = 0.0;
  for (int a = 0; a < m; ++a) trace += cov[a * m + a];

  std::vector<double> e(m);
  if (trace < 1e-15) {
    e = unit_direction(m);
    result.warnings.push_back("degenerate color cloud; e defaulted to (1,...,1)/sqrt(M)");
  } else {
    // Power iteration; deterministic start.
    std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
    for (int it = 0; it < 200; ++it) {
      std::vector<double> w(m, 0.0);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) w[a] += cov[a * m + b] * v[b];
      double norm = 0.0;
      for (double x : w) norm += x * x;
      norm = std::sqrt(norm);
      if (norm < 1e-30) break;
      for (int a = 0; a < m; ++a) v[a] = w[a] / norm;
    }
    e = v;
  }
  double mean_proj = std::inner_product(mean.begin(), mean.end(), e.begin(), 0.0);
  if (mean_proj < 0.0)
    for (double& c : e) c = -c;

  // Project and sort by t = f.e.
  std::vector<std::pair<double, double>> pts;  // (t, g)
  pts.reserve(n);
  for (int p : calibration) {
    double t = std::inner_product(e.begin(), e.end(), f.pixel(p), 0.0);
    pts.push_back({t, g.value[p]});
  }
  std::sort(pts.begin(), pts.end());

  // Equal-count bins: bin centers as t, bin means of g as L.
  int nb = std::min<int>(bins, static_cast<int>(n));
  std::vector<std::pair<double, double>> knots;
  for (int b = 0; b < nb; ++b) {
    size_t lo = b * n / nb;
    size_t hi = (b + 1) * n / nb;
    if (hi <= lo) continue;
    double tsum = 0.0, gsum = 0.0;
    for (size_t i = lo; i < hi; ++i) {
      tsum += pts[i].first;
      gsum += pts[i].second;
    }
    double tc = tsum / (hi - lo);
    double gc = gsum / (hi - lo);
    if (!knots.empty() && tc <= knots.back().first) {
      // Coincident bin centers (flat projection): merge into the last knot.
      knots.back().second = 0.5 * (knots.back().second + gc);
      continue;
    }
    knots.push_back({tc, gc});
  }
  if (knots.size() == 1) knots.push_back({knots[0].first + 1e-9, knots[0].second});

  std::vector<double> values;
  values.reserve(knots.size());
  for (auto& kv : knots) values.push_back(kv.second);
  pava_nondecreasing(values);
  for (size_t i = 0; i < knots.size(); ++i)
    knots[i].second = std::max(0.0, values[i]);

  result.table = DistortionTable(e, std::move(knots));
  return result;
}

std::pair<ColorImage, GreyObservation> synthesize_instance(
    const ColorImage& clean, const DamageMask& D, const DistortionTable& tab,
    double noise_sigma, uint64_t seed) {
  if (!clean.geometry.same_grid(D.geometry))
    throw std::invalid_argument("synthesize_instance: geometry mismatch");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  const int n = clean.geometry.pixel_count();
  const int m = clean.channels;
  std::vector<double> fdata(static_cast<size_t>(n) * m, 0.0);
  std::vector<double> gdata(n, 0.0);

  for (int p = 0; p < n; ++p) {
    if (D.damaged[p]) {
      for (int c = 0; c < m; ++c) fdata[static_cast<size_t>(p) * m + c] = 0.5;
      double t = tab.dot_e(clean.pixel(p));
      double v = eval_L(tab, t);
      if (noise_sigma > 0.0) v += noise_sigma * noise(rng);
      gdata[p] = std::max(0.0, v);
    } else {
      for (int c = 0; c < m; ++c) {
        double v = clean.pixel(p)[c];
        if (noise_sigma > 0.0) v += noise_sigma * noise(rng);
        fdata[static_cast<size_t>(p) * m + c] = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return {ColorImage(clean.geometry, m, std::move(fdata)),
          GreyObservation(clean.geometry, std::move(gdata))};
}

}  // namespace pcr
