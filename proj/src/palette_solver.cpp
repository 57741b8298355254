#include "pcr/palette_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "pcr/energy.hpp"

namespace pcr {

namespace {

double pth_power(double v, double p) {
  if (p == 2.0) return v * v;
  if (p == 1.0) return v;
  return std::pow(v, p);
}

// Golden-section minimization on [lo, hi] to absolute tolerance tol.
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// 1-D grid search then golden-section refinement on the best bracket.
template <typename F>
double grid_then_refine(F&& f, double lo, double hi, double step, double tol) {
  double best_t = lo, best_v = f(lo);
  for (double t = lo + step; t <= hi + 0.5 * step; t += step) {
    double v = f(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double a = std::max(lo, best_t - step);
  double b = std::min(hi, best_t + step);
  double refined = golden_section(f, a, b, tol);
  return (f(refined) <= best_v) ? refined : best_t;
}

}  // namespace

std::vector<double> update_color(int i, const Labeling& l, const Instance& inst,
                                 const Palette& A) {
  const int n = inst.f.geometry.pixel_count();
  const int m = inst.f.channels;
  const double p = inst.params.p;
  const double area = inst.f.geometry.spacing_h * inst.f.geometry.spacing_h;

  std::vector<int> outside, inside;
  for (int px = 0; px < n; ++px) {
    if (l.label[px] != i) continue;
    (inst.D.damaged[px] ? inside : outside).push_back(px);
  }
  std::vector<double> prev(A.color(i), A.color(i) + m);
  if (outside.empty() && inside.empty()) return prev;

  // Exact closed form: no damaged pixels in the region and p = 2 makes the
  // whole objective a decoupled least-squares problem.
  if (inside.empty() && p == 2.0) {
    std::vector<double> mean(m, 0.0);
    for (int px : outside)
      for (int c = 0; c < m; ++c) mean[c] += inst.f.pixel(px)[c];
    for (double& v : mean) v /= static_cast<double>(outside.size());
    return mean;
  }

  const std::vector<double>& e = inst.L.e;

  // Base point carrying the orthogonal-to-e components.
  std::vector<double> base(m);
  if (outside.empty()) {
    base = prev;
  } else if (p == 2.0) {
    std::fill(base.begin(), base.end(), 0.0);
    for (int px : outside)
      for (int c = 0; c < m; ++c) base[c] += inst.f.pixel(px)[c];
    for (double& v : base) v /= static_cast<double>(outside.size());
  } else if (p == 1.0) {
    for (int c = 0; c < m; ++c) {
      std::vector<double> vals;
      vals.reserve(outside.size());
      for (int px : outside) vals.push_back(inst.f.pixel(px)[c]);
      std::sort(vals.begin(), vals.end());
      size_t nn = vals.size();
      base[c] = (nn % 2 == 1) ? vals[nn / 2]
                              : 0.5 * (vals[nn / 2 - 1] + vals[nn / 2]);
    }
  } else {
    for (int c = 0; c < m; ++c) {
      double lo = 1.0, hi = 0.0;
      for (int px : outside) {
        lo = std::min(lo, inst.f.pixel(px)[c]);
        hi = std::max(hi, inst.f.pixel(px)[c]);
      }
      auto obj = [&](double a) {
        double s = 0.0;
        for (int px : outside) s += pth_power(std::abs(a - inst.f.pixel(px)[c]), p);
        return s;
      };
      base[c] = (hi > lo) ? golden_section(obj, lo, hi, 1e-10) : lo;
    }
  }

  // Component along e: 1-D global search (L is usually non-convex).
  std::vector<double> proj;
  proj.reserve(outside.size());
  for (int px : outside)
    proj.push_back(std::inner_product(e.begin(), e.end(), inst.f.pixel(px), 0.0));

  auto phi = [&](double t) {
    double s = 0.0;
    for (double fp : proj)
      s += inst.params.lambda * area * pth_power(std::abs(t - fp), p);
    double lt = eval_L(inst.L, t);
    for (int px : inside)
      s += inst.params.mu * area * pth_power(std::abs(lt - inst.g.value[px]), p);
    return s;
  };
  double t = grid_then_refine(phi, -0.5, 1.5, 1e-3, 1e-8);

  double base_proj = std::inner_product(e.begin(), e.end(), base.begin(), 0.0);
  std::vector<double> out(m);
  for (int c = 0; c < m; ++c) out[c] = base[c] + (t - base_proj) * e[c];
  return out;
}

MergeResult merge_degenerate(const Palette& A, const Labeling& l, double tol) {
  const int k = A.size();
  std::vector<int> rep(k + 1);
  std::iota(rep.begin(), rep.end(), 0);
  MergeResult res{A, l, {}};

  for (int i = 1; i <= k; ++i) {
    if (rep[i] != i) continue;
    for (int j = i + 1; j <= k; ++j) {
      if (rep[j] != j) continue;
      if (A.distance(i, j) <= tol) {
        rep[j] = i;
        res.merges.push_back({i, j, 0});
      }
    }
  }
  if (res.merges.empty()) return res;

  // Compact surviving colors, preserving order; remap labels.
  std::vector<int> new_index(k + 1, 0);
  std::vector<double> colors;
  int next = 0;
  for (int i = 1; i <= k; ++i) {
    if (rep[i] == i) {
      new_index[i] = ++next;
      const double* a = A.color(i);
      colors.insert(colors.end(), a, a + A.channels);
    }
  }
  std::vector<int> labels = l.label;
  for (int& v : labels) v = new_index[rep[v]];
  res.palette = Palette(A.channels, std::move(colors));
  res.labeling = Labeling(l.geometry, std::move(labels));
  return res;
}

KMeansResult init_palette_kmeans(const ColorImage& f, const DamageMask& D, int k,
                                 uint64_t seed) {
  if (k < 1) throw std::invalid_argument("init_palette_kmeans: k must be >= 1");
  const int n = f.geometry.pixel_count();
  const int m = f.channels;

  std::vector<int> clean;
  for (int p = 0; p < n; ++p)
    if (!D.damaged[p]) clean.push_back(p);
  if (clean.empty())
    throw std::invalid_argument("init_palette_kmeans: no undamaged pixels");

  KMeansResult res;

  std::set<std::vector<double>> distinct;
  for (int p : clean)
    distinct.insert(std::vector<double>(f.pixel(p), f.pixel(p) + m));
  if (static_cast<int>(distinct.size()) < k) {
    std::vector<double> colors;
    for (const auto& c : distinct) colors.insert(colors.end(), c.begin(), c.end());
    auto it = distinct.begin();
    while (static_cast<int>(colors.size()) / m < k) {
      colors.insert(colors.end(), it->begin(), it->end());
      if (++it == distinct.end()) it = distinct.begin();
    }
    res.warnings.push_back("k exceeds distinct undamaged colors; palette padded with duplicates");
    res.palette = Palette(m, std::move(colors));
    return res;
  }

  auto sqdist = [&](const double* a, const double* b) {
    double s = 0.0;
    for (int c = 0; c < m; ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
    return s;
  };

  std::mt19937_64 rng(seed);

  // k-means++ seeding.
  std::vector<std::vector<double>> centers;
  std::uniform_int_distribution<size_t> first(0, clean.size() - 1);
  int p0 = clean[first(rng)];
  centers.push_back(std::vector<double>(f.pixel(p0), f.pixel(p0) + m));
  std::vector<double> d2(clean.size());
  while (static_cast<int>(centers.size()) < k) {
    double sum = 0.0;
    for (size_t idx = 0; idx < clean.size(); ++idx) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers)
        best = std::min(best, sqdist(f.pixel(clean[idx]), c.data()));
      d2[idx] = best;
      sum += best;
    }
    size_t chosen = 0;
    if (sum > 0.0) {
      std::uniform_real_distribution<double> u(0.0, sum);
      double r = u(rng), acc = 0.0;
      for (size_t idx = 0; idx < clean.size(); ++idx) {
        acc += d2[idx];
        if (acc >= r) {
          chosen = idx;
          break;
        }
      }
    }
    centers.push_back(
        std::vector<double>(f.pixel(clean[chosen]), f.pixel(clean[chosen]) + m));
  }

  // Lloyd iterations.
  std::vector<int> assign(clean.size(), 0);
  for (int iter = 0; iter < 50; ++iter) {
    bool changed = false;
    for (size_t idx = 0; idx < clean.size(); ++idx) {
      double best = std::numeric_limits<double>::infinity();
      int bi = 0;
      for (int c = 0; c < k; ++c) {
        double d = sqdist(f.pixel(clean[idx]), centers[c].data());
        if (d < best) {
          best = d;
          bi = c;
        }
      }
      if (assign[idx] != bi) {
        assign[idx] = bi;
        changed = true;
      }
    }
    std::vector<std::vector<double>> sums(k, std::vector<double>(m, 0.0));
    std::vector<int> counts(k, 0);
    for (size_t idx = 0; idx < clean.size(); ++idx) {
      for (int c = 0; c < m; ++c) sums[assign[idx]][c] += f.pixel(clean[idx])[c];
      counts[assign[idx]]++;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster from the farthest point.
        size_t far = 0;
        double far_d = -1.0;
        for (size_t idx = 0; idx < clean.size(); ++idx) {
          double d = sqdist(f.pixel(clean[idx]), centers[assign[idx]].data());
          if (d > far_d) {
            far_d = d;
            far = idx;
          }
        }
        centers[c].assign(f.pixel(clean[far]), f.pixel(clean[far]) + m);
        changed = true;
      } else {
        for (int ch = 0; ch < m; ++ch) centers[c][ch] = sums[c][ch] / counts[c];
      }
    }
    if (!changed) break;
  }

  std::vector<double> colors;
  for (const auto& c : centers) colors.insert(colors.end(), c.begin(), c.end());
  res.palette = Palette(m, std::move(colors));
  return res;
}

PaletteSolveResult solve_free_palette(const Instance& inst, int k,
                                      const SolveOptions& opts) {
  auto km = init_palette_kmeans(inst.f, inst.D, k, opts.seed);
  return solve_free_palette(inst, km.palette, opts);
}

PaletteSolveResult solve_free_palette(const Instance& inst, const Palette& init,
                                      const SolveOptions& opts) {
  Palette A = init;
  PaletteSolveResult res{A, Labeling::constant(inst.f.geometry, 1), {}, {}, {}};

  // Warm-start each outer iteration from the previous labeling so the outer
  // energy sequence stays non-increasing.
  Labeling cur = initial_labeling(inst, A);
  double prev_energy = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < 30; ++outer) {
    auto [labeling, trace] = solve_fixed_palette(inst, A, cur, opts);
    res.last_trace = trace;

    // Color updates, accepted only when the region fidelity does not worsen
    // (for p != 2 the decoupled update is a heuristic).
    for (int i = 1; i <= A.size(); ++i) {
      std::vector<double> cand = update_color(i, labeling, inst, A);
      Palette trial = A;
      std::copy(cand.begin(), cand.end(),
                trial.colors.begin() + static_cast<size_t>(i - 1) * A.channels);
      double before =
          total_energy(labeling, A, inst.f, inst.D, inst.g, inst.L, inst.params).total;
      double after =
          total_energy(labeling, trial, inst.f, inst.D, inst.g, inst.L, inst.params).total;
      if (after <= before) A = trial;
    }

    auto merged = merge_degenerate(A, labeling, 1e-6);
    for (MergeEvent ev : merged.merges) {
      ev.iteration = outer;
      res.merges.push_back(ev);
    }
    A = merged.palette;
    res.labeling = merged.labeling;
    res.palette = A;
    cur = merged.labeling;

    double energy = total_energy(res.labeling, A, inst.f, inst.D, inst.g, inst.L,
                                 inst.params).total;
    res.outer_energy.push_back(energy);
    if (prev_energy - energy < 1e-10) break;
    prev_energy = energy;
  }
  return res;
}

}  // namespace pcr
