#include "pcr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pcr/mincut.hpp"

namespace pcr {

namespace {

double pth_power(double v, double p) {
  if (p == 2.0) return v * v;
  if (p == 1.0) return v;
  return std::pow(v, p);
}

}  // namespace

std::vector<double> data_costs(const Instance& inst, const Palette& A) {
  const int n = inst.f.geometry.pixel_count();
  const int k = A.size();
  const int m = inst.f.channels;
  const double area = inst.f.geometry.spacing_h * inst.f.geometry.spacing_h;

  std::vector<double> la(k);
  for (int i = 1; i <= k; ++i)
    la[i - 1] = eval_L(inst.L, inst.L.dot_e(A.color(i)));

  std::vector<double> cost(static_cast<size_t>(k) * n);
  for (int i = 1; i <= k; ++i) {
    const double* a = A.color(i);
    for (int p = 0; p < n; ++p) {
      double c;
      if (inst.D.damaged[p]) {
        c = inst.params.mu * area *
            pth_power(std::abs(la[i - 1] - inst.g.value[p]), inst.params.p);
      } else {
        double s = 0.0;
        const double* fp = inst.f.pixel(p);
        for (int ch = 0; ch < m; ++ch) s += (a[ch] - fp[ch]) * (a[ch] - fp[ch]);
        c = inst.params.lambda * area * pth_power(std::sqrt(s), inst.params.p);
      }
      cost[static_cast<size_t>(i - 1) * n + p] = c;
    }
  }
  return cost;
}

Labeling initial_labeling(const Instance& inst, const Palette& A) {
  const std::vector<double> cost = data_costs(inst, A);
  const int n = inst.f.geometry.pixel_count();
  const int k = A.size();
  std::vector<int> labels(n, 1);
  for (int p = 0; p < n; ++p) {
    double best = cost[p];
    for (int i = 2; i <= k; ++i) {
      double c = cost[static_cast<size_t>(i - 1) * n + p];
      if (c < best) {
        best = c;
        labels[p] = i;
      }
    }
  }
  return Labeling(inst.f.geometry, std::move(labels));
}

Labeling expansion_move(const Labeling& l, int alpha, const Instance& inst,
                        const Palette& A) {
  if (alpha < 1 || alpha > A.size())
    throw std::out_of_range("expansion_move: alpha out of range");
  const GridGeometry& geom = inst.f.geometry;
  const int n = geom.pixel_count();
  const std::vector<double> cost = data_costs(inst, A);
  const EdgeWeights ew = EdgeWeights::from_geometry(geom);

  // Binary variable per pixel: 0 = keep current label (source side),
  // 1 = switch to alpha (sink side).
  std::vector<double> unary0(n), unary1(n);
  for (int p = 0; p < n; ++p) {
    unary0[p] = cost[static_cast<size_t>(l.label[p] - 1) * n + p];
    unary1[p] = cost[static_cast<size_t>(alpha - 1) * n + p];
  }

  struct PairArc {
    int p, q;
    double cap;
  };
  std::vector<PairArc> pair_arcs;
  const int dirs = geom.direction_count();
  for (int y = 0; y < geom.height; ++y) {
    for (int x = 0; x < geom.width; ++x) {
      for (int d = 0; d < dirs; ++d) {
        int nx = x + GridGeometry::kDirDx[d];
        int ny = y + GridGeometry::kDirDy[d];
        if (!geom.in_bounds(nx, ny)) continue;
        int p = geom.index(x, y);
        int q = geom.index(nx, ny);
        double w = ew.w[d];
        // E00 = w*d(lp,lq), E01 = w*d(lp,a), E10 = w*d(a,lq), E11 = 0.
        double a00 = w * A.distance(l.label[p], l.label[q]);
        double a01 = w * A.distance(l.label[p], alpha);
        double a10 = w * A.distance(alpha, l.label[q]);
        // Reparameterization: unary1[p] += a10 - a00; unary1[q] -= a10;
        // arc p->q with a01 + a10 - a00 (>= 0 by the triangle inequality).
        unary1[p] += a10 - a00;
        unary1[q] -= a10;
        double theta = a01 + a10 - a00;
        if (theta > 0.0) pair_arcs.push_back({p, q, theta});
      }
    }
  }

  const int s = n, t = n + 1;
  FlowNetwork net(n + 2, s, t);
  for (int p = 0; p < n; ++p) {
    double shift = std::min(unary0[p], unary1[p]);
    double c1 = unary1[p] - shift;
    double c0 = unary0[p] - shift;
    // s->p is cut when p lands on the sink side (x=1), p->t when on the
    // source side (x=0).
    if (c1 > 0.0) net.add_arc(s, p, c1);
    if (c0 > 0.0) net.add_arc(p, t, c0);
  }
  for (const PairArc& a : pair_arcs) net.add_arc(a.p, a.q, a.cap);

  auto cut = net.max_flow_min_cut();

  std::vector<int> labels = l.label;
  for (int p = 0; p < n; ++p)
    if (!cut.source_side[p]) labels[p] = alpha;
  Labeling candidate(geom, std::move(labels));

  double e_old = total_energy(l, A, inst.f, inst.D, inst.g, inst.L, inst.params).total;
  double e_new =
      total_energy(candidate, A, inst.f, inst.D, inst.g, inst.L, inst.params).total;
  return (e_new < e_old) ? candidate : l;
}

Labeling icm_move(const Labeling& l, int pixel, const Instance& inst,
                  const Palette& A) {
  const GridGeometry& geom = inst.f.geometry;
  if (pixel < 0 || pixel >= geom.pixel_count())
    throw std::out_of_range("icm_move: pixel out of range");
  const std::vector<double> cost = data_costs(inst, A);
  const int n = geom.pixel_count();
  const EdgeWeights ew = EdgeWeights::from_geometry(geom);
  const int x = pixel % geom.width, y = pixel / geom.width;
  const int dirs = geom.direction_count();

  int best = l.label[pixel];
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= A.size(); ++i) {
    double c = cost[static_cast<size_t>(i - 1) * n + pixel];
    for (int d = 0; d < dirs; ++d) {
      for (int sgn : {+1, -1}) {
        int nx = x + sgn * GridGeometry::kDirDx[d];
        int ny = y + sgn * GridGeometry::kDirDy[d];
        if (!geom.in_bounds(nx, ny)) continue;
        c += ew.w[d] * A.distance(i, l.label[geom.index(nx, ny)]);
      }
    }
    if (c < best_cost - 1e-15 || (std::abs(c - best_cost) <= 1e-15 && i < best)) {
      best_cost = c;
      best = i;
    }
  }
  std::vector<int> labels = l.label;
  labels[pixel] = best;
  return Labeling(geom, std::move(labels));
}

std::pair<Labeling, SolveTrace> solve_fixed_palette(const Instance& inst,
                                                    const Palette& A,
                                                    const SolveOptions& opts) {
  return solve_fixed_palette(inst, A, initial_labeling(inst, A), opts);
}

std::pair<Labeling, SolveTrace> solve_fixed_palette(const Instance& inst,
                                                    const Palette& A,
                                                    const Labeling& init,
                                                    const SolveOptions& opts) {
  Labeling current = init;
  SolveTrace trace;
  const int k = A.size();
  double energy =
      total_energy(current, A, inst.f, inst.D, inst.g, inst.L, inst.params).total;
  std::mt19937_64 rng(opts.seed);

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double sweep_start = energy;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 1);
    if (opts.move_order == MoveOrder::RandomSeeded)
      std::shuffle(order.begin(), order.end(), rng);

    if (opts.engine == Engine::Expansion) {
      for (int alpha : order) {
        current = expansion_move(current, alpha, inst, A);
        energy = total_energy(current, A, inst.f, inst.D, inst.g, inst.L,
                              inst.params).total;
        trace.energy.push_back(energy);
      }
    } else {
      for (int p = 0; p < inst.f.geometry.pixel_count(); ++p)
        current = icm_move(current, p, inst, A);
      energy = total_energy(current, A, inst.f, inst.D, inst.g, inst.L,
                            inst.params).total;
      trace.energy.push_back(energy);
    }
    ++trace.sweeps;
    if (sweep_start - energy < opts.epsilon_improve) {
      trace.termination = "converged";
      return {current, trace};
    }
  }
  trace.termination = "max_sweeps";
  return {current, trace};
}

}  // namespace pcr
