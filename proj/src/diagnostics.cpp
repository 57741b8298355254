#include "pcr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace pcr {

std::vector<JumpEdge> extract_jump_edges(const Labeling& l) {
  const GridGeometry& geom = l.geometry;
  std::vector<JumpEdge> edges;
  const int dirs = geom.direction_count();
  for (int y = 0; y < geom.height; ++y) {
    for (int x = 0; x < geom.width; ++x) {
      for (int d = 0; d < dirs; ++d) {
        int nx = x + GridGeometry::kDirDx[d];
        int ny = y + GridGeometry::kDirDy[d];
        if (!geom.in_bounds(nx, ny)) continue;
        int p = geom.index(x, y), q = geom.index(nx, ny);
        if (l.label[p] != l.label[q]) edges.push_back({p, q, d});
      }
    }
  }
  return edges;
}

namespace {

// Pixel center in length units.
inline void pixel_center(const GridGeometry& geom, int p, double* x, double* y) {
  *x = (p % geom.width + 0.5) * geom.spacing_h;
  *y = (p / geom.width + 0.5) * geom.spacing_h;
}

}  // namespace

bool ball_inside_grid(const GridGeometry& geom, int cx, int cy, double rho) {
  const double h = geom.spacing_h;
  double x = (cx + 0.5) * h, y = (cy + 0.5) * h;
  return x - rho >= 0.0 && y - rho >= 0.0 && x + rho <= geom.width * h &&
         y + rho <= geom.height * h;
}

double density_ratio(const Labeling& l, int cx, int cy, double rho) {
  const GridGeometry& geom = l.geometry;
  if (rho < 2.0 * geom.spacing_h)
    throw std::invalid_argument("density_ratio: rho must be >= 2h");
  if (!ball_inside_grid(geom, cx, cy, rho))
    throw std::invalid_argument("density_ratio: ball clipped by image border");

  const EdgeWeights ew = EdgeWeights::from_geometry(geom);
  double x0 = (cx + 0.5) * geom.spacing_h, y0 = (cy + 0.5) * geom.spacing_h;
  double sum = 0.0;
  for (const JumpEdge& e : extract_jump_edges(l)) {
    double xp, yp, xq, yq;
    pixel_center(geom, e.p, &xp, &yp);
    pixel_center(geom, e.q, &xq, &yq);
    double mx = 0.5 * (xp + xq), my = 0.5 * (yp + yq);
    if (std::hypot(mx - x0, my - y0) <= rho) sum += ew.w[e.dir];
  }
  return sum / rho;
}

std::vector<EliminationViolation> elimination_scan(const Labeling& l, int k,
                                                   double eta,
                                                   const std::vector<double>& radii,
                                                   int center_stride) {
  if (!(eta > 0.0)) throw std::invalid_argument("elimination_scan: eta must be > 0");
  const GridGeometry& geom = l.geometry;
  const double h = geom.spacing_h;
  std::vector<EliminationViolation> out;
  if (k < 3) return out;  // V empty for every pair

  for (double r : radii) {
    for (int cy = 0; cy < geom.height; cy += center_stride) {
      for (int cx = 0; cx < geom.width; cx += center_stride) {
        if (!ball_inside_grid(geom, cx, cy, r)) continue;
        double x0 = (cx + 0.5) * h, y0 = (cy + 0.5) * h;
        // Label histogram inside B_r and B_{r/2}.
        std::vector<int> count(k + 1, 0), inner(k + 1, 0);
        int total = 0;
        int span = static_cast<int>(std::ceil(r / h)) + 1;
        for (int y = std::max(0, cy - span); y <= std::min(geom.height - 1, cy + span); ++y) {
          for (int x = std::max(0, cx - span); x <= std::min(geom.width - 1, cx + span); ++x) {
            double d = std::hypot((x + 0.5) * h - x0, (y + 0.5) * h - y0);
            if (d > r) continue;
            int lab = l.label[geom.index(x, y)];
            ++count[lab];
            ++total;
            if (d <= 0.5 * r) ++inner[lab];
          }
        }
        if (total == 0) continue;
        double ball_area = total * h * h;
        for (int i = 1; i <= k; ++i) {
          for (int j = i + 1; j <= k; ++j) {
            int third = total - count[i] - count[j];
            int third_inner = 0;
            for (int v = 1; v <= k; ++v)
              if (v != i && v != j) third_inner += inner[v];
            double fraction = static_cast<double>(third) / total;
            double threshold = eta * r * r / ball_area;
            if (fraction <= threshold && third_inner > 0)
              out.push_back({cx, cy, r, i, j, fraction, third_inner});
          }
        }
      }
    }
  }
  return out;
}

H3Report check_h3(const Palette& A) {
  H3Report rep;
  const int k = A.size();
  if (k < 3) return rep;
  rep.slack = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      if (j == i) continue;
      for (int l = 1; l <= k; ++l) {
        if (l == i || l == j) continue;
        double slack = A.distance(i, l) + A.distance(l, j) - A.distance(i, j);
        if (slack < rep.slack) {
          rep.slack = slack;
          rep.i = i;
          rep.j = j;
          rep.l = l;
        }
      }
    }
  }
  rep.satisfied = rep.slack > 0.0;
  return rep;
}

RegularityReport regularity_report(const Labeling& l, const Palette& A,
                                   const std::vector<double>& radii, double eta) {
  RegularityReport rep;
  const GridGeometry& geom = l.geometry;

  auto edges = extract_jump_edges(l);
  std::set<int> jump_pixels;
  for (const JumpEdge& e : edges) {
    jump_pixels.insert(e.p);
    jump_pixels.insert(e.q);
  }
  rep.jump_pixel_count = static_cast<int>(jump_pixels.size());

  for (double rho : radii) {
    DensityStat stat{rho, std::numeric_limits<double>::infinity(),
                     std::vector<double>(16, 0.0)};
    bool any = false;
    for (int p : jump_pixels) {
      int cx = p % geom.width, cy = p / geom.width;
      if (!ball_inside_grid(geom, cx, cy, rho)) continue;  // border-clipped
      double ratio = density_ratio(l, cx, cy, rho);
      any = true;
      stat.min_ratio = std::min(stat.min_ratio, ratio);
      int bin = std::min(15, static_cast<int>(ratio / 0.25));
      stat.histogram[bin] += 1.0;
    }
    if (!any) stat.min_ratio = 0.0;
    rep.density.push_back(stat);
  }

  rep.elimination_violations = elimination_scan(l, A.size(), eta, radii);
  rep.h3 = check_h3(A);
  return rep;
}

}  // namespace pcr
