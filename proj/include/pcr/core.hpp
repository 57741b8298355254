#ifndef PCR_CORE_HPP
#define PCR_CORE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcr {

enum class Neighborhood { N4, N8 };

/// Pixel lattice with spacing h. Pixel p = y*width + x; edges are unordered
/// neighbor pairs fixed by the neighborhood (N4 = axis pairs, N8 adds diagonals).
struct GridGeometry {
  int width = 0;
  int height = 0;
  double spacing_h = 1.0;
  Neighborhood neighborhood = Neighborhood::N4;

  GridGeometry() = default;
  GridGeometry(int w, int h, double spacing = 1.0,
               Neighborhood nb = Neighborhood::N4)
      : width(w), height(h), spacing_h(spacing), neighborhood(nb) {
    if (w < 1 || h < 1) throw std::invalid_argument("GridGeometry: size must be >= 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
      throw std::invalid_argument("GridGeometry: spacing_h must be > 0");
  }

  int pixel_count() const { return width * height; }
  int index(int x, int y) const { return y * width + x; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool same_grid(const GridGeometry& o) const {
    return width == o.width && height == o.height;
  }

  // Undirected neighbor directions; each pair counted once.
  // N4: (1,0),(0,1). N8 adds (1,1),(1,-1).
  int direction_count() const { return neighborhood == Neighborhood::N4 ? 2 : 4; }
  static constexpr int kDirDx[4] = {1, 0, 1, 1};
  static constexpr int kDirDy[4] = {0, 1, 1, -1};
};

/// The datum f as an M-channel raster, components in [0,1].
struct ColorImage {
  GridGeometry geometry;
  int channels = 3;
  std::vector<double> data;  // size = width*height*channels

  ColorImage() = default;
  ColorImage(GridGeometry geom, int m, std::vector<double> values)
      : geometry(geom), channels(m), data(std::move(values)) {
    if (m < 1) throw std::invalid_argument("ColorImage: channels must be >= 1");
    if (data.size() != static_cast<size_t>(geometry.pixel_count()) * m)
      throw std::invalid_argument("ColorImage: data size mismatch");
    for (double v : data)
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw std::invalid_argument("ColorImage: components must be finite in [0,1]");
  }
  ColorImage(GridGeometry geom, int m, double fill = 0.0)
      : ColorImage(geom, m,
                   std::vector<double>(static_cast<size_t>(geom.pixel_count()) * m,
                                       fill)) {}

  const double* pixel(int p) const { return data.data() + static_cast<size_t>(p) * channels; }
  double* pixel(int p) { return data.data() + static_cast<size_t>(p) * channels; }
};

/// The damaged region D as a boolean raster. At least one pixel must be
/// undamaged (|Omega \ D| > 0).
struct DamageMask {
  GridGeometry geometry;
  std::vector<bool> damaged;

  DamageMask() = default;
  DamageMask(GridGeometry geom, std::vector<bool> mask)
      : geometry(geom), damaged(std::move(mask)) {
    if (damaged.size() != static_cast<size_t>(geometry.pixel_count()))
      throw std::invalid_argument("DamageMask: size mismatch");
    bool any_clean = false;
    for (bool d : damaged)
      if (!d) { any_clean = true; break; }
    if (!any_clean)
      throw std::invalid_argument("DamageMask: complement of D is empty");
  }

  static DamageMask empty(GridGeometry geom) {
    return DamageMask(geom, std::vector<bool>(geom.pixel_count(), false));
  }
  int damaged_count() const {
    int n = 0;
    for (bool d : damaged) n += d ? 1 : 0;
    return n;
  }
};

/// Scalar grey record g, meaningful only where the mask is damaged.
struct GreyObservation {
  GridGeometry geometry;
  std::vector<double> value;

  GreyObservation() = default;
  GreyObservation(GridGeometry geom, std::vector<double> values)
      : geometry(geom), value(std::move(values)) {
    if (value.size() != static_cast<size_t>(geometry.pixel_count()))
      throw std::invalid_argument("GreyObservation: size mismatch");
    for (double v : value)
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("GreyObservation: values must be finite and >= 0");
  }
};

/// Ordered color set {a_1,...,a_k} in R^M. Order is significant: labels
/// index into it (1-based).
struct Palette {
  int channels = 3;
  std::vector<double> colors;  // k * channels

  Palette() = default;
  Palette(int m, std::vector<double> values) : channels(m), colors(std::move(values)) {
    if (m < 1) throw std::invalid_argument("Palette: channels must be >= 1");
    if (colors.empty() || colors.size() % m != 0)
      throw std::invalid_argument("Palette: colors size must be a positive multiple of channels");
    for (double v : colors)
      if (!std::isfinite(v)) throw std::invalid_argument("Palette: colors must be finite");
  }

  int size() const { return static_cast<int>(colors.size()) / channels; }
  const double* color(int i) const {  // i is 1-based
    if (i < 1 || i > size()) throw std::out_of_range("Palette: label out of range");
    return colors.data() + static_cast<size_t>(i - 1) * channels;
  }
  double distance(int i, int j) const {
    const double* a = color(i);
    const double* b = color(j);
    double s = 0.0;
    for (int c = 0; c < channels; ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
    return std::sqrt(s);
  }
  // |a_i - a_j| < |a_i - a_l| + |a_l - a_j| for distinct i, j, l.
  bool strict_triangle(int i, int j, int l) const {
    return distance(i, j) < distance(i, l) + distance(l, j);
  }
};

/// Per-pixel label in {1,...,k}; each pixel carries exactly one label.
struct Labeling {
  GridGeometry geometry;
  std::vector<int> label;

  Labeling() = default;
  Labeling(GridGeometry geom, std::vector<int> labels)
      : geometry(geom), label(std::move(labels)) {
    if (label.size() != static_cast<size_t>(geometry.pixel_count()))
      throw std::invalid_argument("Labeling: size mismatch");
    for (int l : label)
      if (l < 1) throw std::invalid_argument("Labeling: labels must be >= 1");
  }
  static Labeling constant(GridGeometry geom, int l) {
    return Labeling(geom, std::vector<int>(geom.pixel_count(), l));
  }
};

struct ModelParams {
  double lambda = 1.0;
  double mu = 1.0;
  double p = 2.0;

  ModelParams() = default;
  ModelParams(double lam, double m, double exponent)
      : lambda(lam), mu(m), p(exponent) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("ModelParams: lambda must be > 0");
    if (!(mu > 0.0) || !std::isfinite(mu))
      throw std::invalid_argument("ModelParams: mu must be > 0");
    if (!(p >= 1.0) || !std::isfinite(p))
      throw std::invalid_argument("ModelParams: p must be >= 1");
  }
};

struct ValidationIssue {
  bool fatal = false;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;

  void add(bool fatal, std::string msg) {
    issues.push_back({fatal, std::move(msg)});
    if (fatal) ok = false;
  }
};

ValidationReport validate_instance(const ColorImage& f, const DamageMask& D,
                                   const GreyObservation& g, const Palette& A,
                                   const ModelParams& params);

}  // namespace pcr

#endif
