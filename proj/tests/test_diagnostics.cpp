#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pcr/diagnostics.hpp"

using namespace pcr;

namespace {

// Vertical interface: label 1 for x < split, 2 otherwise.
Labeling vertical_split(const GridGeometry& geom, int split) {
  std::vector<int> labels(geom.pixel_count());
  for (int y = 0; y < geom.height; ++y)
    for (int x = 0; x < geom.width; ++x)
      labels[geom.index(x, y)] = x < split ? 1 : 2;
  return Labeling(geom, labels);
}

// Quarter-plane corner: label 2 iff x >= cx and y >= cy.
Labeling corner(const GridGeometry& geom, int cx, int cy) {
  std::vector<int> labels(geom.pixel_count());
  for (int y = 0; y < geom.height; ++y)
    for (int x = 0; x < geom.width; ++x)
      labels[geom.index(x, y)] = (x >= cx && y >= cy) ? 2 : 1;
  return Labeling(geom, labels);
}

}  // namespace

TEST_CASE("extract_jump_edges: constant labeling has none") {
  GridGeometry geom(4, 4);
  CHECK(extract_jump_edges(Labeling::constant(geom, 1)).empty());
}

TEST_CASE("extract_jump_edges: single shared edge on a 2x1 grid") {
  GridGeometry geom(2, 1);
  Labeling l(geom, {1, 2});
  auto edges = extract_jump_edges(l);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].p == 0);
  CHECK(edges[0].q == 1);
}

TEST_CASE("jump edge count times weight equals the N4 interface length") {
  GridGeometry geom(6, 6);
  Labeling l = testing::random_labeling(geom, 3, 77);
  auto edges = extract_jump_edges(l);
  CHECK(static_cast<double>(edges.size()) * geom.spacing_h ==
        doctest::Approx(unweighted_interface_length(l, geom)));
}

TEST_CASE("density_ratio: straight interface through the center is ~2") {
  GridGeometry geom(64, 64);
  Labeling l = vertical_split(geom, 32);
  double ratio = density_ratio(l, 31, 32, 8.0);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.10));
  // Tighter at rho = 16h.
  CHECK(density_ratio(l, 31, 32, 16.0) == doctest::Approx(2.0).epsilon(0.08));
}

TEST_CASE("density_ratio: far from any interface is 0") {
  GridGeometry geom(32, 32);
  Labeling l = vertical_split(geom, 28);
  CHECK(density_ratio(l, 8, 16, 4.0) == 0.0);
}

TEST_CASE("density_ratio: quarter-plane corner is ~2") {
  GridGeometry geom(64, 64);
  Labeling l = corner(geom, 32, 32);
  CHECK(density_ratio(l, 32, 32, 16.0) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("density_ratio rejects small rho and clipped balls") {
  GridGeometry geom(16, 16);
  Labeling l = vertical_split(geom, 8);
  CHECK_THROWS_AS(density_ratio(l, 8, 8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(density_ratio(l, 0, 0, 4.0), std::invalid_argument);
}

TEST_CASE("elimination_scan: two-label labelings have no violations") {
  GridGeometry geom(16, 16);
  Labeling l = vertical_split(geom, 8);
  for (double eta : {0.01, 0.05, 0.1, 0.2}) {
    auto v = elimination_scan(l, 2, eta, {3.0, 5.0});
    CHECK(v.empty());
  }
}

TEST_CASE("elimination_scan: T-junction with tiny eta has no violations") {
  GridGeometry geom(16, 16);
  std::vector<int> labels(256);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      labels[y * 16 + x] = y < 8 ? (x < 8 ? 1 : 2) : 3;
  Labeling l(geom, labels);
  auto v = elimination_scan(l, 3, 1e-6, {3.0, 5.0});
  CHECK(v.empty());
}

TEST_CASE("elimination_scan flags a stray third-phase pixel") {
  GridGeometry geom(16, 16);
  Labeling l = vertical_split(geom, 8);
  l.label[geom.index(8, 8)] = 3;  // single intruder at the center
  auto v = elimination_scan(l, 3, 0.5, {6.0});
  CHECK_FALSE(v.empty());
}

TEST_CASE("check_h3: collinear palette fails with zero slack") {
  Palette A(3, {0, 0, 0, 0.5, 0, 0, 1, 0, 0});
  auto rep = check_h3(A);
  CHECK_FALSE(rep.satisfied);
  CHECK(rep.slack == doctest::Approx(0.0));
  // Worst triple: endpoints through the middle color.
  CHECK(rep.l == 2);
}

TEST_CASE("check_h3: equilateral triangle passes") {
  Palette A(3, {0, 0, 0, 1, 0, 0, 0.5, std::sqrt(3.0) / 2.0, 0});
  auto rep = check_h3(A);
  CHECK(rep.satisfied);
  CHECK(rep.slack > 0.9);
}

TEST_CASE("check_h3: k=2 vacuously true") {
  Palette A(3, {0, 0, 0, 1, 0, 0});
  CHECK(check_h3(A).satisfied);
}

TEST_CASE("check_h3 is permutation invariant") {
  Palette A(3, {0.1, 0.9, 0.3, 0.7, 0.2, 0.8, 0.4, 0.4, 0.1, 0.9, 0.9, 0.0});
  Palette B(3, {0.9, 0.9, 0.0, 0.1, 0.9, 0.3, 0.4, 0.4, 0.1, 0.7, 0.2, 0.8});
  CHECK(check_h3(A).satisfied == check_h3(B).satisfied);
  CHECK(check_h3(A).slack == doctest::Approx(check_h3(B).slack));
}

TEST_CASE("regularity_report assembles all parts") {
  GridGeometry geom(48, 48);
  Labeling l = vertical_split(geom, 24);
  Palette A(3, {0, 0, 0, 1, 1, 1});
  auto rep = regularity_report(l, A, {8.0, 16.0});
  CHECK(rep.jump_pixel_count == 96);
  REQUIRE(rep.density.size() == 2);
  CHECK(rep.density[1].min_ratio == doctest::Approx(2.0).epsilon(0.10));
  CHECK(rep.elimination_violations.empty());
  CHECK(rep.h3.satisfied);
}
