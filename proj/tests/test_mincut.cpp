#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "pcr/mincut.hpp"

using namespace pcr;

TEST_CASE("single arc") {
  FlowNetwork net(2, 0, 1);
  net.add_arc(0, 1, 3.0);
  auto res = net.max_flow_min_cut();
  CHECK(res.flow_value == doctest::Approx(3.0));
  CHECK(res.source_side[0]);
  CHECK_FALSE(res.source_side[1]);
}

TEST_CASE("bottleneck") {
  FlowNetwork net(3, 0, 2);
  net.add_arc(0, 1, 2.0);
  net.add_arc(1, 2, 1.0);
  auto res = net.max_flow_min_cut();
  CHECK(res.flow_value == doctest::Approx(1.0));
}

TEST_CASE("bad construction rejected") {
  CHECK_THROWS_AS(FlowNetwork(2, 0, 0), std::invalid_argument);
  FlowNetwork net(2, 0, 1);
  CHECK_THROWS_AS(net.add_arc(0, 5, 1.0), std::out_of_range);
  CHECK_THROWS_AS(net.add_arc(0, 1, -1.0), std::invalid_argument);
}

namespace {

// Brute force: minimum over all 2^(n-2) s-t cuts of the forward capacity.
double brute_force_min_cut(int n, int s, int t,
                           const std::vector<std::array<double, 3>>& arcs) {
  int free_nodes = n - 2;
  double best = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 0; mask < (1u << free_nodes); ++mask) {
    std::vector<bool> source_side(n, false);
    source_side[s] = true;
    int bit = 0;
    for (int v = 0; v < n; ++v) {
      if (v == s || v == t) continue;
      source_side[v] = (mask >> bit) & 1u;
      ++bit;
    }
    double cap = 0.0;
    for (auto& [from, to, c] : arcs)
      if (source_side[static_cast<int>(from)] && !source_side[static_cast<int>(to)])
        cap += c;
    best = std::min(best, cap);
  }
  return best;
}

}  // namespace

TEST_CASE("random 10-node networks match exhaustive cut enumeration") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ucap(0.0, 5.0);
  std::uniform_int_distribution<int> unode(0, 9);

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10, s = 0, t = 9;
    std::vector<std::array<double, 3>> arcs;
    FlowNetwork net(n, s, t);
    for (int e = 0; e < 25; ++e) {
      int a = unode(rng), b = unode(rng);
      if (a == b) continue;
      double c = ucap(rng);
      net.add_arc(a, b, c);
      arcs.push_back({static_cast<double>(a), static_cast<double>(b), c});
    }
    auto res = net.max_flow_min_cut();
    double expect = brute_force_min_cut(n, s, t, arcs);
    CHECK(res.flow_value == doctest::Approx(expect).epsilon(1e-9));

    // Returned cut separates s from t and its capacity matches the flow.
    CHECK(res.source_side[s]);
    CHECK_FALSE(res.source_side[t]);
    double cut_cap = 0.0;
    for (auto& [from, to, c] : arcs)
      if (res.source_side[static_cast<int>(from)] &&
          !res.source_side[static_cast<int>(to)])
        cut_cap += c;
    CHECK(std::abs(cut_cap - res.flow_value) < 1e-9);
  }
}
