#include "pcr/mincut.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace pcr {

namespace {
constexpr double kSaturationTol = 1e-12;
}

FlowNetwork::FlowNetwork(int node_count, int source, int sink)
    : source_(source), sink_(sink), head_(node_count) {
  if (node_count < 2 || source < 0 || source >= node_count || sink < 0 ||
      sink >= node_count || source == sink)
    throw std::invalid_argument("FlowNetwork: bad source/sink");
}

void FlowNetwork::add_arc(int from, int to, double capacity) {
  if (from < 0 || from >= node_count() || to < 0 || to >= node_count())
    throw std::out_of_range("FlowNetwork: node out of range");
  if (!(capacity >= 0.0) || !std::isfinite(capacity))
    throw std::invalid_argument("FlowNetwork: capacity must be finite and >= 0");
  head_[from].push_back({to, static_cast<int>(head_[to].size()), capacity});
  head_[to].push_back({from, static_cast<int>(head_[from].size()) - 1, 0.0});
}

bool FlowNetwork::build_levels() {
  level_.assign(node_count(), -1);
  std::queue<int> q;
  level_[source_] = 0;
  q.push(source_);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Arc& a : head_[v]) {
      if (a.cap > kSaturationTol && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

double FlowNetwork::push(int v, double limit) {
  if (v == sink_) return limit;
  for (int& i = iter_[v]; i < static_cast<int>(head_[v].size()); ++i) {
    Arc& a = head_[v][i];
    if (a.cap > kSaturationTol && level_[a.to] == level_[v] + 1) {
      double got = push(a.to, std::min(limit, a.cap));
      if (got > 0.0) {
        a.cap -= got;
        head_[a.to][a.rev].cap += got;
        return got;
      }
    }
  }
  return 0.0;
}

FlowNetwork::CutResult FlowNetwork::max_flow_min_cut() {
  double flow = 0.0;
  while (build_levels()) {
    iter_.assign(node_count(), 0);
    double got;
    while ((got = push(source_, std::numeric_limits<double>::infinity())) > 0.0)
      flow += got;
  }
  // Residual reachability from s gives the minimal source-side cut.
  build_levels();
  CutResult res;
  res.flow_value = flow;
  res.source_side.assign(node_count(), false);
  for (int v = 0; v < node_count(); ++v) res.source_side[v] = level_[v] >= 0;
  return res;
}

}  // namespace pcr
