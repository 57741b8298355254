#ifndef PCR_MINCUT_HPP
#define PCR_MINCUT_HPP

#include <cstddef>
#include <vector>

namespace pcr {

/// Directed s-t flow network with floating-point capacities.
/// Arcs keep insertion order; the solve is deterministic given that order.
class FlowNetwork {
 public:
  FlowNetwork(int node_count, int source, int sink);

  /// Adds arc from -> to with the given capacity (>= 0). A reverse arc of
  /// capacity 0 is created alongside for the residual graph.
  void add_arc(int from, int to, double capacity);

  int node_count() const { return static_cast<int>(head_.size()); }
  int source() const { return source_; }
  int sink() const { return sink_; }

  struct CutResult {
    double flow_value = 0.0;
    std::vector<bool> source_side;  // per node
  };

  /// Shortest-augmenting-path max flow (BFS level graph, blocking flow).
  /// Saturation tolerance 1e-12 absolute.
  CutResult max_flow_min_cut();

 private:
  struct Arc {
    int to;
    int rev;  // index of reverse arc in arcs_[to]
    double cap;
  };

  bool build_levels();
  double push(int v, double limit);

  int source_, sink_;
  std::vector<std::vector<Arc>> head_;
  std::vector<int> level_, iter_;
};

}  // namespace pcr

#endif
