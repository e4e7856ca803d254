#pragma once

#include <vector>

#include "trackmetric/core.hpp"
#include "trackmetric/ospa.hpp"

namespace trackmetric {

struct LabeledState {
  int label = 1;
  StateVector state;
};

/// (d(x, y)^p' + (alpha * [labels differ])^p')^(1/p'), uncapped.
double labeled_distance(const LabeledState& x, const LabeledState& y, const MetricParams& params);

/// Sum over scans of the reordering cost: 0 when neither track exists, c when
/// exactly one does, min(c, ||x - y||_2) when both do.
double reorder_cost(const Track& x, const Track& y, const MetricParams& params);
double reorder_cost_at(const Track& x, const Track& y, int t, const MetricParams& params);

/// One-to-one pairing of the smaller set into the larger. When sizes are
/// equal the second argument plays the smaller set.
struct OspatAssignment {
  std::vector<int> a_to_b;
  std::vector<int> b_to_a;
  bool b_is_rows = true;
  double cost = 0.0;
};

OspatAssignment ospat_reorder(const TrackSet& a, const TrackSet& b, const MetricParams& params);

/// Track labels: paired tracks share the smaller set's 1-based index;
/// leftovers of the larger set continue from |smaller| + 1 in original order.
struct Labeling {
  std::vector<int> a;
  std::vector<int> b;
};

Labeling ospat_label(const TrackSet& a, const TrackSet& b, const OspatAssignment& assignment);

/// OSPA over the labeled states existing at scan t; matching in track indices.
OspaResult ospat_at_time(const TrackSet& a, const TrackSet& b, const Labeling& labels, int t,
                         const MetricParams& params);
OspaResult ospat_at_time(const TrackSet& a, const TrackSet& b, int t, const MetricParams& params);

std::vector<OspaResult> ospat_per_scan(const TrackSet& a, const TrackSet& b,
                                       const MetricParams& params);

/// Unnormalized reordering cost of the optimal pairing, in total and per scan.
struct OspatGlobal {
  double total = 0.0;
  std::vector<double> per_time;
  OspatAssignment assignment;
};

OspatGlobal ospat_global(const TrackSet& a, const TrackSet& b, const MetricParams& params);

}  // namespace trackmetric
