#pragma once

#include <functional>
#include <vector>

#include "trackmetric/core.hpp"

namespace trackmetric {

using StateSet = std::vector<StateVector>;

struct OspaResult {
  double total = 0.0;
  double loc = 0.0;
  double card = 0.0;
  /// For each element of the first argument, the matched index in the second
  /// argument or -1.
  std::vector<int> matching;
};

/// OSPA distance between two state sets with cutoff c and order p; the base
/// distance is the p'-norm from params.
OspaResult ospa(const StateSet& x, const StateSet& y, const MetricParams& params);

/// OSPA generalised over an arbitrary capped base distance `dist(i, j)`
/// between element i of the first set and element j of the second.
OspaResult ospa_with(std::size_t m, std::size_t n, const std::function<double(std::size_t, std::size_t)>& dist,
                     const MetricParams& params);

/// OSPA of the states existing at each scan. Matchings are in track indices.
std::vector<OspaResult> ospa_per_scan(const TrackSet& a, const TrackSet& b,
                                      const MetricParams& params);

}  // namespace trackmetric
