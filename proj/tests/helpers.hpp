#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trackmetric/core.hpp"

namespace testing_helpers {

using trackmetric::Track;
using trackmetric::TrackSet;

inline Track line(const std::string& id, int from, int to, double x) {
  Track t{id, {}};
  for (int s = from; s <= to; ++s) t.points.emplace(s, trackmetric::StateVector{x});
  return t;
}

inline TrackSet one_d(int scans, std::vector<Track> tracks) {
  TrackSet s;
  s.scans = scans;
  s.state_dim = 1;
  s.tracks = std::move(tracks);
  return s;
}

/// Small random 1-D set: up to `max_tracks` tracks over `scans` scans with
/// random lifetimes (possibly gappy) and coordinates in [0, spread).
inline TrackSet random_small(std::mt19937_64& rng, int max_tracks, int scans, double spread,
                             int min_tracks = 0) {
  std::uniform_int_distribution<int> count(min_tracks, max_tracks);
  std::uniform_real_distribution<double> pos(0.0, spread);
  std::bernoulli_distribution present(0.6);
  TrackSet s;
  s.scans = scans;
  s.state_dim = 1;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Track t{"r" + std::to_string(i + 1), {}};
    while (t.points.empty()) {
      for (int u = 1; u <= scans; ++u) {
        if (present(rng)) t.points.emplace(u, trackmetric::StateVector{pos(rng)});
      }
    }
    s.tracks.push_back(std::move(t));
  }
  return s;
}

}  // namespace testing_helpers
