#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trackmetric/core.hpp"

namespace trackmetric {

enum class FigureId {
  Fig1a,
  Fig1b,
  Fig1c,
  Fig1d,
  Fig5,
  Fig6,
  Fig8,
  Fig9a,
  Fig9b,
  Fig10a,
  Fig11a,
  Fig11b,
  Fig12,
  Fig12a,
  Fig12b,
  Fig13,
};

const char* to_string(FigureId id) noexcept;
std::optional<FigureId> parse_figure(const std::string& name);
std::vector<FigureId> all_figures();

struct ScenarioSpec {
  FigureId figure = FigureId::Fig1a;
  double epsilon = 1.0;
  double eta = 5.0;
  double beta = 1000.0;
  /// Cutoff the orderings are checked against.
  double c = 80.0;
};

struct Scenario {
  TrackSet truth;
  TrackSet est;
  /// Third set for figures drawing one (Fig13's omega*).
  std::optional<TrackSet> extra;
};

/// 1-D track sets as drawn. Throws BadParameters when the figure's ordering
/// of epsilon, eta, c and beta does not hold.
Scenario build(const ScenarioSpec& spec);

struct RandomSpec {
  std::uint64_t seed = 0;
  std::size_t n_truth = 3;
  int scans = 4;
  double miss_rate = 0.0;
  double false_rate = 0.0;
  double break_rate = 0.0;
  double noise = 0.0;
  std::size_t state_dim = 2;
  /// Coordinates are drawn uniformly from [0, extent).
  double extent = 100.0;
};

/// Deterministic truth set and a degraded estimate: each truth track is
/// dropped with miss_rate, broken in two with break_rate, and perturbed by
/// Gaussian noise; each truth track may spawn a false track with false_rate.
Scenario random_scenario(const RandomSpec& spec);

/// Appends a track existing at every scan, placed `offset` away from every
/// other state in the first coordinate.
TrackSet add_false_track(TrackSet set, double offset, const std::string& id = "false");

}  // namespace trackmetric
