#include "trackmetric/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace trackmetric {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyTrack: return "EmptyTrack";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ScanOutOfRange: return "ScanOutOfRange";
    case Errc::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case Errc::ScanMismatch: return "ScanMismatch";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InfeasibleAssignment: return "InfeasibleAssignment";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::BadParameters: return "BadParameters";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

const StateVector* Track::at(int t) const {
  auto it = points.find(t);
  return it == points.end() ? nullptr : &it->second;
}

int Track::first_scan() const { return points.empty() ? 0 : points.begin()->first; }

int Track::last_scan() const { return points.empty() ? 0 : points.rbegin()->first; }

int TrackSet::count_at(int t) const {
  return static_cast<int>(std::count_if(tracks.begin(), tracks.end(),
                                        [t](const Track& tr) { return tr.exists(t); }));
}

namespace {

std::string track_label(const Track& track, std::size_t index) {
  std::ostringstream os;
  os << "track '" << (track.id.empty() ? std::to_string(index + 1) : track.id) << "'";
  return os.str();
}

}  // namespace

const TrackSet& validate(const TrackSet& set) {
  if (set.scans < 1) {
    throw Error(Errc::ScanOutOfRange, "scans must be positive, got " + std::to_string(set.scans));
  }
  if (set.state_dim < 1) {
    throw Error(Errc::DimensionMismatch, "state_dim must be positive");
  }
  for (std::size_t i = 0; i < set.tracks.size(); ++i) {
    const Track& track = set.tracks[i];
    if (track.points.empty()) {
      throw Error(Errc::EmptyTrack, track_label(track, i) + " has no states");
    }
    for (const auto& [t, x] : track.points) {
      if (t < 1 || t > set.scans) {
        throw Error(Errc::ScanOutOfRange, track_label(track, i) + " scan " + std::to_string(t) +
                                              " outside 1.." + std::to_string(set.scans));
      }
      if (x.size() != set.state_dim) {
        throw Error(Errc::DimensionMismatch,
                    track_label(track, i) + " scan " + std::to_string(t) + " has " +
                        std::to_string(x.size()) + " coordinates, expected " +
                        std::to_string(set.state_dim));
      }
      for (double v : x) {
        if (!std::isfinite(v)) {
          throw Error(Errc::NonFiniteCoordinate,
                      track_label(track, i) + " scan " + std::to_string(t) + " is not finite");
        }
      }
    }
  }
  return set;
}

void require_compatible(const TrackSet& a, const TrackSet& b) {
  if (a.scans != b.scans) {
    throw Error(Errc::ScanMismatch, "scan counts differ: " + std::to_string(a.scans) + " vs " +
                                        std::to_string(b.scans));
  }
  if (a.state_dim != b.state_dim) {
    throw Error(Errc::DimensionMismatch, "state dimensions differ: " +
                                             std::to_string(a.state_dim) + " vs " +
                                             std::to_string(b.state_dim));
  }
}

std::vector<std::string> check_params(const MetricParams& params,
                                      std::optional<std::size_t> state_dim) {
  auto fail = [](const std::string& msg) { throw Error(Errc::InvalidParams, msg); };
  if (!(params.p >= 1.0) || !std::isfinite(params.p)) fail("p must satisfy 1 <= p < inf");
  if (!(params.c > 0.0) || !std::isfinite(params.c)) fail("c must be positive and finite");
  if (!(params.delta > 0.0) || params.delta > params.c) fail("delta must satisfy 0 < delta <= c");
  if (!(params.alpha >= 0.0) || params.alpha > params.c) fail("alpha must satisfy 0 <= alpha <= c");
  const double pp = params.base_order();
  if (!(pp >= 1.0) || !std::isfinite(pp)) fail("p' must satisfy 1 <= p' < inf");
  for (double s : params.scale) {
    if (!(s > 0.0) || !std::isfinite(s)) fail("scale factors must be positive and finite");
  }
  if (state_dim && !params.scale.empty() && params.scale.size() != *state_dim) {
    fail("scale has " + std::to_string(params.scale.size()) + " entries, state_dim is " +
         std::to_string(*state_dim));
  }
  std::vector<std::string> warnings;
  if (params.delta == params.c) {
    warnings.emplace_back("delta equals c; extra assignees then cost as much as misses");
  }
  return warnings;
}

namespace {

double scaled_norm(std::span<const double> x, std::span<const double> y,
                   const MetricParams& params, double order) {
  double acc = 0.0;
  const bool scaled = !params.scale.empty();
  if (order == 2.0) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = (x[k] - y[k]) * (scaled ? params.scale[k] : 1.0);
      acc += d * d;
    }
    return std::sqrt(acc);
  }
  if (order == 1.0) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      acc += std::abs((x[k] - y[k]) * (scaled ? params.scale[k] : 1.0));
    }
    return acc;
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    acc += std::pow(std::abs((x[k] - y[k]) * (scaled ? params.scale[k] : 1.0)), order);
  }
  return std::pow(acc, 1.0 / order);
}

}  // namespace

double base_distance(std::span<const double> x, std::span<const double> y,
                     const MetricParams& params) {
  return scaled_norm(x, y, params, params.base_order());
}

double euclidean_distance(std::span<const double> x, std::span<const double> y,
                          const MetricParams& params) {
  return scaled_norm(x, y, params, 2.0);
}

double cutoff_distance(const StateVector* x, const StateVector* y, const MetricParams& params) {
  if (x == nullptr || y == nullptr) return 0.0;
  return std::min(params.c, base_distance(*x, *y, params));
}

DistanceCounts count_distances(const TrackSet& a, const TrackSet& b) {
  if (a.scans != b.scans) {
    throw Error(Errc::ScanMismatch, "scan counts differ: " + std::to_string(a.scans) + " vs " +
                                        std::to_string(b.scans));
  }
  DistanceCounts counts;
  counts.per_scan.assign(static_cast<std::size_t>(a.scans), 0);
  for (int t = 1; t <= a.scans; ++t) {
    const int n_t = std::max(a.count_at(t), b.count_at(t));
    counts.per_scan[static_cast<std::size_t>(t - 1)] = n_t;
    counts.total += n_t;
  }
  return counts;
}

ScanTable::ScanTable(const TrackSet& set)
    : rows_(set.tracks.size()),
      scans_(set.scans),
      cells_(rows_ * static_cast<std::size_t>(std::max(set.scans, 0)), nullptr) {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& [t, x] : set.tracks[i].points) {
      if (t >= 1 && t <= scans_) {
        cells_[i * static_cast<std::size_t>(scans_) + static_cast<std::size_t>(t - 1)] = &x;
      }
    }
  }
}

bool approx_equal(double a, double b, double rel, double abs) {
  const double diff = std::abs(a - b);
  if (diff <= abs) return true;
  return diff <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace trackmetric
