#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackmetric {

using StateVector = std::vector<double>;

enum class Errc {
  EmptyTrack,
  DimensionMismatch,
  ScanOutOfRange,
  NonFiniteCoordinate,
  ScanMismatch,
  InvalidParams,
  TooLarge,
  InfeasibleAssignment,
  NoConvergence,
  BadParameters,
  Parse,
};

const char* to_string(Errc code) noexcept;

/// Library error. `code()` identifies the failure class; `what()` names the
/// offending track and scan where applicable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A target path over scans 1..T. A scan without an entry means the target
/// does not exist at that scan.
struct Track {
  std::string id;
  std::map<int, StateVector> points;

  bool exists(int t) const { return points.count(t) != 0; }
  const StateVector* at(int t) const;
  int first_scan() const;
  int last_scan() const;
};

struct TrackSet {
  int scans = 1;
  std::size_t state_dim = 1;
  std::vector<Track> tracks;

  std::size_t size() const { return tracks.size(); }
  bool empty() const { return tracks.empty(); }
  /// Number of tracks existing at scan t.
  int count_at(int t) const;
};

/// Validates every track against (scans, state_dim). Returns the set
/// unchanged; throws Error on the first violation found.
const TrackSet& validate(const TrackSet& set);

/// Throws ScanMismatch / DimensionMismatch when the two sets cannot be compared.
void require_compatible(const TrackSet& a, const TrackSet& b);

struct MetricParams {
  double p = 1.0;
  double c = 80.0;
  double delta = 10.0;
  double alpha = 10.0;
  /// Order of the base norm d(x, y). Falls back to `p` when unset.
  std::optional<double> p_prime;
  /// Per-dimension multipliers applied to coordinate differences. Empty means
  /// unscaled.
  std::vector<double> scale;

  double base_order() const { return p_prime.value_or(p); }
};

/// Throws InvalidParams when a parameter is out of range. Returns non-fatal
/// warnings (currently only delta == c, whose behavior is not characterised).
std::vector<std::string> check_params(const MetricParams& params,
                                      std::optional<std::size_t> state_dim = std::nullopt);

/// Scaled p'-norm of x - y.
double base_distance(std::span<const double> x, std::span<const double> y,
                     const MetricParams& params);

/// Scaled Euclidean norm of x - y, regardless of p'.
double euclidean_distance(std::span<const double> x, std::span<const double> y,
                          const MetricParams& params);

/// min{c, d(x, y)} when both states are present, 0 otherwise.
double cutoff_distance(const StateVector* x, const StateVector* y,
                       const MetricParams& params);

inline double cutoff_distance(const std::optional<StateVector>& x,
                              const std::optional<StateVector>& y,
                              const MetricParams& params) {
  return cutoff_distance(x ? &*x : nullptr, y ? &*y : nullptr, params);
}

struct DistanceCounts {
  std::vector<int> per_scan;  // index t-1
  int total = 0;
};

/// n_t = max of the existing-target counts of a and b at t; n = sum of n_t.
DistanceCounts count_distances(const TrackSet& a, const TrackSet& b);

/// Dense per-scan view of a track set: entry [track][t-1] points at the state
/// or is null when the track does not exist at t. Borrowed from the set.
class ScanTable {
 public:
  explicit ScanTable(const TrackSet& set);

  std::size_t tracks() const { return rows_; }
  int scans() const { return scans_; }
  const StateVector* operator()(std::size_t track, int t) const {
    return cells_[track * static_cast<std::size_t>(scans_) + static_cast<std::size_t>(t - 1)];
  }

 private:
  std::size_t rows_;
  int scans_;
  std::vector<const StateVector*> cells_;
};

/// Relative comparison used throughout: |a - b| <= 1e-9 * max(|a|, |b|), or
/// absolute 1e-12 near zero.
bool approx_equal(double a, double b, double rel = 1e-9, double abs = 1e-12);

}  // namespace trackmetric
