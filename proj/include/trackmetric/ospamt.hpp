#pragma once

#include <string>
#include <vector>

#include "trackmetric/assign.hpp"
#include "trackmetric/core.hpp"

namespace trackmetric {

/// Which set supplies the sources of the many-to-one map. EstToTruth maps
/// estimated tracks onto truth tracks.
enum class Direction { EstToTruth, TruthToEst };

enum class SearchMode { Exact, Greedy, Auto };

const char* to_string(Direction d) noexcept;
const char* to_string(SearchMode m) noexcept;
SearchMode parse_mode(const std::string& text);

/// Auto resolves to Exact when the two sets hold at most this many tracks.
inline constexpr std::size_t kAutoExactLimit = 10;

/// Exact search refuses more source tracks than this.
inline constexpr std::size_t kExactSourceLimit = 16;

struct Assignment {
  Direction direction = Direction::EstToTruth;
  /// Per source track: target index or -1.
  std::vector<int> target_of;
  /// Per target track: assigned sources, first-ordered first.
  std::vector<std::vector<int>> orders;
};

/// Per-scan raw terms (already raised to p, not normalized).
struct DirectionalBreakdown {
  std::vector<double> raw_t;
  std::vector<double> loc_t;
  std::vector<double> card_t;
  std::vector<int> n_t;
  int n = 0;

  double raw_sum() const;
  double loc_sum() const;
  double card_sum() const;
  /// ((1/n) sum raw)^(1/p), 0 when n = 0.
  double distance(double p) const;
};

struct DirectionalResult {
  double distance = 0.0;
  DirectionalBreakdown breakdown;
  /// Optimal order per target.
  std::vector<std::vector<int>> orders;
};

/// True when the two tracks exist together at some scan.
bool share_scan(const Track& a, const Track& b);

/// Sum over scans where at least one of the pair exists: cutoff distance^p
/// when both exist, c^p when only one does.
double pairwise_raw(const Track& src, const Track& tgt, const MetricParams& params);

/// pairwise_raw averaged over its contributing scans and rooted, so entries
/// sit on the same scale as c. kInfeasible when the tracks never coexist.
double pairwise_cost(const Track& src, const Track& tgt, const MetricParams& params);

/// Cost matrix with one row per target track and one column per source track.
CostMatrix pairwise_matrix(const TrackSet& src, const TrackSet& tgt, const MetricParams& params);

/// Evaluates the directional terms for a fixed map and fixed orders.
/// `orders[i]` must list exactly the sources mapped to target i.
DirectionalBreakdown directional_terms(const TrackSet& src, const TrackSet& tgt,
                                       const std::vector<std::vector<int>>& orders,
                                       const MetricParams& params);

/// Directional distance for a fixed map `target_of`, minimized over orders.
/// Throws InfeasibleAssignment when a pair never coexists.
DirectionalResult directional_distance(const TrackSet& src, const TrackSet& tgt,
                                       const std::vector<int>& target_of,
                                       const MetricParams& params);

struct QuasiResult {
  double distance = 0.0;
  Assignment assignment;
  DirectionalBreakdown breakdown;
};

/// Minimum of the directional distance over all feasible maps src -> tgt.
QuasiResult quasi_ospamt(const TrackSet& src, const TrackSet& tgt, const MetricParams& params,
                         SearchMode mode = SearchMode::Auto);

struct MetricReport {
  double total = 0.0;
  double loc = 0.0;
  double card = 0.0;
  std::vector<double> per_time;
  std::vector<double> loc_t;
  std::vector<double> card_t;
  std::vector<int> n_t;
  int n = 0;
  Assignment assignment;
};

/// Builds the normalized report from raw directional terms.
MetricReport make_report(const DirectionalBreakdown& b, double p, Assignment assignment);

/// OSPAMT between truth `a` and estimate `b`: the smaller of the two
/// directional quasi-distances. Exact ties report EstToTruth.
MetricReport ospamt_metric(const TrackSet& a, const TrackSet& b, const MetricParams& params,
                           SearchMode mode = SearchMode::Auto);

struct SplitEvent {
  std::string track_id;
  /// Scans kept by each fragment, in fragment order.
  std::vector<std::vector<int>> fragments;
  std::vector<std::string> fragment_ids;
  /// First scan of every fragment after the first.
  std::vector<int> cuts;
};

struct SplitResult {
  TrackSet est;
  std::vector<SplitEvent> log;
};

inline constexpr int kSplitIterationCap = 100;

/// Splits every estimated track that the truth-to-estimate quasi assignment
/// gives two or more truth tracks, one fragment per truth lifetime, until the
/// assignment is one-to-one. Throws NoConvergence past kSplitIterationCap.
SplitResult split_tracks(const TrackSet& truth, const TrackSet& est, const MetricParams& params,
                         SearchMode mode = SearchMode::Auto);

}  // namespace trackmetric
