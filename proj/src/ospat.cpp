#include "trackmetric/ospat.hpp"

#include <cmath>

#include "trackmetric/assign.hpp"

namespace trackmetric {

double labeled_distance(const LabeledState& x, const LabeledState& y, const MetricParams& params) {
  const double pp = params.base_order();
  const double d = base_distance(x.state, y.state, params);
  const double label = x.label == y.label ? 0.0 : params.alpha;
  if (label == 0.0) return d;
  return std::pow(std::pow(d, pp) + std::pow(label, pp), 1.0 / pp);
}

double reorder_cost_at(const Track& x, const Track& y, int t, const MetricParams& params) {
  const StateVector* u = x.at(t);
  const StateVector* v = y.at(t);
  if (u == nullptr && v == nullptr) return 0.0;
  if (u == nullptr || v == nullptr) return params.c;
  return std::min(params.c, euclidean_distance(*u, *v, params));
}

double reorder_cost(const Track& x, const Track& y, const MetricParams& params) {
  double sum = 0.0;
  for (const auto& [t, s] : x.points) sum += reorder_cost_at(x, y, t, params);
  for (const auto& [t, s] : y.points) {
    if (!x.exists(t)) sum += params.c;
  }
  return sum;
}

OspatAssignment ospat_reorder(const TrackSet& a, const TrackSet& b, const MetricParams& params) {
  OspatAssignment out;
  out.a_to_b.assign(a.size(), -1);
  out.b_to_a.assign(b.size(), -1);
  out.b_is_rows = b.size() <= a.size();
  const TrackSet& rows = out.b_is_rows ? b : a;
  const TrackSet& cols = out.b_is_rows ? a : b;
  if (rows.empty()) return out;
  CostMatrix d(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      d(r, c) = reorder_cost(rows.tracks[r], cols.tracks[c], params);
    }
  }
  const OneToOne sol = solve_one_to_one(d);
  out.cost = sol.cost;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int c = sol.row_to_col[r];
    if (out.b_is_rows) {
      out.b_to_a[r] = c;
      out.a_to_b[static_cast<std::size_t>(c)] = static_cast<int>(r);
    } else {
      out.a_to_b[r] = c;
      out.b_to_a[static_cast<std::size_t>(c)] = static_cast<int>(r);
    }
  }
  return out;
}

Labeling ospat_label(const TrackSet& a, const TrackSet& b, const OspatAssignment& assignment) {
  Labeling out;
  out.a.assign(a.size(), 0);
  out.b.assign(b.size(), 0);
  auto& small = assignment.b_is_rows ? out.b : out.a;
  auto& large = assignment.b_is_rows ? out.a : out.b;
  const auto& pairing = assignment.b_is_rows ? assignment.b_to_a : assignment.a_to_b;
  for (std::size_t r = 0; r < small.size(); ++r) {
    small[r] = static_cast<int>(r + 1);
    if (pairing[r] >= 0) large[static_cast<std::size_t>(pairing[r])] = static_cast<int>(r + 1);
  }
  int next = static_cast<int>(small.size());
  for (int& label : large) {
    if (label == 0) label = ++next;
  }
  return out;
}

OspaResult ospat_at_time(const TrackSet& a, const TrackSet& b, const Labeling& labels, int t,
                         const MetricParams& params) {
  std::vector<LabeledState> x, y;
  std::vector<int> xi, yi;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (const StateVector* s = a.tracks[i].at(t)) {
      x.push_back({labels.a[i], *s});
      xi.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (const StateVector* s = b.tracks[j].at(t)) {
      y.push_back({labels.b[j], *s});
      yi.push_back(static_cast<int>(j));
    }
  }
  OspaResult r = ospa_with(
      x.size(), y.size(),
      [&](std::size_t i, std::size_t j) { return labeled_distance(x[i], y[j], params); }, params);
  std::vector<int> matching(a.size(), -1);
  for (std::size_t k = 0; k < r.matching.size(); ++k) {
    if (r.matching[k] >= 0) {
      matching[static_cast<std::size_t>(xi[k])] = yi[static_cast<std::size_t>(r.matching[k])];
    }
  }
  r.matching = std::move(matching);
  return r;
}

OspaResult ospat_at_time(const TrackSet& a, const TrackSet& b, int t, const MetricParams& params) {
  return ospat_at_time(a, b, ospat_label(a, b, ospat_reorder(a, b, params)), t, params);
}

std::vector<OspaResult> ospat_per_scan(const TrackSet& a, const TrackSet& b,
                                       const MetricParams& params) {
  require_compatible(a, b);
  const Labeling labels = ospat_label(a, b, ospat_reorder(a, b, params));
  std::vector<OspaResult> out;
  for (int t = 1; t <= a.scans; ++t) out.push_back(ospat_at_time(a, b, labels, t, params));
  return out;
}

OspatGlobal ospat_global(const TrackSet& a, const TrackSet& b, const MetricParams& params) {
  require_compatible(a, b);
  OspatGlobal out;
  out.assignment = ospat_reorder(a, b, params);
  out.per_time.assign(static_cast<std::size_t>(a.scans), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int j = out.assignment.a_to_b[i];
    if (j < 0) continue;
    for (int t = 1; t <= a.scans; ++t) {
      out.per_time[static_cast<std::size_t>(t - 1)] +=
          reorder_cost_at(a.tracks[i], b.tracks[static_cast<std::size_t>(j)], t, params);
    }
  }
  for (double v : out.per_time) out.total += v;
  return out;
}

}  // namespace trackmetric
