#include "trackmetric/ospa.hpp"

#include <cmath>

#include "trackmetric/assign.hpp"

namespace trackmetric {

OspaResult ospa_with(std::size_t m, std::size_t n,
                     const std::function<double(std::size_t, std::size_t)>& dist,
                     const MetricParams& params) {
  OspaResult out;
  out.matching.assign(m, -1);
  if (m == 0 && n == 0) return out;
  const bool swapped = m > n;
  const std::size_t rows = swapped ? n : m;
  const std::size_t cols = swapped ? m : n;
  CostMatrix d(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = swapped ? dist(c, r) : dist(r, c);
      d(r, c) = std::pow(std::min(params.c, v), params.p);
    }
  }
  const OneToOne sol = solve_one_to_one(d);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto c = static_cast<std::size_t>(sol.row_to_col[r]);
    if (swapped) {
      out.matching[c] = static_cast<int>(r);
    } else {
      out.matching[r] = static_cast<int>(c);
    }
  }
  const double cp = std::pow(params.c, params.p);
  const double loc_raw = sol.cost;
  const double card_raw = cp * static_cast<double>(cols - rows);
  const double inv = 1.0 / static_cast<double>(cols);
  out.loc = std::pow(loc_raw * inv, 1.0 / params.p);
  out.card = std::pow(card_raw * inv, 1.0 / params.p);
  out.total = std::pow((loc_raw + card_raw) * inv, 1.0 / params.p);
  return out;
}

OspaResult ospa(const StateSet& x, const StateSet& y, const MetricParams& params) {
  const std::size_t dim = !x.empty() ? x.front().size() : (!y.empty() ? y.front().size() : 0);
  for (const auto* set : {&x, &y}) {
    for (const auto& v : *set) {
      if (v.size() != dim) throw Error(Errc::DimensionMismatch, "state sets mix dimensions");
    }
  }
  return ospa_with(
      x.size(), y.size(),
      [&](std::size_t i, std::size_t j) { return base_distance(x[i], y[j], params); }, params);
}

std::vector<OspaResult> ospa_per_scan(const TrackSet& a, const TrackSet& b,
                                      const MetricParams& params) {
  require_compatible(a, b);
  std::vector<OspaResult> out;
  for (int t = 1; t <= a.scans; ++t) {
    StateSet x, y;
    std::vector<int> xi, yi;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (const StateVector* s = a.tracks[i].at(t)) {
        x.push_back(*s);
        xi.push_back(static_cast<int>(i));
      }
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (const StateVector* s = b.tracks[j].at(t)) {
        y.push_back(*s);
        yi.push_back(static_cast<int>(j));
      }
    }
    OspaResult r = ospa(x, y, params);
    std::vector<int> matching(a.size(), -1);
    for (std::size_t k = 0; k < r.matching.size(); ++k) {
      if (r.matching[k] >= 0) matching[static_cast<std::size_t>(xi[k])] = yi[static_cast<std::size_t>(r.matching[k])];
    }
    r.matching = std::move(matching);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace trackmetric
