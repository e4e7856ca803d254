#include "trackmetric/ospamt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace trackmetric {

const char* to_string(Direction d) noexcept {
  return d == Direction::EstToTruth ? "est_to_truth" : "truth_to_est";
}

const char* to_string(SearchMode m) noexcept {
  switch (m) {
    case SearchMode::Exact: return "exact";
    case SearchMode::Greedy: return "greedy";
    case SearchMode::Auto: return "auto";
  }
  return "auto";
}

SearchMode parse_mode(const std::string& text) {
  if (text == "exact") return SearchMode::Exact;
  if (text == "greedy") return SearchMode::Greedy;
  if (text == "auto") return SearchMode::Auto;
  throw Error(Errc::InvalidParams, "unknown mode '" + text + "' (expected exact, greedy or auto)");
}

double DirectionalBreakdown::raw_sum() const { return std::accumulate(raw_t.begin(), raw_t.end(), 0.0); }
double DirectionalBreakdown::loc_sum() const { return std::accumulate(loc_t.begin(), loc_t.end(), 0.0); }
double DirectionalBreakdown::card_sum() const { return std::accumulate(card_t.begin(), card_t.end(), 0.0); }

double DirectionalBreakdown::distance(double p) const {
  if (n == 0) return 0.0;
  return std::pow(raw_sum() / n, 1.0 / p);
}

bool share_scan(const Track& a, const Track& b) {
  for (const auto& [t, x] : a.points) {
    if (b.exists(t)) return true;
  }
  return false;
}

double pairwise_raw(const Track& src, const Track& tgt, const MetricParams& params) {
  const double cp = std::pow(params.c, params.p);
  double sum = 0.0;
  for (const auto& [t, x] : src.points) {
    const StateVector* y = tgt.at(t);
    sum += y ? std::pow(cutoff_distance(&x, y, params), params.p) : cp;
  }
  for (const auto& [t, y] : tgt.points) {
    if (!src.exists(t)) sum += cp;
  }
  return sum;
}

double pairwise_cost(const Track& src, const Track& tgt, const MetricParams& params) {
  if (!share_scan(src, tgt)) return kInfeasible;
  std::size_t scans = src.points.size();
  for (const auto& [t, y] : tgt.points) {
    if (!src.exists(t)) ++scans;
  }
  return std::pow(pairwise_raw(src, tgt, params) / static_cast<double>(scans), 1.0 / params.p);
}

CostMatrix pairwise_matrix(const TrackSet& src, const TrackSet& tgt, const MetricParams& params) {
  CostMatrix d(tgt.size(), src.size());
  for (std::size_t i = 0; i < tgt.size(); ++i) {
    for (std::size_t j = 0; j < src.size(); ++j) {
      d(i, j) = pairwise_cost(src.tracks[j], tgt.tracks[i], params);
    }
  }
  return d;
}

namespace {

struct Powers {
  double p;
  double cp;
  double dp;
};

Powers powers(const MetricParams& params) {
  return {params.p, std::pow(params.c, params.p), std::pow(params.delta, params.p)};
}

DirectionalBreakdown empty_breakdown(const TrackSet& src, const TrackSet& tgt) {
  const DistanceCounts counts = count_distances(src, tgt);
  DirectionalBreakdown b;
  const auto scans = static_cast<std::size_t>(tgt.scans);
  b.raw_t.assign(scans, 0.0);
  b.loc_t.assign(scans, 0.0);
  b.card_t.assign(scans, 0.0);
  b.n_t = counts.per_scan;
  b.n = counts.total;
  return b;
}

DirectionalBreakdown evaluate(const ScanTable& src, const ScanTable& tgt,
                              const std::vector<std::vector<int>>& orders, DirectionalBreakdown b,
                              const Powers& pw, const MetricParams& params) {
  for (int t = 1; t <= tgt.scans(); ++t) {
    const auto ti = static_cast<std::size_t>(t - 1);
    double loc = 0.0;
    double card = 0.0;
    int matched = 0;
    for (std::size_t i = 0; i < tgt.tracks(); ++i) {
      const StateVector* y = tgt(i, t);
      if (y == nullptr) continue;
      int existing = 0;
      for (int j : orders[i]) {
        const StateVector* x = src(static_cast<std::size_t>(j), t);
        if (x == nullptr) continue;
        if (existing == 0) {
          loc += std::pow(cutoff_distance(x, y, params), pw.p);
          if (j != orders[i].front()) loc += pw.dp;
        }
        ++existing;
      }
      if (existing > 1) card += (existing - 1) * (pw.dp + pw.cp);
      matched += existing;
    }
    card += pw.cp * (b.n_t[ti] - matched);
    b.loc_t[ti] = loc;
    b.card_t[ti] = card;
    b.raw_t[ti] = loc + card;
  }
  return b;
}

void check_orders(std::size_t sources, std::size_t targets,
                  const std::vector<std::vector<int>>& orders) {
  if (orders.size() != targets) {
    throw Error(Errc::InfeasibleAssignment, "orders must list one tuple per target track");
  }
  std::vector<bool> seen(sources, false);
  for (const auto& order : orders) {
    for (int j : order) {
      if (j < 0 || static_cast<std::size_t>(j) >= sources || seen[static_cast<std::size_t>(j)]) {
        throw Error(Errc::InfeasibleAssignment, "source index " + std::to_string(j) +
                                                    " is out of range or assigned twice");
      }
      seen[static_cast<std::size_t>(j)] = true;
    }
  }
}

// Everything the search needs about one target track and a candidate pool of
// sources: for each subset S of the pool, the best order of S and the
// target's contribution g(S) to the raw sum beyond the c^p * n baseline.
struct TargetDp {
  std::vector<int> pool;
  std::vector<double> g;
  std::vector<std::uint8_t> last;

  std::vector<int> order(std::uint32_t mask) const {
    std::vector<int> out;
    while (mask != 0) {
      const std::uint8_t j = last[mask];
      out.push_back(pool[j]);
      mask &= ~(std::uint32_t{1} << j);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

TargetDp build_target_dp(const ScanTable& src, const ScanTable& tgt, std::size_t i,
                         std::vector<int> pool, const Powers& pw, const MetricParams& params) {
  const std::size_t m = pool.size();
  const std::size_t full = std::size_t{1} << m;
  struct Scan {
    std::uint32_t present;
    std::vector<double> dist;
  };
  std::vector<Scan> scans;
  for (int t = 1; t <= tgt.scans(); ++t) {
    const StateVector* y = tgt(i, t);
    if (y == nullptr) continue;
    Scan s{0, std::vector<double>(m, 0.0)};
    for (std::size_t k = 0; k < m; ++k) {
      const StateVector* x = src(static_cast<std::size_t>(pool[k]), t);
      if (x == nullptr) continue;
      s.present |= std::uint32_t{1} << k;
      s.dist[k] = std::pow(cutoff_distance(x, y, params), pw.p);
    }
    if (s.present != 0) scans.push_back(std::move(s));
  }

  TargetDp dp;
  dp.pool = std::move(pool);
  dp.g.assign(full, std::numeric_limits<double>::infinity());
  dp.last.assign(full, 0);
  dp.g[0] = 0.0;
  // Order DP: appending j behind `mask` charges the scans where j is the
  // first existing assignee, plus the penalty when j is not first overall.
  for (std::size_t mask = 0; mask < full; ++mask) {
    const double base = dp.g[mask];
    if (!std::isfinite(base)) continue;
    const double penalty = mask == 0 ? 0.0 : pw.dp;
    for (std::size_t k = 0; k < m; ++k) {
      const std::uint32_t bit = std::uint32_t{1} << k;
      if (mask & bit) continue;
      double add = 0.0;
      for (const Scan& s : scans) {
        if ((s.present & bit) && (s.present & mask) == 0) add += s.dist[k] + penalty;
      }
      const std::size_t next = mask | bit;
      if (base + add < dp.g[next]) {
        dp.g[next] = base + add;
        dp.last[next] = static_cast<std::uint8_t>(k);
      }
    }
  }
  for (std::size_t mask = 1; mask < full; ++mask) {
    double card = 0.0;
    for (const Scan& s : scans) {
      const int nb = std::popcount(s.present & static_cast<std::uint32_t>(mask));
      if (nb > 1) card += (nb - 1) * (pw.dp + pw.cp);
      card -= nb * pw.cp;
    }
    dp.g[mask] += card;
  }
  return dp;
}

std::vector<std::vector<int>> best_orders(const ScanTable& src, const ScanTable& tgt,
                                          const std::vector<int>& target_of, const Powers& pw,
                                          const MetricParams& params) {
  std::vector<std::vector<int>> orders(tgt.tracks());
  for (std::size_t j = 0; j < target_of.size(); ++j) {
    if (target_of[j] >= 0) orders[static_cast<std::size_t>(target_of[j])].push_back(static_cast<int>(j));
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i].size() < 2) continue;
    if (orders[i].size() > kExactSourceLimit) {
      // Too many to order exactly: chronological by first appearance.
      std::stable_sort(orders[i].begin(), orders[i].end(), [&](int a, int b) {
        int fa = 0, fb = 0;
        for (int t = 1; t <= src.scans() && (fa == 0 || fb == 0); ++t) {
          if (fa == 0 && src(static_cast<std::size_t>(a), t)) fa = t;
          if (fb == 0 && src(static_cast<std::size_t>(b), t)) fb = t;
        }
        return fa < fb;
      });
      continue;
    }
    const TargetDp dp = build_target_dp(src, tgt, i, orders[i], pw, params);
    orders[i] = dp.order(static_cast<std::uint32_t>(dp.g.size() - 1));
  }
  return orders;
}

bool clearly_less(double a, double b) { return a < b - 1e-12 * std::max(1.0, std::abs(b)); }

std::vector<int> exact_search(const TrackSet& src_set, const TrackSet& tgt_set,
                              const ScanTable& src, const ScanTable& tgt, const Powers& pw,
                              const MetricParams& params, std::vector<std::vector<int>>& orders) {
  const std::size_t m = src.tracks();
  const std::size_t k = tgt.tracks();
  if (m > kExactSourceLimit) {
    throw Error(Errc::TooLarge, "exact search supports at most " +
                                    std::to_string(kExactSourceLimit) + " source tracks, got " +
                                    std::to_string(m));
  }
  const std::size_t full = std::size_t{1} << m;
  std::vector<TargetDp> dps;
  std::vector<std::vector<std::uint32_t>> to_global;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> pool;
    for (std::size_t j = 0; j < m; ++j) {
      if (share_scan(src_set.tracks[j], tgt_set.tracks[i])) pool.push_back(static_cast<int>(j));
    }
    dps.push_back(build_target_dp(src, tgt, i, pool, pw, params));
    std::vector<std::uint32_t> map(std::size_t{1} << pool.size(), 0);
    for (std::size_t s = 1; s < map.size(); ++s) {
      const int low = std::countr_zero(static_cast<std::uint32_t>(s));
      map[s] = map[s & (s - 1)] | (std::uint32_t{1} << pool[static_cast<std::size_t>(low)]);
    }
    to_global.push_back(std::move(map));
  }

  // H[U]: best sum of g over targets processed so far using sources from U.
  std::vector<double> prev(full, 0.0), cur(full);
  std::vector<std::vector<std::uint32_t>> choice(k, std::vector<std::uint32_t>(full, 0));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& pool = dps[i].pool;
    for (std::size_t u = 0; u < full; ++u) {
      std::uint32_t local = 0;
      for (std::size_t b = 0; b < pool.size(); ++b) {
        if (u & (std::size_t{1} << pool[b])) local |= std::uint32_t{1} << b;
      }
      double best = prev[u];
      std::uint32_t pick = 0;
      for (std::uint32_t s = local; s != 0; s = (s - 1) & local) {
        const double cand = prev[u & ~static_cast<std::size_t>(to_global[i][s])] + dps[i].g[s];
        if (clearly_less(cand, best) || (pick != 0 && !clearly_less(best, cand) && s < pick)) {
          best = cand;
          pick = s;
        }
      }
      cur[u] = best;
      choice[i][u] = pick;
    }
    std::swap(prev, cur);
  }

  std::vector<int> target_of(m, -1);
  orders.assign(k, {});
  std::size_t u = full - 1;
  for (std::size_t i = k; i-- > 0;) {
    const std::uint32_t s = choice[i][u];
    if (s == 0) continue;
    orders[i] = dps[i].order(s);
    for (int j : orders[i]) target_of[static_cast<std::size_t>(j)] = static_cast<int>(i);
    u &= ~static_cast<std::size_t>(to_global[i][s]);
  }
  return target_of;
}

std::vector<int> greedy_search(const TrackSet& src_set, const TrackSet& tgt_set,
                               const MetricParams& params) {
  const ManyToOneResult r =
      greedy_many_to_one(pairwise_matrix(src_set, tgt_set, params), params.c);
  std::vector<int> target_of(src_set.size(), -1);
  for (std::size_t i = 0; i < r.order_matrix.size(); ++i) {
    for (std::size_t j = 0; j < r.order_matrix[i].size(); ++j) {
      if (r.order_matrix[i][j] > 0) target_of[j] = static_cast<int>(i);
    }
  }
  return target_of;
}

}  // namespace

DirectionalBreakdown directional_terms(const TrackSet& src, const TrackSet& tgt,
                                       const std::vector<std::vector<int>>& orders,
                                       const MetricParams& params) {
  check_orders(src.size(), tgt.size(), orders);
  return evaluate(ScanTable(src), ScanTable(tgt), orders, empty_breakdown(src, tgt), powers(params),
                  params);
}

DirectionalResult directional_distance(const TrackSet& src, const TrackSet& tgt,
                                       const std::vector<int>& target_of,
                                       const MetricParams& params) {
  if (target_of.size() != src.size()) {
    throw Error(Errc::InfeasibleAssignment, "map must give one entry per source track");
  }
  for (std::size_t j = 0; j < target_of.size(); ++j) {
    const int i = target_of[j];
    if (i < 0) continue;
    if (static_cast<std::size_t>(i) >= tgt.size()) {
      throw Error(Errc::InfeasibleAssignment, "source " + std::to_string(j) +
                                                  " maps to missing target " + std::to_string(i));
    }
    if (!share_scan(src.tracks[j], tgt.tracks[static_cast<std::size_t>(i)])) {
      throw Error(Errc::InfeasibleAssignment,
                  "tracks '" + src.tracks[j].id + "' and '" +
                      tgt.tracks[static_cast<std::size_t>(i)].id + "' never coexist");
    }
  }
  const Powers pw = powers(params);
  const ScanTable s(src), g(tgt);
  DirectionalResult out;
  out.orders = best_orders(s, g, target_of, pw, params);
  out.breakdown = evaluate(s, g, out.orders, empty_breakdown(src, tgt), pw, params);
  out.distance = out.breakdown.distance(params.p);
  return out;
}

QuasiResult quasi_ospamt(const TrackSet& src, const TrackSet& tgt, const MetricParams& params,
                         SearchMode mode) {
  if (mode == SearchMode::Auto) {
    mode = src.size() + tgt.size() <= kAutoExactLimit ? SearchMode::Exact : SearchMode::Greedy;
  }
  const Powers pw = powers(params);
  const ScanTable s(src), g(tgt);
  QuasiResult out;
  std::vector<std::vector<int>> orders;
  std::vector<int> target_of;
  if (mode == SearchMode::Exact) {
    target_of = exact_search(src, tgt, s, g, pw, params, orders);
  } else {
    target_of = greedy_search(src, tgt, params);
    orders = best_orders(s, g, target_of, pw, params);
  }
  out.breakdown = evaluate(s, g, orders, empty_breakdown(src, tgt), pw, params);
  out.distance = out.breakdown.distance(params.p);
  out.assignment.target_of = std::move(target_of);
  out.assignment.orders = std::move(orders);
  return out;
}

MetricReport make_report(const DirectionalBreakdown& b, double p, Assignment assignment) {
  MetricReport r;
  r.n = b.n;
  r.n_t = b.n_t;
  auto root = [p](double raw, int count) {
    return count == 0 ? 0.0 : std::pow(std::max(raw, 0.0) / count, 1.0 / p);
  };
  r.total = root(b.raw_sum(), b.n);
  r.loc = root(b.loc_sum(), b.n);
  r.card = root(b.card_sum(), b.n);
  for (std::size_t t = 0; t < b.raw_t.size(); ++t) {
    r.per_time.push_back(root(b.raw_t[t], b.n_t[t]));
    r.loc_t.push_back(root(b.loc_t[t], b.n_t[t]));
    r.card_t.push_back(root(b.card_t[t], b.n_t[t]));
  }
  r.assignment = std::move(assignment);
  return r;
}

MetricReport ospamt_metric(const TrackSet& a, const TrackSet& b, const MetricParams& params,
                           SearchMode mode) {
  validate(a);
  validate(b);
  require_compatible(a, b);
  check_params(params, a.state_dim);
  QuasiResult est_to_truth = quasi_ospamt(b, a, params, mode);
  QuasiResult truth_to_est = quasi_ospamt(a, b, params, mode);
  est_to_truth.assignment.direction = Direction::EstToTruth;
  truth_to_est.assignment.direction = Direction::TruthToEst;
  const bool flip = truth_to_est.distance < est_to_truth.distance &&
                    !approx_equal(truth_to_est.distance, est_to_truth.distance);
  QuasiResult& win = flip ? truth_to_est : est_to_truth;
  return make_report(win.breakdown, params.p, std::move(win.assignment));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Track> split_one(const Track& est, std::vector<const Track*> truths,
                             const MetricParams& params) {
  std::stable_sort(truths.begin(), truths.end(),
                   [](const Track* x, const Track* y) { return x->first_scan() < y->first_scan(); });
  std::vector<Track> parts(truths.size());
  for (const auto& [t, x] : est.points) {
    std::size_t owner = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < truths.size(); ++k) {
      const StateVector* y = truths[k]->at(t);
      if (y == nullptr) continue;
      const double d = base_distance(x, *y, params);
      if (d < best) {
        best = d;
        owner = k;
      }
    }
    parts[owner].points.emplace(t, x);
  }
  std::vector<Track> out;
  for (auto& part : parts) {
    if (!part.points.empty()) out.push_back(std::move(part));
  }
  return out;
}

}  // namespace

SplitResult split_tracks(const TrackSet& truth, const TrackSet& est, const MetricParams& params,
                         SearchMode mode) {
  validate(truth);
  validate(est);
  require_compatible(truth, est);
  check_params(params, truth.state_dim);
  SplitResult result{est, {}};
  for (int iter = 0; iter < kSplitIterationCap; ++iter) {
    const QuasiResult q = quasi_ospamt(truth, result.est, params, mode);
    std::vector<Track> next;
    bool grew = false;
    bool pending = false;
    for (std::size_t e = 0; e < result.est.size(); ++e) {
      const Track& track = result.est.tracks[e];
      const auto& assignees = q.assignment.orders[e];
      if (assignees.size() < 2) {
        next.push_back(track);
        continue;
      }
      pending = true;
      std::vector<const Track*> owners;
      for (int i : assignees) owners.push_back(&truth.tracks[static_cast<std::size_t>(i)]);
      std::vector<Track> parts = split_one(track, owners, params);
      if (parts.size() < 2) {
        next.push_back(track);
        continue;
      }
      grew = true;
      SplitEvent event;
      event.track_id = track.id;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        parts[k].id = track.id + "#" + std::to_string(k + 1);
        std::vector<int> scans;
        for (const auto& [t, x] : parts[k].points) scans.push_back(t);
        if (k > 0) event.cuts.push_back(scans.front());
        event.fragments.push_back(std::move(scans));
        event.fragment_ids.push_back(parts[k].id);
        next.push_back(std::move(parts[k]));
      }
      result.log.push_back(std::move(event));
    }
    if (!pending) return result;
    if (!grew) {
      throw Error(Errc::NoConvergence, "splitting made no progress after " +
                                           std::to_string(iter) + " rounds");
    }
    result.est.tracks = std::move(next);
  }
  throw Error(Errc::NoConvergence,
              "assignment still many-to-one after " + std::to_string(kSplitIterationCap) + " rounds");
}

}  // namespace trackmetric
