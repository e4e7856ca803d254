#include "trackmetric/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>

namespace trackmetric {

namespace {

constexpr std::array<std::pair<FigureId, const char*>, 16> kNames{{
    {FigureId::Fig1a, "fig1a"},   {FigureId::Fig1b, "fig1b"},   {FigureId::Fig1c, "fig1c"},
    {FigureId::Fig1d, "fig1d"},   {FigureId::Fig5, "fig5"},     {FigureId::Fig6, "fig6"},
    {FigureId::Fig8, "fig8"},     {FigureId::Fig9a, "fig9a"},   {FigureId::Fig9b, "fig9b"},
    {FigureId::Fig10a, "fig10a"}, {FigureId::Fig11a, "fig11a"}, {FigureId::Fig11b, "fig11b"},
    {FigureId::Fig12, "fig12"},   {FigureId::Fig12a, "fig12a"}, {FigureId::Fig12b, "fig12b"},
    {FigureId::Fig13, "fig13"},
}};

// A constant-position 1-D track over scans [from, to].
Track flat(const std::string& id, int from, int to, double x) {
  Track t{id, {}};
  for (int s = from; s <= to; ++s) t.points.emplace(s, StateVector{x});
  return t;
}

Track& extend(Track& t, int from, int to, double x) {
  for (int s = from; s <= to; ++s) t.points.insert_or_assign(s, StateVector{x});
  return t;
}

TrackSet set_of(int scans, std::vector<Track> tracks) {
  TrackSet s;
  s.scans = scans;
  s.state_dim = 1;
  s.tracks = std::move(tracks);
  return s;
}

void check_spec(const ScenarioSpec& s) {
  auto fail = [](const std::string& msg) { throw Error(Errc::BadParameters, msg); };
  if (!(s.epsilon > 0.0) || !(s.eta > 0.0) || !(s.beta > 0.0) || !(s.c > 0.0)) {
    fail("epsilon, eta, beta and c must be positive");
  }
  if (!(s.epsilon < s.eta)) fail("need epsilon < eta");
  if (!(s.eta < s.c)) fail("need eta < c");
  // Far placements sit at beta minus a small offset from their nearest state
  // and must still saturate the cutoff.
  if (!(s.beta - 2.0 * s.eta >= s.c)) fail("need beta - 2 eta >= c");
  const bool doubled = s.figure == FigureId::Fig12 || s.figure == FigureId::Fig13;
  if (doubled && !(2.0 * s.epsilon < s.c)) fail("need 2 epsilon < c");
}

}  // namespace

const char* to_string(FigureId id) noexcept {
  for (const auto& [f, name] : kNames) {
    if (f == id) return name;
  }
  return "unknown";
}

std::optional<FigureId> parse_figure(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (const auto& [f, n] : kNames) {
    if (lower == n) return f;
  }
  return std::nullopt;
}

std::vector<FigureId> all_figures() {
  std::vector<FigureId> out;
  for (const auto& [f, n] : kNames) out.push_back(f);
  return out;
}

Scenario build(const ScenarioSpec& spec) {
  check_spec(spec);
  const double e = spec.epsilon;
  const double b = spec.beta;
  Scenario s;
  switch (spec.figure) {
    case FigureId::Fig1a:
      s.truth = set_of(5, {flat("tau1", 1, 5, 0.0)});
      s.est = set_of(5, {flat("tau'1", 1, 3, e), flat("tau'2", 4, 5, e)});
      break;
    case FigureId::Fig1b:
      s.truth = set_of(5, {flat("tau1", 1, 5, 0.0), flat("tau2", 4, 5, e + b)});
      s.est = set_of(5, {flat("tau'1", 1, 3, e), flat("tau'2", 4, 5, e)});
      break;
    case FigureId::Fig1c:
      s.truth = set_of(5, {flat("tau1", 1, 5, 0.0)});
      s.est = set_of(5, {flat("tau'1", 1, 5, b)});
      break;
    case FigureId::Fig1d:
      s.truth = set_of(5, {flat("tau1", 1, 5, 0.0)});
      s.est = set_of(5, {flat("tau'1", 1, 3, e), flat("tau'2", 4, 5, b)});
      break;
    case FigureId::Fig5:
      s.truth = set_of(5, {flat("tau1", 1, 3, 0.0), flat("tau2", 4, 5, 0.0)});
      s.est = set_of(5, {flat("tau'1", 1, 5, e)});
      break;
    case FigureId::Fig6: {
      s.truth = set_of(5, {flat("tau1", 1, 3, 0.0), flat("tau2", 4, 5, 0.0)});
      Track t = flat("tau'1", 1, 3, e);
      s.est = set_of(5, {extend(t, 4, 5, b)});
      break;
    }
    case FigureId::Fig8:
      s.truth = set_of(5, {flat("tau1", 1, 3, 0.0), flat("tau2", 4, 5, 0.0)});
      s.est = set_of(5, {flat("tau''1", 1, 3, e), flat("tau''2", 4, 5, e)});
      break;
    case FigureId::Fig9a:
    case FigureId::Fig9b: {
      const double off = spec.figure == FigureId::Fig9a ? b - e : spec.eta;
      Track t1 = flat("tau'1", 1, 1, off);
      Track t2 = flat("tau'2", 1, 1, b - off);
      s.truth = set_of(3, {flat("tau1", 1, 3, 0.0), flat("tau2", 1, 3, b)});
      s.est = set_of(3, {extend(t1, 2, 3, e), extend(t2, 2, 3, b - e)});
      break;
    }
    case FigureId::Fig10a:
      s.truth = set_of(4, {flat("tau1", 1, 2, 0.0)});
      s.est = set_of(4, {flat("tau'1", 3, 4, 0.0)});
      break;
    case FigureId::Fig11a:
    case FigureId::Fig11b: {
      s.truth = set_of(4, {flat("tau1", 1, 2, 0.0)});
      std::vector<Track> est{flat("tau'1", 1, 2, e), flat("tau'2", 3, 4, 0.0)};
      if (spec.figure == FigureId::Fig11b) est.push_back(flat("tau'3", 3, 4, e));
      s.est = set_of(4, std::move(est));
      break;
    }
    case FigureId::Fig12: {
      Track t2 = flat("tau2", 1, 1, b);
      extend(t2, 2, 2, 2.0 * e);
      s.truth = set_of(6, {flat("tau1", 1, 6, 0.0), t2, flat("tau3", 3, 5, b)});
      s.est = set_of(6, {flat("tau'1", 1, 3, e), flat("tau'2", 5, 6, e)});
      break;
    }
    case FigureId::Fig12a:
      s.truth = set_of(6, {flat("tau1", 1, 2, 0.0), flat("tau2", 3, 4, 0.0)});
      s.est = set_of(6, {flat("tau'1", 1, 2, e), flat("tau'2", 3, 4, b), flat("tau'3", 3, 6, e)});
      break;
    case FigureId::Fig12b:
      s.truth = set_of(6, {flat("tau1", 1, 2, 0.0), flat("tau2", 3, 4, 0.0)});
      s.est = set_of(6, {flat("tau'1", 1, 6, e), flat("tau'2", 3, 4, b)});
      break;
    case FigureId::Fig13:
      s.truth = set_of(5, {flat("tau1", 1, 5, 0.0)});
      s.est = set_of(5, {flat("tau'1", 3, 5, e)});
      s.extra = set_of(5, {flat("tau*1", 1, 3, 2.0 * e), flat("tau*2", 4, 5, 2.0 * e)});
      break;
  }
  return s;
}

Scenario random_scenario(const RandomSpec& spec) {
  if (spec.scans < 1 || spec.state_dim < 1) {
    throw Error(Errc::BadParameters, "random scenario needs scans >= 1 and state_dim >= 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> place(0.0, spec.extent);
  std::uniform_int_distribution<int> scan(1, spec.scans);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto random_track = [&](const std::string& id) {
    int from = scan(rng);
    int to = scan(rng);
    if (from > to) std::swap(from, to);
    Track t{id, {}};
    StateVector x(spec.state_dim);
    for (double& v : x) v = place(rng);
    for (int s = from; s <= to; ++s) {
      t.points.emplace(s, x);
      for (double& v : x) v += gauss(rng);
    }
    return t;
  };

  Scenario out;
  out.truth.scans = out.est.scans = spec.scans;
  out.truth.state_dim = out.est.state_dim = spec.state_dim;
  for (std::size_t i = 0; i < spec.n_truth; ++i) {
    out.truth.tracks.push_back(random_track("T" + std::to_string(i + 1)));
  }
  int next_id = 1;
  auto est_id = [&] { return "E" + std::to_string(next_id++); };
  for (const Track& truth : out.truth.tracks) {
    const bool missed = unit(rng) < spec.miss_rate;
    const bool broken = unit(rng) < spec.break_rate;
    const bool spawn = unit(rng) < spec.false_rate;
    if (!missed) {
      Track copy{est_id(), {}};
      for (const auto& [t, x] : truth.points) {
        StateVector y = x;
        for (double& v : y) v += spec.noise * gauss(rng);
        copy.points.emplace(t, std::move(y));
      }
      if (broken && copy.points.size() >= 2) {
        std::uniform_int_distribution<int> cut(truth.first_scan() + 1, truth.last_scan());
        const int at = cut(rng);
        Track tail{est_id(), {}};
        tail.points.insert(copy.points.lower_bound(at), copy.points.end());
        copy.points.erase(copy.points.lower_bound(at), copy.points.end());
        out.est.tracks.push_back(std::move(copy));
        out.est.tracks.push_back(std::move(tail));
      } else {
        out.est.tracks.push_back(std::move(copy));
      }
    }
    if (spawn) out.est.tracks.push_back(random_track(est_id()));
  }
  return out;
}

TrackSet add_false_track(TrackSet set, double offset, const std::string& id) {
  double far = 0.0;
  for (const Track& t : set.tracks) {
    for (const auto& [s, x] : t.points) far = std::max(far, std::abs(x.front()));
  }
  StateVector x(set.state_dim, 0.0);
  x.front() = far + offset;
  Track t{id, {}};
  for (int s = 1; s <= set.scans; ++s) t.points.emplace(s, x);
  set.tracks.push_back(std::move(t));
  return set;
}

}  // namespace trackmetric
