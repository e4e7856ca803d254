// trackmetric: command line front end for the OSPA / OSPAT / OSPAMT library.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "selftest.hpp"
#include "trackmetric/io.hpp"
#include "trackmetric/ospa.hpp"
#include "trackmetric/ospamt.hpp"
#include "trackmetric/ospat.hpp"
#include "trackmetric/scenarios.hpp"

namespace tk = trackmetric;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kParse = 2, kValidation = 3, kConfig = 4, kNoConvergence = 5 };

int exit_code(tk::Errc code) {
  switch (code) {
    case tk::Errc::Parse: return kParse;
    case tk::Errc::EmptyTrack:
    case tk::Errc::DimensionMismatch:
    case tk::Errc::ScanOutOfRange:
    case tk::Errc::NonFiniteCoordinate:
    case tk::Errc::ScanMismatch:
    case tk::Errc::InfeasibleAssignment: return kValidation;
    case tk::Errc::InvalidParams:
    case tk::Errc::BadParameters:
    case tk::Errc::TooLarge: return kConfig;
    case tk::Errc::NoConvergence: return kNoConvergence;
  }
  return kFail;
}

struct Options {
  std::string metric = "all";
  std::string mode;
  std::string output = "table";
  tk::MetricParams params;
  std::optional<double> p_prime;
  bool per_time = false;
  std::optional<int> at_time;
  bool assignment = false;
  unsigned jobs = 1;
};

void add_metric_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.params.p, "order parameter p")->capture_default_str();
  cmd->add_option("--c", o.params.c, "cutoff c")->capture_default_str();
  cmd->add_option("--delta", o.params.delta, "assignment penalty")->capture_default_str();
  cmd->add_option("--alpha", o.params.alpha, "OSPAT label penalty")->capture_default_str();
  cmd->add_option("--p-prime", o.p_prime, "base norm order (defaults to p)");
  cmd->add_option("--scale", o.params.scale, "per-dimension scale factors")->delimiter(',');
  cmd->add_option("--mode", o.mode, "assignment search: exact, greedy or auto");
}

std::string fmt(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------
// One metric's numbers, whatever the metric.

struct Rows {
  std::string name;
  double total = 0.0, loc = 0.0, card = 0.0;
  std::vector<double> per_time, loc_t, card_t;
  std::vector<int> n_t;
  json detail = json::object();
  std::vector<std::string> notes;
};

// Pools per-scan OSPA values over all distances, the same normalization the
// OSPAMT total uses.
void pool(Rows& r, double p) {
  double tot = 0.0, loc = 0.0, card = 0.0;
  int n = 0;
  for (std::size_t t = 0; t < r.per_time.size(); ++t) {
    tot += std::pow(r.per_time[t], p) * r.n_t[t];
    loc += std::pow(r.loc_t[t], p) * r.n_t[t];
    card += std::pow(r.card_t[t], p) * r.n_t[t];
    n += r.n_t[t];
  }
  if (n == 0) return;
  r.total = std::pow(tot / n, 1.0 / p);
  r.loc = std::pow(loc / n, 1.0 / p);
  r.card = std::pow(card / n, 1.0 / p);
}

void fill_per_scan(Rows& r, const std::vector<tk::OspaResult>& scans) {
  for (const auto& s : scans) {
    r.per_time.push_back(s.total);
    r.loc_t.push_back(s.loc);
    r.card_t.push_back(s.card);
  }
}

std::string id_of(const tk::TrackSet& s, int i) { return s.tracks[static_cast<std::size_t>(i)].id; }

Rows run_ospa(const tk::TrackSet& a, const tk::TrackSet& b, const tk::MetricParams& p) {
  Rows r;
  r.name = "ospa";
  const auto scans = tk::ospa_per_scan(a, b, p);
  fill_per_scan(r, scans);
  r.n_t = tk::count_distances(a, b).per_scan;
  pool(r, p.p);
  json matches = json::array();
  for (std::size_t t = 0; t < scans.size(); ++t) {
    json pairs = json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (scans[t].matching[i] >= 0) {
        pairs.push_back({a.tracks[i].id, id_of(b, scans[t].matching[i])});
      }
    }
    matches.push_back(pairs);
  }
  r.detail["matching"] = matches;
  return r;
}

Rows run_ospat(const tk::TrackSet& a, const tk::TrackSet& b, const tk::MetricParams& p) {
  Rows r;
  r.name = "ospat";
  const auto scans = tk::ospat_per_scan(a, b, p);
  fill_per_scan(r, scans);
  r.n_t = tk::count_distances(a, b).per_scan;
  pool(r, p.p);
  const tk::OspatGlobal g = tk::ospat_global(a, b, p);
  r.detail["global_total"] = g.total;
  r.detail["global_per_time"] = g.per_time;
  json pairs = json::array();
  std::string line = "ospat pairing:";
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int j = g.assignment.a_to_b[i];
    if (j < 0) continue;
    pairs.push_back({a.tracks[i].id, id_of(b, j)});
    line += " [" + a.tracks[i].id + " <-> " + id_of(b, j) + "]";
  }
  r.detail["pairs"] = pairs;
  r.notes.push_back(line);
  r.notes.push_back("ospat global distance: " + fmt(g.total, 10));
  return r;
}

Rows run_ospamt(const tk::TrackSet& a, const tk::TrackSet& b, const tk::MetricParams& p,
                tk::SearchMode mode) {
  const tk::MetricReport m = tk::ospamt_metric(a, b, p, mode);
  Rows r;
  r.name = "ospamt";
  r.total = m.total;
  r.loc = m.loc;
  r.card = m.card;
  r.per_time = m.per_time;
  r.loc_t = m.loc_t;
  r.card_t = m.card_t;
  r.n_t = m.n_t;
  const bool est_src = m.assignment.direction == tk::Direction::EstToTruth;
  const tk::TrackSet& src = est_src ? b : a;
  const tk::TrackSet& tgt = est_src ? a : b;
  json groups = json::array();
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < tgt.size(); ++i) {
    const auto& order = m.assignment.orders[i];
    if (order.empty()) continue;
    std::vector<std::string> ids;
    for (int j : order) ids.push_back(id_of(src, j));
    groups.push_back({{"target", tgt.tracks[i].id}, {"sources", ids}});
    std::string line = "  " + tgt.tracks[i].id + " <- ";
    for (std::size_t k = 0; k < ids.size(); ++k) line += (k ? ", " : "") + ids[k];
    lines.push_back(line);
  }
  json unassigned = json::array();
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (m.assignment.target_of[j] < 0) unassigned.push_back(src.tracks[j].id);
  }
  r.detail["direction"] = tk::to_string(m.assignment.direction);
  r.detail["groups"] = groups;
  r.detail["unassigned"] = unassigned;
  r.notes.push_back(std::string("ospamt assignment (") + tk::to_string(m.assignment.direction) + "):");
  for (auto& l : lines) r.notes.push_back(std::move(l));
  if (!unassigned.empty()) {
    std::string l = "  unassigned:";
    for (const auto& id : unassigned) l += " " + id.get<std::string>();
    r.notes.push_back(l);
  }
  return r;
}

// ---------------------------------------------------------------------------

void emit(const std::vector<Rows>& rows, const Options& o, int scans, std::ostream& out) {
  std::vector<int> times;
  if (o.at_time) {
    times.push_back(*o.at_time);
  } else if (o.per_time) {
    for (int t = 1; t <= scans; ++t) times.push_back(t);
  }
  if (o.output == "csv") {
    out << "t,metric,total,loc,card,n_t\n";
    for (const Rows& r : rows) {
      if (times.empty()) {
        int n = 0;
        for (int v : r.n_t) n += v;
        out << "all," << r.name << ',' << fmt(r.total, 17) << ',' << fmt(r.loc, 17) << ','
            << fmt(r.card, 17) << ',' << n << '\n';
      }
      for (int t : times) {
        const auto k = static_cast<std::size_t>(t - 1);
        out << t << ',' << r.name << ',' << fmt(r.per_time[k], 17) << ',' << fmt(r.loc_t[k], 17)
            << ',' << fmt(r.card_t[k], 17) << ',' << r.n_t[k] << '\n';
      }
    }
    return;
  }
  if (o.output == "json") {
    json doc = json::object();
    doc["params"] = {{"p", o.params.p},           {"c", o.params.c},
                     {"delta", o.params.delta},   {"alpha", o.params.alpha},
                     {"p_prime", o.params.base_order()}};
    for (const Rows& r : rows) {
      json m = {{"total", r.total}, {"loc", r.loc}, {"card", r.card}, {"per_time", r.per_time},
                {"loc_t", r.loc_t}, {"card_t", r.card_t}, {"n_t", r.n_t}};
      for (auto it = r.detail.begin(); it != r.detail.end(); ++it) m[it.key()] = it.value();
      doc["metrics"][r.name] = m;
    }
    out << doc.dump(2) << '\n';
    return;
  }
  char line[160];
  if (times.empty()) {
    std::snprintf(line, sizeof line, "%-8s %14s %14s %14s\n", "metric", "total", "loc", "card");
    out << line;
    for (const Rows& r : rows) {
      std::snprintf(line, sizeof line, "%-8s %14s %14s %14s\n", r.name.c_str(), fmt(r.total, 8).c_str(),
                    fmt(r.loc, 8).c_str(), fmt(r.card, 8).c_str());
      out << line;
    }
  } else {
    std::snprintf(line, sizeof line, "%4s %-8s %14s %14s %14s %4s\n", "t", "metric", "total", "loc",
                  "card", "n_t");
    out << line;
    for (int t : times) {
      const auto k = static_cast<std::size_t>(t - 1);
      for (const Rows& r : rows) {
        std::snprintf(line, sizeof line, "%4d %-8s %14s %14s %14s %4d\n", t, r.name.c_str(),
                      fmt(r.per_time[k], 8).c_str(), fmt(r.loc_t[k], 8).c_str(),
                      fmt(r.card_t[k], 8).c_str(), r.n_t[k]);
        out << line;
      }
    }
  }
  if (o.assignment) {
    for (const Rows& r : rows) {
      for (const auto& n : r.notes) out << n << '\n';
    }
  }
}

tk::SearchMode resolve_mode(const Options& o) {
  std::string mode = o.mode;
  if (mode.empty()) {
    const char* env = std::getenv("TRACKMETRIC_MODE");
    mode = env && *env ? env : "auto";
  }
  return tk::parse_mode(mode);
}

void prepare(Options& o, std::size_t state_dim) {
  if (o.p_prime) o.params.p_prime = *o.p_prime;
  for (const auto& w : tk::check_params(o.params, state_dim)) std::cerr << "warning: " << w << '\n';
}

int cmd_compute(const std::string& truth_path, const std::string& est_path, Options o) {
  if (o.metric != "ospa" && o.metric != "ospat" && o.metric != "ospamt" && o.metric != "all") {
    throw tk::Error(tk::Errc::InvalidParams, "unknown metric '" + o.metric + "'");
  }
  if (o.output != "table" && o.output != "csv" && o.output != "json") {
    throw tk::Error(tk::Errc::InvalidParams, "unknown output format '" + o.output + "'");
  }
  const tk::SearchMode mode = resolve_mode(o);
  const tk::TrackSet a = tk::read_track_set(truth_path);
  const tk::TrackSet b = tk::read_track_set(est_path);
  tk::validate(a);
  tk::validate(b);
  tk::require_compatible(a, b);
  prepare(o, a.state_dim);
  if (o.at_time && (*o.at_time < 1 || *o.at_time > a.scans)) {
    throw tk::Error(tk::Errc::InvalidParams, "--at-time must lie in 1.." + std::to_string(a.scans));
  }

  std::vector<std::function<Rows()>> tasks;
  if (o.metric == "ospa" || o.metric == "all") tasks.emplace_back([&] { return run_ospa(a, b, o.params); });
  if (o.metric == "ospat" || o.metric == "all") tasks.emplace_back([&] { return run_ospat(a, b, o.params); });
  if (o.metric == "ospamt" || o.metric == "all") {
    tasks.emplace_back([&] { return run_ospamt(a, b, o.params, mode); });
  }
  std::vector<Rows> rows;
  if (o.jobs > 1) {
    std::vector<std::future<Rows>> pending;
    for (auto& task : tasks) pending.push_back(std::async(std::launch::async, task));
    for (auto& f : pending) rows.push_back(f.get());
  } else {
    for (auto& task : tasks) rows.push_back(task());
  }
  emit(rows, o, a.scans, std::cout);
  return kOk;
}

struct ScenarioArgs {
  std::string figure;
  std::string out_truth = "truth.json";
  std::string out_est = "est.json";
  std::string out_extra;
  double epsilon = 1.0, eta = 5.0, beta = 1000.0, c = 80.0;
  std::uint64_t seed = 0;
  std::size_t n_truth = 3, dim = 2;
  int scans = 5;
  double miss = 0.0, false_rate = 0.0, break_rate = 0.0, noise = 0.0;
};

int cmd_scenario(const ScenarioArgs& s) {
  tk::Scenario sc;
  if (s.figure == "random") {
    tk::RandomSpec spec;
    spec.seed = s.seed;
    spec.n_truth = s.n_truth;
    spec.scans = s.scans;
    spec.miss_rate = s.miss;
    spec.false_rate = s.false_rate;
    spec.break_rate = s.break_rate;
    spec.noise = s.noise;
    spec.state_dim = s.dim;
    sc = tk::random_scenario(spec);
  } else {
    const auto fig = tk::parse_figure(s.figure);
    if (!fig) throw tk::Error(tk::Errc::BadParameters, "unknown figure '" + s.figure + "'");
    sc = tk::build({*fig, s.epsilon, s.eta, s.beta, s.c});
  }
  tk::write_track_set(s.out_truth, sc.truth);
  tk::write_track_set(s.out_est, sc.est);
  std::cout << "wrote " << s.out_truth << " and " << s.out_est;
  if (sc.extra) {
    const std::string extra = s.out_extra.empty() ? "extra.json" : s.out_extra;
    tk::write_track_set(extra, *sc.extra);
    std::cout << " and " << extra;
  }
  std::cout << '\n';
  return kOk;
}

int cmd_split(const std::string& truth_path, const std::string& est_path, const std::string& out_path,
              Options o) {
  const tk::SearchMode mode = resolve_mode(o);
  const tk::TrackSet a = tk::read_track_set(truth_path);
  const tk::TrackSet b = tk::read_track_set(est_path);
  tk::validate(a);
  tk::validate(b);
  tk::require_compatible(a, b);
  prepare(o, a.state_dim);
  const tk::SplitResult r = tk::split_tracks(a, b, o.params, mode);
  tk::write_track_set(out_path, r.est);
  for (const auto& e : r.log) {
    std::cout << "split " << e.track_id << " at";
    for (int c : e.cuts) std::cout << ' ' << c;
    std::cout << " ->";
    for (std::size_t k = 0; k < e.fragments.size(); ++k) {
      std::cout << ' ' << e.fragment_ids[k] << " [" << e.fragments[k].front() << '-'
                << e.fragments[k].back() << ']';
    }
    std::cout << '\n';
  }
  if (r.log.empty()) std::cout << "no split needed\n";
  std::cout << "ospamt after split: " << fmt(tk::ospamt_metric(a, r.est, o.params, mode).total, 17)
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OSPA, OSPAT and OSPAMT distances between sets of tracks"};
  app.require_subcommand(1);

  Options compute_opts;
  std::string truth_path, est_path;
  auto* compute = app.add_subcommand("compute", "score an estimated track set against truth");
  compute->add_option("truth", truth_path, "truth track-set file")->required();
  compute->add_option("estimate", est_path, "estimated track-set file")->required();
  add_metric_options(compute, compute_opts);
  compute->add_option("--metric", compute_opts.metric, "ospa, ospat, ospamt or all")->capture_default_str();
  compute->add_option("--output", compute_opts.output, "table, csv or json")->capture_default_str();
  compute->add_flag("--per-time", compute_opts.per_time, "one row per scan");
  compute->add_option("--at-time", compute_opts.at_time, "only report scan t");
  compute->add_flag("--assignment", compute_opts.assignment, "print the assignments (table output)");
  compute->add_option("--jobs", compute_opts.jobs, "evaluate metrics in parallel")->capture_default_str();

  ScenarioArgs sargs;
  auto* scenario = app.add_subcommand("scenario", "write a built-in scenario as track-set files");
  scenario->add_option("figure", sargs.figure, "figure id (fig1a ... fig13) or 'random'")->required();
  scenario->add_option("--out-truth", sargs.out_truth)->capture_default_str();
  scenario->add_option("--out-est", sargs.out_est)->capture_default_str();
  scenario->add_option("--out-extra", sargs.out_extra, "third set, for figures that draw one");
  scenario->add_option("--epsilon", sargs.epsilon)->capture_default_str();
  scenario->add_option("--eta", sargs.eta)->capture_default_str();
  scenario->add_option("--beta", sargs.beta)->capture_default_str();
  scenario->add_option("--c", sargs.c, "cutoff the geometry is checked against")->capture_default_str();
  scenario->add_option("--seed", sargs.seed)->capture_default_str();
  scenario->add_option("--n-truth", sargs.n_truth)->capture_default_str();
  scenario->add_option("--scans", sargs.scans)->capture_default_str();
  scenario->add_option("--dim", sargs.dim)->capture_default_str();
  scenario->add_option("--miss", sargs.miss)->capture_default_str();
  scenario->add_option("--false", sargs.false_rate)->capture_default_str();
  scenario->add_option("--break", sargs.break_rate)->capture_default_str();
  scenario->add_option("--noise", sargs.noise)->capture_default_str();

  Options split_opts;
  std::string split_truth, split_est, split_out = "split.json";
  auto* split = app.add_subcommand("split", "split estimated tracks assigned to several truth tracks");
  split->add_option("truth", split_truth)->required();
  split->add_option("estimate", split_est)->required();
  split->add_option("--out", split_out, "where to write the split estimate")->capture_default_str();
  add_metric_options(split, split_opts);

  auto* selftest = app.add_subcommand("selftest", "recompute the published tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*compute) return cmd_compute(truth_path, est_path, compute_opts);
    if (*scenario) return cmd_scenario(sargs);
    if (*split) return cmd_split(split_truth, split_est, split_out, split_opts);
    if (*selftest) return trackmetric::cli::run_selftest(std::cout) == 0 ? kOk : kFail;
  } catch (const tk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kOk;
}
