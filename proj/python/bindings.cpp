#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "trackmetric/assign.hpp"
#include "trackmetric/core.hpp"
#include "trackmetric/io.hpp"
#include "trackmetric/ospa.hpp"
#include "trackmetric/ospamt.hpp"
#include "trackmetric/ospat.hpp"
#include "trackmetric/scenarios.hpp"

namespace py = pybind11;
namespace tk = trackmetric;

namespace {

// Track sets cross the boundary as plain dicts in the on-disk JSON layout:
// {"scans": T, "state_dim": d, "tracks": [{"id": s, "points": [{"t": k, "x": [...]}]}]}.
tk::TrackSet to_set(const py::dict& d) {
  tk::TrackSet s;
  try {
    s.scans = d["scans"].cast<int>();
    s.state_dim = d["state_dim"].cast<std::size_t>();
    for (const py::handle tr : d["tracks"].cast<py::list>()) {
      tk::Track track;
      track.id = tr["id"].cast<std::string>();
      for (const py::handle pt : tr["points"].cast<py::list>()) {
        const int t = pt["t"].cast<int>();
        if (!track.points.emplace(t, pt["x"].cast<tk::StateVector>()).second) {
          throw tk::Error(tk::Errc::Parse, "track '" + track.id + "' repeats scan " + std::to_string(t));
        }
      }
      s.tracks.push_back(std::move(track));
    }
  } catch (const py::error_already_set& e) {
    throw tk::Error(tk::Errc::Parse, std::string("malformed track set: ") + e.what());
  } catch (const py::cast_error& e) {
    throw tk::Error(tk::Errc::Parse, std::string("malformed track set: ") + e.what());
  }
  return s;
}

py::dict from_set(const tk::TrackSet& s) {
  py::list tracks;
  for (const tk::Track& tr : s.tracks) {
    py::list points;
    for (const auto& [t, x] : tr.points) points.append(py::dict(py::arg("t") = t, py::arg("x") = x));
    tracks.append(py::dict(py::arg("id") = tr.id, py::arg("points") = points));
  }
  return py::dict(py::arg("scans") = s.scans, py::arg("state_dim") = s.state_dim,
                  py::arg("tracks") = tracks);
}

tk::MetricParams make_params(double p, double c, double delta, double alpha,
                             std::optional<double> p_prime, std::vector<double> scale) {
  tk::MetricParams m;
  m.p = p;
  m.c = c;
  m.delta = delta;
  m.alpha = alpha;
  m.p_prime = p_prime;
  m.scale = std::move(scale);
  tk::check_params(m);
  return m;
}

py::dict ospa_dict(const tk::OspaResult& r) {
  return py::dict(py::arg("total") = r.total, py::arg("loc") = r.loc, py::arg("card") = r.card,
                  py::arg("matching") = r.matching);
}

py::dict ospamt(const py::dict& truth, const py::dict& est, const std::string& mode,
                const tk::MetricParams& params) {
  const tk::TrackSet a = to_set(truth), b = to_set(est);
  const tk::MetricReport r = tk::ospamt_metric(a, b, params, tk::parse_mode(mode));
  const bool est_src = r.assignment.direction == tk::Direction::EstToTruth;
  const tk::TrackSet& src = est_src ? b : a;
  const tk::TrackSet& tgt = est_src ? a : b;
  py::dict groups;
  for (std::size_t i = 0; i < r.assignment.orders.size(); ++i) {
    py::list ids;
    for (int j : r.assignment.orders[i]) ids.append(src.tracks[static_cast<std::size_t>(j)].id);
    groups[py::str(tgt.tracks[i].id)] = ids;
  }
  py::dict out(py::arg("total") = r.total, py::arg("loc") = r.loc, py::arg("card") = r.card,
               py::arg("per_time") = r.per_time, py::arg("loc_t") = r.loc_t,
               py::arg("card_t") = r.card_t, py::arg("n_t") = r.n_t, py::arg("n") = r.n,
               py::arg("direction") = tk::to_string(r.assignment.direction));
  out["assignment"] = groups;
  return out;
}

py::object ospat(const py::dict& truth, const py::dict& est, std::optional<int> t,
                 const tk::MetricParams& params) {
  const tk::TrackSet a = to_set(truth), b = to_set(est);
  tk::validate(a);
  tk::validate(b);
  tk::require_compatible(a, b);
  if (t) {
    if (*t < 1 || *t > a.scans) throw tk::Error(tk::Errc::ScanOutOfRange, "no scan " + std::to_string(*t));
    return ospa_dict(tk::ospat_at_time(a, b, *t, params));
  }
  const tk::OspatGlobal g = tk::ospat_global(a, b, params);
  py::list per_scan;
  for (const auto& r : tk::ospat_per_scan(a, b, params)) per_scan.append(ospa_dict(r));
  return py::dict(py::arg("total") = g.total, py::arg("per_time") = g.per_time,
                  py::arg("a_to_b") = g.assignment.a_to_b, py::arg("per_scan") = per_scan);
}

py::dict scenario_dict(const tk::Scenario& s) {
  py::dict out(py::arg("truth") = from_set(s.truth), py::arg("est") = from_set(s.est));
  out["extra"] = s.extra ? py::object(from_set(*s.extra)) : py::object(py::none());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Track-set distances: OSPA, OSPAT and OSPAMT.";

  py::register_exception<tk::Error>(m, "TrackMetricError", PyExc_ValueError);

  py::class_<tk::MetricParams>(m, "Params")
      .def(py::init(&make_params), py::arg("p") = 1.0, py::arg("c") = 80.0, py::arg("delta") = 10.0,
           py::arg("alpha") = 10.0, py::arg("p_prime") = py::none(),
           py::arg("scale") = std::vector<double>{})
      .def_readonly("p", &tk::MetricParams::p)
      .def_readonly("c", &tk::MetricParams::c)
      .def_readonly("delta", &tk::MetricParams::delta)
      .def_readonly("alpha", &tk::MetricParams::alpha)
      .def_readonly("p_prime", &tk::MetricParams::p_prime)
      .def_readonly("scale", &tk::MetricParams::scale);

  m.def("ospamt", &ospamt, py::arg("truth"), py::arg("est"), py::arg("mode") = "auto",
        py::arg("params") = tk::MetricParams{},
        "OSPAMT between two track sets with its loc/card split, per-scan values and assignment.");
  m.def("ospat", &ospat, py::arg("truth"), py::arg("est"), py::arg("t") = py::none(),
        py::arg("params") = tk::MetricParams{},
        "OSPAT at one scan, or the global reorder cost with per-scan values when t is None.");
  m.def(
      "ospa",
      [](const tk::StateSet& x, const tk::StateSet& y, const tk::MetricParams& params) {
        return ospa_dict(tk::ospa(x, y, params));
      },
      py::arg("x"), py::arg("y"), py::arg("params") = tk::MetricParams{});
  m.def(
      "ospa_per_scan",
      [](const py::dict& truth, const py::dict& est, const tk::MetricParams& params) {
        const tk::TrackSet a = to_set(truth), b = to_set(est);
        tk::validate(a);
        tk::validate(b);
        tk::require_compatible(a, b);
        py::list out;
        for (const auto& r : tk::ospa_per_scan(a, b, params)) out.append(ospa_dict(r));
        return out;
      },
      py::arg("truth"), py::arg("est"), py::arg("params") = tk::MetricParams{});
  m.def(
      "split",
      [](const py::dict& truth, const py::dict& est, const std::string& mode,
         const tk::MetricParams& params) {
        const tk::TrackSet a = to_set(truth), b = to_set(est);
        tk::validate(a);
        tk::validate(b);
        tk::require_compatible(a, b);
        const tk::SplitResult r = tk::split_tracks(a, b, params, tk::parse_mode(mode));
        py::list log;
        for (const tk::SplitEvent& e : r.log) {
          log.append(py::dict(py::arg("track") = e.track_id, py::arg("fragments") = e.fragment_ids,
                              py::arg("scans") = e.fragments, py::arg("cuts") = e.cuts));
        }
        return py::make_tuple(from_set(r.est), log);
      },
      py::arg("truth"), py::arg("est"), py::arg("mode") = "auto", py::arg("params") = tk::MetricParams{});
  m.def(
      "scenario",
      [](const std::string& figure, double epsilon, double eta, double beta, double c) {
        const auto id = tk::parse_figure(figure);
        if (!id) throw tk::Error(tk::Errc::InvalidParams, "unknown figure '" + figure + "'");
        return scenario_dict(tk::build({*id, epsilon, eta, beta, c}));
      },
      py::arg("figure"), py::arg("epsilon") = 1.0, py::arg("eta") = 5.0, py::arg("beta") = 1000.0,
      py::arg("c") = 80.0);
  m.def("figures", [] {
    std::vector<std::string> names;
    for (tk::FigureId f : tk::all_figures()) names.emplace_back(tk::to_string(f));
    return names;
  });
  m.def(
      "random_scenario",
      [](std::uint64_t seed, std::size_t n_truth, int scans, double miss, double false_rate,
         double break_rate, double noise, std::size_t dim) {
        tk::RandomSpec s;
        s.seed = seed;
        s.n_truth = n_truth;
        s.scans = scans;
        s.miss_rate = miss;
        s.false_rate = false_rate;
        s.break_rate = break_rate;
        s.noise = noise;
        s.state_dim = dim;
        return scenario_dict(tk::random_scenario(s));
      },
      py::arg("seed") = 0, py::arg("n_truth") = 3, py::arg("scans") = 4, py::arg("miss") = 0.0,
      py::arg("false_rate") = 0.0, py::arg("break_rate") = 0.0, py::arg("noise") = 0.0,
      py::arg("dim") = 2);
  m.def(
      "greedy_many_to_one",
      [](const std::vector<std::vector<double>>& d, double cutoff) {
        return tk::greedy_many_to_one(tk::CostMatrix::from_rows(d), cutoff).order_matrix;
      },
      py::arg("matrix"), py::arg("cutoff"),
      "Order matrix of the greedy many-to-one procedure: entry k > 0 orders column j k-th under row i.");
  m.def(
      "solve_one_to_one",
      [](const std::vector<std::vector<double>>& d) {
        const tk::OneToOne r = tk::solve_one_to_one(tk::CostMatrix::from_rows(d));
        return py::make_tuple(r.row_to_col, r.cost);
      },
      py::arg("matrix"));
  m.def("load", [](const std::string& path) { return from_set(tk::read_track_set(path)); }, py::arg("path"));
  m.def(
      "save", [](const std::string& path, const py::dict& set) { tk::write_track_set(path, to_set(set)); },
      py::arg("path"), py::arg("set"));
}
