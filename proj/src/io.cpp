#include "trackmetric/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace trackmetric {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(Errc::Parse, msg); }

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where + ": missing field '" + key + "'");
  return *it;
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_fail(where + ": expected an integer");
  return v.get<long long>();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TrackSet parse_track_set(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("top level must be an object");
  TrackSet set;
  set.scans = static_cast<int>(integer(field(doc, "scans", "document"), "scans"));
  const long long dim = integer(field(doc, "state_dim", "document"), "state_dim");
  if (dim < 1) parse_fail("state_dim must be positive");
  set.state_dim = static_cast<std::size_t>(dim);
  const json& tracks = field(doc, "tracks", "document");
  if (!tracks.is_array()) parse_fail("tracks must be an array");
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const json& jt = tracks[i];
    std::string where = "track " + std::to_string(i + 1);
    if (!jt.is_object()) parse_fail(where + ": expected an object");
    Track track;
    const json& id = field(jt, "id", where);
    if (!id.is_string()) parse_fail(where + ": id must be a string");
    track.id = id.get<std::string>();
    where = "track '" + track.id + "'";
    const json& points = field(jt, "points", where);
    if (!points.is_array()) parse_fail(where + ": points must be an array");
    for (const json& jp : points) {
      if (!jp.is_object()) parse_fail(where + ": each point must be an object");
      const long long t = integer(field(jp, "t", where), where + " point t");
      const std::string at = where + " scan " + std::to_string(t);
      const json& jx = field(jp, "x", at);
      if (!jx.is_array()) parse_fail(at + ": x must be an array");
      StateVector x;
      for (const json& v : jx) {
        if (!v.is_number()) parse_fail(at + ": coordinates must be numbers");
        x.push_back(v.get<double>());
      }
      if (!track.points.emplace(static_cast<int>(t), std::move(x)).second) {
        parse_fail(at + ": duplicate scan");
      }
    }
    set.tracks.push_back(std::move(track));
  }
  return set;
}

TrackSet read_track_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_track_set(buf.str());
}

std::string dump_track_set(const TrackSet& set) {
  std::ostringstream os;
  os << "{\n  \"scans\": " << set.scans << ",\n  \"state_dim\": " << set.state_dim
     << ",\n  \"tracks\": [";
  for (std::size_t i = 0; i < set.tracks.size(); ++i) {
    const Track& t = set.tracks[i];
    os << (i ? "," : "") << "\n    {\"id\": " << json(t.id).dump() << ", \"points\": [";
    bool first = true;
    for (const auto& [s, x] : t.points) {
      os << (first ? "" : ", ") << "{\"t\": " << s << ", \"x\": [";
      for (std::size_t k = 0; k < x.size(); ++k) os << (k ? ", " : "") << format_double(x[k]);
      os << "]}";
      first = false;
    }
    os << "]}";
  }
  os << (set.tracks.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

void write_track_set(const std::string& path, const TrackSet& set) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Parse, "cannot write '" + path + "'");
  out << dump_track_set(set);
}

}  // namespace trackmetric
