#pragma once

#include <string>

#include "trackmetric/core.hpp"

namespace trackmetric {

// Track-set documents:
//   {"scans": T, "state_dim": n, "tracks": [{"id": "...", "points": [{"t": 1, "x": [..]}]}]}
// Points may come in any order and are sorted on load. A repeated t within a
// track is a parse error. Shape and range problems are left to validate().

TrackSet parse_track_set(const std::string& text);
TrackSet read_track_set(const std::string& path);

/// Coordinates are written with 17 significant digits so a read gives back the
/// same doubles.
std::string dump_track_set(const TrackSet& set);
void write_track_set(const std::string& path, const TrackSet& set);

}  // namespace trackmetric
