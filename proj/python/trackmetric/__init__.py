"""Distances between sets of target tracks: OSPA, OSPAT and OSPAMT.

Track sets are plain dicts in the same layout as the JSON files the
``trackmetric`` command reads.
"""

from ._core import (
    Params,
    TrackMetricError,
    figures,
    greedy_many_to_one,
    load,
    ospa,
    ospa_per_scan,
    ospamt,
    ospat,
    random_scenario,
    save,
    scenario,
    solve_one_to_one,
    split,
)

__all__ = [
    "Params",
    "TrackMetricError",
    "figures",
    "greedy_many_to_one",
    "load",
    "ospa",
    "ospa_per_scan",
    "ospamt",
    "ospat",
    "random_scenario",
    "save",
    "scenario",
    "solve_one_to_one",
    "split",
]
