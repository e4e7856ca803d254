import json

import pytest

import trackmetric as tm


def test_example_two_total():
    s = tm.scenario("fig1a")
    r = tm.ospamt(s["truth"], s["est"], mode="exact")
    assert r["total"] == pytest.approx(5.0, rel=1e-9)
    assert r["direction"] == "est_to_truth"
    assert r["assignment"] == {"tau1": ["tau'1", "tau'2"]}


def test_loc_card_partition_per_scan():
    s = tm.random_scenario(seed=3, n_truth=4, scans=6, miss=0.2, false_rate=0.3, noise=1.0)
    prm = tm.Params(p=2.0)
    r = tm.ospamt(s["truth"], s["est"], params=prm)
    assert len(r["per_time"]) == 6
    for tot, loc, card in zip(r["per_time"], r["loc_t"], r["card_t"]):
        assert tot**2 == pytest.approx(loc**2 + card**2, rel=1e-9, abs=1e-12)


def test_identical_sets_are_zero():
    s = tm.random_scenario(seed=1)
    assert tm.ospamt(s["truth"], s["truth"])["total"] == 0.0
    assert tm.ospat(s["truth"], s["truth"])["total"] == 0.0


def test_ospa_and_table_one():
    assert tm.ospa([[0.0]], [[3.0], [100.0]])["total"] == pytest.approx((3 + 80) / 2)
    s = tm.scenario("fig9a")
    assert tm.ospa_per_scan(s["truth"], s["est"])[0]["total"] == pytest.approx(1.0)
    assert tm.ospat(s["truth"], s["est"], t=1)["total"] == pytest.approx(11.0)


def test_split_figure_five():
    s = tm.scenario("fig5")
    est, log = tm.split(s["truth"], s["est"])
    assert [e["track"] for e in log] == ["tau'1"]
    assert tm.ospamt(s["truth"], est)["total"] == pytest.approx(1.0)


def test_greedy_remark_four():
    d = [[70, 80, 80, 80], [79, 80, 29, 80], [80, 50, 80, 55]]
    assert tm.greedy_many_to_one(d, 80.0) == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 2]]
    cols, cost = tm.solve_one_to_one([[4, 1], [2, 3]])
    assert cols == [1, 0] and cost == 3


def test_errors_and_round_trip(tmp_path):
    with pytest.raises(tm.TrackMetricError, match="InvalidParams"):
        tm.Params(c=-1.0)
    with pytest.raises(tm.TrackMetricError, match="InvalidParams"):
        tm.scenario("fig99")
    with pytest.raises(tm.TrackMetricError, match="Parse"):
        tm.ospamt({"scans": 1}, {"scans": 1})
    bad = {"scans": 2, "state_dim": 1, "tracks": [{"id": "a", "points": [{"t": 3, "x": [0.0]}]}]}
    with pytest.raises(ValueError, match="ScanOutOfRange"):
        tm.ospamt(bad, bad)
    s = tm.random_scenario(seed=4, dim=3)
    path = tmp_path / "t.json"
    tm.save(str(path), s["truth"])
    assert tm.load(str(path)) == s["truth"]
    assert json.loads(path.read_text())["state_dim"] == 3
    assert "fig13" in tm.figures()
