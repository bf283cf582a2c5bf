import pytest

from newton_dm1.campaigns import (
    BOUNDS,
    BoundError,
    Report,
    run_campaign,
    slope_regime,
    two_segment_polygons,
)
from newton_dm1.polygons import parse_polygon


@pytest.mark.parametrize(
    "name,h",
    [("theorem", 8), ("prop4", 8), ("props123", 8), ("dimension", 8), ("axioms", 6), ("order", 6), ("algebra", 8)],
)
def test_small_campaigns_pass(name, h):
    rep = run_campaign(name, h)
    assert rep.ok, rep.counterexamples[:3]
    assert rep.instances == rep.passed > 0


def test_theorem_parallel_matches_serial():
    a = run_campaign("theorem", 9, jobs=1)
    b = run_campaign("theorem", 9, jobs=2)
    assert (a.instances, a.passed, a.per_case) == (b.instances, b.passed, b.per_case)


def test_bounds_enforced():
    for name, bound in BOUNDS.items():
        with pytest.raises(BoundError):
            run_campaign(name, bound + 1)
        with pytest.raises(BoundError):
            run_campaign(name, -1)


def test_unknown_campaign():
    with pytest.raises(KeyError):
        run_campaign("nope")


def test_report_merge_and_summary():
    a, b = Report("x", 3), Report("x", 3)
    a.record(True, "I")
    b.record(False, "II", why="broken")
    a.merge(b)
    assert (a.instances, a.passed, a.failed) == (2, 1, 1)
    assert a.per_case == {"I": 1, "II": 1}
    assert not a.ok and a.counterexamples == [{"why": "broken"}]
    assert a.summary().startswith("FAIL x")


def test_two_segment_family():
    mixed = two_segment_polygons(8, mixed_only=True)
    assert parse_polygon("(0,1)+(1,0)") in mixed
    assert all(slope_regime(xi) == "mixed" for xi in mixed)
    assert len(two_segment_polygons(8)) > len(mixed)
