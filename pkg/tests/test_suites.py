import json

from mahler_gauge.suites import (
    CheckRecord,
    _record_from_json,
    report_json,
    suite_thm_1_1,
    suite_thm_1_2,
    suite_thm_2_1,
)


def _canonical(result):
    return json.dumps(result.to_json(), sort_keys=True)


def test_worker_pool_matches_sequential():
    for build in (
        lambda w: suite_thm_1_1(seed=5, n=12, n_equality=3, workers=w),
        lambda w: suite_thm_1_2(seed=5, n=12, family_max=3, workers=w),
        lambda w: suite_thm_2_1(seed=5, n=12, workers=w),
    ):
        assert _canonical(build(1)) == _canonical(build(2))


def test_seeds_change_inputs_and_runs_repeat():
    a = suite_thm_1_1(seed=1, n=5, n_equality=1)
    b = suite_thm_1_1(seed=1, n=5, n_equality=1)
    c = suite_thm_1_1(seed=2, n=5, n_equality=1)
    assert report_json([a], 1) == report_json([b], 1)
    assert [r.input for r in a.records] != [r.input for r in c.records]


def test_record_roundtrip():
    rec = CheckRecord.identity("s", "c", "x^2+1", 4, 4, note="n")
    back = _record_from_json(rec.to_json())
    assert back.to_json() == rec.to_json()
    assert back.holds is True and back.csv_row()[:2] == ["s", "c"]
