import csv
import io
import json

import pytest

from copflip import bounds
from copflip.bounds import (
    Check, Limits, VerifyConfig, bound_cw_from_wcol, bound_cw_gkplanar, bound_cw_ktminor,
    bound_fw_from_cw_kttfree, bound_fw_lift, bound_scol_gkplanar, bound_scol_ktminor,
    family_instance, measure, reports_to_csv, run_verification,
)
from copflip.graph import FamilySpec


def test_ktminor_formulas():
    assert bound_scol_ktminor(5, 1) == 18
    assert bound_scol_ktminor(4, 2) == 15
    assert bound_scol_ktminor(2, 7) == 0
    assert bound_cw_ktminor(5, 1) == 54
    assert bound_cw_ktminor(3, 1) == 9
    assert bound_cw_ktminor(2, 3) == 0
    # the strong bound at radius 4r is the cop bound at radius r
    for t in range(2, 8):
        for r in range(1, 4):
            assert bound_scol_ktminor(t, 4 * r) == bound_cw_ktminor(t, r)


def test_gkplanar_formulas():
    assert (bound_scol_gkplanar(1, 1, 1), bound_cw_gkplanar(1, 1, 1)) == (60, 180)
    assert (bound_scol_gkplanar(0, 0, 1), bound_cw_gkplanar(0, 0, 1)) == (18, 54)
    with pytest.raises(ValueError):
        bound_scol_gkplanar(0, 0, 0)
    with pytest.raises(ValueError):
        bound_cw_gkplanar(0, 0, 0)


def test_small_formulas():
    assert bound_cw_from_wcol(3) == 4
    assert bound_cw_from_wcol(1) == 2
    assert bound_fw_from_cw_kttfree(2, 3) == 8
    assert bound_fw_from_cw_kttfree(1, 9) == 1
    with pytest.raises(OverflowError):
        bound_fw_from_cw_kttfree(2 ** 40, 2)
    assert bound_fw_lift(1, 1) == 2
    assert bound_fw_lift(2, 3) == 5
    with pytest.raises(ValueError):
        bound_fw_lift(-1, 1)


def test_check_statuses():
    assert Check.compare("a", "s", 3, 4).status == "pass"
    assert Check.compare("a", "s", 5, 4).status == "fail"
    assert Check.compare("a", "s", 5, 0, degenerate=True).status == "degenerate"
    assert Check.compare("a", "s", None, 4).status == "skipped"
    assert Check.compare("a", "s", 4, 4, "==").status == "pass"


def _checks(rep):
    return {c.name: c for c in rep.checks}


def test_measure_complete_graph():
    rep = measure(family_instance(FamilySpec("complete", n=4)), 1)
    checks = _checks(rep)
    assert checks["fw_r == 1 on complete graphs"].status == "pass"
    assert rep.measured["cw_r"] == 4
    assert not rep.failed


def test_degenerate_rows_never_fail():
    # K_1 is K_2-minor-free; C(1,2) = 0 would otherwise be a violation
    rep = measure(family_instance(FamilySpec("complete", n=1)), 1)
    checks = _checks(rep)
    assert checks["scol_4r <= C(t-1,2)(8r+1)"].status == "degenerate"
    assert not rep.failed


def test_apollonian_row():
    rep = measure(family_instance(FamilySpec("apollonian", n=7, seed=2)), 1, Limits(wcol=0, cop=0))
    checks = _checks(rep)
    assert checks["scol_4r <= C(t-1,2)(8r+1)"].rhs == 54
    assert checks["strategy cops <= K_t-minor cw bound"].status == "pass"
    assert checks["cw_r <= scol_4r"].status == "skipped"


def test_guard_skips_are_not_fatal():
    rep = measure(family_instance(FamilySpec("complete", n=8)), 1, Limits(cop=8, wcol=0, strategy=0, lift=0))
    assert "cw_r" in rep.measured["guard_skipped"]
    assert _checks(rep)["cw_r <= scol_4r"].status == "skipped"


def test_reports_are_deterministic_and_sorted():
    cfg = VerifyConfig(radii=(2, 1), labeled_max_n=3,
                       families=(FamilySpec("grid", a=2, b=2), FamilySpec("cycle", n=4)))
    a = [r.to_json() for r in run_verification(cfg)]
    b = [r.to_json() for r in run_verification(cfg)]
    assert a == b
    reps = run_verification(cfg)
    assert [r.sort_key() for r in reps] == sorted(r.sort_key() for r in reps)
    row = json.loads(a[0])
    assert list(row) == sorted(row)
    assert {"lhs", "rhs", "source", "status"} <= set(row["checks"][0])


def test_parallel_matches_serial():
    cfg = VerifyConfig(radii=(1,), labeled_max_n=3)
    serial = [r.to_json() for r in run_verification(cfg)]
    par = [r.to_json() for r in run_verification(VerifyConfig(radii=(1,), labeled_max_n=3, jobs=2))]
    assert serial == par


def test_csv_mirrors_rows():
    reps = run_verification(VerifyConfig(radii=(1,), labeled_max_n=2))
    rows = list(csv.DictReader(io.StringIO(reports_to_csv(reps))))
    assert tuple(rows[0]) == bounds.CSV_COLUMNS
    assert len(rows) == sum(len(r.checks) for r in reps)


def test_config_validation():
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"radii": [0]})
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"bogus": 1})
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"families": [{"n": 3}]})
    cfg = VerifyConfig.from_dict({"radii": [1], "families": [{"family": "path", "n": 3}]})
    assert cfg.families[0].n == 3
