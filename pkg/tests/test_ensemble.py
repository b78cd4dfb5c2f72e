from dataclasses import replace
from pathlib import Path

import pytest

from xcoherence.ensemble import (
    HEADER,
    EnsembleRecord,
    RecordParseError,
    RecordValidationError,
    column,
    dumps_csv,
    family_records,
    loads_csv,
    read_csv,
    run_ensemble,
    write_csv,
)
from xcoherence.measures import measure_all
from xcoherence.xstates import sample_random

GOLDEN = Path(__file__).parent / "data" / "golden_seed2024_n10.csv"


def test_header_is_exact():
    assert ",".join(HEADER) == (
        "rho11,rho22,rho33,rho44,re_rho14,im_rho14,re_rho23,im_rho23,"
        "c_rel,c_l1,c_skew,c_tr,c_rob,concurrence,d2,d2max")


def test_single_record_matches_direct_evaluation():
    (rec,) = run_ensemble(7, 1)
    s = sample_random(7, 0)
    assert rec.state == s and rec.measures == measure_all(s)


def test_same_seed_gives_identical_csv():
    assert dumps_csv(run_ensemble(3, 1000)) == dumps_csv(run_ensemble(3, 1000))


def test_parallel_invariance():
    serial = run_ensemble(11, 300, phases=True)
    assert run_ensemble(11, 300, phases=True, workers=2) == serial
    assert run_ensemble(11, 300, phases=True, workers=3) == serial


def test_rana_on_desk_scale_ensemble():
    recs = run_ensemble(13, 10_000)
    assert all(r.measures.c_l1 >= r.measures.c_rel - 1e-10 for r in recs)


def test_rejects_empty_ensemble():
    with pytest.raises(ValueError):
        run_ensemble(1, 0)


def test_round_trip(tmp_path):
    recs = run_ensemble(5, 100, phases=True)
    path = tmp_path / "a.csv"
    write_csv(recs, path)
    back = read_csv(path)
    assert len(back) == 100
    for a, b in zip(recs, back):
        for x, y in zip(a.values(), b.values()):
            assert x == pytest.approx(y, rel=1e-15, abs=0)


def test_seventeen_significant_digits():
    text = dumps_csv(run_ensemble(5, 3))
    row = text.splitlines()[1].split(",")
    assert max(len(x.lstrip("-").replace(".", "").split("e")[0].lstrip("0")) for x in row) <= 17


def test_golden_fixture_schema_is_stable():
    assert dumps_csv(run_ensemble(2024, 10)) == GOLDEN.read_text()
    assert len(read_csv(GOLDEN)) == 10


def test_header_mismatch_names_column():
    text = dumps_csv(run_ensemble(1, 2)).replace("c_skew", "c_skw", 1)
    with pytest.raises(RecordParseError, match="c_skw") as info:
        loads_csv(text)
    assert info.value.line == 1


def test_missing_header_column():
    lines = dumps_csv(run_ensemble(1, 2)).splitlines()
    lines[0] = lines[0].rsplit(",", 1)[0]
    with pytest.raises(RecordParseError, match="d2max"):
        loads_csv("\n".join(lines))


def test_parse_error_reports_line_number():
    lines = dumps_csv(run_ensemble(1, 5)).splitlines()
    lines[3] = lines[3].replace(",", ",x", 1)
    with pytest.raises(RecordParseError) as info:
        loads_csv("\n".join(lines))
    assert info.value.line == 4


def test_positivity_violation_reports_row():
    recs = run_ensemble(1, 5)
    lines = dumps_csv(recs).splitlines()
    cells = lines[3].split(",")
    cells[4] = "0.9"  # re_rho14 far beyond sqrt(rho11*rho44)
    lines[3] = ",".join(cells)
    with pytest.raises(RecordValidationError) as info:
        loads_csv("\n".join(lines))
    assert info.value.row == 2


def test_spot_check_detects_corrupted_measure():
    recs = run_ensemble(1, 3)
    m = recs[0].measures
    bad = replace(m, **{k: v + 0.25 for k, v in vars(m).items()})
    recs[0] = EnsembleRecord(recs[0].state, bad)
    with pytest.raises(RecordValidationError) as info:
        loads_csv(dumps_csv(recs))
    assert info.value.row == 0
    assert len(loads_csv(dumps_csv(recs), spot_check=False)) == 3


def test_family_records_grid():
    recs = family_records("werner", 11)
    assert [r.measures.c_l1 for r in recs] == pytest.approx([k / 10 for k in range(11)], abs=1e-15)


def test_column_access():
    recs = run_ensemble(1, 4)
    assert column(recs, "c_l1") == [r.measures.c_l1 for r in recs]
    assert column(recs, "rho11") == [r.state.r11 for r in recs]
    with pytest.raises(KeyError):
        column(recs, "nope")
