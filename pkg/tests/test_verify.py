import dataclasses

import pytest

from metafib_embed.construct import build
from metafib_embed.linrec import LinearRecurrence
from metafib_embed.metafib import InitialCondition
from metafib_embed.verify import (
    EVEN_SLOT,
    ODD_SLOT,
    VANISHES,
    CasePatternError,
    check_subsequence,
    check_theorem,
    evaluate,
    sweep_cases,
    trace_case,
)

from conftest import random_linear_recurrences

EXAMPLE = build(LinearRecurrence.from_lists((1, 0, 2), (30, 40, 60)))
FIB5 = build(LinearRecurrence.from_lists((1, 1), (5, 8)))


def test_check_theorem_examples():
    assert check_theorem(EXAMPLE, 2000)
    assert check_theorem(FIB5, 2000)
    R = evaluate(FIB5, 20)
    assert R[16:20] == [34, 8, 34, 4]
    R = evaluate(EXAMPLE, 20)
    assert R[18:20] == [120, 18]


def test_check_theorem_requires_n_beyond_h():
    with pytest.raises(ValueError):
        check_theorem(EXAMPLE, 17)


def test_check_subsequence_examples():
    assert check_subsequence(EXAMPLE, 100)
    assert check_subsequence(FIB5, 100)
    assert check_subsequence(EXAMPLE, 1)
    R = evaluate(FIB5, 4 * 6)
    assert R[::4] == [5, 8, 13, 21, 34, 55]


def shortened(c, h):
    return dataclasses.replace(c, h=h, initial=InitialCondition(0, c.initial.values[: h + 1]))


def test_negative_control_short_seed_fails():
    # the minimal valid h is sufficient, not tight: h=16 still works here
    assert check_theorem(shortened(EXAMPLE, 16), 2000)
    report = check_theorem(shortened(EXAMPLE, 15), 2000)
    assert report.first_mismatch == {
        "n": 16, "expected": 60, "got": 110, "m": 2, "j": 2, "parity": "even"
    }
    report = check_theorem(shortened(EXAMPLE, 11), 2000)
    assert not report.passed and report.death["n"] == 16
    report = check_theorem(shortened(FIB5, 9), 2000)
    assert report.first_mismatch["n"] == 13 and report.first_mismatch["parity"] == "odd"


def test_trace_example_even():
    t = trace_case(EXAMPLE, 18)
    assert [x.offset for x in t.terms] == [1, 2, 5]
    assert [x.argument for x in t.terms] == [12, -42, 0]
    assert [x.contribution for x in t.terms] == [60, 0, 60]
    assert [x.classification for x in t.terms] == [EVEN_SLOT, VANISHES, EVEN_SLOT]
    assert t.value == 120


def test_trace_example_odd():
    t = trace_case(EXAMPLE, 19)
    assert [x.argument for x in t.terms] == [-101, 13, -41]
    assert [x.contribution for x in t.terms] == [0, 18, 0]
    assert t.value == 18
    assert t.terms[1].classification == ODD_SLOT and t.terms[1].slot == (2, 0)


def test_trace_detects_bad_seed():
    bad = shortened(FIB5, 9)
    R = evaluate(bad, 14)
    for n in range(10, 13):
        trace_case(bad, n, R)
    with pytest.raises(CasePatternError) as info:
        trace_case(bad, 13, R)
    assert info.value.trace.violations
    assert sweep_cases(bad, 13, R)


@pytest.mark.parametrize("c", [EXAMPLE, FIB5] + [build(r) for r in random_linear_recurrences(20, seed=5)])
def test_trace_matches_engine(c):
    upto = c.h + 300
    R = evaluate(c, upto + 1)
    for n in range(c.h + 1, upto + 1):
        t = trace_case(c, n, R)
        assert t.value == R[n]
        if t.parity == "odd":
            assert all(x.classification == VANISHES for x in t.terms if x.offset != 2)
    assert sweep_cases(c, upto, R) == []


def test_report_json_shape():
    report = check_theorem(EXAMPLE, 100).to_json()
    assert report == {"pass": True, "checked": 100, "first_mismatch": None, "death": None}
