import pytest

from diamond_lab.matcore import DEFAULT_TOL
from diamond_lab.orders import leq_diamond
from diamond_lab.props import (
    SUITES, CheckResult, format_table, mixed_pair, oracle_grid, run_suites, two_way_pairs,
)


def test_check_result_bookkeeping():
    c = CheckResult("s", "c")
    assert not c.passed  # no trials yet
    c.record(True)
    c.record(False, "here")
    c.record(False, "there")
    assert (c.trials, c.violations, c.counterexample) == (3, 2, "here")


def test_format_table_shows_first_counterexample():
    c = CheckResult("s", "c", 2, 1, "seed=4")
    text = format_table([c])
    assert "FAIL" in text and "first counterexample: seed=4" in text
    assert text.strip().endswith("0/1 checks passed")


def test_mixed_pairs_are_deterministic():
    labels = set()
    for s in range(16):
        a1, b1, label = mixed_pair(3, s)
        a2, b2, _ = mixed_pair(3, s)
        assert (a1 == a2).all() and (b1 == b2).all()
        labels.add(label)
    assert len(labels) == 8  # every family is visited


def test_two_way_pairs_are_ordered_both_ways():
    for a, b in two_way_pairs([2, 3], 20, 0):
        assert leq_diamond(a, b).holds and leq_diamond(b, a).holds


def test_oracle_grid_is_large_enough():
    assert len(oracle_grid()) ** 2 >= 200


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_suite_runs_pass(name):
    results = run_suites([name], (2, 3), 40, 3, DEFAULT_TOL)
    assert results and all(r.passed for r in results), format_table(results)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["nope"])
