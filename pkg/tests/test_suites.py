import pytest

from varlp.suites import SUITES, run_suite


@pytest.mark.parametrize('name', sorted(SUITES))
def test_quick_suite_passes(name):
    res = run_suite(name, seed=11)
    assert res.instances > 0
    assert res.passed, res.failures[:5]


def test_suites_are_reproducible():
    a = run_suite('hoelder', 20, seed=3)
    b = run_suite('hoelder', 20, seed=3)
    assert a.worst == b.worst and a.failures == b.failures
