"""Every acceptance criterion at its stated size and tolerance, one PASS/FAIL line each."""
import json

import pytest

from gravchords import acceptance, cohomology, oracles

MAX_N = acceptance.DEFAULT_MAX_N
_elapsed = []


@pytest.fixture(scope="module", autouse=True)
def _cold_start():
    # earlier test modules warm the in-memory tables; time the criteria from scratch
    cohomology.clear_caches()
    for fn in (oracles.os_quotient_ranks, oracles.open_point_count, oracles.point_count):
        fn.cache_clear()


def _report(capsys, result):
    _elapsed.append(result.seconds)
    with capsys.disabled():
        print(f"\n{result.line()}")
        if not result.passed:
            print(json.dumps(result.detail, indent=1, default=str))
    return result


CRITERIA = [
    ("basis", lambda: acceptance.basis_correctness(MAX_N)),
    ("relations", lambda: acceptance.relation_vanishing(MAX_N)),
    ("freeness", lambda: acceptance.freeness(MAX_N, order=8)),
    ("cobar", lambda: acceptance.cobar_coherence(6)),
    ("purity", lambda: acceptance.purity_recursion(MAX_N, euler_n=8)),
    ("inverse", lambda: acceptance.generating_inverse(8)),
    ("blowups", acceptance.blowups),
    ("trace", acceptance.trace_check),
]


@pytest.mark.parametrize("name, run", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(capsys, name, run):
    result = _report(capsys, run())
    assert result.passed, result.detail


def test_trace_sign_is_reported(capsys):
    detail = acceptance.trace_check().detail
    with capsys.disabled():
        print(f"\n      trace of rotation on top hexagon primes: {detail['trace']} "
              f"(expected sign {detail['expected_sign']})")
    assert detail["trace"] in ("1", "-1")


def test_criterion_performance(capsys):
    # runs last: charges the time spent by the criteria above to the suite budget
    result = _report(capsys, acceptance.performance(sum(_elapsed), MAX_N))
    assert result.passed, result.detail
