"""The nine acceptance criteria, each at its stated scale and time limit.

Every criterion prints one PASS/FAIL line (shown with ``-s`` and repeated in
the terminal summary).  Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from multicayley import verify


def _run(number, title, limit, make_report):
    start = time.perf_counter()
    report = make_report()
    elapsed = time.perf_counter() - start
    ok = report.ok and elapsed < limit
    line = (
        f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} "
        f"({report.cases} cases, {report.failure_count} failures, {elapsed:.1f}s of {limit}s)"
    )
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert report.failure_count == 0, report.failures[:5]
    assert report.cases > 0
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"


CRITERIA = [
    (1, "unitype counts, n <= 7", 5, lambda: verify.suite_unitype(7)),
    (2, "indegree polynomial term by term, sum n <= 8, d <= 3", 120, lambda: verify.suite_gf(8, 3)),
    (3, "determinant vs skeleton sum, d = 2..5, 20 seeded points", 5, lambda: verify.suite_determinant(5, 20, seed=0)),
    (4, "forest polynomial at ones, d <= 2, sum n <= 6", 30, lambda: verify.suite_forests(6, 2)),
    (5, "statistic counts vs filtered enumeration, sum n <= 7, d <= 3", 300, lambda: verify.suite_counts(7, 3)),
    (6, "edge-move round trips and cardinality identities, sum n <= 7", 120, lambda: verify.suite_bijections(7, 3)),
    (7, "three Lagrange routes, degree <= 6, d <= 3", 60, lambda: verify.suite_lagrange(6, 3)),
    (8, "cacti counts and gon moves, (d,n) = (2,3), (3,2)", 120, lambda: verify.suite_cacti(((2, 3), (3, 2)))),
    (9, "plane trees by degree distribution, n <= 8", 30, lambda: verify.suite_plane(8)),
]


@pytest.mark.parametrize("number,title,limit,make_report", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, make_report):
    _run(number, title, limit, make_report)
