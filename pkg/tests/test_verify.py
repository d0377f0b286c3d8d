from fractions import Fraction

from multicayley import verify
from multicayley.cli import main


def test_report_records_failures():
    r = verify.VerificationReport("demo")
    r.check({"k": 1}, 2, 2)
    r.check({"k": 2}, 3, Fraction(7, 2))
    assert r.cases == 2 and r.failure_count == 1 and not r.ok
    data = r.to_json()
    assert data["failures"][0]["expected"] == 3


def test_profiles_order():
    ps = [p.counts for p in verify.profiles(3, 2)]
    assert ps == [(1,), (2,), (3,), (1, 1), (1, 2), (2, 1)]


def test_small_suites_pass():
    for name in verify.SUITES:
        if name in ("gf", "counts", "bijections", "lagrange"):
            continue
        assert verify.run_suite(name, 5, 2).ok, name


def test_heavier_suites_at_small_scale():
    assert verify.suite_gf(5, 3).ok
    assert verify.suite_counts(5, 3).ok
    assert verify.suite_bijections(5, 2).ok
    assert verify.suite_lagrange(4, 2).ok


def test_lagrange_battery_names():
    names = [name for name, _ in verify.lagrange_battery(6)]
    assert len(names) == len(set(names)) == 8


def test_cli_verify_all_small():
    import io

    out = io.StringIO()
    assert main(["verify", "--suite", "all", "--max-vertices", "5", "--max-d", "2"], out=out) == 0
    assert len(out.getvalue().splitlines()) == len(verify.SUITES)
