"""One test per acceptance criterion; each records a PASS/FAIL line in the terminal summary."""

import math
import time

import pytest

from nlsdefects import dprime, suite
from nlsdefects.cli import main


def summarize(checks):
    failed = [c.name for c in checks if not c.passed]
    return not failed, (f"{len(checks)} checks" if not failed else "failed: " + "; ".join(failed))


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def observables():
    return suite.suite_observables()


def test_criterion_1_residuals(record_criterion):
    checks, elapsed = timed(suite.suite_residuals)
    ok, detail = summarize(checks)
    ok = ok and elapsed < 5.0
    record_criterion(1, ok, f"{detail}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_2_observable_closure(observables, record_criterion):
    ok, detail = summarize([c for c in observables if c.name.startswith("quadrature closure")])
    record_criterion(2, ok, detail + " at 1e-8 relative")
    assert ok


def test_criterion_3_algebra(record_criterion):
    ok, detail = summarize(suite.suite_algebra())
    record_criterion(3, ok, detail + " on 200 (gamma, omega) pairs")
    assert ok


def test_criterion_4_variational_identities(observables, record_criterion):
    ok, detail = summarize([c for c in observables if not c.name.startswith("quadrature closure")])
    record_criterion(4, ok, detail)
    assert ok


def test_criterion_5_orderings(record_criterion):
    ok, detail = summarize(suite.suite_orderings())
    record_criterion(5, ok, detail)
    assert ok


def test_criterion_6_bifurcation(record_criterion):
    ok, detail = summarize(suite.suite_bifurcation())
    record_criterion(6, ok, detail)
    assert ok


def test_criterion_7_limits(record_criterion):
    checks, elapsed = timed(suite.suite_limits)
    ok, detail = summarize(checks)
    ok = ok and elapsed < 30.0
    record_criterion(7, ok, f"{detail}, {elapsed:.2f}s (< 30s)")
    assert ok


def printed_action_asym_minus(gamma, lam, omega):
    s = math.sqrt(omega)
    g = math.sqrt(1.0 + gamma * gamma * omega)
    return ((4.0 / 3.0) * s**3 / lam + 2.0 * g**3 / (3.0 * lam * gamma**3)
            - omega / (lam * gamma) - 2.0 / (3.0 * lam * gamma**3))


def test_criterion_8_sign_regression(monkeypatch, record_criterion, capsys):
    monkeypatch.setattr(dprime, "_action_asym_minus", printed_action_asym_minus)
    identity = [c for c in suite.suite_observables()
                if c.name == "action identity S=E+(omega/2)rho asym-minus"]
    ordering = [c for c in suite.suite_orderings() if c.name.startswith("S(asym-) < S(antisym)")]
    exit_code = main(["verify", "--suite", "orderings"])
    capsys.readouterr()
    ok = (len(identity) == 1 and not identity[0].passed and len(ordering) == 1
          and not ordering[0].passed and exit_code == 1)
    record_criterion(8, ok, "printed asym-minus action sign detected by the identity check, "
                     f"the ordering check and `verify --suite orderings` (exit {exit_code})")
    assert ok


def test_verify_all_exits_zero(capsys):
    assert main(["verify", "--suite", "all"]) == 0
