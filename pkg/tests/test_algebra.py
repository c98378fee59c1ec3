import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlsdefects.algebra import (minus_radicand, solve_t_minus, solve_t_plus, t_minus_residuals,
                                t_plus_residuals)

# 40-digit mpmath roots of the raw systems
T_PLUS_1_3 = (0.35682208977308993194, 0.93417235896271569645)
T_MINUS_1_24 = (0.96592582628906828675, 0.25881904510252076235)


def test_t_plus_frozen():
    sol = solve_t_plus(1.0, 3.0)
    assert sol.t1 == pytest.approx(T_PLUS_1_3[0], rel=1e-15)
    assert sol.t2 == pytest.approx(T_PLUS_1_3[1], rel=1e-15)


def test_t_minus_frozen():
    sol = solve_t_minus(1.0, 24.0)
    assert sol.kind == "full"
    assert (sol.t1, sol.t2) == pytest.approx(T_MINUS_1_24, rel=1e-14)
    assert sol.t_sym == pytest.approx(2 / math.sqrt(24.0), rel=1e-15)
    assert len(sol.roots()) == 3


@pytest.mark.parametrize("omega, kind", [(3.0, "none"), (4.0, "none"), (6.0, "symmetric"),
                                         (8.0, "symmetric"), (16.0, "full")])
def test_t_minus_classification(omega, kind):
    assert solve_t_minus(1.0, omega).kind == kind


def test_symmetric_only_root():
    sol = solve_t_minus(1.0, 6.0)
    assert sol.roots() == [(pytest.approx(math.sqrt(2 / 3)),) * 2]


def test_radicand_is_exactly_zero_at_threshold():
    assert minus_radicand(8.0) == 0.0
    assert minus_radicand(8.0 + 1e-9) > 0.0


@given(st.floats(0.05, 5.0), st.floats(1e-4, 100.0))
def test_t_plus_solves_the_system(gamma, omega):
    sol = solve_t_plus(gamma, omega)
    assert 0.0 < sol.t1 <= sol.t2 < 1.0
    assert max(map(abs, t_plus_residuals(sol.t1, sol.t2, gamma, omega))) < 1e-12 * max(1.0, gamma * math.sqrt(omega))


@given(st.floats(0.05, 5.0), st.floats(1e-2, 200.0))
def test_t_minus_roots_solve_the_system(gamma, omega):
    for r in solve_t_minus(gamma, omega).roots():
        assert all(0.0 < t <= 1.0 for t in r)
        res = t_minus_residuals(*r, gamma, omega)
        assert max(map(abs, res)) < 1e-11 * max(1.0, gamma * math.sqrt(omega))


@given(st.floats(1e-12, 1e-3))
def test_t_plus_small_u_has_no_cancellation(u):
    sol = solve_t_plus(1.0, u)
    # both roots tend to 1/sqrt(2); their difference is (g - 1)/sqrt(u) ~ sqrt(u)/2
    assert (sol.t2 - sol.t1) == pytest.approx(math.sqrt(u) / 2, rel=1e-3)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        solve_t_plus(0.0, 1.0)
    with pytest.raises(ValueError):
        solve_t_minus(1.0, -1.0)
