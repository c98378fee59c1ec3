import math

import numpy as np
import pytest
from hypothesis import example, given
from hypothesis import strategies as st

from nlsdefects.profiles import (H1_BROKEN, H1_GLOBAL, PAIRING, ExpPiece, PiecewiseSechState,
                                 SechPiece, ZeroPiece, distance, eval_profile, one_sided,
                                 sech_target, sup_window)
from nlsdefects.errors import QuadratureError
from nlsdefects.profiles import integrate_interval

omegas = st.floats(0.2, 20.0)
peaks = st.floats(-3.0, 3.0)


def test_sech_value_matches_mpmath():
    piece = SechPiece(1, 2.0, 1.0, 0.0)
    assert piece.value(3.0) == pytest.approx(0.19865585483886641566, rel=1e-15)


def test_peak_in_length_units():
    piece = SechPiece(1, 1.0, 2.0, 3.0)
    assert piece.peak == 1.5
    assert piece.value(1.5) == 1.0


def test_derivatives_match_finite_differences():
    piece = SechPiece(-1, 1.7, 1.3, 0.4)
    h = 1e-5
    for x in (-2.0, 0.1, 1.5):
        fd1 = (piece.value(x + h) - piece.value(x - h)) / (2 * h)
        fd2 = (piece.value(x + h) - 2 * piece.value(x) + piece.value(x - h)) / h**2
        assert piece.derivative(x, 1) == pytest.approx(fd1, rel=1e-8)
        assert piece.derivative(x, 2) == pytest.approx(fd2, rel=1e-5)


def test_no_overflow_far_out():
    piece = SechPiece(1, 1.0, 1.0)
    with np.errstate(all="raise"):
        assert piece.value(1e4) == 0.0


@pytest.mark.parametrize("bad", [dict(sign=0), dict(amplitude=-1.0), dict(width=0.0),
                                 dict(center=math.inf)])
def test_sech_piece_validation(bad):
    kwargs = dict(sign=1, amplitude=1.0, width=1.0, center=0.0) | bad
    with pytest.raises(ValueError):
        SechPiece(**kwargs)


def test_state_invariant_enforced():
    with pytest.raises(ValueError):
        PiecewiseSechState(SechPiece(1, 1.0, 1.0), SechPiece(1, 1.0, 1.0), omega=1.0, lam=1.0)


def test_origin_owned_by_right_piece():
    st_ = PiecewiseSechState.from_peaks(4.0, 1.0, 0.5, -0.5, left_sign=-1)
    assert eval_profile(st_, 0.0) == st_.right.value(0.0)
    b = one_sided(st_)
    assert b["value_minus"] == -b["value_plus"]


@given(omegas, peaks, peaks)
def test_mirror_is_reflection(omega, p1, p2):
    st_ = PiecewiseSechState.from_peaks(omega, 1.0, p1, p2, right_sign=-1)
    m = st_.mirrored(negate=True)
    x = np.linspace(0.1, 5.0, 9)
    assert np.allclose(eval_profile(m, x), -eval_profile(st_, -x), rtol=1e-13, atol=0)
    assert np.allclose(eval_profile(m, -x), -eval_profile(st_, x), rtol=1e-13, atol=0)


def trapezoid_h1(f, g, half_width=40.0, n=400001):
    total = 0.0
    for side in (np.linspace(-half_width, -1e-12, n), np.linspace(1e-12, half_width, n)):
        fp, gp = (f.left, g.left) if side[0] < 0 else (f.right, g.right)
        d0 = fp.value(side) - gp.value(side)
        d1 = fp.derivative(side) - gp.derivative(side)
        total += np.trapezoid(d0**2 + d1**2, side)
    return math.sqrt(total)


def test_h1_distance_against_trapezoid():
    f = PiecewiseSechState.from_peaks(3.0, 1.0, 0.4, 1.1)
    g = sech_target(math.sqrt(2.0), 1.2, 0.3, "probe", left_sign=-1)
    assert distance(f, g, H1_BROKEN) == pytest.approx(trapezoid_h1(f, g), rel=1e-8)


def test_h1_global_rejects_jumps():
    f = PiecewiseSechState.from_peaks(3.0, 1.0, 0.4, 1.1)
    with pytest.raises(ValueError):
        distance(f, f, H1_GLOBAL)


@example(1.0, 0.0, 1.0, -2.2250738585072014e-308, 9.0, 0.0)
@given(omegas, peaks, omegas, peaks, omegas, peaks)
def test_distance_triangle_inequality(w1, c1, w2, c2, w3, c3):
    a, b, c = (PiecewiseSechState.from_peaks(w, 1.0, p, -p) for w, p in ((w1, c1), (w2, c2), (w3, c3)))
    for metric in (H1_BROKEN, sup_window(5.0)):
        assert distance(a, c, metric) <= distance(a, b, metric) + distance(b, c, metric) + 1e-10
        assert distance(a, a, metric) == 0.0


def test_pairing_sees_a_displaced_bump():
    f = sech_target(1.0, 1.0, 0.0, "a")
    g = sech_target(1.0, 1.0, 0.5, "b")
    assert distance(f, g, PAIRING) > 1e-2
    assert distance(f, f, PAIRING) == 0.0


def test_exp_and_zero_pieces():
    e = ExpPiece(2.0, -0.5)
    assert e.value(2.0) == pytest.approx(2.0 * math.exp(-1.0))
    assert e.mirrored().value(-2.0) == e.value(2.0)
    assert ZeroPiece().value(np.ones(3)).tolist() == [0.0, 0.0, 0.0]


def test_quadrature_reports_failure():
    with pytest.raises(QuadratureError):
        integrate_interval(lambda x: 1.0 / abs(x - 0.3) if x != 0.3 else 0.0, 0.0, 1.0)
