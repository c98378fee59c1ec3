import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from nlsdefects import dprime
from nlsdefects.dprime import (ANTISYM, ASYM_MINUS, ASYM_PLUS, SYM, DeltaPrimeModel, Family,
                               FamilyTag)
from nlsdefects.errors import ThresholdViolation, UndefinedLimit

# Peaks from mpmath findroot on the raw matching conditions; observables from
# mpmath quadrature of the resulting profiles (gamma = lam = 1).
FROZEN = {
    "asym-plus+": (3.0, (0.21548997544087895, 0.9758359717418253),
                   (8.9282032302755092, -4.7974349484710879, 8.5948698969421758)),
    "antisym": (9.0, (0.26823965207235006, -0.26823965207235006),
                (4.0, -12.666666666666667, 5.3333333333333333)),
    "asym-minus+": (24.0, (0.41387995760625815, -0.054060697445526904),
                    (7.5959179422654248, -42.383671769061699, 48.767343538123398)),
}
E_STAR = -9.7516113319796805
RHO_STAR = 3.3137084989847604

gammas = st.floats(0.2, 5.0)
lams = st.floats(0.2, 5.0)


@pytest.mark.parametrize("tag", FROZEN)
def test_frozen_states(tag):
    omega, peaks, obs = FROZEN[tag]
    t = FamilyTag.parse(tag)
    assert dprime.state(t, 1.0, 1.0, omega).peaks == pytest.approx(peaks, rel=1e-13, abs=1e-15)
    o = dprime.dprime_observables(t, 1.0, 1.0, omega)
    assert (o.mass, o.energy, o.action) == pytest.approx(obs, rel=1e-13)


def test_sym_observables():
    o = dprime.dprime_observables(SYM, 1.0, 1.0, 9.0)
    assert (o.mass, o.energy, o.action) == pytest.approx((12.0, -18.0, 36.0), rel=1e-15)


@pytest.mark.parametrize("omega, count", [(3.0, 3), (4.0, 3), (6.0, 4), (8.0, 4), (9.0, 6)])
def test_state_counts(omega, count):
    assert len(dprime.enumerate_states(1.0, 1.0, omega)) == count


def test_tags_round_trip():
    for tag in dprime.existing_tags(1.0, 10.0):
        assert FamilyTag.parse(str(tag)) == tag
    with pytest.raises(ValueError):
        FamilyTag(Family.SYM, 1)
    with pytest.raises(ValueError):
        FamilyTag.parse("tilted")


def test_threshold_violations():
    with pytest.raises(ThresholdViolation):
        dprime.state(ANTISYM, 1.0, 1.0, 4.0)
    with pytest.raises(ThresholdViolation):
        dprime.state(FamilyTag(Family.ASYM_MINUS, 1), 1.0, 1.0, 8.0)
    with pytest.raises(ThresholdViolation):
        dprime.omega_from_mass(ASYM_MINUS, 1.0, 1.0, 3.0)


@given(gammas, lams, st.floats(0.05, 60.0), st.sampled_from(list(Family)), st.sampled_from([1, -1]))
def test_matching_conditions(gamma, lam, omega, family, branch):
    assume(dprime.exists(family, gamma, omega) and gamma * gamma * omega < 400)
    tag = FamilyTag(family, branch if family.asymmetric else None)
    st_ = dprime.state(tag, gamma, lam, omega)
    jump, cont = DeltaPrimeModel(gamma, lam).boundary_residuals(st_)
    scale = math.sqrt(2 * omega / lam) * max(1.0, math.sqrt(omega), gamma * omega)
    assert jump < 1e-12 * scale and cont < 1e-12 * scale


@given(gammas, lams, st.floats(0.1, 30.0))
def test_branches_are_mirror_images(gamma, lam, omega):
    assume(dprime.exists(Family.ASYM_MINUS, gamma, omega))
    p = dprime.state(FamilyTag(Family.ASYM_PLUS, 1), gamma, lam, omega)
    m = dprime.state(FamilyTag(Family.ASYM_PLUS, -1), gamma, lam, omega)
    assert m.peaks == (-p.peaks[1], -p.peaks[0])
    q = dprime.state(FamilyTag(Family.ASYM_MINUS, -1), gamma, lam, omega)
    assert (q.left.sign, q.right.sign) == (1, -1)


@given(gammas, lams, st.floats(0.05, 20.0), st.sampled_from(list(Family)))
def test_mass_round_trip(gamma, lam, rho, family):
    assume(family is not Family.ASYM_MINUS or rho > 1.001 * dprime.mass_threshold(gamma, lam))
    omega = dprime.omega_from_mass(family, gamma, lam, rho)
    assert dprime.mass_closed_form(family, gamma, lam, omega) == pytest.approx(rho, rel=1e-11)


@given(gammas, st.floats(0.1, 30.0), st.floats(1.001, 2.0), st.sampled_from(list(Family)))
def test_mass_increases_with_omega(gamma, omega, step, family):
    assume(dprime.exists(family, gamma, omega))
    assert (dprime.mass_closed_form(family, gamma, 1.0, omega * step)
            > dprime.mass_closed_form(family, gamma, 1.0, omega))


@given(gammas, lams, st.floats(0.05, 40.0), st.sampled_from(list(Family)))
def test_action_identity(gamma, lam, omega, family):
    assume(dprime.exists(family, gamma, omega))
    o = dprime.dprime_observables(family, gamma, lam, omega)
    assert o.action == pytest.approx(o.energy + 0.5 * omega * o.mass, rel=1e-11, abs=1e-13)


def test_fixed_mass_rankings():
    assert [t.family for t, _ in dprime.fixed_mass_energy_ranking(1.0, 1.0, 2.0)] == [
        Family.ANTISYM, Family.SYM, Family.ASYM_PLUS]
    assert [t.family for t, _ in dprime.fixed_mass_energy_ranking(1.0, 1.0, 8.0)] == [
        Family.ASYM_MINUS, Family.ANTISYM, Family.SYM, Family.ASYM_PLUS]


def test_mass_threshold_crossing():
    assert dprime.mass_threshold(1.0, 1.0) == pytest.approx(RHO_STAR, rel=1e-15)
    for tag in (ANTISYM, ASYM_MINUS):
        assert dprime.energy_at_mass(tag, 1.0, 1.0, RHO_STAR, check=False) == pytest.approx(E_STAR, rel=1e-14)


def test_action_gaps():
    plus, minus = dprime.action_gaps(1.0, 1.0, 3.0)
    assert plus == pytest.approx(5.0 / 3.0, rel=1e-14)
    assert minus is None
    assert dprime.action_gaps(1.0, 1.0, 24.0)[1] == pytest.approx(52.0 / 3.0, rel=1e-14)


@given(gammas, lams, st.floats(8.001, 60.0))
def test_gap_minus_matches_action_difference(gamma, lam, u):
    omega = u / gamma**2
    gap = dprime.action_gaps(gamma, lam, omega)[1]
    diff = (dprime.action_closed_form(Family.ANTISYM, gamma, lam, omega)
            - dprime.action_closed_form(Family.ASYM_MINUS, gamma, lam, omega))
    assert gap == pytest.approx(diff, rel=1e-8, abs=1e-12 * omega**1.5 / lam)


def test_gap_plus_curvature_general_coupling():
    gamma, lam, omega, h = 2.0, 0.5, 1.3, 1e-3
    f = lambda w: dprime.action_gaps(gamma, lam, w)[0]
    second = (f(omega + h) - 2 * f(omega) + f(omega - h)) / h**2
    assert second == pytest.approx(dprime.gap_plus_curvature(gamma, lam, omega), rel=1e-6)


def test_limit_targets():
    with pytest.raises(UndefinedLimit):
        dprime.dprime_limit_target(ASYM_MINUS, 1.0, 1.0, 4.0, "linear")
    with pytest.raises(UndefinedLimit):
        dprime.dprime_limit_target(SYM, 1.0, 1.0, 2.0, "gamma_to_zero")
    t = dprime.dprime_limit_target(FamilyTag(Family.ASYM_PLUS, -1), 1.0, 1.0, 2.0, "gamma_to_zero")
    assert t.left.peak < 0
    assert dprime.dprime_limit_target(ASYM_PLUS, 1.0, 1.0, 3.0, "gamma_to_infinity").notion == "weak"
