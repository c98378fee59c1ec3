import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlsdefects.delta import (DeltaModel, delta_limit_target, delta_observables, delta_state,
                              delta_state_by_mass, omega_from_mass, xbar)
from nlsdefects.errors import ThresholdViolation
from nlsdefects.oracles import quadrature_observables

# mpmath quadrature of the raw profile at alpha = lam = omega = 1
PSI0 = 1.224744871391589
OBS_111 = (2.0, -0.58333333333333333, 0.41666666666666667)


def test_value_at_origin():
    st_ = delta_state(DeltaModel(1.0, 1.0), 1.0)
    assert st_.right.value(0.0) == pytest.approx(PSI0, rel=1e-15)
    assert st_.left.value(0.0) == st_.right.value(0.0)


def test_observables_frozen():
    obs = delta_observables(DeltaModel(1.0, 1.0), 1.0)
    assert (obs.mass, obs.energy, obs.action) == pytest.approx(OBS_111, rel=1e-14)


def test_threshold():
    model = DeltaModel(2.0, 1.0)
    with pytest.raises(ThresholdViolation):
        delta_state(model, 0.5)
    with pytest.raises(ThresholdViolation):
        delta_state(model, 1.0)


def test_xbar_negative():
    assert xbar(DeltaModel(1.0), 4.0) == pytest.approx(-math.atanh(0.25) / 2)


@given(st.floats(0.1, 3.0), st.floats(0.2, 3.0), st.floats(1.01, 30.0))
def test_boundary_conditions(alpha, lam, factor):
    model = DeltaModel(alpha, lam)
    cont, jump = model.boundary_residuals(delta_state(model, factor * model.threshold))
    assert cont == 0.0
    assert jump < 1e-12 * max(1.0, alpha * factor)


@given(st.floats(0.1, 3.0), st.floats(0.2, 3.0), st.floats(0.05, 20.0))
def test_mass_parametrisation_round_trip(alpha, lam, rho):
    model = DeltaModel(alpha, lam)
    assert delta_observables(model, omega_from_mass(model, rho)).mass == pytest.approx(rho, rel=1e-12)


@given(st.floats(0.1, 3.0), st.floats(1.001, 50.0), st.floats(1.001, 2.0))
def test_mass_increases_with_omega(alpha, factor, step):
    model = DeltaModel(alpha)
    w = factor * model.threshold
    assert delta_observables(model, w * step).mass > delta_observables(model, w).mass


def test_quadrature_closure_near_threshold():
    model = DeltaModel(1.0, 1.0)
    omega = model.threshold * (1 + 1e-6)
    closed = delta_observables(model, omega)
    quad = quadrature_observables(delta_state(model, omega), model)
    assert closed.mass == pytest.approx(quad.mass, rel=1e-7)


def test_limit_targets():
    model = DeltaModel(1.0, 0.5)
    lin = delta_limit_target(model, 2.0, "linear")
    assert lin.right.value(0.0) == pytest.approx(1.0)
    free = delta_limit_target(model, 2.0, "no_defect")
    assert free.right.amplitude == pytest.approx(math.sqrt(0.5) / math.sqrt(2))
    with pytest.raises(ValueError):
        delta_limit_target(model, 2.0, "sideways")


def test_state_by_mass():
    st_ = delta_state_by_mass(DeltaModel(1.0), 2.0)
    assert st_.omega == pytest.approx(1.0)
