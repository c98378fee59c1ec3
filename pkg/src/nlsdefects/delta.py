"""The stationary branch of the cubic NLS with an attractive Dirac delta at the origin.

Boundary convention: ``psi'(0+) - psi'(0-) = -alpha psi(0)`` (attractive
defect).  The branch is

    psi(x) = sqrt(2 omega/lam) sech(sqrt(omega) (|x| - xbar)),
    xbar   = -artanh(alpha / (2 sqrt(omega))) / sqrt(omega) < 0,

and exists for ``omega > alpha^2/4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ThresholdViolation
from .profiles import (Observables, PiecewiseSechState, ClosedFormTarget, cusp_target,
                       one_sided, sech_target)


@dataclass(frozen=True)
class DeltaModel:
    alpha: float
    lam: float = 1.0

    def __post_init__(self):
        if not (self.alpha > 0 and self.lam > 0):
            raise ValueError("alpha and lam must be positive")

    @property
    def threshold(self) -> float:
        """Existence threshold ``alpha^2/4`` for the frequency."""
        return self.alpha**2 / 4.0

    def defect_energy(self, profile) -> float:
        v = one_sided(profile)["value_plus"]
        return -0.5 * self.alpha * v * v

    def boundary_residuals(self, profile) -> tuple[float, float]:
        """(continuity defect, derivative-jump defect) at the origin."""
        b = one_sided(profile)
        cont = abs(b["value_plus"] - b["value_minus"])
        jump = abs(b["deriv_plus"] - b["deriv_minus"] + self.alpha * b["value_plus"])
        return cont, jump


def _require(model: DeltaModel, omega: float) -> None:
    if not omega > model.threshold:
        raise ThresholdViolation(
            f"delta branch needs omega > alpha^2/4 = {model.threshold:g}, got omega = {omega:g}")


def xbar(model: DeltaModel, omega: float) -> float:
    _require(model, omega)
    s = math.sqrt(omega)
    return -math.atanh(model.alpha / (2.0 * s)) / s


def delta_state(model: DeltaModel, omega: float) -> PiecewiseSechState:
    x0 = xbar(model, omega)
    # |x| fold: right piece peaks at xbar, left piece at -xbar
    return PiecewiseSechState.from_peaks(omega, model.lam, -x0, x0)


def delta_observables(model: DeltaModel, omega: float) -> Observables:
    """Mass, energy and action of the branch.

    With ``s = sqrt(omega)`` and ``a = alpha/2`` these are the textbook forms
    ``rho = 4s/lam - 2 alpha/lam``, ``E = -(2/3) s^3/lam + alpha^3/(12 lam)``,
    ``S = (4/3) s^3/lam - alpha omega/lam + alpha^3/(12 lam)``, evaluated as
    products so that they stay accurate next to the threshold ``s = a``.
    """
    _require(model, omega)
    s, a, lam = math.sqrt(omega), model.alpha / 2.0, model.lam
    mass = 4.0 * (s - a) / lam
    energy = -(2.0 / 3.0) * (s - a) * (s * s + a * s + a * a) / lam
    action = (2.0 / 3.0) * (s - a) ** 2 * (2.0 * s + a) / lam
    return Observables(omega, mass, energy, action)


def omega_from_mass(model: DeltaModel, rho: float) -> float:
    if not rho > 0:
        raise ThresholdViolation(f"mass must be positive, got {rho:g}")
    s = model.lam * rho / 4.0 + model.alpha / 2.0
    return s * s


def delta_state_by_mass(model: DeltaModel, rho: float) -> PiecewiseSechState:
    return delta_state(model, omega_from_mass(model, rho))


def delta_limit_target(model: DeltaModel, rho: float, which: str) -> ClosedFormTarget:
    """Limit profile at fixed mass ``rho``.

    ``linear`` (lam -> 0): the cusp ``sqrt(rho alpha/2) exp(-(alpha/2)|x|)``.
    ``no_defect`` (alpha -> 0): the soliton ``phi(sqrt(lam) rho/(2 sqrt 2), lam rho/4, 0)``.
    Both limits hold in H^1(R).
    """
    if not rho > 0:
        raise ValueError("rho must be positive")
    if which == "linear":
        return cusp_target(math.sqrt(rho * model.alpha / 2.0), model.alpha / 2.0,
                           "linear eigenstate of the delta well")
    if which == "no_defect":
        lam = model.lam
        return sech_target(math.sqrt(lam) * rho / (2.0 * math.sqrt(2.0)), lam * rho / 4.0, 0.0,
                           "free soliton")
    raise ValueError(f"unknown limit {which!r}; expected 'linear' or 'no_defect'")
