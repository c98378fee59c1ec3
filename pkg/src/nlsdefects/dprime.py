"""Stationary states of the cubic NLS with an attractive delta-prime interaction.

Matching conditions at the origin (strength ``gamma > 0``):

    psi'(0+) = psi'(0-),   psi(0+) - psi(0-) = -gamma psi'(0+).

Four families exist, all built from the same sech profile:

============  ====================================  =======================
family        shape                                 exists for
============  ====================================  =======================
sym           free soliton centred at 0             omega > 0
asym-plus     positive, peaks x1 < x2 (T+ roots)    omega > 0
antisym       odd, peaks at +xbar (left), -xbar     omega > 4/gamma^2
asym-minus    sign change, T- asymmetric roots      omega > 8/gamma^2
============  ====================================  =======================

The asymmetric families come in two branches; branch ``-`` is the mirror
image of branch ``+`` (negated for asym-minus so the right piece stays
negative).  Closed forms are written in terms of ``u = gamma^2 omega``,
``g = sqrt(1 + u)`` and are arranged to avoid cancellation near thresholds.

The action of asym-minus is ``E + (omega/2) rho`` evaluated in closed form:

    S = (4/3) omega^(3/2)/lam - 2 g^3/(3 lam gamma^3) - omega/(lam gamma) - 2/(3 lam gamma^3).

The variant with ``+ 2 g^3/(3 lam gamma^3)`` (identical to
the asym-plus expression) violates both ``S = E + (omega/2) rho`` and the
action ordering below the antisymmetric state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .algebra import solve_t_minus, solve_t_plus
from .errors import ThresholdViolation, UndefinedLimit
from .profiles import (ClosedFormTarget, Observables, PiecewiseSechState, cusp_target,
                       one_sided, sech_target, zero_target)

SQRT2 = math.sqrt(2.0)
# T- asymmetric roots at u = 8 sit at t = 1/sqrt(2); artanh(1/sqrt 2) = log(1 + sqrt 2)
LOG_1P_SQRT2 = math.log(1.0 + SQRT2)


class Family(enum.IntEnum):
    SYM = 0
    ASYM_PLUS = 1
    ANTISYM = 2
    ASYM_MINUS = 3

    @property
    def slug(self) -> str:
        return self.name.lower().replace("_", "-")

    @property
    def asymmetric(self) -> bool:
        return self in (Family.ASYM_PLUS, Family.ASYM_MINUS)

    @classmethod
    def from_slug(cls, slug: str) -> "Family":
        for fam in cls:
            if fam.slug == slug:
                return fam
        raise ValueError(f"unknown family {slug!r}")


@dataclass(frozen=True, order=True)
class FamilyTag:
    """A family plus, for asymmetric families, the branch (+1 or -1).

    ``branch=None`` on an asymmetric family stands for both branches, which
    share every observable.
    """

    family: Family
    branch: int | None = None

    def __post_init__(self):
        if self.branch is not None:
            if not self.family.asymmetric:
                raise ValueError(f"{self.family.slug} has no branches")
            if self.branch not in (1, -1):
                raise ValueError("branch must be +1 or -1")

    def __str__(self):
        if self.branch is None:
            return self.family.slug
        return f"{self.family.slug}{'+' if self.branch > 0 else '-'}"

    @classmethod
    def parse(cls, text: str) -> "FamilyTag":
        if text.endswith(("+", "-")) and text[:-1] in {f.slug for f in Family}:
            return cls(Family.from_slug(text[:-1]), 1 if text[-1] == "+" else -1)
        return cls(Family.from_slug(text))


SYM = FamilyTag(Family.SYM)
ANTISYM = FamilyTag(Family.ANTISYM)
ASYM_PLUS = FamilyTag(Family.ASYM_PLUS)
ASYM_MINUS = FamilyTag(Family.ASYM_MINUS)


@dataclass(frozen=True)
class DeltaPrimeModel:
    gamma: float
    lam: float = 1.0

    def __post_init__(self):
        if not (self.gamma > 0 and self.lam > 0):
            raise ValueError("gamma and lam must be positive")

    def defect_energy(self, profile) -> float:
        b = one_sided(profile)
        jump = b["value_plus"] - b["value_minus"]
        return -jump * jump / (2.0 * self.gamma)

    def boundary_residuals(self, profile) -> tuple[float, float]:
        """(jump-condition defect, derivative-continuity defect) at the origin."""
        b = one_sided(profile)
        jump = abs(b["value_plus"] - b["value_minus"] + self.gamma * b["deriv_plus"])
        cont = abs(b["deriv_plus"] - b["deriv_minus"])
        return jump, cont


# -- existence --------------------------------------------------------------------------

def omega_threshold(family: Family, gamma: float) -> float:
    """Infimum of the frequencies at which ``family`` exists (strict inequality)."""
    return {Family.SYM: 0.0, Family.ASYM_PLUS: 0.0,
            Family.ANTISYM: 4.0 / gamma**2, Family.ASYM_MINUS: 8.0 / gamma**2}[Family(family)]


def exists(family: Family, gamma: float, omega: float) -> bool:
    u = gamma * gamma * omega
    return omega > 0 and u > {Family.SYM: 0.0, Family.ASYM_PLUS: 0.0,
                               Family.ANTISYM: 4.0, Family.ASYM_MINUS: 8.0}[Family(family)]


def mass_threshold(gamma: float, lam: float) -> float:
    """Minimal mass ``8 (sqrt 2 - 1)/(gamma lam)`` of the asym-minus family."""
    return 8.0 * (SQRT2 - 1.0) / (gamma * lam)


def _family(tag) -> Family:
    return tag.family if isinstance(tag, FamilyTag) else Family(tag)


def _require(family: Family, gamma: float, omega: float) -> None:
    if not (gamma > 0 and omega > 0):
        raise ValueError("gamma and omega must be positive")
    if not exists(family, gamma, omega):
        raise ThresholdViolation(
            f"{family.slug} needs omega > {omega_threshold(family, gamma):g}, got {omega:g}")


# -- states -----------------------------------------------------------------------------

def _artanh_pair(t_self: float, t_other: float) -> float:
    # artanh(t) = log((1+t)/sqrt(1-t^2)) and sqrt(1 - t_self^2) = t_other on the circle branch
    return math.log((1.0 + t_self) / t_other)


def state(tag: FamilyTag, gamma: float, lam: float, omega: float) -> PiecewiseSechState:
    """The stationary state of ``tag`` at frequency ``omega``."""
    family = _family(tag)
    _require(family, gamma, omega)
    branch = tag.branch if isinstance(tag, FamilyTag) and tag.branch is not None else 1
    s = math.sqrt(omega)
    if family is Family.SYM:
        return PiecewiseSechState.from_peaks(omega, lam, 0.0, 0.0)
    if family is Family.ANTISYM:
        u = gamma * gamma * omega
        gs = gamma * s
        x0 = 0.5 * math.log((gs + 2.0) ** 2 / (u - 4.0)) / s
        return PiecewiseSechState.from_peaks(omega, lam, x0, -x0, left_sign=-1, right_sign=1)
    if family is Family.ASYM_PLUS:
        t = solve_t_plus(gamma, omega)
        plus = PiecewiseSechState.from_peaks(omega, lam, _artanh_pair(t.t1, t.t2) / s,
                                             _artanh_pair(t.t2, t.t1) / s)
        return plus if branch > 0 else plus.mirrored()
    sol = solve_t_minus(gamma, omega)
    plus = PiecewiseSechState.from_peaks(omega, lam, _artanh_pair(sol.t1, sol.t2) / s,
                                         -_artanh_pair(sol.t2, sol.t1) / s,
                                         left_sign=1, right_sign=-1)
    return plus if branch > 0 else plus.mirrored(negate=True)


def existing_tags(gamma: float, omega: float) -> list[FamilyTag]:
    tags = []
    for family in Family:
        if exists(family, gamma, omega):
            if family.asymmetric:
                tags += [FamilyTag(family, 1), FamilyTag(family, -1)]
            else:
                tags.append(FamilyTag(family))
    return tags


def enumerate_states(gamma: float, lam: float, omega: float) -> list[tuple[FamilyTag, PiecewiseSechState]]:
    """Every stationary state at ``omega``: 3, 4 or 6 entries depending on the thresholds."""
    if not (gamma > 0 and lam > 0 and omega > 0):
        raise ValueError("gamma, lam and omega must be positive")
    return [(tag, state(tag, gamma, lam, omega)) for tag in existing_tags(gamma, omega)]


# -- closed-form observables ------------------------------------------------------------

def mass_closed_form(family: Family, gamma: float, lam: float, omega: float) -> float:
    s = math.sqrt(omega)
    u = gamma * gamma * omega
    g = math.sqrt(1.0 + u)
    family = Family(family)
    if family is Family.SYM:
        return 4.0 * s / lam
    if family is Family.ASYM_PLUS:
        return 4.0 * s / lam + 2.0 * (u / (g + 1.0)) / (lam * gamma)
    if family is Family.ANTISYM:
        return 4.0 * (gamma * s - 2.0) / (lam * gamma)
    return 4.0 * s / lam - 2.0 * (g + 1.0) / (lam * gamma)


def energy_closed_form(family: Family, gamma: float, lam: float, omega: float) -> float:
    s = math.sqrt(omega)
    u = gamma * gamma * omega
    g = math.sqrt(1.0 + u)
    c = 3.0 * lam * gamma**3
    family = Family(family)
    sym = -(2.0 / 3.0) * s**3 / lam
    if family is Family.SYM:
        return sym
    if family is Family.ASYM_PLUS:
        # ((2 - u) g - 2) = -u (u + g - 1)/(g + 1)
        return sym - u * (u + u / (g + 1.0)) / ((g + 1.0) * c)
    if family is Family.ANTISYM:
        gs = gamma * s
        return 2.0 * (2.0 - gs) * (4.0 + 2.0 * gs + gs * gs) / c
    return sym + ((u - 2.0) * g - 2.0) / c


def _action_asym_minus(gamma: float, lam: float, omega: float) -> float:
    s = math.sqrt(omega)
    g = math.sqrt(1.0 + gamma * gamma * omega)
    return ((4.0 / 3.0) * s**3 / lam - 2.0 * g**3 / (3.0 * lam * gamma**3)
            - omega / (lam * gamma) - 2.0 / (3.0 * lam * gamma**3))


def gap_plus_closed_form(gamma: float, lam: float, omega: float) -> float:
    """S(asym-plus) - S(sym) = u^2 (1 + 2g) / (3 (1 + g)^2 lam gamma^3)."""
    u = gamma * gamma * omega
    g = math.sqrt(1.0 + u)
    return u * u * (1.0 + 2.0 * g) / (3.0 * (1.0 + g) ** 2 * lam * gamma**3)


def gap_minus_closed_form(gamma: float, lam: float, omega: float) -> float:
    """S(antisym) - S(asym-minus) = (g - 3)^2 (2g + 3) / (3 lam gamma^3)."""
    u = gamma * gamma * omega
    g = math.sqrt(1.0 + u)
    h = (u - 8.0) / (g + 3.0)
    return h * h * (2.0 * g + 3.0) / (3.0 * lam * gamma**3)


def action_closed_form(family: Family, gamma: float, lam: float, omega: float) -> float:
    s = math.sqrt(omega)
    family = Family(family)
    sym = (4.0 / 3.0) * s**3 / lam
    if family is Family.SYM:
        return sym
    if family is Family.ASYM_PLUS:
        return sym + gap_plus_closed_form(gamma, lam, omega)
    if family is Family.ANTISYM:
        gs = gamma * s
        return 4.0 * (gs - 2.0) ** 2 * (gs + 1.0) / (3.0 * lam * gamma**3)
    return _action_asym_minus(gamma, lam, omega)


def closed_form(family: Family, gamma: float, lam: float, omega: float) -> Observables:
    """Closed-form observables without an existence check (used at thresholds)."""
    return Observables(omega, mass_closed_form(family, gamma, lam, omega),
                       energy_closed_form(family, gamma, lam, omega),
                       action_closed_form(family, gamma, lam, omega))


def dprime_observables(tag, gamma: float, lam: float, omega: float) -> Observables:
    family = _family(tag)
    _require(family, gamma, omega)
    return closed_form(family, gamma, lam, omega)


# -- mass parametrisation ---------------------------------------------------------------

def _scaled_root(family: Family, r: float) -> float:
    """sqrt(omega) at unit gamma and lam as a function of the scaled mass ``r``."""
    if family is Family.SYM:
        return r / 4.0
    if family is Family.ANTISYM:
        return r / 4.0 + 2.0
    root = math.sqrt(r * r + 4.0 * r + 16.0)
    if family is Family.ASYM_PLUS:
        # (2r + 4 - root)/6 with the difference of squares taken out
        return r * (r + 4.0) / (2.0 * (2.0 * r + 4.0 + root))
    return (2.0 * r + 4.0 + root) / 6.0


def omega_from_mass(tag, gamma: float, lam: float, rho: float, check: bool = True) -> float:
    """Frequency of the ``tag`` state with mass ``rho``.

    Solved at ``gamma = lam = 1`` for ``gamma lam rho`` and mapped back with
    ``omega = omega_unit / gamma^2``.
    """
    family = _family(tag)
    if not rho > 0:
        raise ThresholdViolation(f"mass must be positive, got {rho:g}")
    if check and family is Family.ASYM_MINUS and not rho > mass_threshold(gamma, lam):
        raise ThresholdViolation(
            f"asym-minus needs rho > 8(sqrt2-1)/(gamma lam) = {mass_threshold(gamma, lam):.10g}")
    root = _scaled_root(family, gamma * lam * rho)
    return root * root / (gamma * gamma)


def state_by_mass(tag: FamilyTag, gamma: float, lam: float, rho: float) -> PiecewiseSechState:
    return state(tag, gamma, lam, omega_from_mass(tag, gamma, lam, rho))


def energy_at_mass(tag, gamma: float, lam: float, rho: float, check: bool = True) -> float:
    family = _family(tag)
    return energy_closed_form(family, gamma, lam, omega_from_mass(family, gamma, lam, rho, check))


def fixed_mass_energy_ranking(gamma: float, lam: float, rho: float) -> list[tuple[FamilyTag, float]]:
    """Families existing at mass ``rho``, sorted by increasing energy."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    tags = [SYM, ASYM_PLUS, ANTISYM]
    if rho > mass_threshold(gamma, lam):
        tags.append(ASYM_MINUS)
    ranked = [(tag, energy_at_mass(tag, gamma, lam, rho)) for tag in tags]
    return sorted(ranked, key=lambda item: item[1])


# -- bifurcation gaps -------------------------------------------------------------------

def action_gaps(gamma: float, lam: float, omega: float) -> tuple[float, float | None]:
    """(S(asym-plus) - S(sym), S(antisym) - S(asym-minus)); the second is None below 8/gamma^2."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    plus = gap_plus_closed_form(gamma, lam, omega)
    minus = gap_minus_closed_form(gamma, lam, omega) if exists(Family.ASYM_MINUS, gamma, omega) else None
    return plus, minus


def gap_plus_curvature(gamma: float, lam: float, omega: float) -> float:
    """Second omega-derivative of the asym-plus action gap: (gamma/(2 lam)) (1 + gamma^2 omega)^(-1/2)."""
    return gamma / (2.0 * lam) / math.sqrt(1.0 + gamma * gamma * omega)


# -- limit profiles ---------------------------------------------------------------------

LIMITS = ("linear", "gamma_to_zero", "gamma_to_infinity")


def dprime_limit_target(tag: FamilyTag, gamma: float, lam: float, rho: float,
                        which: str) -> ClosedFormTarget:
    """Limit profile of the fixed-mass state ``tag`` as lam -> 0, gamma -> 0 or gamma -> inf.

    Odd limits carry the sign of the left piece, since the broken energy
    space distinguishes ``phi`` from ``sign(x) phi``.  Branch ``-`` targets
    are obtained from branch ``+`` by the same reflection as the states.
    """
    family = _family(tag)
    branch = tag.branch if isinstance(tag, FamilyTag) and tag.branch is not None else 1
    if not rho > 0:
        raise ValueError("rho must be positive")
    if which not in LIMITS:
        raise ValueError(f"unknown limit {which!r}; expected one of {LIMITS}")

    if which == "linear":
        if family is Family.SYM:
            return zero_target("zero", "weak")
        if family is Family.ASYM_PLUS:
            return zero_target("zero", "weak", escaping="both centers run to infinity")
        if family is Family.ANTISYM:
            return cusp_target(math.sqrt(2.0 * rho / gamma), 2.0 / gamma,
                               "odd linear ground state of the delta-prime interaction", left_sign=-1)
        raise UndefinedLimit("asym-minus does not exist for small lam at fixed mass "
                             "(its mass threshold 8(sqrt2-1)/(gamma lam) diverges)")

    if which == "gamma_to_zero":
        if family is Family.ASYM_PLUS:
            # both peaks tend to artanh(1/sqrt 2)/sqrt(omega) with sqrt(omega) -> lam rho/4
            target = sech_target(math.sqrt(lam / 2.0) * rho / 2.0, lam * rho / 4.0, LOG_1P_SQRT2,
                                 "shifted free soliton")
            return target if branch > 0 else target.mirrored()
        if family is Family.ANTISYM:
            return zero_target("zero", "distributional",
                               note="mass concentrates at the origin in an odd layer of width gamma/4")
        if family is Family.SYM:
            raise UndefinedLimit("sym does not depend on gamma")
        raise UndefinedLimit("asym-minus ceases to exist for gamma <= 8(sqrt2-1)/(lam rho)")

    if family is Family.ASYM_PLUS:
        target = sech_target(math.sqrt(lam / 2.0) * rho / 3.0, lam * rho / 6.0, 0.0,
                             "half soliton on the left half-line", support="left", notion="weak",
                             escaping="right peak runs to +infinity carrying mass 2 rho/3")
        return target if branch > 0 else target.mirrored()
    if family is Family.ANTISYM:
        return sech_target(math.sqrt(lam / 2.0) * rho / 2.0, lam * rho / 4.0, 0.0,
                           "odd free soliton", left_sign=-1)
    if family is Family.ASYM_MINUS:
        target = sech_target(math.sqrt(lam / 2.0) * rho, lam * rho / 2.0, 0.0,
                             "half soliton on the right half-line", support="right", right_sign=-1)
        return target if branch > 0 else target.mirrored(negate=True)
    raise UndefinedLimit("sym does not depend on gamma")
