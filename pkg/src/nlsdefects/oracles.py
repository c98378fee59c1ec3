"""Independent numerical ground truth for the closed forms.

* observables by adaptive quadrature of the energy functionals,
* analytic ODE and matching-condition residuals on a grid,
* a brute-force scan-and-polish root finder for the T+/T- systems,
* fixed-mass limit studies measuring the distance to each limit profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import delta as delta_mod
from . import dprime
from .dprime import DeltaPrimeModel, Family, FamilyTag
from .delta import DeltaModel
from .errors import UndefinedLimit
from .profiles import (H1_BROKEN, H1_GLOBAL, PAIRING, DistanceKind, Observables,
                       PiecewiseSechState, distance, integrate_sides, sup_window)


# -- quadrature observables -------------------------------------------------------------

def norm_integrals(state: PiecewiseSechState) -> dict[str, float]:
    """Quadrature of ||psi||_2^2, ||psi'||_2^2 (half-lines) and ||psi||_4^4."""
    out = {}
    for name, fn in (("mass", lambda p: lambda x: float(p.value(x)) ** 2),
                     ("kinetic", lambda p: lambda x: float(p.derivative(x, 1)) ** 2),
                     ("quartic", lambda p: lambda x: float(p.value(x)) ** 4)):
        left, right = integrate_sides(fn(state.left), fn(state.right), state)
        out[name] = left + right
    return out


def quadrature_observables(state: PiecewiseSechState, model=None) -> Observables:
    """Mass, energy and action of ``state`` by quadrature.

    ``model`` supplies the point-interaction term of the energy
    (``-(alpha/2)|psi(0)|^2`` or ``-|psi(0+) - psi(0-)|^2/(2 gamma)``); ``None``
    means no defect.  The coupling is taken from the state.
    """
    return _observables_from(state, model, norm_integrals(state))


def _observables_from(state, model, ints) -> Observables:
    defect = model.defect_energy(state) if model is not None else 0.0
    energy = 0.5 * ints["kinetic"] + defect - 0.25 * state.lam * ints["quartic"]
    return Observables(state.omega, ints["mass"], energy, energy + 0.5 * state.omega * ints["mass"])


# -- residuals --------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    stationary_max: float
    continuity_or_jump: float
    derivative_condition: float
    nehari: float

    def worst_boundary(self) -> float:
        return max(self.continuity_or_jump, self.derivative_condition)


def default_grid(half_width: float = 15.0, n: int = 4001, exclusion: float = 1e-6) -> np.ndarray:
    x = np.linspace(-half_width, half_width, n)
    return x[np.abs(x) > exclusion]


def stationary_residual(state: PiecewiseSechState, omega: float, grid) -> np.ndarray:
    """``-psi'' - lam psi^3 + omega psi`` on ``grid`` (which must avoid 0)."""
    x = np.asarray(grid, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("residual grid must exclude x = 0")
    left = x < 0
    psi = np.where(left, state.left.value(x), state.right.value(x))
    d2 = np.where(left, state.left.derivative(x, 2), state.right.derivative(x, 2))
    return -d2 - state.lam * psi**3 + omega * psi


def nehari_residual(state: PiecewiseSechState, model) -> float:
    """``2 S_omega - (lam/2) ||psi||_4^4``, which vanishes on stationary states."""
    ints = norm_integrals(state)
    obs = _observables_from(state, model, ints)
    return 2.0 * obs.action - 0.5 * state.lam * ints["quartic"]


def residuals(state: PiecewiseSechState, model, omega: float | None = None, grid=None) -> ResidualReport:
    """Stationary-equation, matching-condition and Nehari residuals of ``state``.

    For a delta model ``continuity_or_jump`` is ``|psi(0+) - psi(0-)|`` and
    ``derivative_condition`` is ``|psi'(0+) - psi'(0-) + alpha psi(0)|``; for a
    delta-prime model they are ``|psi(0+) - psi(0-) + gamma psi'(0+)|`` and
    ``|psi'(0+) - psi'(0-)|``.
    """
    omega = state.omega if omega is None else omega
    grid = default_grid() if grid is None else grid
    stat = float(np.max(np.abs(stationary_residual(state, omega, grid))))
    first, second = model.boundary_residuals(state)
    return ResidualReport(stat, first, second, nehari_residual(state, model))


# -- brute-force T systems --------------------------------------------------------------

SCAN_POINTS = 400
NEWTON_TOL = 1e-13
NEWTON_MAX_ITER = 50
MERGE_TOL = 1e-9


def _t_system(kind: str, gamma: float, omega: float):
    k = gamma * math.sqrt(omega)
    sgn = -1.0 if kind == "plus" else 1.0

    def f(t1, t2):
        return (t1**2 - t1**4 - t2**2 + t2**4, 1.0 / t1 + sgn / t2 - k)

    def jac(t1, t2):
        return np.array([[2 * t1 - 4 * t1**3, -(2 * t2 - 4 * t2**3)],
                         [-1.0 / t1**2, -sgn / t2**2]])
    return f, jac


def _polish(f, jac, t0: np.ndarray) -> np.ndarray | None:
    t = t0.astype(float)
    r = np.array(f(*t))
    for _ in range(NEWTON_MAX_ITER):
        if np.max(np.abs(r)) < NEWTON_TOL:
            return t
        try:
            step = np.linalg.solve(jac(*t), -r)
        except np.linalg.LinAlgError:
            return None
        damping = 1.0
        for _ in range(30):
            trial = t + damping * step
            if np.all(trial > 0) and np.all(trial <= 1.0):
                rt = np.array(f(*trial))
                if np.max(np.abs(rt)) < np.max(np.abs(r)) or np.max(np.abs(rt)) < NEWTON_TOL:
                    break
            damping *= 0.5
        else:
            return None
        t, r = trial, rt
    return t if np.max(np.abs(r)) < NEWTON_TOL else None


def brute_force_t_systems(kind: str, gamma: float, omega: float,
                          n: int = SCAN_POINTS) -> list[tuple[float, float]]:
    """All roots of T+ (``kind="plus"``) or T- in ``(0, 1]^2`` by grid sign-scan plus Newton.

    A cell is a candidate when both residual surfaces change sign (or vanish)
    over its corners; candidates are polished by damped Newton with the
    analytic Jacobian and merged within 1e-9.
    """
    if kind not in ("plus", "minus"):
        raise ValueError("kind must be 'plus' or 'minus'")
    f, jac = _t_system(kind, gamma, omega)
    axis = np.linspace(1.0 / n, 1.0, n)
    T1, T2 = np.meshgrid(axis, axis, indexing="ij")
    roots: list[np.ndarray] = []
    candidates = None
    for surface in f(T1, T2):
        corners = np.stack([surface[:-1, :-1], surface[1:, :-1], surface[:-1, 1:], surface[1:, 1:]])
        flagged = (corners.min(axis=0) <= 0.0) & (corners.max(axis=0) >= 0.0)
        candidates = flagged if candidates is None else candidates & flagged
    for i, j in zip(*np.nonzero(candidates)):
        start = np.array([0.5 * (axis[i] + axis[i + 1]), 0.5 * (axis[j] + axis[j + 1])])
        root = _polish(f, jac, start)
        if root is None:
            continue
        if not any(np.max(np.abs(root - r)) < MERGE_TOL for r in roots):
            roots.append(root)
    return sorted((float(a), float(b)) for a, b in roots)


# -- limit studies ----------------------------------------------------------------------

LIMIT_NAMES = ("lambda_to_zero", "alpha_to_zero", "gamma_to_zero", "gamma_to_infinity")
WEAK_SUP_RADIUS = 5.0
WEAK_SUP_MAX = 1e-3
WEAK_ESCAPE_MIN = 10.0
DECAY_RATIO = 1e-2


@dataclass(frozen=True)
class LimitPoint:
    parameter: float
    distance: float
    escaping_center: float | None = None


@dataclass
class LimitStudy:
    family: str
    limit: str
    target: str
    notion: str
    metric: DistanceKind
    points: list[LimitPoint] = field(default_factory=list)
    verdict: str = "not_converged"

    def as_dict(self) -> dict:
        return {"family": self.family, "limit": self.limit, "target": self.target,
                "notion": self.notion, "metric": str(self.metric), "verdict": self.verdict,
                "points": [{"parameter": p.parameter, "distance": p.distance,
                            "escaping_center": p.escaping_center} for p in self.points]}


def dyadic(limit: str, notion: str, n: int = 11) -> list[float]:
    """Default parameter sequence: 2^-k (2^k for gamma -> inf), k = 0..n-1.

    Weak limits converge at the square-root rate of the parameter, so they
    step by powers of four instead.
    """
    step = 4.0 if notion == "weak" else 2.0
    sign = 1 if limit == "gamma_to_infinity" else -1
    return [step ** (sign * k) for k in range(n)]


def _metric_for(notion: str, continuous: bool) -> DistanceKind:
    if notion == "strong":
        return H1_GLOBAL if continuous else H1_BROKEN
    if notion == "weak":
        return sup_window(WEAK_SUP_RADIUS)
    return PAIRING


def _escaping_peak(st: PiecewiseSechState) -> float:
    return max(abs(p) for p in st.peaks)


def _strictly_decreasing(values: list[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def judge(study: LimitStudy, escape_required: bool) -> str:
    d = [p.distance for p in study.points]
    ok = len(d) >= 2 and _strictly_decreasing(d) and d[-1] <= DECAY_RATIO * d[0]
    if study.notion in ("weak", "distributional"):
        ok = ok and d[-1] <= WEAK_SUP_MAX
    if escape_required:
        last = study.points[-1].escaping_center
        ok = ok and last is not None and last > WEAK_ESCAPE_MIN
    return "converged" if ok else "not_converged"


def run_limit_study(family, limit: str, fixed: dict, sequence=None) -> LimitStudy:
    """Distance from the fixed-mass state to its limit profile along ``sequence``.

    ``family`` is ``"delta"`` for the Dirac-delta branch or a ``FamilyTag``.
    ``fixed`` holds the parameters kept constant (``rho`` plus the couplings
    not being varied).  Strong limits use H^1 distances; weak limits the sup
    distance on [-5, 5] together with the position of the escaping peak;
    distributional limits the pairing with Gaussian test functions.
    """
    if limit not in LIMIT_NAMES:
        raise ValueError(f"unknown limit {limit!r}")
    rho = fixed["rho"]

    if family == "delta":
        which = {"lambda_to_zero": "linear", "alpha_to_zero": "no_defect"}.get(limit)
        if which is None:
            raise UndefinedLimit(f"{limit} is not a limit of the delta branch")

        def build(p):
            alpha = p if limit == "alpha_to_zero" else fixed["alpha"]
            lam = p if limit == "lambda_to_zero" else fixed.get("lam", 1.0)
            model = DeltaModel(alpha, lam)
            return (delta_mod.delta_state_by_mass(model, rho),
                    delta_mod.delta_limit_target(model, rho, which))
        label, continuous = "delta", True
        escape_required = False
        probe_notion = "strong"
    else:
        tag = family if isinstance(family, FamilyTag) else FamilyTag.parse(family)
        if tag.family.asymmetric and tag.branch is None:
            tag = FamilyTag(tag.family, 1)
        which = {"lambda_to_zero": "linear", "gamma_to_zero": "gamma_to_zero",
                 "gamma_to_infinity": "gamma_to_infinity"}.get(limit)
        if which is None:
            raise UndefinedLimit(f"{limit} is not a limit of the delta-prime families")

        def build(p):
            gamma = p if limit.startswith("gamma") else fixed.get("gamma", 1.0)
            lam = p if limit == "lambda_to_zero" else fixed.get("lam", 1.0)
            return (dprime.state_by_mass(tag, gamma, lam, rho),
                    dprime.dprime_limit_target(tag, gamma, lam, rho, which))
        label, continuous = str(tag), False
        probe = dprime.dprime_limit_target(tag, fixed.get("gamma", 1.0), fixed.get("lam", 1.0), rho, which)
        probe_notion = probe.notion
        escape_required = probe.notion == "weak" and "escaping" in probe.info

    seq = list(sequence) if sequence is not None else dyadic(limit, probe_notion)
    diffs = np.diff(seq)
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError("sequence must be strictly monotone")

    study = None
    for p in seq:
        st, target = build(p)
        if study is None:
            metric = _metric_for(target.notion, continuous)
            study = LimitStudy(label, limit, target.label, target.notion, metric)
        esc = _escaping_peak(st) if escape_required else None
        study.points.append(LimitPoint(float(p), distance(st, target, study.metric), esc))
    study.verdict = judge(study, escape_required)
    return study


# The ten limit theorems, with the fixed parameters used to realise them.
STANDARD_STUDIES = [
    ("delta", "lambda_to_zero", {"alpha": 1.0, "rho": 2.0}),
    ("delta", "alpha_to_zero", {"lam": 1.0, "rho": 2.0}),
    ("sym", "lambda_to_zero", {"gamma": 1.0, "rho": 2.0}),
    ("asym-plus+", "lambda_to_zero", {"gamma": 1.0, "rho": 2.0}),
    ("antisym", "lambda_to_zero", {"gamma": 1.0, "rho": 2.0}),
    ("asym-plus+", "gamma_to_zero", {"lam": 1.0, "rho": 2.0}),
    ("antisym", "gamma_to_zero", {"lam": 1.0, "rho": 2.0}),
    ("asym-plus+", "gamma_to_infinity", {"lam": 1.0, "rho": 3.0}),
    ("antisym", "gamma_to_infinity", {"lam": 1.0, "rho": 4.0}),
    ("asym-minus+", "gamma_to_infinity", {"lam": 1.0, "rho": 4.0}),
]
