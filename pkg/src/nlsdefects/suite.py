"""Verification suites comparing closed forms against the independent oracles.

Each suite returns a list of :class:`Check` records; a suite passes when
every check does.  Tolerances are fixed here and can only be scaled
uniformly (``tol_scale``), never tuned per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dprime
from .algebra import (solve_t_minus, solve_t_plus, t_minus_residuals, t_plus_residuals)
from .delta import DeltaModel, delta_observables, delta_state
from .delta import omega_from_mass as delta_omega_from_mass
from .dprime import DeltaPrimeModel, Family
from .errors import UndefinedLimit
from .oracles import (STANDARD_STUDIES, brute_force_t_systems, default_grid, nehari_residual,
                      quadrature_observables, run_limit_study, stationary_residual)

SUITES = ("residuals", "observables", "algebra", "orderings", "bifurcation", "limits")

GAMMA, LAM = 1.0, 1.0
ALPHA = 1.0


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    relation: str = "<="

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance,
                "relation": self.relation, "passed": self.passed}


def at_most(name: str, value: float, tol: float) -> Check:
    return Check(name, float(value), tol, bool(value <= tol), "<=")


def at_least(name: str, value: float, bound: float) -> Check:
    return Check(name, float(value), bound, bool(value > bound), ">")


def rel_err(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


# -- grids ------------------------------------------------------------------------------

def dprime_omega_grid() -> np.ndarray:
    return np.geomspace(0.1, 40.0, 100)


def delta_omega_grid() -> np.ndarray:
    return np.geomspace(0.26, 100.0, 100)


def dprime_states():
    for omega in dprime_omega_grid():
        for tag, st in dprime.enumerate_states(GAMMA, LAM, omega):
            yield tag, float(omega), st


def gamma_omega_pairs() -> list[tuple[float, float]]:
    """200 (gamma, omega) pairs spanning all three T- regimes."""
    gammas = np.geomspace(0.5, 2.0, 10)
    omegas = np.geomspace(0.1, 40.0, 20)
    return [(float(g), float(w)) for g in gammas for w in omegas]


# -- criterion 1 ------------------------------------------------------------------------

def suite_residuals(tol_scale: float = 1.0) -> list[Check]:
    grid = default_grid()
    model = DeltaPrimeModel(GAMMA, LAM)
    worst_stat = {f: 0.0 for f in Family}
    worst_jump = worst_cont = 0.0
    counts_ok = True
    for omega in dprime_omega_grid():
        states = dprime.enumerate_states(GAMMA, LAM, omega)
        u = GAMMA**2 * omega
        counts_ok &= len(states) == (6 if u > 8 else 4 if u > 4 else 3)
        for tag, st in states:
            r = np.max(np.abs(stationary_residual(st, omega, grid)))
            worst_stat[tag.family] = max(worst_stat[tag.family], r)
            jump, cont = model.boundary_residuals(st)
            worst_jump, worst_cont = max(worst_jump, jump), max(worst_cont, cont)
    dmodel = DeltaModel(ALPHA, LAM)
    d_stat = d_cont = d_jump = 0.0
    for omega in delta_omega_grid():
        st = delta_state(dmodel, omega)
        d_stat = max(d_stat, np.max(np.abs(stationary_residual(st, omega, grid))))
        cont, jump = dmodel.boundary_residuals(st)
        d_cont, d_jump = max(d_cont, cont), max(d_jump, jump)
    checks = [Check("dprime state counts 3/4/6 by threshold", float(counts_ok), 1.0, counts_ok, "==")]
    checks += [at_most(f"stationary residual {f.slug}", worst_stat[f], 1e-10 * tol_scale) for f in Family]
    checks += [
        at_most("dprime jump condition psi(0+)-psi(0-)+gamma psi'(0+)", worst_jump, 1e-10 * tol_scale),
        at_most("dprime derivative continuity", worst_cont, 1e-10 * tol_scale),
        at_most("stationary residual delta", d_stat, 1e-10 * tol_scale),
        at_most("delta continuity", d_cont, 1e-10 * tol_scale),
        at_most("delta derivative jump psi'(0+)-psi'(0-)+alpha psi(0)", d_jump, 1e-10 * tol_scale),
    ]
    return checks


# -- criteria 2 and 4 -------------------------------------------------------------------

def central_difference(fn, x: float, h: float) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def dprime_rho_grid(family: Family) -> np.ndarray:
    lo = 1.0001 * dprime.mass_threshold(GAMMA, LAM) if family is Family.ASYM_MINUS else 0.05
    return np.geomspace(lo, 20.0, 100)


def suite_observables(tol_scale: float = 1.0) -> list[Check]:
    dmodel = DeltaModel(ALPHA, LAM)
    pmodel = DeltaPrimeModel(GAMMA, LAM)
    closure = {f: 0.0 for f in Family}
    identity = {f: 0.0 for f in Family}
    dsdw = {f: 0.0 for f in Family}
    nehari = 0.0
    for tag, omega, st in dprime_states():
        if tag.branch == -1:
            continue
        closed = dprime.dprime_observables(tag, GAMMA, LAM, omega)
        quad = quadrature_observables(st, pmodel)
        f = tag.family
        closure[f] = max(closure[f], rel_err(closed.mass, quad.mass), rel_err(closed.energy, quad.energy),
                         rel_err(closed.action, quad.action))
        identity[f] = max(identity[f], rel_err(closed.action, closed.energy + 0.5 * omega * closed.mass))

        def action(w, f=f):
            return dprime.action_closed_form(f, GAMMA, LAM, w)
        dsdw[f] = max(dsdw[f], rel_err(central_difference(action, omega, 1e-4 * omega), 0.5 * closed.mass))
        nehari = max(nehari, abs(nehari_residual(st, pmodel)))
    for _, _, st in ((t, w, s) for t, w, s in dprime_states() if t.branch == -1):
        nehari = max(nehari, abs(nehari_residual(st, pmodel)))

    d_closure = d_identity = d_dsdw = d_nehari = 0.0
    for omega in delta_omega_grid():
        closed = delta_observables(dmodel, omega)
        st = delta_state(dmodel, omega)
        quad = quadrature_observables(st, dmodel)
        d_closure = max(d_closure, rel_err(closed.mass, quad.mass), rel_err(closed.energy, quad.energy),
                        rel_err(closed.action, quad.action))
        d_identity = max(d_identity, rel_err(closed.action, closed.energy + 0.5 * omega * closed.mass))
        d_dsdw = max(d_dsdw, rel_err(central_difference(
            lambda w: delta_observables(dmodel, w).action, omega, 1e-4 * omega), 0.5 * closed.mass))
        d_nehari = max(d_nehari, abs(nehari_residual(st, dmodel)))

    dedr = {}
    for f in Family:
        worst = 0.0
        for rho in dprime_rho_grid(f):
            slope = central_difference(lambda r: dprime.energy_at_mass(f, GAMMA, LAM, r, check=False),
                                       rho, 1e-4 * rho)
            worst = max(worst, rel_err(slope, -0.5 * dprime.omega_from_mass(f, GAMMA, LAM, rho)))
        dedr[f] = worst
    d_dedr = 0.0
    for rho in np.geomspace(0.05, 20.0, 100):
        def energy(r):
            return delta_observables(dmodel, delta_omega_from_mass(dmodel, r)).energy
        d_dedr = max(d_dedr, rel_err(central_difference(energy, rho, 1e-4 * rho),
                                     -0.5 * delta_omega_from_mass(dmodel, rho)))

    checks = [at_most(f"quadrature closure {f.slug}", closure[f], 1e-8 * tol_scale) for f in Family]
    checks.append(at_most("quadrature closure delta", d_closure, 1e-8 * tol_scale))
    checks += [at_most(f"action identity S=E+(omega/2)rho {f.slug}", identity[f], 1e-12 * tol_scale)
               for f in Family]
    checks.append(at_most("action identity S=E+(omega/2)rho delta", d_identity, 1e-12 * tol_scale))
    checks += [at_most(f"dS/domega = rho/2 {f.slug}", dsdw[f], 1e-6 * tol_scale) for f in Family]
    checks.append(at_most("dS/domega = rho/2 delta", d_dsdw, 1e-6 * tol_scale))
    checks += [at_most(f"dE/drho = -omega/2 {f.slug}", dedr[f], 1e-6 * tol_scale) for f in Family]
    checks.append(at_most("dE/drho = -omega/2 delta", d_dedr, 1e-6 * tol_scale))
    checks.append(at_most("Nehari residual dprime states", nehari, 1e-8 * tol_scale))
    checks.append(at_most("Nehari residual delta states", d_nehari, 1e-8 * tol_scale))
    return checks


# -- criterion 3 ------------------------------------------------------------------------

def _match(closed: list[tuple[float, float]], brute: list[tuple[float, float]]) -> float:
    if len(closed) != len(brute):
        return math.inf
    a, b = sorted(closed), sorted(brute)
    return max([0.0] + [max(abs(p[0] - q[0]), abs(p[1] - q[1])) for p, q in zip(a, b)])


def suite_algebra(tol_scale: float = 1.0) -> list[Check]:
    worst_plus = worst_minus = 0.0
    residual = 0.0
    identities = 0.0
    for gamma, omega in gamma_omega_pairs():
        tp = solve_t_plus(gamma, omega)
        worst_plus = max(worst_plus, _match([(tp.t1, tp.t2)], brute_force_t_systems("plus", gamma, omega)))
        tm = solve_t_minus(gamma, omega)
        worst_minus = max(worst_minus, _match(tm.roots(), brute_force_t_systems("minus", gamma, omega)))
        residual = max(residual, *map(abs, t_plus_residuals(tp.t1, tp.t2, gamma, omega)))
        for r in tm.roots():
            residual = max(residual, *map(abs, t_minus_residuals(*r, gamma, omega)))
        u = gamma * gamma * omega
        g = math.sqrt(1 + u)
        identities = max(identities, abs(tp.t1**2 + tp.t2**2 - 1),
                         abs(tp.t1 * tp.t2 - (g - 1) / u),
                         abs(tp.t2 - tp.t1 - (g - 1) / math.sqrt(u)))
        if tm.kind == "full":
            identities = max(identities, abs(tm.t1**2 + tm.t2**2 - 1),
                             abs(tm.t1 + tm.t2 - (1 + g) / math.sqrt(u)))
    transitions_ok = True
    for gamma in (0.5, 1.0, 2.0):
        lo4, hi4 = 4 / gamma**2 * (1 - 1e-12), 4 / gamma**2 * (1 + 1e-12)
        lo8, hi8 = 8 / gamma**2 * (1 - 1e-12), 8 / gamma**2 * (1 + 1e-12)
        transitions_ok &= solve_t_minus(gamma, 4 / gamma**2).kind == "none"
        transitions_ok &= solve_t_minus(gamma, lo4).kind == "none"
        transitions_ok &= solve_t_minus(gamma, hi4).kind == "symmetric"
        transitions_ok &= solve_t_minus(gamma, lo8).kind == "symmetric"
        transitions_ok &= solve_t_minus(gamma, 8 / gamma**2).kind == "symmetric"
        transitions_ok &= solve_t_minus(gamma, hi8).kind == "full"
    return [
        at_most("T+ closed form vs brute force (per component)", worst_plus, 1e-10 * tol_scale),
        at_most("T- closed form vs brute force (per component, counts match)", worst_minus, 1e-10 * tol_scale),
        at_most("T+/T- substitution residuals", residual, 1e-12 * tol_scale),
        at_most("T+/T- product and sum identities", identities, 1e-12 * tol_scale),
        Check("T- transitions exactly at 4/gamma^2 and 8/gamma^2", float(transitions_ok), 1.0,
              bool(transitions_ok), "=="),
    ]


# -- criterion 5 ------------------------------------------------------------------------

def open_grid(lo: float, hi: float, n: int = 500) -> np.ndarray:
    """n points in (lo, hi], right end included."""
    return lo + (hi - lo) * np.arange(1, n + 1) / n


def _min_margin(chain_values) -> float:
    """Smallest gap in a chain that must be strictly increasing."""
    return min(b - a for values in chain_values for a, b in zip(values, values[1:]))


def five_point_derivative(fn, x: float, h: float) -> float:
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h)


def suite_orderings(tol_scale: float = 1.0) -> list[Check]:
    def S(f, w):
        return dprime.action_closed_form(f, GAMMA, LAM, w)

    def E(f, r):
        return dprime.energy_at_mass(f, GAMMA, LAM, r, check=False)

    F = Family
    actions_low = _min_margin([(S(F.SYM, w), S(F.ASYM_PLUS, w)) for w in open_grid(0.0, 20.0)])
    actions_mid = _min_margin([(S(F.ANTISYM, w), S(F.SYM, w), S(F.ASYM_PLUS, w)) for w in open_grid(4.0, 20.0)])
    actions_high = _min_margin([(S(F.ASYM_MINUS, w), S(F.ANTISYM, w), S(F.SYM, w), S(F.ASYM_PLUS, w))
                          for w in open_grid(8.0, 40.0)])
    energies_low = _min_margin([(E(F.ANTISYM, r), E(F.SYM, r), E(F.ASYM_PLUS, r)) for r in open_grid(0.0, 20.0)])
    energies_high = _min_margin([(E(F.ASYM_MINUS, r), E(F.ANTISYM, r), E(F.SYM, r), E(F.ASYM_PLUS, r))
                         for r in open_grid(3.3138, 20.0)])
    rho_star = dprime.mass_threshold(GAMMA, LAM)
    e_star = -(16.0 / 3.0) * (2.0 * math.sqrt(2.0) - 1.0)
    h = 1e-3
    slope_anti = five_point_derivative(lambda r: E(F.ANTISYM, r), rho_star, h)
    slope_minus = five_point_derivative(lambda r: E(F.ASYM_MINUS, r), rho_star, h)
    ranking_ok = ([t.family for t, _ in dprime.fixed_mass_energy_ranking(GAMMA, LAM, 2.0)]
                  == [F.ANTISYM, F.SYM, F.ASYM_PLUS]
                  and [t.family for t, _ in dprime.fixed_mass_energy_ranking(GAMMA, LAM, 8.0)]
                  == [F.ASYM_MINUS, F.ANTISYM, F.SYM, F.ASYM_PLUS])
    return [
        at_least("S(sym) < S(asym+) on (0,20]: min margin", actions_low, 0.0),
        at_least("S(antisym) < S(sym) < S(asym+) on (4,20]: min margin", actions_mid, 0.0),
        at_least("S(asym-) < S(antisym) < S(sym) < S(asym+) on (8,40]: min margin", actions_high, 0.0),
        at_least("E(antisym) < E(sym) < E(asym+) on rho in (0,20]: min margin", energies_low, 0.0),
        at_least("E(asym-) < E(antisym) < E(sym) < E(asym+) on rho in (3.3138,20]: min margin", energies_high, 0.0),
        at_most("E(antisym) at rho* = -(16/3)(2 sqrt2 - 1)", abs(E(F.ANTISYM, rho_star) - e_star), 1e-8 * tol_scale),
        at_most("E(asym-) at rho* = -(16/3)(2 sqrt2 - 1)", abs(E(F.ASYM_MINUS, rho_star) - e_star), 1e-8 * tol_scale),
        at_most("dE/drho(antisym) at rho* = -4", abs(slope_anti + 4.0), 1e-8 * tol_scale),
        at_most("dE/drho(asym-) at rho* = -4", abs(slope_minus + 4.0), 1e-8 * tol_scale),
        Check("fixed-mass ranking at rho = 2 and 8", float(ranking_ok), 1.0, bool(ranking_ok), "=="),
    ]


def extrapolate_to_zero(xs, ys) -> float:
    """Value at 0 of the interpolating polynomial through (xs, ys) (Neville)."""
    p = list(ys)
    for k in range(1, len(xs)):
        for i in range(len(xs) - k):
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i])
    return p[0]


# -- criterion 6 ------------------------------------------------------------------------

def suite_bifurcation(tol_scale: float = 1.0) -> list[Check]:
    def gap_plus(w):
        return dprime.action_gaps(GAMMA, LAM, w)[0]

    def gap_minus(w):
        return dprime.action_gaps(GAMMA, LAM, w)[1]

    positive_plus = min(gap_plus(w) for w in open_grid(0.0, 20.0))
    tiny = gap_plus(1e-6)
    ratios = [gap_plus(10.0**-k) / 10.0**-k for k in range(1, 7)]
    ratio_ok = all(b < a for a, b in zip(ratios, ratios[1:]))
    h = 1e-3
    curvature = 0.0
    for w in np.geomspace(0.1, 20.0, 200):
        second = (gap_plus(w + h) - 2 * gap_plus(w) + gap_plus(w - h)) / (h * h)
        expected = GAMMA**2 / 2.0 / math.sqrt(1.0 + GAMMA**2 * w)
        curvature = max(curvature, rel_err(second, expected))
    positive_minus = min(gap_minus(w) for w in open_grid(8.0, 40.0))
    deltas = [2.0**-k for k in range(1, 11)]
    threshold = 8.0 / GAMMA**2
    values = [gap_minus(threshold + d) for d in deltas]
    slopes = [v / d for v, d in zip(values, deltas)]
    slopes_ok = all(b < a for a, b in zip(slopes, slopes[1:]))
    extrapolated_value = extrapolate_to_zero(deltas[-4:], values[-4:])
    extrapolated_slope = extrapolate_to_zero(deltas[-4:], slopes[-4:])
    consistency = 0.0
    for w in open_grid(8.0, 40.0, 100):
        diff = (dprime.action_closed_form(Family.ANTISYM, GAMMA, LAM, w)
                - dprime.action_closed_form(Family.ASYM_MINUS, GAMMA, LAM, w))
        scale = abs(dprime.action_closed_form(Family.ANTISYM, GAMMA, LAM, w)) + 1.0
        consistency = max(consistency, abs(diff - gap_minus(w)) / scale)
    return [
        at_least("gap_plus > 0 on (0,20]: min", positive_plus, 0.0),
        at_most("gap_plus(1e-6)", tiny, 1e-9),
        Check("gap_plus/omega decreasing to 0 as omega -> 0", float(ratio_ok), 1.0, bool(ratio_ok), "=="),
        at_most("second difference of gap_plus vs (g^2/2)(1+g^2 w)^(-1/2)", curvature, 1e-5 * tol_scale),
        at_least("gap_minus > 0 on (8,40]: min", positive_minus, 0.0),
        Check("gap_minus/(omega-8) decreasing as omega -> 8+", float(slopes_ok), 1.0, bool(slopes_ok), "=="),
        at_most("gap_minus extrapolated to omega = 8", abs(extrapolated_value), 1e-8 * tol_scale),
        at_most("d gap_minus/d omega extrapolated to omega = 8", abs(extrapolated_slope), 1e-5 * tol_scale),
        at_most("gap_minus equals S(antisym) - S(asym-)", consistency, 1e-12 * tol_scale),
    ]


# -- criterion 7 ------------------------------------------------------------------------

def suite_limits(tol_scale: float = 1.0) -> list[Check]:
    checks = []
    for family, limit, fixed in STANDARD_STUDIES:
        study = run_limit_study(family, limit, fixed)
        d = [p.distance for p in study.points]
        ok = study.verdict == "converged" and len(study.points) == 11
        checks.append(Check(f"{family} {limit} -> {study.target} [{study.notion}, {study.metric}]",
                            d[-1] / d[0], 1e-2, ok, "converged"))
    try:
        run_limit_study("asym-minus+", "lambda_to_zero", {"gamma": 1.0, "rho": 4.0})
        undefined = False
    except UndefinedLimit:
        undefined = True
    checks.append(Check("asym-minus lambda -> 0 reported undefined", float(undefined), 1.0, undefined, "=="))
    return checks


RUNNERS = {
    "residuals": suite_residuals,
    "observables": suite_observables,
    "algebra": suite_algebra,
    "orderings": suite_orderings,
    "bifurcation": suite_bifurcation,
    "limits": suite_limits,
}


def run(suite: str = "all", tol_scale: float = 1.0) -> dict[str, list[Check]]:
    names = SUITES if suite == "all" else (suite,)
    out = {}
    for name in names:
        if name not in RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        out[name] = RUNNERS[name](tol_scale)
    return out
