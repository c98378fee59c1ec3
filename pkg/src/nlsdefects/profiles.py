"""Sech profile primitives, piecewise states and norm/distance machinery.

Every stationary state handled by this package is made of two pieces glued
at the origin: one owning ``x < 0`` and one owning ``x >= 0``.  States are
built from signed sech pieces

    sign * A * sech(B x - c),

and limit targets additionally use exponential cusps and the zero function.
The value at exactly ``x = 0`` belongs to the right piece; boundary checks
always evaluate each piece's formula at 0 explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np
from scipy import integrate

from .errors import QuadratureError

# sech(u) < 1e-16 * sech(0) once |u| > ln(2e16) ~ 37.5
TAIL_WIDTHS = 40.0

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-13
QUAD_FAIL_ABS = 1e-10


@dataclass(frozen=True)
class SechPiece:
    """``sign * amplitude * sech(width * x - center)``; the peak sits at ``center / width``."""

    sign: int
    amplitude: float
    width: float
    center: float = 0.0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not (self.amplitude > 0 and self.width > 0):
            raise ValueError("amplitude and width must be positive")
        if not math.isfinite(self.center):
            raise ValueError("center must be finite")

    @property
    def peak(self) -> float:
        return self.center / self.width

    def value(self, x):
        u = self.width * np.asarray(x, dtype=float) - self.center
        with np.errstate(over="ignore"):
            return self.sign * self.amplitude / np.cosh(u)

    def derivative(self, x, order: int = 1):
        u = self.width * np.asarray(x, dtype=float) - self.center
        with np.errstate(over="ignore"):
            sech = 1.0 / np.cosh(u)
        scale = self.sign * self.amplitude
        if order == 1:
            return -scale * self.width * sech * np.tanh(u)
        if order == 2:
            # sech'' = sech - 2 sech^3
            return scale * self.width**2 * (sech - 2.0 * sech**3)
        raise ValueError(f"order must be 1 or 2, got {order}")

    def breakpoints(self) -> list[float]:
        p, w = self.peak, 1.0 / self.width
        return [p + k * w for k in (-15.0, -5.0, 0.0, 5.0, 15.0)]

    def extent(self) -> float:
        return abs(self.peak) + TAIL_WIDTHS / self.width

    def mirrored(self, negate: bool = False) -> "SechPiece":
        """The piece describing ``x -> (+/-) f(-x)``."""
        sign = -self.sign if negate else self.sign
        return SechPiece(sign, self.amplitude, self.width, -self.center)


@dataclass(frozen=True)
class ExpPiece:
    """``amplitude * exp(exponent * x)``; left cusps use exponent > 0, right ones exponent < 0."""

    amplitude: float
    exponent: float

    def value(self, x):
        return self.amplitude * np.exp(self.exponent * np.asarray(x, dtype=float))

    def derivative(self, x, order: int = 1):
        if order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {order}")
        return self.exponent**order * self.value(x)

    def breakpoints(self) -> list[float]:
        w = 1.0 / abs(self.exponent)
        return [0.0, 5.0 * w, -5.0 * w]

    def extent(self) -> float:
        return TAIL_WIDTHS / abs(self.exponent)

    def mirrored(self, negate: bool = False) -> "ExpPiece":
        a = -self.amplitude if negate else self.amplitude
        return ExpPiece(a, -self.exponent)


@dataclass(frozen=True)
class ZeroPiece:
    def value(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def derivative(self, x, order: int = 1):
        return self.value(x)

    def breakpoints(self) -> list[float]:
        return []

    def extent(self) -> float:
        return 0.0

    def mirrored(self, negate: bool = False) -> "ZeroPiece":
        return self


Piece = SechPiece | ExpPiece | ZeroPiece


class Profile(Protocol):
    left: Piece
    right: Piece


@dataclass(frozen=True)
class PiecewiseSechState:
    """A stationary profile: sech pieces sharing amplitude sqrt(2 omega/lam) and width sqrt(omega)."""

    left: SechPiece
    right: SechPiece
    omega: float
    lam: float

    def __post_init__(self):
        if not (self.omega > 0 and self.lam > 0):
            raise ValueError("omega and lam must be positive")
        amp = math.sqrt(2.0 * self.omega / self.lam)
        width = math.sqrt(self.omega)
        for piece in (self.left, self.right):
            if not (math.isclose(piece.amplitude, amp, rel_tol=1e-12)
                    and math.isclose(piece.width, width, rel_tol=1e-12)):
                raise ValueError("pieces must have amplitude sqrt(2 omega/lam) and width sqrt(omega)")

    @classmethod
    def from_peaks(cls, omega: float, lam: float, left_peak: float, right_peak: float,
                   left_sign: int = 1, right_sign: int = 1) -> "PiecewiseSechState":
        """Build from peak positions in length units (the x_1, x_2 of the prototype profile)."""
        amp = math.sqrt(2.0 * omega / lam)
        width = math.sqrt(omega)
        return cls(SechPiece(left_sign, amp, width, width * left_peak),
                   SechPiece(right_sign, amp, width, width * right_peak),
                   omega, lam)

    @property
    def amplitude(self) -> float:
        return self.right.amplitude

    @property
    def width(self) -> float:
        return self.right.width

    @property
    def peaks(self) -> tuple[float, float]:
        return self.left.peak, self.right.peak

    def mirrored(self, negate: bool = False) -> "PiecewiseSechState":
        return PiecewiseSechState(self.right.mirrored(negate), self.left.mirrored(negate),
                                  self.omega, self.lam)


@dataclass(frozen=True)
class ClosedFormTarget:
    """A limit profile together with the convergence notion it is reached in.

    ``notion`` is one of ``"strong"``, ``"weak"`` or ``"distributional"``;
    ``info`` carries free-form metadata (e.g. which center escapes).
    """

    left: Piece
    right: Piece
    label: str
    notion: str = "strong"
    info: dict = field(default_factory=dict, compare=False)

    def mirrored(self, negate: bool = False) -> "ClosedFormTarget":
        return ClosedFormTarget(self.right.mirrored(negate), self.left.mirrored(negate),
                                self.label + " (mirrored)", self.notion, dict(self.info))


def sech_target(amplitude: float, width: float, center: float, label: str,
                support: str = "full", left_sign: int = 1, right_sign: int = 1,
                notion: str = "strong", **info) -> ClosedFormTarget:
    """``phi(A, B, C; x) = A sech(Bx - C)`` restricted to ``support`` ("full", "left", "right")."""
    left = SechPiece(left_sign, amplitude, width, center) if support in ("full", "left") else ZeroPiece()
    right = SechPiece(right_sign, amplitude, width, center) if support in ("full", "right") else ZeroPiece()
    return ClosedFormTarget(left, right, label, notion, info)


def cusp_target(amplitude: float, rate: float, label: str, left_sign: int = 1,
                notion: str = "strong", **info) -> ClosedFormTarget:
    """``amplitude * exp(-rate |x|)``, with the left half multiplied by ``left_sign``."""
    return ClosedFormTarget(ExpPiece(left_sign * amplitude, rate), ExpPiece(amplitude, -rate),
                            label, notion, info)


def zero_target(label: str, notion: str, **info) -> ClosedFormTarget:
    return ClosedFormTarget(ZeroPiece(), ZeroPiece(), label, notion, info)


@dataclass(frozen=True)
class Observables:
    """Frequency, mass ``||psi||_2^2``, energy and action ``E + (omega/2) mass`` of a state."""

    omega: float
    mass: float
    energy: float
    action: float

    def as_dict(self) -> dict[str, float]:
        return {"omega": self.omega, "mass": self.mass, "energy": self.energy, "action": self.action}


# -- evaluation -----------------------------------------------------------------------

def eval_profile(profile: Profile, x):
    """Value of the profile; ``x == 0`` is owned by the right piece."""
    x = np.asarray(x, dtype=float)
    out = np.where(x < 0, profile.left.value(x), profile.right.value(x))
    return out if out.ndim else float(out)


def eval_derivative(profile: Profile, x, order: int = 1):
    """Analytic first or second derivative of the piece owning ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.where(x < 0, profile.left.derivative(x, order), profile.right.derivative(x, order))
    return out if out.ndim else float(out)


def one_sided(profile: Profile) -> dict[str, float]:
    """Values and first derivatives of each piece's formula at the origin."""
    return {
        "value_minus": float(profile.left.value(0.0)),
        "value_plus": float(profile.right.value(0.0)),
        "deriv_minus": float(profile.left.derivative(0.0, 1)),
        "deriv_plus": float(profile.right.derivative(0.0, 1)),
    }


# -- quadrature -----------------------------------------------------------------------

def integrate_interval(fn: Callable[[float], float], a: float, b: float,
                       points: list[float] | None = None) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``fn`` over ``[a, b]``."""
    if b <= a:
        return 0.0
    # breakpoints hugging an endpoint or each other only create degenerate subintervals
    margin = 1e-9 * (b - a)
    inner: list[float] = []
    for p in sorted(points or []):
        if a + margin < p < b - margin and (not inner or p - inner[-1] > margin):
            inner.append(p)
    result, abserr, *_ = integrate.quad(fn, a, b, points=inner or None, epsabs=QUAD_EPSABS,
                                        epsrel=QUAD_EPSREL, limit=400, full_output=1)
    if not (abserr <= QUAD_FAIL_ABS or abserr <= 1e-12 * abs(result)):
        raise QuadratureError(f"quadrature on [{a}, {b}] stopped at error {abserr:.3g}")
    return float(result)


def _half_line_extent(*pieces: Piece) -> float:
    return max([1.0] + [p.extent() for p in pieces])


def integrate_sides(left_fn: Callable[[float], float], right_fn: Callable[[float], float],
                    *profiles: Profile) -> tuple[float, float]:
    """Integrals of ``left_fn`` over the negative and ``right_fn`` over the positive half-line.

    The domain is truncated where every sech/exp tail involved is below 1e-16 of its peak.
    """
    lefts = [p.left for p in profiles]
    rights = [p.right for p in profiles]
    left_pts = [q for piece in lefts for q in piece.breakpoints()]
    right_pts = [q for piece in rights for q in piece.breakpoints()]
    lo = -_half_line_extent(*lefts)
    hi = _half_line_extent(*rights)
    return (integrate_interval(left_fn, lo, 0.0, left_pts),
            integrate_interval(right_fn, 0.0, hi, right_pts))


# -- distances ------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceKind:
    """Which norm of ``f - g`` to measure.

    ``h1_global``: H^1(R), both arguments continuous at 0.
    ``h1_broken``: H^1(R^-) + H^1(R^+), jumps at 0 allowed.
    ``sup_window``: max |f - g| over ``[-radius, radius]``.
    ``pairing``: max |<f - g, phi>| over a fixed family of Gaussian test functions,
    used for convergence in the sense of distributions.
    """

    kind: str
    radius: float | None = None

    def __post_init__(self):
        if self.kind not in ("h1_global", "h1_broken", "sup_window", "pairing"):
            raise ValueError(f"unknown distance kind {self.kind!r}")
        if self.kind == "sup_window" and not (self.radius and self.radius > 0):
            raise ValueError("sup_window needs radius > 0")

    def __str__(self):
        return f"sup_window({self.radius:g})" if self.kind == "sup_window" else self.kind


H1_GLOBAL = DistanceKind("h1_global")
H1_BROKEN = DistanceKind("h1_broken")
PAIRING = DistanceKind("pairing")


def sup_window(radius: float) -> DistanceKind:
    return DistanceKind("sup_window", radius)


TEST_CENTERS = (-1.0, 0.0, 1.0)
SUP_SAMPLES = 4001


def _jump(profile: Profile) -> float:
    return float(profile.right.value(0.0) - profile.left.value(0.0))


def distance(f: Profile, g: Profile, metric: DistanceKind = H1_BROKEN) -> float:
    """Distance between two piecewise profiles under ``metric``."""
    if metric.kind in ("h1_global", "h1_broken"):
        if metric.kind == "h1_global":
            for p in (f, g):
                scale = max(1.0, abs(float(p.right.value(0.0))))
                if abs(_jump(p)) > 1e-9 * scale:
                    raise ValueError("h1_global distance needs profiles continuous at 0")

        def side(fp, gp):
            def integrand(x):
                d0 = fp.value(x) - gp.value(x)
                d1 = fp.derivative(x, 1) - gp.derivative(x, 1)
                return float(d0 * d0 + d1 * d1)
            return integrand

        left, right = integrate_sides(side(f.left, g.left), side(f.right, g.right), f, g)
        return math.sqrt(max(left + right, 0.0))

    if metric.kind == "sup_window":
        r = metric.radius
        xl = np.linspace(-r, 0.0, SUP_SAMPLES)
        xr = np.linspace(0.0, r, SUP_SAMPLES)
        dl = np.abs(f.left.value(xl) - g.left.value(xl))
        dr = np.abs(f.right.value(xr) - g.right.value(xr))
        return float(max(dl.max(), dr.max()))

    best = 0.0
    for a in TEST_CENTERS:
        for k in (0, 1):
            def test(x, a=a, k=k):
                return (x - a) ** k * math.exp(-((x - a) ** 2))

            def lf(x, test=test):
                return float(f.left.value(x) - g.left.value(x)) * test(x)

            def rf(x, test=test):
                return float(f.right.value(x) - g.right.value(x)) * test(x)

            lpts = [a] + f.left.breakpoints() + g.left.breakpoints()
            rpts = [a] + f.right.breakpoints() + g.right.breakpoints()
            lo, hi = integrate_interval(lf, -12.0, 0.0, lpts), integrate_interval(rf, 0.0, 12.0, rpts)
            best = max(best, abs(lo + hi))
    return best
