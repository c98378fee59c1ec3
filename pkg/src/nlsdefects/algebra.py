"""Closed-form solutions of the two 2x2 systems behind the delta-prime matching conditions.

With ``t_i = |tanh(sqrt(omega) x_i)|`` the matching conditions become

    T+ :  t1^2 - t1^4 = t2^2 - t2^4,   1/t1 - 1/t2 = gamma sqrt(omega)
    T- :  t1^2 - t1^4 = t2^2 - t2^4,   1/t1 + 1/t2 = gamma sqrt(omega)

restricted to ``0 <= t1, t2 <= 1``.  Everything depends on ``u = gamma^2 omega``
only.  The radicands are rewritten in factored form so they keep full relative
precision near ``u -> 0`` (T+) and near the threshold ``u -> 8`` (T-).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

RADICAND_CLAMP = 1e-14


@dataclass(frozen=True)
class TPlusSolution:
    t1: float
    t2: float


@dataclass(frozen=True)
class TMinusSolutions:
    """Outcome of T-: ``kind`` is "none", "symmetric" or "full"."""

    kind: str
    t_sym: float | None = None
    t1: float | None = None
    t2: float | None = None

    def roots(self) -> list[tuple[float, float]]:
        """All roots in the unit square, the swapped asymmetric pair included."""
        out = []
        if self.t_sym is not None:
            out.append((self.t_sym, self.t_sym))
        if self.kind == "full":
            out += [(self.t1, self.t2), (self.t2, self.t1)]
        return out


def _check(gamma: float, omega: float) -> float:
    if not (gamma > 0 and omega > 0):
        raise ValueError("gamma and omega must be positive")
    return gamma * gamma * omega


def solve_t_plus(gamma: float, omega: float) -> TPlusSolution:
    """The unique root of T+ in the unit square, ordered ``t1 <= t2``."""
    u = _check(gamma, omega)
    g = math.sqrt(1.0 + u)
    m = u / (g + 1.0)                       # sqrt(1+u) - 1
    root = math.sqrt(u + 2.0 * m)           # sqrt(u - 2 + 2 sqrt(1+u))
    den = 2.0 * math.sqrt(u)
    return TPlusSolution((root - m) / den, (root + m) / den)


def minus_radicand(u: float) -> float:
    """``u - 2 - 2 sqrt(1+u)`` written as ``(u - 8)(g + 1)/(g + 3)``."""
    g = math.sqrt(1.0 + u)
    r = (u - 8.0) * (g + 1.0) / (g + 3.0)
    return 0.0 if abs(r) < RADICAND_CLAMP else r


def solve_t_minus(gamma: float, omega: float) -> TMinusSolutions:
    """Classify the roots of T-.

    None for ``u <= 4``, the symmetric root ``2/sqrt(u)`` for ``4 < u <= 8``,
    and additionally the asymmetric pair (``t1 >= t2``) for ``u > 8``.
    """
    u = _check(gamma, omega)
    if not u > 4.0:
        return TMinusSolutions("none")
    su = math.sqrt(u)
    t_sym = 2.0 / su
    if not u > 8.0:
        return TMinusSolutions("symmetric", t_sym)
    g = math.sqrt(1.0 + u)
    root = math.sqrt(max(minus_radicand(u), 0.0))
    return TMinusSolutions("full", t_sym, (1.0 + g + root) / (2.0 * su), (1.0 + g - root) / (2.0 * su))


def t_plus_residuals(t1: float, t2: float, gamma: float, omega: float) -> tuple[float, float]:
    return (t1**2 - t1**4 - t2**2 + t2**4, 1.0 / t1 - 1.0 / t2 - gamma * math.sqrt(omega))


def t_minus_residuals(t1: float, t2: float, gamma: float, omega: float) -> tuple[float, float]:
    return (t1**2 - t1**4 - t2**2 + t2**4, 1.0 / t1 + 1.0 / t2 - gamma * math.sqrt(omega))
