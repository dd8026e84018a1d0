"""Generic three-step driver: direction solve (w), radius (r), decision (d).

A penalty-specific direction solver produces a unit vector ``w_star`` with
its objective gap ``g_value``; the radius step forms ``r = <x, w_star>`` and
the decision step keeps the origin, the scaled point, or both, depending on
the sign of the gap.  The gap equals F(r*w) - F(0) exactly, so the decision
never recomputes F and avoids cancellation for large inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    ProxSet,
    Tolerances,
    _positive_rho,
    effective_tie_tol,
)

_UNIT_ATOL = 1e-10
_NEG_ATOL = 1e-12


@dataclass
class WStepSolution:
    """Output of a direction solver.

    ``w_star`` is a unit vector in the nonnegative part of the sphere and
    ``g_value`` its objective value, the exact gap used by the decision step.
    ``origin`` marks the relaxed-ball solve collapsing to the origin (then
    ``w_star`` is all zeros).  ``limit_norm`` and ``iterations`` are
    diagnostics from iterative solvers; ``certified`` is cleared on a hit
    iteration cap.
    """

    w_star: np.ndarray
    g_value: float
    family: str | None = None
    certified: bool = True
    origin: bool = False
    limit_norm: float = 1.0
    iterations: int = 0


def wrd_assemble(x_sorted, rho: float, sol: WStepSolution, tol: Tolerances | None = None) -> ProxSet:
    """Run the radius and decision steps for a solved direction.

    Returns {0} when the gap is decisively positive, {r*w} when decisively
    negative, and both on a tie within the scaled tie tolerance.
    """
    tol = tol or DEFAULT_TOLERANCES
    rho = _positive_rho(rho)
    x = np.asarray(x_sorted, dtype=float)

    if sol.origin:
        return ProxSet(
            contains_zero=True,
            points=[],
            family=sol.family,
            g_value=0.0,
            certified=sol.certified,
        )

    w = np.asarray(sol.w_star, dtype=float)
    if w.shape != x.shape:
        raise ValueError("dimension mismatch")
    if abs(float(w @ w) - 1.0) > 2.0 * _UNIT_ATOL:
        raise ValueError("w_star must be a unit vector")
    if float(w.min()) < -_NEG_ATOL:
        raise ValueError("w_star must be nonnegative")

    r = float(x @ w)
    if r < -_NEG_ATOL:
        raise ValueError("negative radius: x and w_star must have nonnegative overlap")
    r = max(r, 0.0)

    f_zero = 0.5 * rho * float(x @ x)
    tie = effective_tie_tol(tol, f_zero)
    g = float(sol.g_value)

    if g > tie:
        return ProxSet(True, [], family=sol.family, g_value=g, certified=sol.certified)
    if g < -tie:
        return ProxSet(False, [r * w], family=sol.family, g_value=g, certified=sol.certified)
    return ProxSet(True, [r * w], family=sol.family, g_value=g, certified=sol.certified)
