"""Proximity operator of the squared l1/l2 ratio.

The direction problem is a quadratic form built from a rank-2 matrix
(2*e*e^T - rho*x*x^T).  Its negative-eigenvalue eigenvector has a closed
form; when the eigenvector leaves the nonnegative cone the trailing
coordinate of the optimal direction is provably zero, so a truncation loop
over prefix lengths resolves every input in finitely many steps.  The matrix
is never materialized: all products use the rank-2 structure.
"""

from __future__ import annotations

import math

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    UNIFORM_SPHERE,
    ProxSet,
    Tolerances,
    _positive_rho,
    as_vector,
    descending_vector,
    effective_tie_tol,
    normalize,
    objective_G_h2,
    uniform_value,
)
from .wrd import WStepSolution, wrd_assemble


@dataclass
class H2Spectrum:
    """Nonzero eigenstructure of the rank-2 direction matrix.

    ``delta`` is the discriminant of the quadratic whose roots (scaled)
    locate the two nonzero eigenvalues ``lambda_pos > 0 > lambda_neg``;
    ``w_lo`` / ``w_hi`` are the unnormalized eigenvectors attached to
    ``lambda_neg`` / ``lambda_pos``.
    """

    delta: float
    alpha_lo: float
    alpha_hi: float
    lambda_neg: float
    lambda_pos: float
    w_lo: np.ndarray
    w_hi: np.ndarray


def h2_spectrum(x_sorted, rho: float) -> H2Spectrum:
    """Closed-form eigenpairs of 2*e*e^T - rho*x*x^T for non-uniform sorted x."""
    rho = _positive_rho(rho)
    x = descending_vector(x_sorted)
    if uniform_value(x) is not None:
        raise ValueError("spectrum degenerates for multiples of the all-ones vector")
    n = x.size
    s1 = float(x.sum())
    s2 = float(x @ x)
    m = 0.5 * rho * s2 + n
    delta = max(m * m - 2.0 * rho * s1 * s1, 0.0)
    alpha_hi = m + np.sqrt(delta)
    # rationalized form; the direct difference m - sqrt(delta) cancels badly
    # when delta approaches its lower bound
    alpha_lo = 2.0 * rho * s1 * s1 / alpha_hi
    shift_lo = alpha_lo / (rho * s1)
    shift_hi = alpha_hi / (rho * s1)
    return H2Spectrum(
        delta=delta,
        alpha_lo=alpha_lo,
        alpha_hi=alpha_hi,
        lambda_neg=2.0 * n - alpha_hi,
        lambda_pos=2.0 * n - alpha_lo,
        w_lo=x - shift_lo,
        w_hi=x - shift_hi,
    )


def mu(x_sorted, rho: float) -> int:
    """Count of negative entries of 2*e - rho*x_1*x (a prefix, by sorting)."""
    rho = _positive_rho(rho)
    x = descending_vector(x_sorted)
    return int(np.count_nonzero(2.0 - rho * x[0] * x < 0.0))


def prox_h2_uniform(alpha: float, n: int, rho: float, tol: Tolerances | None = None) -> ProxSet:
    """Prox at a uniform point alpha*e: keep it, drop it, or tie with an
    infinite family covering the nonnegative sphere."""
    tol = tol or DEFAULT_TOLERANCES
    rho = _positive_rho(rho)
    alpha = float(alpha)
    n = int(n)
    if alpha <= 0.0 or n < 1:
        raise ValueError("alpha must be positive and n >= 1")
    d = 2.0 - rho * alpha * alpha
    f_zero = 0.5 * rho * alpha * alpha * n
    tie = effective_tie_tol(tol, f_zero)
    point = np.full(n, alpha)
    g_diag = 0.5 * d * n
    if abs(g_diag) <= tie:
        return ProxSet(True, [point], family=UNIFORM_SPHERE, g_value=g_diag)
    if d < 0.0:
        return ProxSet(False, [point], g_value=g_diag)
    return ProxSet(True, [], g_value=0.5 * d)


def wstep_h2_r2(x_sorted, rho: float) -> WStepSolution:
    """Closed-form planar direction: an arctangent angle when the cross term
    is active, the first axis otherwise."""
    rho = _positive_rho(rho)
    x = descending_vector(x_sorted)
    if x.size != 2 or not x[0] > x[1]:
        raise ValueError("expected a sorted plane vector with x1 > x2 >= 0")
    x1, x2 = float(x[0]), float(x[1])
    cross = rho * x1 * x2
    if cross > 2.0:
        theta = 0.5 * math.atan(2.0 * (cross - 2.0) / (rho * (x1 * x1 - x2 * x2)))
    else:
        theta = 0.0
    w = np.array([math.cos(theta), math.sin(theta)])
    return WStepSolution(w_star=w, g_value=objective_G_h2(w, x, rho))


def wstep_h2(x_sorted, rho: float, tol: Tolerances | None = None) -> tuple[WStepSolution, int]:
    """Direction solver with the prefix truncation loop.

    Returns the solution padded to full length together with the effective
    prefix length it was resolved on.  When the first column of the
    direction matrix is entirely nonnegative the first axis is optimal;
    otherwise the loop walks the prefix length down from the negative-entry
    count, dropping one trailing coordinate per step whenever the
    negative-eigenvalue direction leaves the nonnegative cone.
    """
    tol = tol or DEFAULT_TOLERANCES
    rho = _positive_rho(rho)
    x = descending_vector(x_sorted)
    if x[0] == 0.0:
        raise ValueError("zero vector has no direction")
    n = x.size

    def padded(w_head: np.ndarray) -> np.ndarray:
        w = np.zeros(n)
        w[: w_head.size] = w_head
        return w

    k = mu(x, rho)
    if k == 0:
        w = padded(np.array([1.0]))
        return WStepSolution(w_star=w, g_value=objective_G_h2(w, x, rho)), 1

    while k >= 1:
        head = x[:k]
        au = uniform_value(head)
        if au is not None:
            d = 2.0 - rho * au * au
            if d > 0.0:  # unreachable from the loop bound, kept for direct calls
                w = padded(np.array([1.0]))
                return WStepSolution(w_star=w, g_value=objective_G_h2(w, x, rho)), k
            w = padded(np.full(k, 1.0 / np.sqrt(k)))
            g = objective_G_h2(w, x, rho)
            f_zero = 0.5 * rho * float(head @ head)
            family = UNIFORM_SPHERE if abs(g) <= effective_tie_tol(tol, f_zero) else None
            return WStepSolution(w_star=w, g_value=g, family=family), k
        if k == 2:
            sol2 = wstep_h2_r2(head, rho)
            w = padded(sol2.w_star)
            return WStepSolution(w_star=w, g_value=sol2.g_value), 2
        spec = h2_spectrum(head, rho)
        if spec.w_lo[-1] > 0.0:
            w = padded(spec.w_lo / np.linalg.norm(spec.w_lo))
            return WStepSolution(w_star=w, g_value=objective_G_h2(w, x, rho)), k
        k -= 1

    raise RuntimeError("truncation loop failed to resolve")


def prox_h2(x, rho: float, tol: Tolerances | None = None) -> ProxSet:
    """Set-valued prox of the squared l1/l2 ratio at an arbitrary point."""
    tol = tol or DEFAULT_TOLERANCES
    rho = _positive_rho(rho)
    v = as_vector(x)
    if not v.any():
        return ProxSet(True, [], g_value=1.0)
    xs, perm = normalize(v)
    au = uniform_value(xs)
    if au is not None:
        ps = prox_h2_uniform(au, xs.size, rho, tol)
    else:
        sol, _ = wstep_h2(xs, rho, tol)
        ps = wrd_assemble(xs, rho, sol, tol)
    return ps.map_points(perm.invert)
