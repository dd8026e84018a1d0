"""Shared assertions and small utilities for the test suite."""

import numpy as np

from proxinv import h1_value, h2_value, l0_value, objective_F

PENALTY = {"l0": l0_value, "h1": h1_value, "h2": h2_value}


def f_value(fn, u, x, rho):
    """Full proximal objective of fn at u."""
    return objective_F(u, x, rho, PENALTY[fn](u))


def candidates(ps, n):
    """All members of a prox set as arrays, including the origin if flagged."""
    pts = [np.asarray(p, dtype=float) for p in ps.points]
    if ps.contains_zero:
        pts.append(np.zeros(n))
    return pts


def best_f(fn, ps, x, rho):
    x = np.asarray(x, dtype=float)
    return min(f_value(fn, u, x, rho) for u in candidates(ps, x.size))


def hausdorff(pts_a, pts_b):
    """Symmetric Hausdorff distance between two finite point lists."""
    if not pts_a and not pts_b:
        return 0.0
    if not pts_a or not pts_b:
        return np.inf

    def one_sided(src, dst):
        return max(min(float(np.linalg.norm(a - b)) for b in dst) for a in src)

    return max(one_sided(pts_a, pts_b), one_sided(pts_b, pts_a))


def assert_sets_close(a, b, tol=1e-8):
    """Prox-set equality: same zero flag, same family tag, close point lists."""
    assert a.contains_zero == b.contains_zero
    assert a.family == b.family
    d = hausdorff([np.asarray(p) for p in a.points], [np.asarray(p) for p in b.points])
    assert d <= tol, f"hausdorff distance {d:.3e} > {tol:.1e}"


def sorted_desc(rng, lo, hi, n):
    """Random strictly-positive vector in the descending cone."""
    return np.sort(rng.uniform(lo, hi, n))[::-1].copy()


def random_unit_nonneg(rng, n):
    w = np.abs(rng.normal(size=n)) + 1e-3
    return w / np.linalg.norm(w)
