"""Vector preorders: majorization, weak sub/super-majorization, opposite ordering.

All predicates act on plain 1-d sequences of finite reals.  Comparisons of
partial sums use an absolute tolerance (default ``1e-12``) so that short
decimal vectors behave deterministically; pass a larger ``tol`` when the
inputs themselves are rounded (e.g. parameters quoted to a few decimals).
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-12

__all__ = [
    "DEFAULT_TOL",
    "sort_descending",
    "weakly_submajorized",
    "weakly_supermajorized",
    "majorized",
    "in_opposite_order_set",
]


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a non-empty 1-d real vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def _as_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    xa, ya = _as_vector(x), _as_vector(y)
    if xa.size != ya.size:
        raise ValueError(f"length mismatch: {xa.size} vs {ya.size}")
    return xa, ya


def sort_descending(v) -> np.ndarray:
    """Return the entries of ``v`` arranged non-increasingly.

    Ties keep their original relative order, so the reported arrangement is
    reproducible for equal entries.
    """
    arr = _as_vector(v)
    order = np.argsort(-arr, kind="stable")
    return arr[order]


def weakly_submajorized(x, y, tol: float = DEFAULT_TOL) -> bool:
    """True iff the partial sums of the largest entries of ``x`` never exceed ``y``'s.

    That is, sum of the j largest entries of x <= same for y, for every j.
    """
    xa, ya = _as_pair(x, y)
    xs = np.cumsum(sort_descending(xa))
    ys = np.cumsum(sort_descending(ya))
    return bool(np.all(xs <= ys + tol))


def weakly_supermajorized(x, y, tol: float = DEFAULT_TOL) -> bool:
    """True iff the partial sums of the smallest entries of ``x`` dominate ``y``'s.

    That is, sum of the j smallest entries of x >= same for y, for every j.
    """
    xa, ya = _as_pair(x, y)
    xs = np.cumsum(np.sort(xa))
    ys = np.cumsum(np.sort(ya))
    return bool(np.all(xs >= ys - tol))


def majorized(x, y, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``x`` is majorized by ``y``: equal totals and supermajorization."""
    xa, ya = _as_pair(x, y)
    if abs(float(np.sum(xa)) - float(np.sum(ya))) > tol:
        return False
    return weakly_supermajorized(xa, ya, tol=tol)


def in_opposite_order_set(a, b, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``a`` and ``b`` are oppositely ordered.

    Checks (a_i - a_j)(b_i - b_j) <= 0 for every index pair; with two
    entries this is the condition that one vector increases exactly where
    the other decreases.
    """
    aa, ba = _as_pair(a, b)
    da = aa[:, None] - aa[None, :]
    db = ba[:, None] - ba[None, :]
    return bool(np.all(da * db <= tol))
