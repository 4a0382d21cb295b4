"""Closed-form tensor-stability criteria for trace-preserving Pauli maps.

A map is given by its Bloch scalings ``(l1, l2, l3)`` with ``l0 = 1``
(:data:`LambdaPoint` below).  All criteria are evaluated with exact float
arithmetic on the inputs; numerical tolerances live only in the oracle
module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .linalg import HermitianOperator

__all__ = [
    "CriterionVerdict",
    "as_lambda_point",
    "depolarizing_pair_positive",
    "hyperboloid_point",
    "is_2tsp",
    "is_3tsp",
    "lift_ntsp",
    "lift_x_max",
    "mu_bound",
    "ntsp_necessary",
    "ntsp_sufficient_ball",
    "squared_map_choi",
    "squared_map_choi_eigs",
]

# A LambdaPoint is any 3-sequence of Bloch scalings in [-1, 1].
LambdaPoint = Sequence[float]


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of a closed-form criterion.

    ``satisfied`` holds exactly when ``worst_slack >= 0``;
    ``binding_constraint`` names the inequality attaining the worst slack.
    """

    satisfied: bool
    worst_slack: float
    binding_constraint: str


def _verdict(slacks: dict[str, float]) -> CriterionVerdict:
    binding = min(slacks, key=slacks.get)
    worst = slacks[binding]
    return CriterionVerdict(satisfied=worst >= 0, worst_slack=worst, binding_constraint=binding)


def as_lambda_point(lam: LambdaPoint) -> np.ndarray:
    p = np.asarray(lam, dtype=float)
    if p.shape != (3,):
        raise ValueError("a lambda point has exactly three components")
    return p


def is_2tsp(lam: LambdaPoint) -> CriterionVerdict:
    """Two-fold tensor stability: the three hyperboloid inequalities.

    Satisfied iff ``1 + l_i^2 >= l_j^2 + l_k^2`` for every axis ``i``.
    Requires ``|l_k| <= 1`` (map positivity) to be meaningful.
    """
    l1, l2, l3 = as_lambda_point(lam)
    a, b, c = l1 * l1, l2 * l2, l3 * l3
    slacks = {
        "1+l1^2>=l2^2+l3^2": (1.0 + a) - (b + c),
        "1+l2^2>=l1^2+l3^2": (1.0 + b) - (a + c),
        "1+l3^2>=l1^2+l2^2": (1.0 + c) - (a + b),
    }
    return _verdict(slacks)


def squared_map_choi(lam: LambdaPoint) -> HermitianOperator:
    """Choi operator of the squared Pauli map (4x4 closed form).

    Equals the doubled map applied to the maximally entangled projector:
    diagonal ``(1 +- l3^2)/4``, antidiagonal corners ``(l1^2 +- l2^2)/4``.
    """
    l1, l2, l3 = as_lambda_point(lam)
    a, b, c = l1 * l1, l2 * l2, l3 * l3
    m = np.array(
        [
            [1 + c, 0, 0, a + b],
            [0, 1 - c, a - b, 0],
            [0, a - b, 1 - c, 0],
            [a + b, 0, 0, 1 + c],
        ]
    ) / 4.0
    return HermitianOperator(m, (2, 2))


def squared_map_choi_eigs(lam: LambdaPoint) -> np.ndarray:
    """Closed-form spectrum of :func:`squared_map_choi`, ascending.

    The X-form eigenvalues reduce algebraically to the hyperboloid slacks
    over 4 plus one always-positive value, so the PSD verdict matches
    :func:`is_2tsp` exactly (same float expressions, no tolerance).
    """
    l1, l2, l3 = as_lambda_point(lam)
    a, b, c = l1 * l1, l2 * l2, l3 * l3
    eigs = np.array(
        [
            ((1.0 + a) - (b + c)) / 4.0,
            ((1.0 + b) - (a + c)) / 4.0,
            ((1.0 + c) - (a + b)) / 4.0,
            ((1.0 + c) + (a + b)) / 4.0,
        ]
    )
    eigs.sort()
    return eigs


def is_3tsp(lam: LambdaPoint) -> CriterionVerdict:
    """Three-fold tensor stability: the twelve cubic inequalities.

    Satisfied iff ``1 -+ l_i^3 -+ 3 l_i l_j^2 + 3 l_k^2 >= 0`` for every
    permutation ``(i, j, k)`` of the axes and both signs.
    """
    p = as_lambda_point(lam)
    slacks = {}
    for i, j, k in permutations((0, 1, 2)):
        li, lj, lk = p[i], p[j], p[k]
        core = li**3 + 3.0 * li * lj * lj
        base = f"i={i + 1},j={j + 1},k={k + 1}"
        slacks[f"{base},-"] = 1.0 - core + 3.0 * lk * lk
        slacks[f"{base},+"] = 1.0 + core + 3.0 * lk * lk
    return _verdict(slacks)


def ntsp_necessary(lam: LambdaPoint, n: int) -> CriterionVerdict:
    """Necessary condition for ``n``-fold tensor stability.

    For every permutation ``(i, j, k)``, every split ``p + q = n`` and both
    relative signs ``s``:

        (1+l_i)^p (1-l_i)^q + (1-l_i)^p (1+l_i)^q
            >= | (l_j+l_k)^p (l_j-l_k)^q + s (l_j-l_k)^p (l_j+l_k)^q |.

    Both sign branches are enforced; this reproduces :func:`is_2tsp` at
    ``n = 2`` and :func:`is_3tsp` at ``n = 3``.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    pt = as_lambda_point(lam)
    slacks = {}
    for i, j, k in permutations((0, 1, 2)):
        li, lj, lk = pt[i], pt[j], pt[k]
        u, v = 1.0 + li, 1.0 - li
        x, y = lj + lk, lj - lk
        for p in range(n + 1):
            q = n - p
            lhs = u**p * v**q + u**q * v**p
            rp = x**p * y**q
            rq = x**q * y**p
            base = f"i={i + 1},j={j + 1},k={k + 1},p={p}"
            slacks[f"{base},s=+1"] = lhs - abs(rp + rq)
            slacks[f"{base},s=-1"] = lhs - abs(rp - rq)
    return _verdict(slacks)


def ntsp_sufficient_ball(lam: LambdaPoint, n: int) -> bool:
    """Power-sum ball ``sum |l_i|^(n/(n-1)) <= 1``.

    Membership certifies the necessary region of :func:`ntsp_necessary`
    for the same ``n`` (not n-fold stability itself).
    """
    if n < 2:
        raise ValueError(f"the power-sum ball needs n >= 2, got {n}")
    p = as_lambda_point(lam)
    return bool(np.sum(np.abs(p) ** (n / (n - 1))) <= 1.0)


def lift_x_max(lam: LambdaPoint, n: int) -> float:
    """Largest admissible mixing parameter in :func:`lift_ntsp`."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    p = np.abs(as_lambda_point(lam))
    total = float(p.sum())
    if total < 1.0:
        raise ValueError("lift requires sum |lambda_i| >= 1")
    top = float(p.max())
    return 0.5 * (1.0 - top / total) * (2.0 / top) ** (1.0 / (n + 1))


def lift_ntsp(lam: LambdaPoint, n: int, x: float | None = None) -> np.ndarray:
    """Shrink an ``n``-tensor-stable point into an ``(n+1)``-stable one.

    Returns ``l~_i = ((|l1|+|l2|+|l3|)^-1 + x) / (1 + x) * l_i``; by the
    recurrence with an entanglement-breaking admixture, the output is
    ``(n+1)``-tensor-stable whenever the input is ``n``-tensor-stable.
    ``x`` defaults to the largest admissible value.
    """
    p = as_lambda_point(lam)
    total = float(np.abs(p).sum())
    if total < 1.0:
        raise ValueError("lift requires sum |lambda_i| >= 1")
    xm = lift_x_max(p, n)
    if x is None:
        x = xm
    if not 0.0 <= x <= xm:
        raise ValueError(f"x must lie in [0, {xm}], got {x}")
    return (1.0 / total + x) / (1.0 + x) * p


def mu_bound(min_eig_phi: float, min_eig_eb: float, n: int) -> float:
    """Largest admixture weight keeping the lifted map positive.

    Solves ``mu / (1 - mu) <= (min_eig_eb / |min_eig_phi|)^(1/(n+1))`` for
    the largest ``mu`` in ``[0, 1]``; returns 1 when the map output is
    already positive (``min_eig_phi >= 0``).
    """
    if min_eig_eb < 0:
        raise ValueError("the entanglement-breaking eigenvalue floor must be >= 0")
    if min_eig_phi >= 0:
        return 1.0
    r = (min_eig_eb / abs(min_eig_phi)) ** (1.0 / (n + 1))
    return r / (1.0 + r)


def depolarizing_pair_positive(q1: float, q2: float) -> bool:
    """Positivity of the two-sided depolarizing map: ``q1 q2 >= -1/3``."""
    return bool(abs(q1) <= 1.0 and abs(q2) <= 1.0 and q1 * q2 >= -1.0 / 3.0)


def hyperboloid_point(x: float, y: float) -> np.ndarray:
    """Boundary point of the 2-tensor-stable region from ruling parameters.

    ``l1 = (x+y)/(1+xy)``, ``l2 = (x-y)/(1+xy)``, ``l3 = (1-xy)/(1+xy)``
    for ``x, y`` in ``[0, 1]``; exactly one hyperboloid inequality is tight
    (the middle one, identically).
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"x and y must lie in [0, 1], got ({x}, {y})")
    den = 1.0 + x * y
    return np.array([(x + y) / den, (x - y) / den, (1.0 - x * y) / den])
