"""Comonotonicity and positive-dependence detection, plus the uniform
driver construction where a non-comonotone pair is positively dependent
with respect to the Lukasiewicz operator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .capacity import Capacity, GroundSpace, make_grid_lebesgue, mask_bools
from .integrals import SampleFunction, sample_function
from .operators import AggOperator
from .xreal import UNIT, DomainError

PAIRWISE_LIMIT = 10_000
POSDEP_TOL = 1e-12


@dataclass
class DependenceReport:
    kind: str  # "comonotone" | "positively_dependent"
    holds: bool
    witness: Optional[tuple] = None
    op: Optional[str] = None
    slack: float = float("inf")  # worst margin found (posdep)


def _comonotone_pairwise(f: np.ndarray, g: np.ndarray) -> Optional[tuple[int, int]]:
    n = len(f)
    for x in range(n):
        for y in range(x + 1, n):
            if (f[x] - f[y]) * (g[x] - g[y]) < 0:
                return (x, y)
    return None


def _comonotone_sorted(f: np.ndarray, g: np.ndarray) -> Optional[tuple[int, int]]:
    """Comonotone iff sorting by (f, g) leaves g nondecreasing."""
    order = np.lexsort((g, f))
    gs = g[order]
    drops = np.flatnonzero(np.diff(gs) < 0)
    if len(drops) == 0:
        return None
    i = drops[0]
    return (int(order[i + 1]), int(order[i]))


def is_comonotone(f: SampleFunction, g: SampleFunction,
                  method: str = "auto") -> DependenceReport:
    """Check (f(x)-f(y))(g(x)-g(y)) >= 0 for all point pairs."""
    if f.space.n != g.space.n:
        raise DomainError("comonotonicity needs a common space")
    fv, gv = f.values, g.values
    if method == "auto":
        method = "pairwise" if f.space.n <= PAIRWISE_LIMIT else "sorted"
    if method == "pairwise":
        w = _comonotone_pairwise(fv, gv)
    elif method == "sorted":
        w = _comonotone_sorted(fv, gv)
    else:
        raise DomainError(f"unknown method {method!r}")
    return DependenceReport("comonotone", holds=w is None, witness=w)


def check_positive_dependence(f: SampleFunction, A: int, g: SampleFunction,
                              B: int, c: Capacity, tri: AggOperator,
                              tol: float = POSDEP_TOL) -> DependenceReport:
    """Check mu({f|_A >= a} n {g|_B >= b}) >= mu({f|_A >= a}) tri mu({g|_B >= b}).

    Both sides are step functions constant between consecutive function
    values, so checking the distinct-value cross product (plus level 0) is
    exact, not sampled.
    """
    n = c.space.n
    if f.space.n != n or g.space.n != n:
        raise DomainError("functions and capacity must share a space")
    selA = mask_bools(A, n)
    selB = mask_bools(B, n)
    levels_a = np.unique(np.concatenate(([0.0], f.values[selA]))) if selA.any() else np.array([0.0])
    levels_b = np.unique(np.concatenate(([0.0], g.values[selB]))) if selB.any() else np.array([0.0])

    FA = (f.values[None, :] >= levels_a[:, None]) & selA[None, :]
    GB = (g.values[None, :] >= levels_b[:, None]) & selB[None, :]
    mFA = np.array([c.measure_bools(row) for row in FA])
    mGB = np.array([c.measure_bools(row) for row in GB])

    if c.kind in ("additive", "grid", "distorted"):
        joint_w = FA.astype(float) @ (c.weights[:, None] * GB.T)
        if c.kind == "distorted":
            joint_w = joint_w**c.gamma
    elif c.kind == "sup":
        joint_w = (FA.astype(float) @ GB.T.astype(float) > 0).astype(float)
    else:
        joint_w = np.empty((len(levels_a), len(levels_b)))
        for i in range(len(levels_a)):
            for j in range(len(levels_b)):
                joint_w[i, j] = c.measure_bools(FA[i] & GB[j])

    rhs = tri.vec(mFA[:, None], mGB[None, :])
    margin = joint_w - rhs
    i, j = np.unravel_index(np.argmin(margin), margin.shape)
    worst = float(margin[i, j])
    holds = worst >= -tol
    witness = None if holds else (float(levels_a[i]), float(levels_b[j]),
                                  float(joint_w[i, j]), float(rhs[i, j]))
    return DependenceReport("positively_dependent", holds=holds,
                            witness=witness, op=tri.name, slack=worst)


INCREASING_BIJECTIONS = {
    "identity": (lambda t: t, lambda t: t),
    "square": (lambda t: t**2, np.sqrt),
    "sqrt": (np.sqrt, lambda t: t**2),
}


def make_uniform_example(phi_id: str, psi_id: str, n: int):
    """Discretized uniform driver U on [0,1] with f = phi(U) and
    h = 1 - psi(U): not comonotone, but positively dependent with respect
    to the Lukasiewicz operator."""
    try:
        phi = INCREASING_BIJECTIONS[phi_id][0]
        psi = INCREASING_BIJECTIONS[psi_id][0]
    except KeyError as e:
        raise DomainError(f"unknown bijection id {e.args[0]!r}")
    space, P = make_grid_lebesgue(0.0, 1.0, n)
    u = space.coord_array()
    f = sample_function(space, np.clip(phi(u), 0.0, 1.0), UNIT)
    h = sample_function(space, np.clip(1.0 - psi(u), 0.0, 1.0), UNIT)
    return f, h, P
