"""Finite ground spaces, monotone measures (capacities), and structural checkers.

Subsets of an n-point space are n-bit integer masks.  Structured
capacities (additive, grid, distorted, sup) evaluate any mask on demand;
explicit tables hold all 2^n values and are capped at n = 20.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .xreal import EXTENDED, INF, UNIT, DegenerateInputError, DomainError

MAX_EXPLICIT_N = 20
#: exhaustive checks run when the relevant pair count stays below this
EXHAUSTIVE_PAIR_LIMIT = 10**6
SAMPLED_TRIALS = 10**5
MODULAR_TOL = 1e-12


class InvalidCapacityError(ValueError):
    """A capacity axiom (empty set, positivity, range) is violated."""


@dataclass(frozen=True)
class GroundSpace:
    """Finite indexed point set, optionally carrying grid coordinates."""

    n: int
    coords: Optional[tuple] = None
    widths: Optional[tuple] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a ground space needs at least one point")
        if (self.coords is None) != (self.widths is None):
            raise ValueError("coords and widths must be given together")
        if self.coords is not None:
            if len(self.coords) != self.n or len(self.widths) != self.n:
                raise ValueError("coords/widths length must equal n")
            cs = list(self.coords)
            if any(c < 0 for c in cs):
                raise ValueError("coordinates must be nonnegative")
            if any(b <= a for a, b in zip(cs, cs[1:])):
                raise ValueError("coordinates must be strictly increasing")
            if any(w <= 0 for w in self.widths):
                raise ValueError("cell widths must be positive")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def coord_array(self) -> np.ndarray:
        if self.coords is None:
            raise DomainError("space has no coordinates")
        return np.asarray(self.coords, dtype=float)


def mask_indices(mask: int) -> list[int]:
    out = []
    i = 0
    m = mask
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def indices_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def mask_bools(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=bool)


@dataclass(frozen=True)
class Capacity:
    """Monotone set function over subsets of a finite ground space.

    ``kind`` is one of ``additive``, ``grid``, ``distorted``, ``sup``,
    ``explicit``, ``derived``.  Instances are immutable; evaluation is pure.
    """

    space: GroundSpace
    range: str
    kind: str
    weights: Optional[np.ndarray] = field(default=None, compare=False)
    table: Optional[np.ndarray] = field(default=None, compare=False)
    gamma: Optional[float] = None
    fn: Optional[Callable[[int], float]] = field(default=None, compare=False)

    def __call__(self, mask: int) -> float:
        n = self.space.n
        mask &= self.space.full_mask
        k = self.kind
        if k == "sup":
            return 0.0 if mask == 0 else 1.0
        if k in ("additive", "grid"):
            return float(sum(self.weights[i] for i in mask_indices(mask)))
        if k == "distorted":
            t = sum(self.weights[i] for i in mask_indices(mask))
            return float(t**self.gamma)
        if k == "explicit":
            return float(self.table[mask])
        return float(self.fn(mask))

    def measure_bools(self, sel: np.ndarray) -> float:
        """Measure of the subset given as a boolean array."""
        k = self.kind
        if k in ("additive", "grid"):
            return float(self.weights[sel].sum())
        if k == "distorted":
            return float(self.weights[sel].sum() ** self.gamma)
        if k == "sup":
            return 1.0 if sel.any() else 0.0
        return self(indices_mask(np.flatnonzero(sel)))

    def chain_measures(self, order: Sequence[int]) -> np.ndarray:
        """Measures of the nested prefixes of ``order``: entry k is
        the measure of {order[0], ..., order[k-1]} (entry 0 is 0)."""
        order = np.asarray(order, dtype=int)
        k = self.kind
        if k in ("additive", "grid"):
            return np.concatenate(([0.0], np.cumsum(self.weights[order])))
        if k == "distorted":
            return np.concatenate(
                ([0.0], np.cumsum(self.weights[order]) ** self.gamma)
            )
        if k == "sup":
            out = np.ones(len(order) + 1)
            out[0] = 0.0
            return out
        out = np.empty(len(order) + 1)
        out[0] = 0.0
        m = 0
        for j, i in enumerate(order):
            m |= 1 << int(i)
            out[j + 1] = self(m)
        return out

    @property
    def total(self) -> float:
        return self(self.space.full_mask)

    def structural(self, prop: str) -> Optional[bool]:
        """True/False when the property is known by construction, else None."""
        k = self.kind
        if k in ("additive", "grid"):
            return True  # modular, hence everything below it
        if k == "distorted":
            if prop == "monotone":
                return True
            if prop == "modular":
                return True if self.gamma == 1.0 else None
            if self.gamma <= 1.0:  # concave distortion of a modular measure
                return True
            return None
        if k == "sup":
            if prop in ("monotone", "submodular", "subadditive"):
                return True
            return None
        return None


def _infer_range(total: float) -> str:
    return UNIT if total <= 1.0 + 1e-15 else EXTENDED


def make_additive(weights: Sequence[float], space: Optional[GroundSpace] = None) -> Capacity:
    """Additive (modular) capacity from per-point weights."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) == 0:
        raise InvalidCapacityError("weights must be a nonempty 1-d sequence")
    if (w < 0).any():
        raise InvalidCapacityError("weights must be nonnegative")
    if w.sum() == 0:
        raise InvalidCapacityError("all-zero weights: the whole space must have positive measure")
    if space is None:
        space = GroundSpace(len(w))
    elif space.n != len(w):
        raise InvalidCapacityError("weight count must match the space")
    return Capacity(space=space, range=_infer_range(float(w.sum())), kind="additive", weights=w)


def make_sup_capacity(space: GroundSpace) -> Capacity:
    """The {0,1} capacity giving measure 1 to every nonempty set."""
    return Capacity(space=space, range=UNIT, kind="sup")


def make_distorted(weights: Sequence[float], gamma: float,
                   space: Optional[GroundSpace] = None) -> Capacity:
    """Power distortion t -> t**gamma of an additive capacity."""
    if not (gamma > 0) or not math.isfinite(gamma):
        raise InvalidCapacityError("distortion exponent must be positive and finite")
    base = make_additive(weights, space)
    total = float(base.weights.sum() ** gamma)
    return Capacity(space=base.space, range=_infer_range(total),
                    kind="distorted", weights=base.weights, gamma=gamma)


def make_grid_lebesgue(a: float, b: float, steps: int) -> tuple[GroundSpace, Capacity]:
    """Discretized Lebesgue measure on [a, b]: midpoint cells of equal width."""
    if not a < b:
        raise InvalidCapacityError("grid requires a < b")
    if steps < 1:
        raise InvalidCapacityError("grid requires at least one cell")
    h = (b - a) / steps
    coords = a + h * (np.arange(steps) + 0.5)
    widths = np.full(steps, h)
    space = GroundSpace(steps, coords=tuple(coords), widths=tuple(widths))
    cap = Capacity(space=space, range=_infer_range(b - a), kind="grid", weights=widths)
    return space, cap


def make_explicit(table: Sequence[float], space: Optional[GroundSpace] = None,
                  range_tag: Optional[str] = None) -> Capacity:
    """Capacity from a full 2^n value table (monotonicity is checked
    separately via check_monotone, so deliberately broken tables are
    representable)."""
    t = np.asarray(table, dtype=float)
    n = int(round(math.log2(len(t))))
    if 2**n != len(t):
        raise InvalidCapacityError("table length must be a power of two")
    if n > MAX_EXPLICIT_N:
        raise InvalidCapacityError(f"explicit tables are capped at n={MAX_EXPLICIT_N}")
    if t[0] != 0.0:
        raise InvalidCapacityError("the empty set must have measure 0")
    if not t[-1] > 0.0:
        raise InvalidCapacityError("the whole space must have positive measure")
    if (t < 0).any():
        raise InvalidCapacityError("capacity values must be nonnegative")
    if space is None:
        space = GroundSpace(n)
    elif space.n != n:
        raise InvalidCapacityError("table size must match the space")
    if range_tag is None:
        range_tag = UNIT if float(np.nanmax(t)) <= 1.0 else EXTENDED
    if range_tag == UNIT and float(np.nanmax(t)) > 1.0:
        raise InvalidCapacityError("unit-range capacity has a value above 1")
    return Capacity(space=space, range=range_tag, kind="explicit", table=t)


def make_random_monotone(n: int, rng: np.random.Generator) -> Capacity:
    """Random monotone capacity with mu(X) = 1: i.i.d. uniforms per subset,
    one upward max pass to enforce monotonicity, rescaled."""
    if n > MAX_EXPLICIT_N:
        raise InvalidCapacityError(f"random explicit capacities are capped at n={MAX_EXPLICIT_N}")
    t = rng.uniform(size=2**n)
    t[0] = 0.0
    for mask in range(1, 2**n):
        m = mask
        while m:
            bit = m & -m
            prev = t[mask ^ bit]
            if prev > t[mask]:
                t[mask] = prev
            m ^= bit
    t /= t[-1]
    return make_explicit(t)


def normalize(c: Capacity, A: int) -> Capacity:
    """The normalized capacity m(B) = mu(A n B) / mu(A)."""
    muA = c(A)
    if muA == 0.0 or math.isinf(muA):
        raise DegenerateInputError("normalize needs 0 < mu(A) < inf")
    A &= c.space.full_mask

    def fn(mask: int, _c=c, _A=A, _muA=muA) -> float:
        return _c(mask & _A) / _muA

    return Capacity(space=c.space, range=UNIT, kind="derived", fn=fn)


@dataclass
class PropertyReport:
    """Outcome of a structural property check."""

    property: str
    holds: bool
    mode: str  # "exhaustive" | "sampled" | "structural"
    slack: float
    witness: Optional[tuple[int, int]] = None
    trials: Optional[int] = None
    seed: Optional[int] = None


def _margin(prop: str, c: Capacity, a: int, b: int) -> float:
    """How far the pair (a, b) is from violating ``prop`` (negative = violation)."""
    if prop == "monotone":  # b = a | single extra point
        return c(b) - c(a)
    va, vb = c(a), c(b)
    vi, vu = c(a & b), c(a | b)
    if prop == "submodular":
        return va + vb - vi - vu
    if prop == "subadditive":
        return va + vb - vu
    if prop == "modular":
        return MODULAR_TOL - abs(va + vb - vi - vu)
    raise ValueError(f"unknown property {prop!r}")


def _random_mask(rng: np.random.Generator, n: int) -> int:
    nbytes = (n + 7) // 8
    return int.from_bytes(rng.bytes(nbytes), "little") & ((1 << n) - 1)


def _check_property(prop: str, c: Capacity, mode: str, seed: int,
                    trials: int) -> PropertyReport:
    n = c.space.n
    if prop == "monotone":
        pair_count = n * 2 ** (n - 1)
    else:
        pair_count = 4**n

    if mode == "auto":
        if pair_count <= EXHAUSTIVE_PAIR_LIMIT:
            mode = "exhaustive"
        elif c.structural(prop) is not None:
            mode = "structural"
        else:
            mode = "sampled"

    if mode == "structural":
        known = c.structural(prop)
        if known is None:
            raise DomainError(f"{prop} is not known structurally for kind {c.kind!r}")
        return PropertyReport(prop, known, "structural", slack=0.0)

    tol = MODULAR_TOL
    worst = math.inf
    witness = None

    def consider(a: int, b: int):
        nonlocal worst, witness
        m = _margin(prop, c, a, b)
        if m < worst:
            worst = m
            if m < -tol:
                witness = (a, b)

    if mode == "exhaustive":
        if pair_count > EXHAUSTIVE_PAIR_LIMIT:
            raise DomainError("pair count too large for exhaustive checking")
        vals = c.table if c.kind == "explicit" else np.array(
            [c(m) for m in range(2**n)])
        masks = np.arange(2**n)
        if prop == "monotone":
            worst_a = -1
            for i in range(n):
                a = masks[(masks >> i) & 1 == 0]
                margins = vals[a | (1 << i)] - vals[a]
                j = int(np.argmin(margins))
                if margins[j] < worst:
                    worst = float(margins[j])
                    worst_a = (int(a[j]), int(a[j] | (1 << i)))
            witness = worst_a if worst < -tol else None
        else:
            A = masks[:, None]
            B = masks[None, :]
            if prop == "submodular":
                margins = vals[A] + vals[B] - vals[A & B] - vals[A | B]
            elif prop == "subadditive":
                margins = vals[A] + vals[B] - vals[A | B]
            else:  # modular
                margins = tol - np.abs(vals[A] + vals[B]
                                       - vals[A & B] - vals[A | B])
            i, j = np.unravel_index(int(np.argmin(margins)), margins.shape)
            worst = float(margins[i, j])
            witness = (int(i), int(j)) if worst < -tol else None
        return PropertyReport(prop, witness is None, "exhaustive",
                              slack=worst, witness=witness)

    rng = np.random.default_rng(seed)
    for _ in range(trials):
        if prop == "monotone":
            a = _random_mask(rng, n)
            free = [i for i in range(n) if not (a >> i) & 1]
            if not free:
                continue
            i = free[int(rng.integers(len(free)))]
            consider(a, a | (1 << i))
        else:
            consider(_random_mask(rng, n), _random_mask(rng, n))
    return PropertyReport(prop, witness is None, "sampled",
                          slack=worst, witness=witness, trials=trials, seed=seed)


def check_monotone(c: Capacity, mode: str = "auto", seed: int = 0,
                   trials: int = SAMPLED_TRIALS) -> PropertyReport:
    return _check_property("monotone", c, mode, seed, trials)


def check_submodular(c: Capacity, mode: str = "auto", seed: int = 0,
                     trials: int = SAMPLED_TRIALS) -> PropertyReport:
    return _check_property("submodular", c, mode, seed, trials)


def check_subadditive(c: Capacity, mode: str = "auto", seed: int = 0,
                      trials: int = SAMPLED_TRIALS) -> PropertyReport:
    return _check_property("subadditive", c, mode, seed, trials)


def check_modular(c: Capacity, mode: str = "auto", seed: int = 0,
                  trials: int = SAMPLED_TRIALS) -> PropertyReport:
    return _check_property("modular", c, mode, seed, trials)
