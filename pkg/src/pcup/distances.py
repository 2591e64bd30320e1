"""Erosion distance between step invariants and bottleneck distance between barcodes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .invariants import StepInvariant, merge_grids


@dataclass
class ErosionResult:
    value: float
    candidates: List[float] = field(default_factory=list)

    def __float__(self) -> float:
        return float(self.value)


def _snap(grid: Sequence[float], x: np.ndarray) -> np.ndarray:
    return np.searchsorted(np.asarray(grid, dtype=float), x, side="right") - 1


def _table(inv: StepInvariant, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Values at every pair (a_k, b_l); ``b`` may contain inf."""
    rows = _snap(inv.grid, a)
    cols = np.where(np.isinf(b), len(inv.grid), _snap(inv.grid, np.where(np.isinf(b), 0.0, b)))
    if not len(inv.grid):
        return np.zeros((len(a), len(b)) + inv.value_shape, dtype=np.int64)
    out = inv.values[np.clip(rows, 0, None)][:, np.clip(cols, 0, None)]
    out[rows < 0] = 0
    return out


def _dominates(i1: StepInvariant, i2: StepInvariant, eps: float, breaks: np.ndarray) -> bool:
    """Whether ``i1[a, b] >= i2[a - eps, b + eps]`` for every interval."""
    pts = np.unique(np.concatenate([breaks, breaks + eps, breaks - eps]))
    reps = np.append((pts[:-1] + pts[1:]) / 2, pts[-1] + 1.0)
    ends = np.append(reps, math.inf)
    lhs = _table(i1, reps, ends)
    rhs = _table(i2, reps - eps, ends + eps)
    ok = lhs >= rhs
    if ok.ndim > 2:
        ok = ok.reshape(ok.shape[0], ok.shape[1], -1).all(axis=2)
    k = len(reps)
    valid = np.arange(k)[:, None] <= np.arange(k + 1)[None, :]
    return bool(np.all(ok[valid]))


def eroded(i1: StepInvariant, i2: StepInvariant, eps: float) -> bool:
    """Both erosion inequalities at ``eps``."""
    breaks = np.array(merge_grids(i1.grid, i2.grid), dtype=float)
    if not len(breaks):
        return True
    return _dominates(i1, i2, eps, breaks) and _dominates(i2, i1, eps, breaks)


def erosion_candidates(i1: StepInvariant, i2: StepInvariant) -> List[float]:
    """Values of eps where the eroded predicate can change.

    These are the differences of grid values and their halves: a shifted
    endpoint meets a grid value, or the two shifted endpoints of an interval
    meet each other.
    """
    g = np.array(merge_grids(i1.grid, i2.grid), dtype=float)
    diffs = np.abs(g[:, None] - g[None, :]).ravel()
    return sorted(set(np.concatenate([[0.0], diffs, diffs / 2]).tolist()))


def erosion(i1: StepInvariant, i2: StepInvariant) -> ErosionResult:
    """Erosion distance: the least eps with each invariant eroded by the other."""
    if i1.value_shape != i2.value_shape:
        raise ValueError(
            f"codomain mismatch: value shapes {i1.value_shape} and {i2.value_shape}"
        )
    cands = erosion_candidates(i1, i2)
    # the predicate is constant between consecutive candidates and monotone
    probes = [(x + y) / 2 for x, y in zip(cands, cands[1:])] + [cands[-1] + 1.0]
    if not eroded(i1, i2, probes[-1]):
        return ErosionResult(math.inf, cands)
    lo, hi = 0, len(probes) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if eroded(i1, i2, probes[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ErosionResult(cands[lo], cands)


# -- bottleneck ---------------------------------------------------------------

Bar = Tuple[float, float]


def _split(bars: Sequence[Bar]):
    fin = [(float(b), float(d)) for b, d in bars if d != math.inf and d > b]
    inf = sorted(float(b) for b, d in bars if d == math.inf)
    return fin, inf


def _linf(x: Bar, y: Bar) -> float:
    return max(abs(x[0] - y[0]), abs(x[1] - y[1]))


def _half(x: Bar) -> float:
    return (x[1] - x[0]) / 2


def _feasible(f1: List[Bar], f2: List[Bar], eps: float) -> bool:
    """Perfect matching of f1 + diag(f2) against f2 + diag(f1) within eps."""
    n1, n2 = len(f1), len(f2)
    n = n1 + n2
    rows, cols = [], []
    for i, x in enumerate(f1):
        for j, y in enumerate(f2):
            if _linf(x, y) <= eps:
                rows.append(i)
                cols.append(j)
        if _half(x) <= eps:
            rows.append(i)
            cols.append(n2 + i)
    for j, y in enumerate(f2):
        if _half(y) <= eps:
            rows.append(n1 + j)
            cols.append(j)
        # diagonal copies can always pair with each other
        for i in range(n1):
            rows.append(n1 + j)
            cols.append(n2 + i)
    if n == 0:
        return True
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck(b1: Sequence[Bar], b2: Sequence[Bar]) -> float:
    """Bottleneck distance between two barcodes of half-open bars.

    Bars of infinite length are matched among themselves by birth; unequal
    numbers of them give an infinite distance. Empty bars are ignored.
    """
    f1, inf1 = _split(b1)
    f2, inf2 = _split(b2)
    if len(inf1) != len(inf2):
        return math.inf
    base = max((abs(x - y) for x, y in zip(inf1, inf2)), default=0.0)
    cands = {0.0}
    cands.update(_half(x) for x in f1 + f2)
    cands.update(_linf(x, y) for x in f1 for y in f2)
    cands = sorted(c for c in cands if c >= base)
    if not cands or cands[0] != base:
        cands.insert(0, base)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(f1, f2, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]
