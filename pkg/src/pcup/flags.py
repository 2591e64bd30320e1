"""Flags, the persistent cup module's rank invariant, and l-cup barcodes."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cohomology import BarcodeWithReps
from .cup import iter_products
from .invariants import StepInvariant, merge_grids, mobius_invert
from .linalg import rank


class InternalConsistencyError(ArithmeticError):
    """A computed quantity violates a structural guarantee."""


def _check_flag(d: Sequence[int]) -> List[int]:
    d = [int(x) for x in d]
    if any(x < 0 for x in d):
        raise ValueError("flag dimensions must be nonnegative")
    if any(a < b for a, b in zip(d, d[1:])):
        raise ValueError(f"flag dimension {d} is not non-increasing")
    return d


def flag_decompose(d: Sequence[int]) -> List[int]:
    """Depths ``n`` of the indecomposable flags ``K^n`` summing to dimension ``d``.

    ``K^n`` has dimension ``(1, ..., 1, 0, ...)`` with ``n`` ones, so depth ``n``
    appears ``d[n-1] - d[n]`` times.
    """
    d = _check_flag(d) + [0]
    out = []
    for n in range(1, len(d)):
        out.extend([n] * (d[n - 1] - d[n]))
    return out


def flag_dim(parts: Iterable[int], length: Optional[int] = None) -> List[int]:
    """Dimension sequence of a direct sum of ``K^n``."""
    parts = list(parts)
    if any(n < 1 for n in parts):
        raise ValueError("depths start at 1")
    length = max(parts, default=0) if length is None else length
    return [sum(1 for n in parts if n >= k) for k in range(1, length + 1)]


def _cell_matrix(bc: BarcodeWithReps, a: float, b: float, max_deg: int, max_ell: int) -> np.ndarray:
    groups: Dict[Tuple[int, int], List[Dict[int, int]]] = {}
    for factors, prod, cls in iter_products(bc, a, b, max_ell):
        if prod.degree <= max_deg:
            groups.setdefault((prod.degree, len(factors)), []).append(cls)
    out = np.zeros((max_deg, max_ell), dtype=np.int64)
    for (p, ell), classes in groups.items():
        out[p - 1, ell - 1] = rank(classes, bc.p)
    return out


def phi_rank(bc: BarcodeWithReps, max_ell: Optional[int] = None, max_deg: Optional[int] = None) -> StepInvariant:
    """Rank invariant of the persistent cup module.

    Entry ``(p-1, l-1)`` at ``[a, b]`` is the dimension of the degree-p part of
    the l-fold products in the image of H+(X_b) -> H+(X_a).
    """
    top = max(bc.complex.max_dim, 0)
    max_deg = top if max_deg is None else max_deg
    max_ell = top if max_ell is None else max_ell
    if max_ell < 1 or max_deg < 1:
        raise ValueError("max_ell and max_deg must be >= 1")
    key = ("phi_rank", max_ell, max_deg)
    if key in bc._cache:
        return bc._cache[key]
    grid = list(bc.grid)
    m = len(grid)
    vals = np.zeros((m, m + 1, max_deg, max_ell), dtype=np.int64)
    memo: Dict[Tuple[float, frozenset], np.ndarray] = {}
    pos = bc.positive()
    ends = grid + [math.inf]
    for i, a in enumerate(grid):
        for j in range(i, m + 1):
            through = frozenset(k for k in pos if bc.bars[k].contains(a, ends[j]))
            mk = (a, through)
            if mk not in memo:
                memo[mk] = _cell_matrix(bc, a, ends[j], max_deg, max_ell)
            vals[i, j] = memo[mk]
    inv = StepInvariant(grid, vals)
    bc._cache[key] = inv
    return inv


@dataclass
class LCupBarcode:
    degree: int
    ell: int
    grid: Tuple[float, ...]
    bars: List[Tuple[float, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "ell": self.ell,
            "grid": list(self.grid),
            "bars": [[b, "inf" if d == math.inf else d] for b, d in self.bars],
        }

    @classmethod
    def from_json(cls, data) -> "LCupBarcode":
        bars = [(float(b), math.inf if d == "inf" else float(d)) for b, d in data["bars"]]
        return cls(int(data["degree"]), int(data["ell"]), tuple(map(float, data["grid"])), bars)


def lcup_barcode(bc: BarcodeWithReps, ell: int, p: int, rk: Optional[StepInvariant] = None) -> LCupBarcode:
    """Barcode of the degree-p part of the persistent l-cup module."""
    if ell < 1 or p < 1:
        raise ValueError("ell and p must be >= 1")
    if rk is None:
        top = max(bc.complex.max_dim, 1)
        rk = phi_rank(bc, max(top, ell), max(top, p))
    grid = rk.grid
    if p > rk.value_shape[0] or ell > rk.value_shape[1]:
        return LCupBarcode(p, ell, grid, [])
    scalar = StepInvariant(grid, rk.values[..., p - 1, ell - 1])
    dgm = mobius_invert(scalar)
    if not dgm.is_nonnegative():
        raise InternalConsistencyError(
            f"negative multiplicity in the degree-{p} {ell}-cup diagram"
        )
    try:
        bars = dgm.bars()
    except ValueError as e:
        raise InternalConsistencyError(str(e)) from e
    return LCupBarcode(p, ell, grid, bars)


def all_lcup_barcodes(bc: BarcodeWithReps) -> List[LCupBarcode]:
    top = max(bc.complex.max_dim, 1)
    rk = phi_rank(bc, top, top)
    return [lcup_barcode(bc, ell, p, rk) for p in range(1, top + 1) for ell in range(1, top + 1)]


def cup_from_lcup(barcodes: Sequence[LCupBarcode], grid: Optional[Sequence[float]] = None) -> StepInvariant:
    """Largest l whose l-cup barcode has a bar containing the interval."""
    g = list(grid or ())
    for bcd in barcodes:
        g.extend(bcd.grid)
        for b, d in bcd.bars:
            g.append(b)
            if d != math.inf:
                g.append(d)
    g = merge_grids(g)
    m = len(g)
    vals = np.zeros((m, m + 1), dtype=np.int64)
    arr = np.array(g)
    ends = np.append(arr, math.inf)
    for bcd in barcodes:
        for b, d in bcd.bars:
            block = np.outer(arr >= b, ends < d if d != math.inf else np.ones(m + 1, bool))
            vals[block] = np.maximum(vals[block], bcd.ell)
    return StepInvariant(g, vals).masked()


def bar_counts(barcodes: Sequence[LCupBarcode]) -> Dict[Tuple[int, int], Counter]:
    return {(b.degree, b.ell): Counter(b.bars) for b in barcodes}
