"""Cup products, supports of products, and the persistent cup-length diagram."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cohomology import BarcodeWithReps, Cochain
from .complex import FilteredComplex
from .invariants import StepInvariant, merge_grids

Interval = Tuple[float, float]


def cup(c: FilteredComplex, sigma: Cochain, tau: Cochain, p: int = 2) -> Cochain:
    """Alexander-Whitney cup product of two cochains on ``c``.

    The coefficient on ``[v_0..v_{p+q}]`` is ``sigma[v_0..v_p] * tau[v_p..v_{p+q}]``.
    """
    deg = sigma.degree + tau.degree
    if not sigma.coeffs or not tau.coeffs or deg > c.max_dim:
        return Cochain(deg, {})
    by_first: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}
    for j, y in tau.coeffs.items():
        s = c.simplices[j]
        by_first.setdefault(s[0], []).append((s[1:], y))
    out: Dict[int, int] = {}
    index = c.index
    for i, x in sigma.coeffs.items():
        front = c.simplices[i]
        for tail, y in by_first.get(front[-1], ()):
            if tail and tail[0] <= front[-1]:
                continue
            k = index.get(front + tail)
            if k is None:
                continue
            v = (out.get(k, 0) + x * y) % p
            if v:
                out[k] = v
            else:
                del out[k]
    return Cochain(deg, out)


def product(bc: BarcodeWithReps, bars: Sequence[int]) -> Cochain:
    """Cup product of the representatives of ``bars``, in list order."""
    if not bars:
        raise ValueError("empty product")
    reps = [bc.bars[k].representative for k in bars]
    out = reps[0]
    for r in reps[1:]:
        out = cup(bc.complex, out, r, bc.p)
    return out


@dataclass(frozen=True)
class SupportInterval:
    """Half-open ``[left, right)``, or the empty set when ``left`` is None."""

    left: Optional[float] = None
    right: Optional[float] = None

    @property
    def empty(self) -> bool:
        return self.left is None

    def __bool__(self) -> bool:
        return not self.empty

    def as_tuple(self) -> Optional[Interval]:
        return None if self.empty else (self.left, self.right)


EMPTY = SupportInterval()


def _top_below(grid: Sequence[float], d: float) -> Optional[int]:
    """Index of the largest grid value strictly below d."""
    k = bisect.bisect_left(grid, d) - 1
    return k if k >= 0 else None


def _support_of_cochain(bc: BarcodeWithReps, sigma: Cochain, lo: float, d: float) -> Tuple[SupportInterval, Dict[int, int]]:
    """Support of a cocycle on ``[lo, d)`` and its class at the top grid value.

    The nonvanishing set is closed upward inside ``[lo, d)``, so a binary
    search over grid values finds the left end.
    """
    grid = bc.grid
    top = _top_below(grid, d)
    if top is None or grid[top] < lo or not sigma:
        return EMPTY, {}
    cls = bc.restrict_class(sigma, grid[top])
    if not cls:
        return EMPTY, {}
    low = bisect.bisect_left(grid, lo)
    hi = top
    # invariant: class nonzero at grid[hi]; find the smallest such index >= low
    while low < hi:
        mid = (low + hi) // 2
        if bc.is_coboundary(sigma, grid[mid]):
            low = mid + 1
        else:
            hi = mid
    return SupportInterval(grid[hi], d), cls


def support(bc: BarcodeWithReps, bars: Sequence[int]) -> SupportInterval:
    """Set of t where the product of the bar classes is nonzero in H*(X_t)."""
    if not bars:
        raise ValueError("support needs at least one bar")
    for k in bars:
        if not 0 <= k < len(bc.bars):
            raise IndexError(f"bar index {k} is not in this barcode")
        if bc.bars[k].degree < 1:
            raise ValueError("support is defined for positive-degree bars only")
    lo = max(bc.bars[k].birth for k in bars)
    d = min(bc.bars[k].death for k in bars)
    if lo >= d:
        return EMPTY
    return _support_of_cochain(bc, product(bc, bars), lo, d)[0]


@dataclass
class CupLengthDiagram:
    """Map from bars ``[b, d)`` to the largest realized product length."""

    grid: Tuple[float, ...]
    entries: Dict[Interval, int] = field(default_factory=dict)

    def __getitem__(self, interval: Interval) -> int:
        return self.entries.get(interval, 0)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def to_json(self) -> dict:
        return {
            "grid": list(self.grid),
            "bars": [
                {"interval": [b, "inf" if d == math.inf else d], "value": v}
                for (b, d), v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "CupLengthDiagram":
        entries = {}
        for e in data["bars"]:
            b, d = e["interval"]
            entries[(float(b), math.inf if d == "inf" else float(d))] = int(e["value"])
        return cls(tuple(float(g) for g in data["grid"]), entries)


@dataclass
class _Element:
    cochain: Cochain
    support: SupportInterval
    factors: Tuple[int, ...]


def cup_length_diagram(bc: BarcodeWithReps, *, trace: Optional[list] = None) -> CupLengthDiagram:
    """Persistent cup-length diagram.

    Starting from the positive-degree representatives, each round multiplies
    every surviving product by every positive-degree representative and keeps
    the ones with nonempty support. Products whose support and class at the
    top of the support coincide are merged: the class at the top determines
    every restriction below it, so later rounds cannot tell them apart.

    ``trace``, when given a list, receives ``(factors, support)`` for every
    product tried.
    """
    pos = bc.positive()
    diagram = CupLengthDiagram(bc.grid)
    level: List[_Element] = []
    for k in pos:
        b = bc.bars[k]
        s = SupportInterval(b.birth, b.death)
        level.append(_Element(b.representative, s, (k,)))
        if trace is not None:
            trace.append(((k,), s))
    ell = 1
    while level:
        for el in level:
            key = el.support.as_tuple()
            diagram.entries[key] = max(diagram.entries.get(key, 0), ell)
        nxt: Dict[tuple, _Element] = {}
        for el in level:
            for k in pos:
                bar = bc.bars[k]
                if el.cochain.degree + bar.degree > bc.complex.max_dim:
                    continue
                lo = max(el.support.left, bar.birth)
                d = min(el.support.right, bar.death)
                factors = el.factors + (k,)
                if lo >= d:
                    s, cls = EMPTY, {}
                else:
                    prod = cup(bc.complex, el.cochain, bar.representative, bc.p)
                    s, cls = _support_of_cochain(bc, prod, lo, d)
                if trace is not None:
                    trace.append((factors, s))
                if not s:
                    continue
                key = (s.as_tuple(), prod.degree, tuple(sorted(cls.items())))
                if key not in nxt:
                    nxt[key] = _Element(prod, s, factors)
        level = [nxt[k] for k in sorted(nxt, key=repr)]
        ell += 1
    return diagram


def invariant_from_diagram(diagram: CupLengthDiagram, grid: Optional[Sequence[float]] = None) -> StepInvariant:
    """Value at [a, b] is the max over diagram bars containing [a, b]; max of nothing is 0."""
    g = list(diagram.grid if grid is None else grid)
    for b, d in diagram.entries:
        g.append(b)
        if d != math.inf:
            g.append(d)
    g = merge_grids(g)
    m = len(g)
    vals = np.zeros((m, m + 1), dtype=np.int64)
    ends = np.array(g + [math.inf])
    for (b, d), v in diagram.entries.items():
        rows = np.array(g) >= b
        cols = ends < d if d != math.inf else np.ones(m + 1, bool)
        block = np.outer(rows, cols)
        vals[block] = np.maximum(vals[block], v)
    return StepInvariant(g, vals).masked()


def _positive_through(bc: BarcodeWithReps, a: float, b: float) -> List[int]:
    return [k for k in bc.positive() if bc.bars[k].contains(a, b)]


def iter_products(bc: BarcodeWithReps, a: float, b: float, max_len: Optional[int] = None):
    """Nonzero-at-a products of representatives of bars containing [a, b].

    Yields ``(factors, cochain, class at a)`` for multisets of bar indices,
    pruning any multiset whose prefix already vanishes at ``a``.
    """
    basis = _positive_through(bc, a, b)
    top = bc.complex.max_dim
    max_len = top if max_len is None else max_len
    cache = bc._cache.setdefault("products", {})

    def grow(prefix: Tuple[int, ...], start: int, cochain: Optional[Cochain]):
        for pos in range(start, len(basis)):
            k = basis[pos]
            rep = bc.bars[k].representative
            deg = rep.degree + (cochain.degree if cochain is not None else 0)
            if deg > top:
                continue
            factors = prefix + (k,)
            if factors not in cache:
                cache[factors] = rep if cochain is None else cup(bc.complex, cochain, rep, bc.p)
            prod = cache[factors]
            cls = bc.restrict_class(prod, a)
            if not cls:
                continue
            yield factors, prod, cls
            if len(factors) < max_len:
                yield from grow(factors, pos, prod)

    yield from grow((), 0, None)


def cup_length_of_image(bc: BarcodeWithReps, a: float, b: float) -> int:
    """Cup-length of the image of H+(X_b) -> H+(X_a), by brute force."""
    if a > b:
        raise ValueError("need a <= b")
    best = 0
    for factors, _, _ in iter_products(bc, a, b):
        best = max(best, len(factors))
    return best


def cup_length_invariant(bc: BarcodeWithReps) -> StepInvariant:
    return invariant_from_diagram(cup_length_diagram(bc), bc.grid)


def invariant_max(i1: StepInvariant, i2: StepInvariant) -> StepInvariant:
    g = merge_grids(i1.grid, i2.grid)
    return StepInvariant(g, np.maximum(i1.resample(g).values, i2.resample(g).values))


def invariant_sum(i1: StepInvariant, i2: StepInvariant) -> StepInvariant:
    g = merge_grids(i1.grid, i2.grid)
    return StepInvariant(g, i1.resample(g).values + i2.resample(g).values)
