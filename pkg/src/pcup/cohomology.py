"""Persistent cohomology with representative cocycles."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import _kernels
from .complex import FilteredComplex
from .linalg import RowReduction, SparseVec, add_scaled, check_field, normalize, reduce_against, row_reduce


class NotACocycleError(ValueError):
    """A cochain restricted to X_t has nonzero coboundary there."""


@dataclass(frozen=True)
class Cochain:
    """A p-cochain: coefficients keyed by simplex position in the complex."""

    degree: int
    coeffs: Dict[int, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def restricted(self, n: int) -> "Cochain":
        return Cochain(self.degree, {i: c for i, c in self.coeffs.items() if i < n})


@dataclass(frozen=True)
class Bar:
    degree: int
    birth: float
    death: float
    representative: Cochain

    @property
    def interval(self) -> Tuple[float, float]:
        return (self.birth, self.death)

    def contains(self, a: float, b: float) -> bool:
        """Whether the closed interval [a, b] lies in [birth, death)."""
        return self.birth <= a and (b < self.death or self.death == math.inf)


def coboundary(c: FilteredComplex, sigma: Cochain, p: int, n: Optional[int] = None) -> SparseVec:
    """Coboundary of ``sigma`` restricted to the first ``n`` simplices."""
    n = len(c) if n is None else n
    out: SparseVec = {}
    for i, x in sigma.coeffs.items():
        if i >= n:
            continue
        for j, sign in c.cofacets(i):
            if j >= n:
                break
            y = (out.get(j, 0) + sign * x) % p
            if y:
                out[j] = y
            else:
                out.pop(j, None)
    return out


def _coboundary_basis(c: FilteredComplex, degree: int, n: int, p: int) -> RowReduction:
    """Reduced basis of B^degree(X) for X the first n simplices."""
    key = ("B", degree, n, p)
    if key not in c._cache:
        rows = []
        if degree > 0:
            for i in c.of_dim(degree - 1, n):
                rows.append(coboundary(c, Cochain(degree - 1, {i: 1}), p, n))
        c._cache[key] = row_reduce(rows, p)
    return c._cache[key]


def is_coboundary(c: FilteredComplex, sigma: Cochain, t: float, p: int = 2) -> bool:
    """Whether sigma restricted to X_t is the coboundary of a cochain of X_t."""
    n = c.prefix_length(t)
    v = normalize(sigma.restricted(n).coeffs, p)
    if not v:
        return True
    residual, _ = reduce_against(_coboundary_basis(c, sigma.degree, n, p), v, p)
    return not residual


class _ClassCoordinates:
    """Coordinates of degree-p classes at X_t in the basis of live representatives."""

    def __init__(self, c: FilteredComplex, bars: Sequence[int], reps: List[SparseVec], n: int, degree: int, p: int):
        self.bars = list(bars)
        self.p = p
        self.boundary = _coboundary_basis(c, degree, n, p)
        reduced = [reduce_against(self.boundary, r, p)[0] for r in reps]
        self.quotient = row_reduce(reduced, p, track=True)
        if self.quotient.rank != len(reps):
            raise ArithmeticError("representatives are dependent modulo coboundaries")

    def coords(self, v: SparseVec) -> Dict[int, int]:
        p = self.p
        r, _ = reduce_against(self.boundary, v, p)
        if not r:
            return {}
        r, cs = reduce_against(self.quotient, r, p)
        if r:
            raise ArithmeticError("cocycle is not spanned by the representatives")
        out: SparseVec = {}
        for k, ck in enumerate(cs):
            if ck:
                out = add_scaled(out, self.quotient.combos[k], ck, p)
        return {self.bars[i]: x for i, x in sorted(out.items())}


@dataclass
class BarcodeWithReps:
    complex: FilteredComplex
    bars: List[Bar]
    p: int = 2
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def grid(self) -> Tuple[float, ...]:
        return self.complex.grid

    def positive(self) -> List[int]:
        """Indices of positive-degree bars."""
        return [k for k, b in enumerate(self.bars) if b.degree >= 1]

    def of_degree(self, degree: int) -> List[Bar]:
        return [b for b in self.bars if b.degree == degree]

    def intervals(self, degree: Optional[int] = None) -> List[Tuple[float, float]]:
        return sorted(b.interval for b in self.bars if degree is None or b.degree == degree)

    def live(self, t: float, degree: int) -> List[int]:
        return [k for k, b in enumerate(self.bars) if b.degree == degree and b.birth <= t < b.death]

    def _coordinates(self, t: float, degree: int) -> _ClassCoordinates:
        n = self.complex.prefix_length(t)
        cache = self._cache
        key = (n, degree)
        if key not in cache:
            live = self.live(t, degree)
            reps = [normalize(self.bars[k].representative.restricted(n).coeffs, self.p) for k in live]
            cache[key] = _ClassCoordinates(self.complex, live, reps, n, degree, self.p)
        return cache[key]

    def restrict_class(self, sigma: Cochain, t: float) -> Dict[int, int]:
        """Class of sigma|X_t as ``{bar index: coefficient}``; empty means zero."""
        c, p = self.complex, self.p
        n = c.prefix_length(t)
        v = normalize(sigma.restricted(n).coeffs, p)
        if not v:
            return {}
        if coboundary(c, sigma, p, n):
            raise NotACocycleError(f"cochain is not a cocycle at t={t}")
        return self._coordinates(t, sigma.degree).coords(v)

    def is_coboundary(self, sigma: Cochain, t: float) -> bool:
        return is_coboundary(self.complex, sigma, t, self.p)


def persistent_cohomology(c: FilteredComplex, p: int = 2) -> BarcodeWithReps:
    """Barcode of H^*(X) with a representative cocycle per bar.

    Coboundary columns are reduced in reverse filtration order; the reduction
    matrix column of a surviving p-simplex is its representative.
    """
    check_field(p)
    N = len(c)
    cols = []
    for r in range(N):
        i = N - 1 - r
        entries = sorted((N - 1 - j, sign % p) for j, sign in c.cofacets(i))
        cols.append(([e[0] for e in entries], [e[1] for e in entries]))
    reduced, combos, lows = _kernels.reduce_columns(cols, p, True)
    is_pivot = set(l for l in lows if l >= 0)
    bars: List[Bar] = []
    for r in range(N):
        i = N - 1 - r
        low = lows[r]
        if low < 0:
            if r in is_pivot:
                continue
            death = math.inf
        else:
            death = float(c.values[N - 1 - low])
        birth = float(c.values[i])
        if birth == death:
            continue
        rep = {N - 1 - q: v for q, v in zip(*combos[r])}
        bars.append(Bar(int(c.dims[i]), birth, death, Cochain(int(c.dims[i]), rep)))
    bars.sort(key=lambda b: (b.degree, b.birth, b.death))
    return BarcodeWithReps(c, bars, p)


def restrict_class(bc: BarcodeWithReps, sigma: Cochain, t: float) -> Dict[int, int]:
    return bc.restrict_class(sigma, t)


# -- serialization ------------------------------------------------------------

def _num(x: float):
    return "inf" if x == math.inf else x


def barcode_to_json(bc: BarcodeWithReps) -> List[dict]:
    out = []
    for b in bc.bars:
        rep = [[list(bc.complex.simplices[i]), v] for i, v in sorted(b.representative.coeffs.items())]
        out.append({"degree": b.degree, "birth": b.birth, "death": _num(b.death), "representative": rep})
    return out


def bars_from_json(data) -> List[Tuple[int, float, float]]:
    """``(degree, birth, death)`` triples from barcode JSON (reps ignored)."""
    out = []
    for item in data:
        death = item["death"]
        out.append((int(item.get("degree", 0)), float(item["birth"]), math.inf if death == "inf" else float(death)))
    return out
