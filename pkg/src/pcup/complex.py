"""Filtered simplicial complexes and Vietoris-Rips construction."""

from __future__ import annotations

import bisect
import math
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

Simplex = Tuple[int, ...]


class ComplexError(ValueError):
    """Malformed filtration: missing face, non-monotone value, duplicate."""


def _check_simplex(s: Sequence[int]) -> Simplex:
    s = tuple(int(v) for v in s)
    if not s:
        raise ComplexError("empty simplex")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ComplexError(f"vertices of {list(s)} are not strictly increasing")
    return s


def facets(s: Simplex) -> List[Simplex]:
    if len(s) == 1:
        return []
    return [s[:k] + s[k + 1:] for k in range(len(s))]


class FilteredComplex:
    """A simplicial complex with a monotone filtration.

    Simplices are kept in the canonical order (value, dimension, vertices);
    positions in that order index cochains and matrix columns everywhere else.
    Vertex labels are compared as integers, so the vertex order is the input
    order.
    """

    def __init__(self, pairs: Iterable[Tuple[Sequence[int], float]]):
        items = []
        seen = set()
        for s, v in pairs:
            s = _check_simplex(s)
            if s in seen:
                raise ComplexError(f"duplicate simplex {list(s)}")
            seen.add(s)
            v = float(v)
            if math.isnan(v):
                raise ComplexError(f"NaN filtration value on {list(s)}")
            items.append((v, len(s) - 1, s))
        items.sort()
        value_of = {s: v for v, _, s in items}
        for v, _, s in items:
            for f in facets(s):
                fv = value_of.get(f)
                if fv is None:
                    raise ComplexError(f"face {list(f)} of {list(s)} is missing")
                if fv > v:
                    raise ComplexError(
                        f"face {list(f)} has value {fv} > {v} of cofacet {list(s)}"
                    )
        self.simplices: List[Simplex] = [s for _, _, s in items]
        self.values = np.array([v for v, _, _ in items], dtype=float)
        self.dims = np.array([d for _, d, _ in items], dtype=int)
        self.index: Dict[Simplex, int] = {s: i for i, s in enumerate(self.simplices)}
        self.grid: Tuple[float, ...] = tuple(sorted(set(self.values.tolist())))
        self.max_dim = int(self.dims.max()) if len(items) else -1
        self.vertex_count = len({v for s in self.simplices for v in s})
        self._cofacets: Optional[List[List[Tuple[int, int]]]] = None
        self._cache: Dict = {}

    def __len__(self) -> int:
        return len(self.simplices)

    def __repr__(self) -> str:
        return (
            f"FilteredComplex({len(self)} simplices, max_dim={self.max_dim}, "
            f"grid size {len(self.grid)})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return self.simplices == other.simplices and np.array_equal(self.values, other.values)

    def value(self, s: Sequence[int]) -> float:
        return float(self.values[self.index[tuple(s)]])

    def prefix_length(self, t: float) -> int:
        """Number of simplices with filtration value <= t (a prefix)."""
        return bisect.bisect_right(self.values, t)

    def cofacets(self, i: int) -> List[Tuple[int, int]]:
        """``(cofacet index, incidence sign)`` pairs for simplex ``i``."""
        if self._cofacets is None:
            cof: List[List[Tuple[int, int]]] = [[] for _ in self.simplices]
            for j, s in enumerate(self.simplices):
                for k, f in enumerate(facets(s)):
                    cof[self.index[f]].append((j, -1 if k % 2 else 1))
            for lst in cof:
                lst.sort()
            self._cofacets = cof
        return self._cofacets[i]

    def of_dim(self, p: int, n: Optional[int] = None) -> List[int]:
        """Indices of p-simplices, optionally among the first ``n``."""
        key = ("dim", p)
        if key not in self._cache:
            self._cache[key] = [i for i, d in enumerate(self.dims) if d == p]
        idx = self._cache[key]
        if n is None:
            return idx
        return idx[: bisect.bisect_left(idx, n)]

    def shifted(self, delta: float) -> "FilteredComplex":
        return FilteredComplex((s, v + delta) for s, v in zip(self.simplices, self.values))

    def pairs(self) -> List[Tuple[Simplex, float]]:
        return [(s, float(v)) for s, v in zip(self.simplices, self.values)]


def from_explicit(pairs: Union[Mapping, Iterable[Tuple[Sequence[int], float]]]) -> FilteredComplex:
    """Build a filtration from explicit ``simplex -> value`` data; no face completion."""
    if isinstance(pairs, Mapping):
        pairs = pairs.items()
    return FilteredComplex(pairs)


def restrict(c: FilteredComplex, t: float) -> List[Simplex]:
    """Simplices present at parameter t."""
    return c.simplices[: c.prefix_length(t)]


def distance_matrix(points, metric: str = "euclidean") -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    diff = pts[:, None, :] - pts[None, :, :]
    if metric == "euclidean":
        return np.sqrt((diff ** 2).sum(-1))
    if metric in ("linf", "l-infinity", "chebyshev"):
        return np.abs(diff).max(-1) if pts.shape[1] else np.zeros((len(pts), len(pts)))
    raise ValueError(f"unknown metric {metric!r}")


def build_vr(
    dist=None,
    max_dim: int = 2,
    max_scale: float = math.inf,
    *,
    points=None,
    metric: str = "euclidean",
) -> FilteredComplex:
    """Vietoris-Rips filtration of a distance matrix (or a point cloud).

    A simplex enters at its diameter; vertices enter at 0. Cliques are grown
    one vertex at a time, so a simplex value is the max of its facet's value
    and the new edges.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if dist is None:
        if points is None:
            raise ValueError("need a distance matrix or points")
        dist = distance_matrix(points, metric)
    d = np.asarray(dist, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.all(np.isfinite(d)):
        raise ValueError("distances must be finite")
    if not np.array_equal(d, d.T):
        raise ValueError("distance matrix is not symmetric")
    if np.any(np.diag(d) != 0) or np.any(d < 0):
        raise ValueError("distance matrix needs a zero diagonal and nonnegative entries")
    n = d.shape[0]
    out: List[Tuple[Simplex, float]] = [((i,), 0.0) for i in range(n)]
    nbrs = [[j for j in range(i + 1, n) if d[i, j] <= max_scale] for i in range(n)]

    def expand(simplex: Simplex, value: float, cand: List[int]):
        out.append((simplex, value))
        if len(simplex) > max_dim:
            return
        for k, w in enumerate(cand):
            v = max(value, max(d[u, w] for u in simplex))
            rest = [x for x in cand[k + 1:] if d[w, x] <= max_scale]
            expand(simplex + (w,), v, rest)

    for i in range(n):
        if max_dim == 0:
            break
        for k, j in enumerate(nbrs[i]):
            rest = [x for x in nbrs[i][k + 1:] if d[j, x] <= max_scale]
            expand((i, j), float(d[i, j]), rest)
    return FilteredComplex(out)


# -- text formats ------------------------------------------------------------

def _tokens(line: str) -> List[str]:
    return line.replace(",", " ").split()


def read_distance_matrix(path: Union[str, Path]) -> np.ndarray:
    """First line n, then lower-triangular rows (diagonal optional)."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError(f"{path}: empty distance matrix file")
    try:
        n = int(lines[0].strip())
    except ValueError as e:
        raise ValueError(f"{path}:1: expected point count, got {lines[0]!r}") from e
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            rows.append([float(x) for x in _tokens(ln)])
        except ValueError as e:
            raise ValueError(f"{path}:{lineno}: bad number in {ln!r}") from e
    d = np.zeros((n, n))
    if len(rows) == n - 1 and all(len(r) == i + 1 for i, r in enumerate(rows)):
        for i, r in enumerate(rows, start=1):
            d[i, :i] = r
    elif len(rows) == n and all(len(r) == i + 1 for i, r in enumerate(rows)):
        for i, r in enumerate(rows):
            d[i, : i + 1] = r
    else:
        raise ValueError(f"{path}: expected {n - 1} or {n} lower-triangular rows")
    return np.tril(d) + np.tril(d, -1).T


def read_points(path: Union[str, Path]) -> np.ndarray:
    pts = []
    for lineno, ln in enumerate(Path(path).read_text().splitlines(), start=1):
        if not ln.strip() or ln.startswith("#"):
            continue
        try:
            pts.append([float(x) for x in _tokens(ln)])
        except ValueError as e:
            raise ValueError(f"{path}:{lineno}: bad coordinate in {ln!r}") from e
    if pts and len({len(p) for p in pts}) != 1:
        raise ValueError(f"{path}: points have differing dimensions")
    return np.array(pts, dtype=float)


def read_filtration(path: Union[str, Path]) -> FilteredComplex:
    """Lines of the form ``v0 v1 ... vk : value``."""
    pairs = []
    for lineno, ln in enumerate(Path(path).read_text().splitlines(), start=1):
        if not ln.strip() or ln.startswith("#"):
            continue
        if ":" not in ln:
            raise ValueError(f"{path}:{lineno}: missing ':' in {ln!r}")
        lhs, rhs = ln.split(":", 1)
        try:
            verts = [int(x) for x in lhs.split()]
            value = float(rhs)
        except ValueError as e:
            raise ValueError(f"{path}:{lineno}: cannot parse {ln!r}") from e
        pairs.append((verts, value))
    try:
        return FilteredComplex(pairs)
    except ComplexError as e:
        raise ComplexError(f"{path}: {e}") from e


def write_filtration(c: FilteredComplex) -> str:
    return "".join(f"{' '.join(map(str, s))} : {v!r}\n" for s, v in c.pairs())
