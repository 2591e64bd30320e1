"""Step-function invariants on the interval poset and their Möbius inversion.

A :class:`StepInvariant` on a grid ``s_0 < ... < s_{m-1}`` stores one value per
closed grid interval ``[s_i, s_j]`` (``i <= j``) plus one per ``[s_i, inf]``.
Values live in an array of shape ``(m, m + 1, *value_shape)``; column ``m`` is
the infinite column. Queries snap both endpoints down to the grid, matching a
right-continuous filtration: ``X_t = X_{s_j}`` for ``s_j <= t < s_{j+1}``.
Intervals starting below ``s_0`` have value zero.
"""

from __future__ import annotations

import bisect
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

KINDS = {0: "scalar", 1: "sequence", 2: "matrix"}


def merge_grids(*grids: Iterable[float]) -> List[float]:
    return sorted({float(x) for g in grids for x in g})


def _encode(x: float):
    return "inf" if x == math.inf else x


def _decode(x) -> float:
    return math.inf if x == "inf" else float(x)


def _upper_mask(m: int) -> np.ndarray:
    i = np.arange(m)[:, None]
    j = np.arange(m + 1)[None, :]
    return i <= j


class StepInvariant:
    """Integer-valued (scalar, sequence or matrix) function of intervals."""

    def __init__(self, grid: Sequence[float], values):
        grid = tuple(float(g) for g in grid)
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if any(math.isinf(g) or math.isnan(g) for g in grid):
            raise ValueError("grid values must be finite")
        vals = np.asarray(values, dtype=np.int64)
        m = len(grid)
        if vals.shape[:2] != (m, m + 1):
            raise ValueError(f"values must have shape ({m}, {m + 1}, ...), got {vals.shape}")
        self.grid = grid
        self.values = vals

    # -- construction --------------------------------------------------------

    @classmethod
    def zero(cls, grid: Sequence[float] = (), value_shape: Tuple[int, ...] = ()) -> "StepInvariant":
        m = len(grid)
        return cls(grid, np.zeros((m, m + 1) + tuple(value_shape), dtype=np.int64))

    @classmethod
    def from_function(cls, grid: Sequence[float], f, value_shape: Tuple[int, ...] = ()) -> "StepInvariant":
        """Tabulate ``f(a, b)`` at grid intervals (``b`` may be ``inf``)."""
        grid = merge_grids(grid)
        m = len(grid)
        vals = np.zeros((m, m + 1) + tuple(value_shape), dtype=np.int64)
        ends = grid + [math.inf]
        for i in range(m):
            for j in range(i, m + 1):
                vals[i, j] = f(grid[i], ends[j])
        return cls(grid, vals)

    def masked(self) -> "StepInvariant":
        """Copy with the unused cells ``i > j`` zeroed."""
        vals = self.values.copy()
        vals[~_upper_mask(len(self.grid))] = 0
        return StepInvariant(self.grid, vals)

    # -- queries -------------------------------------------------------------

    @property
    def value_shape(self) -> Tuple[int, ...]:
        return self.values.shape[2:]

    @property
    def kind(self) -> str:
        return KINDS.get(len(self.value_shape), f"{len(self.value_shape)}-array")

    def row(self, a: float) -> int:
        return bisect.bisect_right(self.grid, a) - 1

    def col(self, b: float) -> int:
        return len(self.grid) if b == math.inf else bisect.bisect_right(self.grid, b) - 1

    def value(self, a: float, b: float):
        if a > b:
            raise ValueError(f"not an interval: [{a}, {b}]")
        i = self.row(a)
        if i < 0:
            out = np.zeros(self.value_shape, dtype=np.int64)
        else:
            out = self.values[i, self.col(b)].copy()
        return int(out) if out.ndim == 0 else out

    __call__ = value

    def resample(self, grid: Sequence[float]) -> "StepInvariant":
        """Same function tabulated on another grid (normally a refinement)."""
        grid = merge_grids(grid)
        m = len(grid)
        g = np.array(grid, dtype=float)
        rows = np.searchsorted(self.grid, g, side="right") - 1
        cols = np.append(rows, len(self.grid))
        vals = np.zeros((m, m + 1) + self.value_shape, dtype=np.int64)
        if len(self.grid):
            ok = rows >= 0
            sub = self.values[np.clip(rows, 0, None)][:, cols]
            vals[ok] = sub[ok]
        vals[~_upper_mask(m)] = 0
        return StepInvariant(grid, vals)

    def cells(self):
        """Grid intervals ``(a, b)`` with ``b`` possibly ``inf``, in row order."""
        ends = list(self.grid) + [math.inf]
        for i, a in enumerate(self.grid):
            for j in range(i, len(ends)):
                yield i, j, a, ends[j]

    def is_antitone(self) -> bool:
        """Values grow (entrywise) as the interval shrinks."""
        v = self.masked().values
        m = len(self.grid)
        if m == 0:
            return True
        up = _upper_mask(m)
        axes = tuple(range(2, v.ndim))
        # shrink from the left: [s_i, s_j] inside [s_{i-1}, s_j]; row -1 is zero
        prev = np.concatenate([np.zeros_like(v[:1]), v[:-1]], axis=0)
        left_ok = np.all(v >= prev, axis=axes) if axes else v >= prev
        # shrink from the right: [s_i, s_j] inside [s_i, s_{j+1}]
        nxt = np.concatenate([v[:, 1:], v[:, -1:]], axis=1)
        right_ok = np.all(v >= nxt, axis=axes) if axes else v >= nxt
        right_ok[:, -1] = True
        return bool(np.all(left_ok[up]) and np.all(right_ok[up]))

    # -- comparison, serialization -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepInvariant):
            return NotImplemented
        if self.value_shape != other.value_shape:
            return False
        g = merge_grids(self.grid, other.grid)
        return bool(np.array_equal(self.resample(g).values, other.resample(g).values))

    def __repr__(self) -> str:
        return f"StepInvariant({self.kind}, grid size {len(self.grid)})"

    def to_json(self) -> dict:
        entries = []
        for i, j, a, b in self.cells():
            v = self.values[i, j]
            if np.any(v):
                entries.append({"interval": [a, _encode(b)], "value": v.tolist()})
        return {
            "type": "invariant",
            "kind": self.kind,
            "shape": list(self.value_shape),
            "grid": list(self.grid),
            "entries": entries,
        }

    @classmethod
    def from_json(cls, data) -> "StepInvariant":
        grid = [float(g) for g in data["grid"]]
        shape = tuple(data.get("shape", ()))
        inv = cls.zero(grid, shape)
        for e in data["entries"]:
            a, b = e["interval"]
            a, b = float(a), _decode(b)
            i = grid.index(a)
            j = len(grid) if b == math.inf else grid.index(b)
            if i > j:
                raise ValueError(f"entry interval [{a}, {b}] is reversed")
            inv.values[i, j] = np.asarray(e["value"], dtype=np.int64)
        return inv


class SignedDiagram:
    """Integer-valued function on grid intervals; same layout as StepInvariant."""

    def __init__(self, grid: Sequence[float], values):
        self.grid = tuple(float(g) for g in grid)
        self.values = np.asarray(values, dtype=np.int64)
        m = len(self.grid)
        if self.values.shape[:2] != (m, m + 1):
            raise ValueError("diagram values have the wrong shape")

    @property
    def value_shape(self) -> Tuple[int, ...]:
        return self.values.shape[2:]

    def at(self, a: float, b: float):
        """Value on the grid cell ``[a, b]``; both must be grid values or b=inf."""
        i = self.grid.index(float(a))
        j = len(self.grid) if b == math.inf else self.grid.index(float(b))
        if i > j:
            return 0 if not self.value_shape else np.zeros(self.value_shape, np.int64)
        v = self.values[i, j]
        return int(v) if v.ndim == 0 else v.copy()

    def entries(self) -> List[Tuple[Tuple[float, float], object]]:
        out = []
        ends = list(self.grid) + [math.inf]
        for i in range(len(self.grid)):
            for j in range(i, len(ends)):
                v = self.values[i, j]
                if np.any(v):
                    out.append(((self.grid[i], ends[j]), int(v) if v.ndim == 0 else v.copy()))
        return out

    def is_nonnegative(self) -> bool:
        return bool(np.all(self.values >= 0))

    def bars(self) -> List[Tuple[float, float]]:
        """Half-open bars with multiplicity, for a scalar nonnegative diagram.

        Cell ``[s_i, s_j]`` is the bar ``[s_i, s_{j+1})`` and ``[s_i, inf]`` is
        ``[s_i, inf)``. A mass on ``[s_i, s_last]`` has no finite death and is
        rejected.
        """
        if self.value_shape:
            raise ValueError("bars() needs a scalar diagram")
        if not self.is_nonnegative():
            raise ValueError("diagram has negative multiplicities")
        m = len(self.grid)
        out = []
        for (a, b), v in self.entries():
            if b == math.inf:
                end = math.inf
            else:
                j = self.grid.index(b)
                if j == m - 1:
                    raise ValueError(f"mass on [{a}, {b}] has no death on the grid")
                end = self.grid[j + 1]
            out.extend([(a, end)] * v)
        return sorted(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedDiagram):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    def to_json(self) -> dict:
        return {
            "type": "signed-diagram",
            "shape": list(self.value_shape),
            "grid": list(self.grid),
            "entries": [
                {"interval": [a, _encode(b)], "value": v.tolist() if hasattr(v, "tolist") else v}
                for (a, b), v in self.entries()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "SignedDiagram":
        inv = StepInvariant.from_json(data)
        return cls(inv.grid, inv.values)


def mobius_invert(inv: StepInvariant) -> SignedDiagram:
    """Four-term alternating sum on the interval grid, entrywise for arrays.

    ``dgm[s_i, s_j] = I[s_i, s_j] - I[s_{i-1}, s_j] - I[s_i, s_{j+1}] + I[s_{i-1}, s_{j+1}]``
    with ``s_m`` read as ``inf``, ``s_{-1}`` terms equal to zero, and
    ``dgm[s_i, inf] = I[s_i, inf] - I[s_{i-1}, inf]``.
    """
    v = inv.masked().values
    m = len(inv.grid)
    w = np.zeros((m + 1, m + 2) + inv.value_shape, dtype=np.int64)
    w[1:, : m + 1] = v
    d = w[1:, :-1] - w[:-1, :-1] - w[1:, 1:] + w[:-1, 1:]
    d[~_upper_mask(m)] = 0
    return SignedDiagram(inv.grid, d)


def mobius_sum(dgm: SignedDiagram) -> StepInvariant:
    """``I[a, b]`` = sum of diagram values on grid intervals containing ``[a, b]``."""
    m = len(dgm.grid)
    d = dgm.values.copy()
    d[~_upper_mask(m)] = 0
    acc = np.cumsum(d, axis=0)
    acc = np.flip(np.cumsum(np.flip(acc, axis=1), axis=1), axis=1)
    acc[~_upper_mask(m)] = 0
    return StepInvariant(dgm.grid, acc)


def diagram_from_bars(grid: Sequence[float], bars: Iterable[Tuple[float, float]]) -> SignedDiagram:
    """Multiplicity diagram of half-open bars whose endpoints are grid values."""
    grid = merge_grids(grid)
    m = len(grid)
    vals = np.zeros((m, m + 1), dtype=np.int64)
    for b, d in bars:
        i = grid.index(float(b))
        j = m if d == math.inf else grid.index(float(d)) - 1
        if j < i:
            continue
        vals[i, j] += 1
    return SignedDiagram(grid, vals)


def rank_invariant(grid: Sequence[float], bars: Iterable[Tuple[float, float]]) -> StepInvariant:
    """Number of bars ``[b, d)`` containing each closed interval."""
    return mobius_sum(diagram_from_bars(grid, bars))
