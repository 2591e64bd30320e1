"""Small filtrations with known answers and tabulated invariants of model spaces.

The model-space invariants (tori, wedges of spheres) describe Vietoris-Rips
filtrations of infinite metric spaces, so they are entered as step functions
rather than computed. Regions whose values are unknown are filled with the
smallest values compatible with the known ones, which is zero on intervals
longer than every known bar.
"""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

import numpy as np

from .complex import FilteredComplex, from_explicit
from .invariants import StepInvariant

ZETA2 = math.acos(-1 / 3)
ZETA3 = math.acos(-1 / 4)
TWO_PI_3 = 2 * math.pi / 3


def _add(out: Dict[Tuple[int, ...], float], simplex, t: float) -> None:
    s = tuple(sorted(simplex))
    if s not in out:
        out[s] = t


def pinched_torus() -> FilteredComplex:
    """Torus built in stages, then one generating loop is coned off.

    t=0: loop a; t=1: loop b (a wedge of two circles); t=2: the rest of a
    3x3 grid triangulation of the torus; t=3: a cone over loop a.
    """
    def v(i: int, j: int) -> int:
        return 3 * (i % 3) + (j % 3)

    out: Dict[Tuple[int, ...], float] = {}
    for i in range(3):
        _add(out, (v(i, 0),), 0)
        _add(out, (v(i, 0), v(i + 1, 0)), 0)
    for j in range(3):
        _add(out, (v(0, j),), 1)
        _add(out, (v(0, j), v(0, j + 1)), 1)
    for i in range(3):
        for j in range(3):
            _add(out, (v(i, j),), 2)
            for e in ((v(i, j), v(i + 1, j)), (v(i, j), v(i, j + 1)), (v(i, j), v(i + 1, j + 1))):
                _add(out, e, 2)
            _add(out, (v(i, j), v(i + 1, j), v(i + 1, j + 1)), 2)
            _add(out, (v(i, j), v(i, j + 1), v(i + 1, j + 1)), 2)
    apex = 9
    _add(out, (apex,), 3)
    for i in range(3):
        _add(out, (v(i, 0), apex), 3)
        _add(out, (v(i, 0), v(i + 1, 0), apex), 3)
    return from_explicit(out)


def two_disk() -> FilteredComplex:
    """Two circles sharing a vertex, filled in one after the other."""
    return from_explicit(
        {
            (0,): 0, (1,): 0, (2,): 0, (0, 1): 0, (1, 2): 0, (0, 2): 0,
            (3,): 1, (4,): 1, (0, 3): 1, (3, 4): 1, (0, 4): 1,
            (0, 1, 2): 2,
            (0, 3, 4): 3,
        }
    )


def triangle_circle(t: float = 1.0) -> FilteredComplex:
    """Hollow triangle: vertices at 0, edges at t."""
    return from_explicit({(0,): 0, (1,): 0, (2,): 0, (0, 1): t, (1, 2): t, (0, 2): t})


def pinched_torus_cup(a: float, b: float) -> int:
    """Expected cup-length invariant of :func:`pinched_torus` on [a, b]."""
    if 2 <= a and b < 3:
        return 2
    if 0 <= a and b < 3:
        return 1
    if 1 <= a:
        return 1
    return 0


def two_disk_cup(a: float, b: float) -> int:
    return int((0 <= a and b < 2) or (1 <= a and b < 3))


# -- model-space invariants ---------------------------------------------------

def circle_breaks(blocks: int) -> List[float]:
    """``2 pi l / (2l + 1)`` for l = 0..blocks."""
    return [2 * math.pi * l / (2 * l + 1) for l in range(blocks + 1)]


def _blocks(value: int, blocks: int) -> StepInvariant:
    """``value`` when [a, b] sits in one block [x_l, x_{l+1}); zero otherwise."""
    x = circle_breaks(blocks)
    m = len(x)
    vals = np.zeros((m, m + 1), dtype=np.int64)
    for l in range(m - 1):
        vals[l, l] = value
    return StepInvariant(x, vals)


def vr_circle_cup(blocks: int = 30) -> StepInvariant:
    """Cup-length invariant of the Vietoris-Rips filtration of the unit circle."""
    return _blocks(1, blocks)


def vr_torus_cup(blocks: int = 30) -> StepInvariant:
    """Cup-length invariant of VR of the flat product torus, truncated."""
    return _blocks(2, blocks)


def vr_wedge_cup() -> StepInvariant:
    """Cup-length invariant of VR of S1 v S2 v S1, with unknown regions set to 0."""
    return StepInvariant.from_function([0.0, ZETA2], lambda a, b: int(0 <= a and b < ZETA2))


_M_A = [[2, 0], [1, 1], [1, 0]]
_M_B = [[2, 0], [1, 1], [0, 0]]
_N_A = [[2, 0], [1, 0], [1, 1]]
_N_B = [[2, 0], [0, 0], [0, 0]]


def vr_torus_wedge_sphere_rank() -> StepInvariant:
    """Rank invariant of the persistent cup module of T2 v S3 (degrees 1-3, l = 1, 2)."""
    def f(a, b):
        if b < ZETA3:
            return _M_A
        if b < TWO_PI_3:
            return _M_B
        return np.zeros((3, 2))

    return StepInvariant.from_function([0.0, ZETA3, TWO_PI_3], f, (3, 2))


def vr_product_wedge_circle_rank() -> StepInvariant:
    """Rank invariant of the persistent cup module of (S1 x S2) v S1."""
    def f(a, b):
        if b < ZETA2:
            return _N_A
        if b < TWO_PI_3:
            return _N_B
        return np.zeros((3, 2))

    return StepInvariant.from_function([0.0, ZETA2, TWO_PI_3], f, (3, 2))


FILTRATIONS = {
    "pinched-torus": pinched_torus,
    "two-disk": two_disk,
    "triangle-circle": triangle_circle,
}
