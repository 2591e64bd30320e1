import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_bottleneck
from pcup import fixtures
from pcup.distances import bottleneck, eroded, erosion, erosion_candidates
from pcup.invariants import StepInvariant, merge_grids


def random_invariant(rng, shape=(), antitone=True):
    m = int(rng.integers(1, 5))
    grid = sorted(rng.choice(np.arange(0, 8), size=m, replace=False).tolist())
    if antitone:
        # rank invariant of random bars: antitone, like real invariants
        vals = np.zeros((m, m + 1) + shape, dtype=np.int64)
        for _ in range(int(rng.integers(0, 4))):
            i = int(rng.integers(0, m))
            j = int(rng.integers(i, m + 1))
            w = rng.integers(0, 3, size=shape) if shape else 1
            for a in range(i + 1):
                for b in range(j, m + 1):
                    if a <= b:
                        vals[a, b] += w
        return StepInvariant(grid, vals).masked()
    return StepInvariant(grid, rng.integers(0, 3, size=(m, m + 1) + shape)).masked()


def _lattice_values(inv, a, b):
    """inv at every (a_k, b_l) by direct lookup; rows below the grid are zero."""
    g = np.asarray(inv.grid)
    i = np.searchsorted(g, a, side="right") - 1
    j = np.where(np.isinf(b), len(g), np.searchsorted(g, np.where(np.isinf(b), 0, b), side="right") - 1)
    out = np.zeros((len(a), len(b)) + inv.value_shape, dtype=np.int64)
    for k in range(len(a)):
        if i[k] >= 0:
            out[k] = inv.values[i[k], np.maximum(j, 0)]
    return out


def brute_erosion(i1, i2):
    """Scan eps over half-integers and test each on a 1/16 lattice (integer grids only)."""
    g = merge_grids(i1.grid, i2.grid)
    span = g[-1] - g[0]

    def holds(eps):
        pts = np.arange(g[0] - eps - 1, g[-1] + eps + 1, 1 / 16)
        ends = np.append(pts, math.inf)
        upper = pts[:, None] <= ends[None, :]
        for x, y in ((i1, i2), (i2, i1)):
            ok = _lattice_values(x, pts, ends) >= _lattice_values(y, pts - eps, ends + eps)
            ok = ok.reshape(ok.shape[0], ok.shape[1], -1).all(axis=2)
            if not ok[upper].all():
                return False
        return True

    for k in range(0, 2 * int(span) + 4):
        if holds(k / 2 + 1 / 8):
            return k / 2
    return math.inf


def test_paper_erosions():
    assert abs(erosion(fixtures.vr_torus_cup(), fixtures.vr_wedge_cup()).value - math.pi / 3) < 1e-9
    r = erosion(fixtures.vr_torus_wedge_sphere_rank(), fixtures.vr_product_wedge_circle_rank())
    assert abs(r.value - math.pi / 3) < 1e-9
    assert r.value in r.candidates


def test_self_distance_zero():
    inv = fixtures.vr_torus_cup(8)
    assert erosion(inv, inv).value == 0


def test_codomain_mismatch():
    with pytest.raises(ValueError, match="codomain"):
        erosion(fixtures.vr_torus_cup(3), fixtures.vr_torus_wedge_sphere_rank())


def test_infinite_distance():
    a = StepInvariant.from_function([0.0], lambda x, y: 1)
    b = StepInvariant.zero([0.0])
    assert erosion(a, b).value == math.inf


def test_empty_grids():
    assert erosion(StepInvariant.zero(), StepInvariant.zero()).value == 0


@pytest.mark.parametrize("seed", range(40))
def test_erosion_matches_lattice_scan(seed):
    rng = np.random.default_rng(seed)
    shape = () if seed % 2 else (2,)
    i1, i2 = random_invariant(rng, shape), random_invariant(rng, shape)
    assert erosion(i1, i2).value == brute_erosion(i1, i2)


@pytest.mark.parametrize("seed", range(60))
def test_erosion_pseudometric(seed):
    rng = np.random.default_rng(1000 + seed)
    shape = [(), (2,), (2, 2)][seed % 3]
    a, b, c = (random_invariant(rng, shape) for _ in range(3))
    ab, ba = erosion(a, b).value, erosion(b, a).value
    assert ab == ba
    assert erosion(a, c).value <= ab + erosion(b, c).value + 1e-12
    res = erosion(a, b)
    assert res.value == math.inf or res.value in erosion_candidates(a, b)
    if res.value not in (0, math.inf):
        assert eroded(a, b, res.value + 1e-9)
        assert not eroded(a, b, res.value - 1e-9)


def test_bottleneck_examples():
    assert bottleneck([(0, 2)], [(0, 1)]) == 1
    assert bottleneck([(0, 10)], [(1, 9)]) == 1
    bars = [(0, 3), (1, math.inf), (2, 2.5)]
    assert bottleneck(bars, list(reversed(bars))) == 0
    assert bottleneck([], []) == 0
    assert bottleneck([(0, 4)], []) == 2
    assert bottleneck([(0, math.inf)], []) == math.inf
    assert bottleneck([(0, math.inf)], [(1.5, math.inf)]) == 1.5


@st.composite
def barcodes(draw):
    n = draw(st.integers(0, 6))
    out = []
    for _ in range(n):
        b = draw(st.integers(0, 10))
        d = draw(st.one_of(st.integers(b + 1, 14), st.just(None)))
        out.append((float(b), math.inf if d is None else float(d)))
    return out


@settings(max_examples=200, deadline=None)
@given(barcodes(), barcodes())
def test_bottleneck_brute_force(b1, b2):
    assert bottleneck(b1, b2) == brute_bottleneck(b1, b2)
