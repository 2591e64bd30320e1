"""Shared generators and independent oracles for the test suite."""

import math
from collections import Counter

import numpy as np

from pcup.complex import build_vr


def random_distances(rng: np.random.Generator, n: int) -> np.ndarray:
    """Either Euclidean distances of random points or random small integers (ties)."""
    kind = rng.integers(3)
    if kind == 0:
        pts = rng.random((n, int(rng.integers(2, 4))))
        d = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
        return np.round(d, 3)
    if kind == 1:
        # points on a noisy circle make loops likely
        th = np.sort(rng.random(n)) * 2 * np.pi
        pts = np.c_[np.cos(th), np.sin(th)] + 0.1 * rng.standard_normal((n, 2))
        d = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
        return np.round(d, 2)
    d = rng.integers(1, 6, size=(n, n)).astype(float)
    d = np.triu(d, 1)
    return d + d.T


def random_vr(rng: np.random.Generator, max_points: int = 7, max_dim: int = 3):
    n = int(rng.integers(3, max_points + 1))
    dim = int(rng.integers(1, max_dim + 1))
    return build_vr(random_distances(rng, n), dim)


def homology_barcode(c) -> Counter:
    """Barcode by the standard boundary reduction over Z/2 on dense rows.

    Written independently of the package kernel: columns are Python ints used
    as bit sets and reduced left to right.
    """
    n = len(c)
    cols = []
    for s in c.simplices:
        bits = 0
        if len(s) > 1:
            for k in range(len(s)):
                bits |= 1 << c.index[s[:k] + s[k + 1:]]
        cols.append(bits)
    owner = {}
    paired = set()
    out = Counter()
    for j in range(n):
        while cols[j] and (cols[j].bit_length() - 1) in owner:
            cols[j] ^= cols[owner[cols[j].bit_length() - 1]]
        if cols[j]:
            i = cols[j].bit_length() - 1
            owner[i] = j
            paired.update((i, j))
            b, d = float(c.values[i]), float(c.values[j])
            if b != d:
                out[(int(c.dims[i]), b, d)] += 1
    for i in range(n):
        if i not in paired:
            out[(int(c.dims[i]), float(c.values[i]), math.inf)] += 1
    return out


def brute_bottleneck(b1, b2) -> float:
    """Minimum over all partial matchings, enumerated directly."""
    f1 = [x for x in b1 if x[1] != math.inf]
    f2 = [x for x in b2 if x[1] != math.inf]
    i1 = sorted(x[0] for x in b1 if x[1] == math.inf)
    i2 = sorted(x[0] for x in b2 if x[1] == math.inf)
    if len(i1) != len(i2):
        return math.inf
    base = max((abs(x - y) for x, y in zip(i1, i2)), default=0.0)

    def half(x):
        return (x[1] - x[0]) / 2

    def go(k, used, cost):
        if k == len(f1):
            rest = [half(y) for j, y in enumerate(f2) if j not in used]
            return max([cost] + rest)
        x = f1[k]
        best = go(k + 1, used, max(cost, half(x)))
        for j, y in enumerate(f2):
            if j not in used:
                c = max(abs(x[0] - y[0]), abs(x[1] - y[1]))
                best = min(best, go(k + 1, used | {j}, max(cost, c)))
        return best

    return max(go(0, frozenset(), 0.0), base)


def torus_simplices(k: int = 3):
    """Grid triangulation of the torus on k*k vertices."""
    def v(i, j):
        return k * (i % k) + (j % k)

    out = set()
    for i in range(k):
        for j in range(k):
            for tri in ((v(i, j), v(i + 1, j), v(i + 1, j + 1)), (v(i, j), v(i, j + 1), v(i + 1, j + 1))):
                tri = tuple(sorted(tri))
                out.add(tri)
                for a in range(3):
                    out.add(tri[:a] + tri[a + 1:])
                    out.add((tri[a],))
    return sorted(out, key=lambda s: (len(s), s))


def random_monotone_filtration(rng: np.random.Generator, simplices, levels: int = 5, cones: int = 1):
    """Random integer values on ``simplices`` made monotone, plus random cones.

    Each cone is a new vertex joined to a random edge path, entering late, so
    classes get killed and products gain finite supports.
    """
    from pcup.complex import from_explicit

    vals = {}
    for s in sorted(simplices, key=len):
        v = float(rng.integers(levels))
        for f in (s[:a] + s[a + 1:] for a in range(len(s))) if len(s) > 1 else ():
            v = max(v, vals[f])
        vals[s] = v
    top = max(v for s, v in vals.items())
    edges = [s for s in vals if len(s) == 2]
    nxt = max(x for s in vals for x in s) + 1
    for _ in range(cones):
        apex = nxt
        nxt += 1
        t = top + float(rng.integers(1, 3))
        vals[(apex,)] = t
        base = [edges[int(i)] for i in rng.choice(len(edges), size=min(3, len(edges)), replace=False)]
        for e in base:
            for x in e:
                vals.setdefault((x, apex), t)
            vals[e + (apex,)] = t
        top = t
    return from_explicit(vals)


def dense_rank(mat, p: int) -> int:
    """Rank over Z/p by Gaussian elimination on a dense integer array."""
    a = np.array(mat, dtype=np.int64) % p
    if a.size == 0:
        return 0
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
        if r == rows:
            break
    return r


def coboundary_matrix(c, degree: int, n: int, p: int) -> np.ndarray:
    """Dense matrix of delta: C^degree -> C^(degree+1) on the first n simplices."""
    src = [i for i in range(n) if c.dims[i] == degree]
    dst = [i for i in range(n) if c.dims[i] == degree + 1]
    pos = {i: k for k, i in enumerate(src)}
    m = np.zeros((len(dst), len(src)), dtype=np.int64)
    for r, j in enumerate(dst):
        s = c.simplices[j]
        for k in range(len(s)):
            f = c.index[s[:k] + s[k + 1:]]
            m[r, pos[f]] = (m[r, pos[f]] + (-1) ** k) % p
    return m


def betti(c, degree: int, t: float, p: int) -> int:
    """dim H^degree(X_t; Z/p) from dense ranks."""
    n = c.prefix_length(t)
    dim = sum(1 for i in range(n) if c.dims[i] == degree)
    r_out = dense_rank(coboundary_matrix(c, degree, n, p), p)
    r_in = dense_rank(coboundary_matrix(c, degree - 1, n, p), p) if degree > 0 else 0
    return dim - r_out - r_in


RP2_TRIANGLES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]


def rp2(t_edges: float = 1.0, t_faces: float = 2.0):
    """Six-vertex projective plane: vertices at 0, edges and faces later."""
    from pcup.complex import from_explicit

    vals = {}
    for tri in RP2_TRIANGLES:
        vals[tri] = t_faces
        for a in range(3):
            vals[tri[:a] + tri[a + 1:]] = t_edges
            vals[(tri[a],)] = 0.0
    return from_explicit(vals)
