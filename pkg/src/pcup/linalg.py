"""Sparse linear algebra over the prime field Z/p.

A sparse vector is a plain ``dict`` mapping index -> nonzero residue. Echelon
forms use the *largest* index of a row as its pivot, which is the convention
of the column-reduction kernel shared with the persistence code.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

from . import _kernels

SparseVec = Dict[int, int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def check_field(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"field characteristic must be prime, got {p}")


def normalize(v: Dict[int, int], p: int) -> SparseVec:
    """Reduce coefficients mod p and drop zeros."""
    out = {}
    for i, c in v.items():
        c %= p
        if c:
            out[i] = c
    return out


def add_scaled(a: SparseVec, b: SparseVec, c: int, p: int) -> SparseVec:
    """Return a + c*b."""
    out = dict(a)
    for i, x in b.items():
        y = (out.get(i, 0) + c * x) % p
        if y:
            out[i] = y
        else:
            out.pop(i, None)
    return out


def _to_column(v: SparseVec):
    idx = sorted(v)
    return idx, [v[i] for i in idx]


def _from_column(col) -> SparseVec:
    return dict(zip(col[0], col[1]))


class RowReduction(NamedTuple):
    rows: List[SparseVec]
    rank: int
    pivots: List[int]
    # combos[k] expresses rows[k] through the input rows (only when tracked)
    combos: Optional[List[SparseVec]] = None


def row_reduce(rows: Sequence[SparseVec], p: int = 2, track: bool = False) -> RowReduction:
    """Reduced row echelon form of ``rows`` over Z/p.

    Every returned row has pivot coefficient 1 and is the only row with a
    nonzero entry at its pivot. Rows are ordered by increasing pivot.
    """
    cols = [_to_column(normalize(r, p)) for r in rows]
    reduced, combos, lows = _kernels.reduce_columns(cols, p, track)
    keep = sorted((low, j) for j, low in enumerate(lows) if low >= 0)
    out_rows: List[SparseVec] = []
    out_combos: List[SparseVec] = []
    pivots: List[int] = []
    pos: Dict[int, int] = {}
    for low, j in keep:
        r = _from_column(reduced[j])
        cmb = _from_column(combos[j]) if track else {}
        inv = pow(r[low], p - 2, p)
        if inv != 1:
            r = {i: (x * inv) % p for i, x in r.items()}
            cmb = {i: (x * inv) % p for i, x in cmb.items()}
        for q in [i for i in r if i != low and i in pos]:
            c = r.get(q, 0)
            if c:
                k = pos[q]
                r = add_scaled(r, out_rows[k], -c, p)
                if track:
                    cmb = add_scaled(cmb, out_combos[k], -c, p)
        pos[low] = len(out_rows)
        out_rows.append(r)
        out_combos.append(cmb)
        pivots.append(low)
    return RowReduction(out_rows, len(out_rows), pivots, out_combos if track else None)


def rank(rows: Sequence[SparseVec], p: int = 2) -> int:
    return row_reduce(rows, p).rank


def reduce_against(basis: RowReduction, v: SparseVec, p: int = 2):
    """Eliminate the pivots of ``basis`` from ``v``.

    Returns ``(residual, coefficients)`` with ``v = residual + sum(c_k rows[k])``.
    """
    coeffs = [0] * basis.rank
    r = normalize(v, p)
    for k, piv in enumerate(basis.pivots):
        c = r.get(piv, 0)
        if c:
            coeffs[k] = c
            r = add_scaled(r, basis.rows[k], -c, p)
    return r, coeffs


def in_span(basis: RowReduction, v: SparseVec, p: int = 2) -> Optional[List[int]]:
    """Coefficients of ``v`` in the reduced basis, or ``None`` outside the span."""
    residual, coeffs = reduce_against(basis, v, p)
    if residual:
        return None
    return coeffs


def combine(vectors: Sequence[SparseVec], coeffs: Iterable[int], p: int = 2) -> SparseVec:
    out: SparseVec = {}
    for vec, c in zip(vectors, coeffs):
        if c % p:
            out = add_scaled(out, vec, c, p)
    return out
