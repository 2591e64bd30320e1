"""Pure-Python column reduction over Z/p.

Columns are ``(indices, values)`` pairs with strictly increasing indices and
nonzero residues. The pivot ("low") of a column is its largest index.
"""


def _axpy(ai, av, bi, bv, c, p):
    # a + c*b, both sorted sparse
    oi = []
    ov = []
    i = j = 0
    na, nb = len(ai), len(bi)
    while i < na and j < nb:
        x, y = ai[i], bi[j]
        if x < y:
            oi.append(x)
            ov.append(av[i])
            i += 1
        elif y < x:
            oi.append(y)
            ov.append((c * bv[j]) % p)
            j += 1
        else:
            v = (av[i] + c * bv[j]) % p
            if v:
                oi.append(x)
                ov.append(v)
            i += 1
            j += 1
    while i < na:
        oi.append(ai[i])
        ov.append(av[i])
        i += 1
    while j < nb:
        oi.append(bi[j])
        ov.append((c * bv[j]) % p)
        j += 1
    return oi, ov


def reduce_columns(columns, p, track=False):
    """Left-to-right column reduction.

    Returns ``(reduced, combos, lows)`` where ``reduced[j]`` is column j after
    reduction, ``combos[j]`` expresses it as a combination of input columns
    (``None`` unless ``track``), and ``lows[j]`` is its pivot or -1.
    """
    n = len(columns)
    owner = {}
    reduced = []
    combos = [] if track else None
    lows = []
    for j in range(n):
        ci, cv = list(columns[j][0]), list(columns[j][1])
        if track:
            vi, vv = [j], [1]
        while ci:
            low = ci[-1]
            k = owner.get(low)
            if k is None:
                break
            ki, kv = reduced[k]
            c = (-cv[-1] * pow(kv[-1], p - 2, p)) % p
            ci, cv = _axpy(ci, cv, ki, kv, c, p)
            if track:
                vi, vv = _axpy(vi, vv, combos[k][0], combos[k][1], c, p)
        if ci:
            owner[ci[-1]] = j
            lows.append(ci[-1])
        else:
            lows.append(-1)
        reduced.append((ci, cv))
        if track:
            combos.append((vi, vv))
    return reduced, combos, lows
