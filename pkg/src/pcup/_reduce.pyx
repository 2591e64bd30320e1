# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled column reduction over Z/p; mirrors ``_reduce_py.reduce_columns``."""

from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map


cdef long long _inv(long long a, long long p):
    cdef long long result = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


cdef void _axpy(vector[long long]& ai, vector[long long]& av,
                vector[long long]& bi, vector[long long]& bv,
                long long c, long long p,
                vector[long long]& oi, vector[long long]& ov):
    cdef size_t i = 0, j = 0
    cdef size_t na = ai.size(), nb = bi.size()
    cdef long long x, y, v
    oi.clear()
    ov.clear()
    while i < na and j < nb:
        x = ai[i]
        y = bi[j]
        if x < y:
            oi.push_back(x)
            ov.push_back(av[i])
            i += 1
        elif y < x:
            oi.push_back(y)
            ov.push_back((c * bv[j]) % p)
            j += 1
        else:
            v = (av[i] + c * bv[j]) % p
            if v != 0:
                oi.push_back(x)
                ov.push_back(v)
            i += 1
            j += 1
    while i < na:
        oi.push_back(ai[i])
        ov.push_back(av[i])
        i += 1
    while j < nb:
        oi.push_back(bi[j])
        ov.push_back((c * bv[j]) % p)
        j += 1


def reduce_columns(columns, long long p, bint track=False):
    cdef Py_ssize_t n = len(columns)
    cdef vector[vector[long long]] ridx, rval, vidx, vval
    cdef vector[long long] ci, cv, vi, vv, ti, tv
    cdef unordered_map[long long, Py_ssize_t] owner
    cdef Py_ssize_t j, k
    cdef long long low, c
    ridx.resize(n)
    rval.resize(n)
    if track:
        vidx.resize(n)
        vval.resize(n)
    lows = []
    for j in range(n):
        ci = columns[j][0]
        cv = columns[j][1]
        if track:
            vi.clear()
            vv.clear()
            vi.push_back(j)
            vv.push_back(1)
        while ci.size() > 0:
            low = ci.back()
            if owner.count(low) == 0:
                break
            k = owner[low]
            c = ((p - cv.back() % p) * _inv(rval[k].back(), p)) % p
            _axpy(ci, cv, ridx[k], rval[k], c, p, ti, tv)
            ci.swap(ti)
            cv.swap(tv)
            if track:
                _axpy(vi, vv, vidx[k], vval[k], c, p, ti, tv)
                vi.swap(ti)
                vv.swap(tv)
        if ci.size() > 0:
            owner[ci.back()] = j
            lows.append(ci.back())
        else:
            lows.append(-1)
        ridx[j] = ci
        rval[j] = cv
        if track:
            vidx[j] = vi
            vval[j] = vv
    reduced = [(list(ridx[j]), list(rval[j])) for j in range(n)]
    combos = [(list(vidx[j]), list(vval[j])) for j in range(n)] if track else None
    return reduced, combos, lows
