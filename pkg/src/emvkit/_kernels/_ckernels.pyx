# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; drop-in replacement for ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


def comm_violation(const i64[:, ::1] op):
    cdef Py_ssize_t n = op.shape[0], x, y
    for x in range(n):
        for y in range(x + 1, n):
            if op[x, y] != op[y, x]:
                return (x, y)
    return None


def assoc_violation(const i64[:, ::1] op):
    cdef Py_ssize_t n = op.shape[0], x, y, z
    cdef i64 xy
    for x in range(n):
        for y in range(n):
            xy = op[x, y]
            for z in range(n):
                if op[xy, z] != op[x, op[y, z]]:
                    return (x, y, z)
    return None


def distrib_violation(const i64[:, ::1] join, const i64[:, ::1] meet):
    cdef Py_ssize_t n = join.shape[0], x, y, z
    cdef i64 mxy
    for x in range(n):
        for y in range(n):
            mxy = meet[x, y]
            for z in range(n):
                if meet[x, join[y, z]] != join[mxy, meet[x, z]]:
                    return (x, y, z)
    return None


def lambda_row(const i64[:, ::1] oplus, const cnp.int8_t[:, ::1] leq, Py_ssize_t a):
    cdef Py_ssize_t n = oplus.shape[0], x, z
    cdef i64 m
    cdef bint ok
    out_arr = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] out = out_arr
    for x in range(n):
        if not leq[x, a]:
            continue
        m = -1
        for z in range(n):
            if leq[z, a] and oplus[z, x] == a:
                if m < 0 or leq[z, m]:
                    m = z
        if m < 0:
            out[x] = -2
            continue
        ok = True
        for z in range(n):
            if leq[z, a] and oplus[z, x] == a and not leq[m, z]:
                ok = False
                break
        out[x] = m if ok else -2
    return out_arr


def closure(const i64[:, ::1] op, const cnp.int8_t[:, ::1] leq, mask, bint down):
    cdef Py_ssize_t n = op.shape[0], x, y, z
    inside_arr = np.array(mask, dtype=np.int8).copy()
    cdef cnp.int8_t[::1] inside = inside_arr
    cdef bint changed = True
    while changed:
        changed = False
        for x in range(n):
            if not inside[x]:
                continue
            for y in range(n):
                if inside[y] and not inside[op[x, y]]:
                    inside[op[x, y]] = 1
                    changed = True
        for z in range(n):
            if inside[z]:
                continue
            for x in range(n):
                if inside[x] and ((leq[z, x]) if down else (leq[x, z])):
                    inside[z] = 1
                    changed = True
                    break
    return inside_arr


def mv_law_violation(const i64[:, ::1] oplus, const i64[::1] lam, members):
    cdef i64[::1] ms = np.asarray(list(members), dtype=np.int64)
    cdef Py_ssize_t k = ms.shape[0], i, j
    cdef i64 x, y
    for i in range(k):
        x = ms[i]
        for j in range(k):
            y = ms[j]
            if oplus[x, lam[oplus[x, lam[y]]]] != oplus[y, lam[oplus[y, lam[x]]]]:
                return (int(x), int(y))
    return None
