"""Pure-Python table kernels.

Same signatures and results as the Cython module ``_ckernels``. Tables are
square integer arrays indexed by element number; ``leq[x][y]`` is nonzero
iff x <= y.
"""

import numpy as np


def _rows(table):
    return table.tolist() if hasattr(table, "tolist") else [list(r) for r in table]


def comm_violation(op):
    t = _rows(op)
    n = len(t)
    for x in range(n):
        for y in range(x + 1, n):
            if t[x][y] != t[y][x]:
                return (x, y)
    return None


def assoc_violation(op):
    t = _rows(op)
    n = len(t)
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            ty = t[y]
            txy = t[xy]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    return (x, y, z)
    return None


def distrib_violation(join, meet):
    j = _rows(join)
    m = _rows(meet)
    n = len(j)
    for x in range(n):
        mx = m[x]
        for y in range(n):
            jy = j[y]
            mxy = mx[y]
            jmxy = j[mxy]
            for z in range(n):
                if mx[jy[z]] != jmxy[mx[z]]:
                    return (x, y, z)
    return None


def lambda_row(oplus, leq, a):
    """lambda_a(x) for every x: -1 when x is not below a, -2 when no minimum exists."""
    t = _rows(oplus)
    le = _rows(leq)
    n = len(t)
    below = [z for z in range(n) if le[z][a]]
    out = [-1] * n
    for x in below:
        cands = [z for z in below if t[z][x] == a]
        if not cands:
            out[x] = -2
            continue
        m = cands[0]
        for z in cands:
            if le[z][m]:
                m = z
        out[x] = m if all(le[m][z] for z in cands) else -2
    return np.array(out, dtype=np.int64)


def closure(op, leq, mask, down):
    """Smallest superset of ``mask`` closed under ``op`` and under the order.

    ``down`` selects downward closure (ideals) or upward closure (filters).
    """
    t = _rows(op)
    le = _rows(leq)
    n = len(t)
    inside = [bool(v) for v in mask]
    changed = True
    while changed:
        changed = False
        members = [x for x in range(n) if inside[x]]
        for x in members:
            tx = t[x]
            for y in members:
                z = tx[y]
                if not inside[z]:
                    inside[z] = True
                    changed = True
        members = [x for x in range(n) if inside[x]]
        for z in range(n):
            if inside[z]:
                continue
            for x in members:
                if (le[z][x] if down else le[x][z]):
                    inside[z] = True
                    changed = True
                    break
    return np.array(inside, dtype=np.int8)


def mv_law_violation(oplus, lam, members):
    """First (x, y) in ``members`` breaking x+(x+y*)* == y+(y+x*)* with * = lam."""
    t = _rows(oplus)
    lm = lam.tolist() if hasattr(lam, "tolist") else list(lam)
    ms = list(members)
    for x in ms:
        for y in ms:
            lhs = t[x][lm[t[x][lm[y]]]]
            rhs = t[y][lm[t[y][lm[x]]]]
            if lhs != rhs:
                return (x, y)
    return None
