"""Brute-force reference computations used to freeze expected values.

Everything here works directly on tuples of chain levels and never imports
``emvkit``; it is the independent side of every dual-route check.
"""

from fractions import Fraction
from itertools import chain as _chain
from itertools import combinations, product


def carrier(orders):
    """All level tuples of the product of chains with the given orders."""
    return list(product(*(range(n + 1) for n in orders)))


def oplus(orders, x, y):
    return tuple(min(a + b, n) for a, b, n in zip(x, y, orders))


def leq(x, y):
    return all(a <= b for a, b in zip(x, y))


def join(x, y):
    return tuple(max(a, b) for a, b in zip(x, y))


def meet(x, y):
    return tuple(min(a, b) for a, b in zip(x, y))


def idempotents(orders):
    return [x for x in carrier(orders) if oplus(orders, x, x) == x]


def lam(orders, a, x):
    """Minimum z <= a with z (+) x == a, by exhaustive search."""
    cands = [z for z in carrier(orders) if leq(z, a) and oplus(orders, z, x) == a]
    least = [z for z in cands if all(leq(z, w) for w in cands)]
    assert len(least) == 1
    return least[0]


def least_idempotent_above(orders, x):
    ups = [a for a in idempotents(orders) if leq(x, a)]
    least = [a for a in ups if all(leq(a, b) for b in ups)]
    return least[0]


def odot(orders, x, y):
    a = least_idempotent_above(orders, join(x, y))
    return lam(orders, a, oplus(orders, lam(orders, a, x), lam(orders, a, y)))


def nscale(orders, n, x):
    acc = tuple(0 for _ in orders)
    for _ in range(n):
        acc = oplus(orders, acc, x)
    return acc


def is_ideal(orders, subset):
    s = set(subset)
    if not s:
        return False
    for x in carrier(orders):
        if x not in s and any(leq(x, y) for y in s):
            return False
    return all(oplus(orders, x, y) in s for x in s for y in s)


def all_ideals(orders):
    """Powerset scan; only for carriers of at most ~12 elements."""
    elems = carrier(orders)
    subsets = _chain.from_iterable(combinations(elems, k) for k in range(1, len(elems) + 1))
    return [frozenset(s) for s in subsets if is_ideal(orders, s)]


def maximal_ideals(orders):
    ideals = all_ideals(orders)
    full = frozenset(carrier(orders))
    proper = [i for i in ideals if i != full]
    return [i for i in proper if not any(i < j for j in proper)]


def is_filter(orders, subset):
    s = set(subset)
    if not s:
        return False
    for x in carrier(orders):
        if x not in s and any(leq(y, x) for y in s):
            return False
    return all(odot(orders, x, y) in s for x in s for y in s)


def maximal_filters(orders):
    elems = carrier(orders)
    zero = tuple(0 for _ in orders)
    subsets = _chain.from_iterable(combinations(elems, k) for k in range(1, len(elems) + 1))
    proper = [frozenset(s) for s in subsets if zero not in s and is_filter(orders, s)]
    return [f for f in proper if not any(f < g for g in proper)]


def projection_states(orders):
    """For a product of chains the state-morphisms are the coordinate projections."""
    return [
        (lambda x, i=i, n=n: Fraction(x[i], n)) for i, n in enumerate(orders)
    ]
