"""Ideals, filters, the radical and quotient chains.

On finite-table algebras ideals and filters are explicit element sets found
by closure.  On the lazy backends they are symbolic descriptors with a
membership test; their catalogs are fixed by hand and spot-checked against
finite restrictions in the test suite:

* finite-support maps over chain(n): every ideal is {x : supp(x) inside S}
  for a set S of indices.  Finitely generated ones are the down-sets of
  characteristic idempotents (S finite); the maximal ones are the coordinate
  ideals I_i = {x : x(i) = 0}, since an ideal that is not inside some I_i
  contains, for every index, an element with full level there.
* Chang: {0}, the infinitesimals, everything.  Any nonzero infinitesimal
  generates all of them; any co-infinitesimal Big(k) generates top.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import _kernels
from .algebra import DEFAULT_HORIZON, EmvAlgebra, FiniteEmvAlgebra
from .backends import ChangAlgebra, FinSupportAlgebra, Small
from .errors import AxiomViolationError, InternalConsistencyError, PreconditionError


@dataclass(frozen=True)
class Ideal:
    """An ideal: explicit ``members`` on finite backends, a ``kind`` descriptor otherwise.

    kinds: ``set`` (explicit), ``zero``, ``full``, ``coordinate`` (``index``),
    ``radical`` (Chang infinitesimals), ``downset`` (``generator``, an
    idempotent).
    """

    kind: str
    members: frozenset | None = None
    index: int | None = None
    generator: Any = None
    maximal: bool = False
    algebra: Any = field(default=None, compare=False, repr=False)

    def __contains__(self, x) -> bool:
        k = self.kind
        if k == "set":
            return x in self.members
        if k == "zero":
            return x == self.algebra.zero
        if k == "full":
            return True
        if k == "coordinate":
            return x.get(self.index) == 0
        if k == "radical":
            return not x.big
        if k == "downset":
            return self.algebra.leq(x, self.generator)
        raise ValueError(k)

    @property
    def proper(self) -> bool:
        if self.kind == "set":
            return len(self.members) < self.algebra.size
        return self.kind != "full"

    def describe(self) -> str:
        alg = self.algebra
        k = self.kind
        if k == "set":
            return "{" + ", ".join(alg.format(x) for x in sorted(self.members)) + "}"
        if k == "coordinate":
            return f"I_{self.index}"
        if k == "downset":
            return f"DownSet({alg.format(self.generator)})"
        if k == "radical":
            return "Small(*)"
        return {"zero": "Zero", "full": "Full"}[k]


@dataclass(frozen=True)
class Filter:
    """Dual of :class:`Ideal`; lazy kinds ``coordinate`` (x(i) = n) and ``coradical`` (Chang Bigs)."""

    kind: str
    members: frozenset | None = None
    index: int | None = None
    maximal: bool = False
    algebra: Any = field(default=None, compare=False, repr=False)

    def __contains__(self, x) -> bool:
        if self.kind == "set":
            return x in self.members
        if self.kind == "coordinate":
            return x.get(self.index) == self.algebra.order
        if self.kind == "coradical":
            return x.big
        raise ValueError(self.kind)

    def describe(self) -> str:
        if self.kind == "set":
            return "{" + ", ".join(self.algebra.format(x) for x in sorted(self.members)) + "}"
        if self.kind == "coordinate":
            return f"F_{self.index}"
        return "Big(*)"


class SymbolicFamily:
    """An infinite indexed family (one member per natural number)."""

    def __init__(self, make: Callable[[int], Any], description: str, sample=None):
        self.make = make
        self.description = description
        self.symbolic = True
        self.sample = sample

    def examples(self, count: int = 3):
        """A few members; ``sample`` holds representative indices when they are not 0, 1, 2."""
        keys = self.sample if self.sample is not None else range(count)
        return [self.make(k) for k in list(keys)[:count]]

    def member(self, i: int):
        return self.make(i)

    def take(self, count: int):
        return [self.make(i) for i in range(count)]

    def __repr__(self) -> str:
        return f"SymbolicFamily({self.description!r})"


class IdealList(list):
    """List of ideals with an optional note (used for the trivial algebra)."""

    note: str = ""
    symbolic = False


# ---------------------------------------------------------------------------
# finite closures


def _mask(alg: FiniteEmvAlgebra, members):
    m = np.zeros(alg.size, dtype=np.int8)
    for x in members:
        m[x] = 1
    return m


def _close_ideal(alg: FiniteEmvAlgebra, members) -> frozenset:
    mask = _mask(alg, set(members) | {alg.zero})
    out = _kernels.closure(alg.oplus_table, alg.leq_table, mask, True)
    return frozenset(int(i) for i in np.flatnonzero(out))


def _odot_array(alg: FiniteEmvAlgebra):
    arr = alg.odot_table
    if arr.size and arr.min() < 0:
        raise AxiomViolationError(f"odot is not total on {alg.name}")
    return arr


def _close_filter(alg: FiniteEmvAlgebra, members) -> frozenset:
    mask = _mask(alg, members)
    out = _kernels.closure(_odot_array(alg), alg.leq_table, mask, False)
    return frozenset(int(i) for i in np.flatnonzero(out))


def is_ideal(alg: FiniteEmvAlgebra, members) -> bool:
    s = set(members)
    if not s:
        return False
    for x in s:
        if any(alg.leq(z, x) and z not in s for z in alg.elements()):
            return False
        if any(alg.oplus(x, y) not in s for y in s):
            return False
    return True


def is_filter(alg: FiniteEmvAlgebra, members) -> bool:
    s = set(members)
    if not s:
        return False
    for x in s:
        if any(alg.leq(x, z) and z not in s for z in alg.elements()):
            return False
        if any(alg.odot(x, y) not in s for y in s):
            return False
    return True


def _enumerate_closed(alg: FiniteEmvAlgebra, start: frozenset, close) -> list:
    # breadth-first: every closed set is reached by adding one element at a time
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for x in alg.elements():
                if x in s:
                    continue
                t = close(s | {x})
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def _maximal_among(sets, size):
    proper = [s for s in sets if len(s) < size]
    return [s for s in proper if not any(s < t for t in proper)]


# ---------------------------------------------------------------------------
# ideals


def generated_ideal(alg: EmvAlgebra, gens) -> Ideal:
    gens = list(gens)
    if isinstance(alg, FiniteEmvAlgebra):
        members = _close_ideal(alg, gens)
        return _finite_ideal(alg, members)
    if isinstance(alg, FinSupportAlgebra):
        g = alg.zero
        for x in gens:
            g = alg.join(g, x)
        if g == alg.zero:
            return Ideal("zero", algebra=alg)
        return Ideal("downset", generator=alg.least_upper_idempotent(g), algebra=alg)
    if isinstance(alg, ChangAlgebra):
        if any(x.big for x in gens):
            return Ideal("full", algebra=alg)
        if any(x != Small(0) for x in gens):
            return Ideal("radical", maximal=True, algebra=alg)
        return Ideal("zero", algebra=alg)
    raise PreconditionError(f"no ideal closure for {alg.name}")


def _finite_ideal(alg, members, maximal=None) -> Ideal:
    if maximal is None:
        maximal = any(m.members == members for m in _finite_maximal_ideals(alg))
    return Ideal("set", frozenset(members), maximal=maximal, algebra=alg)


def _cache(alg, key, build):
    store = alg.__dict__.setdefault("_emv_cache", {})
    if key not in store:
        store[key] = build()
    return store[key]


def _finite_ideal_sets(alg: FiniteEmvAlgebra):
    return _cache(
        alg,
        "ideal_sets",
        lambda: _enumerate_closed(alg, _close_ideal(alg, []), lambda s: _close_ideal(alg, s)),
    )


def _finite_maximal_ideals(alg: FiniteEmvAlgebra):
    return _cache(
        alg,
        "max_ideals",
        lambda: [
            Ideal("set", s, maximal=True, algebra=alg)
            for s in _maximal_among(_finite_ideal_sets(alg), alg.size)
        ],
    )


def enumerate_ideals(alg: EmvAlgebra):
    """All ideals (finite backends) or the symbolic catalog (lazy backends)."""
    if isinstance(alg, FiniteEmvAlgebra):
        maxes = {m.members for m in _finite_maximal_ideals(alg)}
        return [Ideal("set", s, maximal=s in maxes, algebra=alg) for s in _finite_ideal_sets(alg)]
    if isinstance(alg, FinSupportAlgebra):
        return [
            Ideal("zero", algebra=alg),
            SymbolicFamily(
                lambda e: Ideal("downset", generator=e, algebra=alg),
                "DownSet(e) for every nonzero idempotent e (support a finite set S)",
                sample=[alg.char(range(k)) for k in (1, 2, 3)],
            ),
            SymbolicFamily(
                lambda i: Ideal("coordinate", index=i, maximal=True, algebra=alg),
                "Coordinate(i) = {x | x(i) = 0}, i in N (maximal)",
            ),
            "support inside an arbitrary infinite set S (not finitely describable)",
            Ideal("full", algebra=alg),
        ]
    if isinstance(alg, ChangAlgebra):
        return [
            Ideal("zero", algebra=alg),
            Ideal("radical", maximal=True, algebra=alg),
            Ideal("full", algebra=alg),
        ]
    raise PreconditionError(f"no ideal catalog for {alg.name}")


def maximal_ideals(alg: EmvAlgebra):
    if isinstance(alg, FiniteEmvAlgebra):
        out = IdealList(_finite_maximal_ideals(alg))
        if alg.size == 1:
            out.note = "trivial algebra: no maximal ideals"
        return out
    if isinstance(alg, FinSupportAlgebra):
        return SymbolicFamily(
            lambda i: Ideal("coordinate", index=i, maximal=True, algebra=alg),
            "I_i = {x | x(i) = 0}, i in N",
        )
    if isinstance(alg, ChangAlgebra):
        return IdealList([Ideal("radical", maximal=True, algebra=alg)])
    raise PreconditionError(f"no maximal-ideal catalog for {alg.name}")


def prime_violation(alg: FiniteEmvAlgebra, ideal: Ideal):
    """Witness (x, y) with x^y in I but x, y not in I, or None."""
    for x in alg.elements():
        if x in ideal:
            continue
        for y in alg.elements():
            if y not in ideal and alg.meet(x, y) in ideal:
                return (x, y)
    return None


def in_radical_formula(alg: EmvAlgebra, x, horizon: int = DEFAULT_HORIZON) -> bool:
    """Membership by the multiples test: n.x <= lam_a(x) for all n, a an idempotent above x."""
    a = alg.cover(x)
    return alg.multiples_bounded_by(x, alg.lam(a, x), horizon)


@dataclass(frozen=True)
class RadicalResult:
    ideal: Ideal
    formula_members: tuple
    intersection_members: tuple
    semisimple: bool
    probed: bool


def radical(alg: EmvAlgebra, probes=None, horizon: int = DEFAULT_HORIZON) -> RadicalResult:
    """The radical, computed by the multiples formula and as the meet of maximal ideals.

    Disagreement raises InternalConsistencyError.  Lazy backends compare the
    two computations on ``probes``.
    """
    if isinstance(alg, FiniteEmvAlgebra):
        by_formula = frozenset(x for x in alg.elements() if in_radical_formula(alg, x, horizon))
        maxes = _finite_maximal_ideals(alg)
        inter = frozenset(alg.elements())
        for m in maxes:
            inter &= m.members
        if by_formula != inter:
            raise InternalConsistencyError(
                f"radical formula {sorted(by_formula)} != meet of maximal ideals {sorted(inter)}"
            )
        ideal = _finite_ideal(alg, inter)
        return RadicalResult(ideal, tuple(sorted(by_formula)), tuple(sorted(inter)), len(inter) == 1, False)

    if probes is None:
        probes = alg.probe_elements()
    if isinstance(alg, FinSupportAlgebra):
        # the coordinate ideals meet in {0}
        def in_meet(x):
            return all(x.get(i) == 0 for i in x.support)

        ideal = Ideal("zero", algebra=alg)
    elif isinstance(alg, ChangAlgebra):
        rad = Ideal("radical", maximal=True, algebra=alg)

        def in_meet(x):
            return x in rad

        ideal = rad
    else:
        raise PreconditionError(f"no radical for {alg.name}")
    f_members, m_members = [], []
    for x in probes:
        f, m = in_radical_formula(alg, x, horizon), in_meet(x)
        if f != m:
            raise InternalConsistencyError(f"radical computations disagree at {alg.format(x)}")
        if f:
            f_members.append(x)
        if m:
            m_members.append(x)
    return RadicalResult(ideal, tuple(f_members), tuple(m_members), ideal.kind == "zero", True)


def is_semisimple(alg: EmvAlgebra, probes=None) -> bool:
    return radical(alg, probes).semisimple


# ---------------------------------------------------------------------------
# filters


def _finite_filter_sets(alg: FiniteEmvAlgebra):
    def build():
        start = _close_filter(alg, [alg.top])
        return _enumerate_closed(alg, start, lambda s: _close_filter(alg, s))

    return _cache(alg, "filter_sets", build)


def enumerate_filters(alg: FiniteEmvAlgebra):
    maxes = {f.members for f in maximal_filters(alg)}
    return [Filter("set", s, maximal=s in maxes, algebra=alg) for s in _finite_filter_sets(alg)]


def maximal_filters(alg: EmvAlgebra):
    if isinstance(alg, FiniteEmvAlgebra):
        if alg.size == 1:
            return []
        return [
            Filter("set", s, maximal=True, algebra=alg)
            for s in _maximal_among(_finite_filter_sets(alg), alg.size)
        ]
    if isinstance(alg, FinSupportAlgebra):
        return SymbolicFamily(
            lambda i: Filter("coordinate", index=i, maximal=True, algebra=alg),
            "F_i = {x | x(i) = n}, i in N",
        )
    if isinstance(alg, ChangAlgebra):
        return [Filter("coradical", maximal=True, algebra=alg)]
    raise PreconditionError(f"no filter catalog for {alg.name}")


def ideal_of_filter(alg: EmvAlgebra, flt: Filter) -> Ideal:
    """The ideal {lam_a(x) : x in F, a idempotent, x <= a} of a maximal filter."""
    if not flt.maximal:
        raise PreconditionError("ideal_of_filter needs a maximal filter")
    if isinstance(alg, FiniteEmvAlgebra):
        if flt.members not in {f.members for f in maximal_filters(alg)}:
            raise PreconditionError("filter is not maximal")
        members = frozenset(
            alg.lam(a, x) for x in flt.members for a in alg.idempotents() if alg.leq(x, a)
        )
        maxes = {m.members for m in _finite_maximal_ideals(alg)}
        if members not in maxes:
            raise InternalConsistencyError("image of a maximal filter is not a maximal ideal")
        return Ideal("set", members, maximal=True, algebra=alg)
    if flt.kind == "coordinate":
        return Ideal("coordinate", index=flt.index, maximal=True, algebra=alg)
    if flt.kind == "coradical":
        return Ideal("radical", maximal=True, algebra=alg)
    raise PreconditionError("unsupported filter")


def filter_ideal_bijection(alg: FiniteEmvAlgebra) -> bool:
    images = [ideal_of_filter(alg, f).members for f in maximal_filters(alg)]
    maxes = sorted(sorted(m.members) for m in _finite_maximal_ideals(alg))
    return len(set(images)) == len(images) and sorted(sorted(s) for s in images) == maxes


def interval_trace_violation(alg: FiniteEmvAlgebra):
    """(I, a) where [0,a] meets the maximal ideal I in neither [0,a] nor a maximal ideal of [0,a]."""
    for a in alg.idempotents():
        sub = interval_algebra(alg, a)
        sub_maxes = {
            frozenset(sub.parent_index[k] for k in m.members) for m in _finite_maximal_ideals(sub)
        }
        below = frozenset(alg.below(a))
        for m in _finite_maximal_ideals(alg):
            trace = below & m.members
            if trace != below and trace not in sub_maxes:
                return (m, a)
    return None


def interval_algebra(alg: FiniteEmvAlgebra, a) -> FiniteEmvAlgebra:
    """The MV-algebra [0, a] as its own table algebra."""
    return _cache(
        alg, ("interval", a), lambda: alg.subalgebra(alg.below(a), name=f"[0,{alg.format(a)}]")
    )


def idempotent_algebra(alg: FiniteEmvAlgebra) -> FiniteEmvAlgebra:
    """I(M), the generalized Boolean algebra of idempotents."""
    return _cache(alg, "idempotents", lambda: alg.subalgebra(alg.idempotents(), name=f"I({alg.name})"))


# ---------------------------------------------------------------------------
# quotient chains


@dataclass(frozen=True)
class QuotientChain:
    ideal: Ideal
    classes: tuple
    class_of: dict = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.classes)

    def value(self, x) -> Fraction:
        return Fraction(self.class_of[x], len(self.classes) - 1)

    def embedding(self):
        return [Fraction(k, len(self.classes) - 1) for k in range(len(self.classes))]


def distance(alg: EmvAlgebra, x, y):
    a = alg.cover(x, y)
    return alg.oplus(alg.odot(x, alg.lam(a, y)), alg.odot(y, alg.lam(a, x)))


def quotient_chain(alg: FiniteEmvAlgebra, ideal: Ideal) -> QuotientChain:
    if not isinstance(alg, FiniteEmvAlgebra):
        raise PreconditionError("quotient_chain needs a finite algebra")
    if not ideal.proper:
        raise PreconditionError("quotient by the whole algebra")
    classes: list[list[int]] = []
    for x in alg.elements():
        for c in classes:
            if distance(alg, x, c[0]) in ideal:
                c.append(x)
                break
        else:
            classes.append([x])

    def below(c, d):
        x, y = c[0], d[0]
        a = alg.cover(x, y)
        return alg.odot(x, alg.lam(a, y)) in ideal

    for c in classes:
        for d in classes:
            if not (below(c, d) or below(d, c)):
                raise PreconditionError("quotient is not a chain; the ideal is not maximal")
    ordered = sorted(classes, key=lambda c: sum(below(d, c) for d in classes))
    if len(ordered) > 1 and not all(below(ordered[i], ordered[i + 1]) for i in range(len(ordered) - 1)):
        raise InternalConsistencyError("quotient order is not linear")
    if ideal.members is not None and not ideal.maximal:
        if not any(m.members == ideal.members for m in _finite_maximal_ideals(alg)):
            raise PreconditionError("ideal is not maximal")
    class_of = {x: k for k, c in enumerate(ordered) for x in c}
    return QuotientChain(ideal, tuple(frozenset(c) for c in ordered), class_of)
