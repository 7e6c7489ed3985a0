"""Hull-kernel base sets M(x) = {maximal ideals not containing x} and their identities.

Spectrum points are canonical: positions in the maximal-ideal enumeration for
finite tables, coordinate indices for finite-support maps, and the single
point 0 for Chang.  Every supported spectrum is discrete (finite, or the
coordinate ideals, each isolated by the base set of a singleton support), so
a set is nowhere dense exactly when it is empty; the sup criterion below
relies on this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .algebra import DEFAULT_HORIZON, EmvAlgebra, FiniteEmvAlgebra
from .backends import ChangAlgebra, FinSupportAlgebra
from .errors import PreconditionError, TheoremViolationError
from .ideals import _finite_maximal_ideals, radical
from .sequences import DOES_NOT_EXIST, UNDECIDED, RuleSequence, sup_of
from .states import Audit


@dataclass(frozen=True)
class BaseSet:
    element: Any
    extent: frozenset


def spectrum(alg: EmvAlgebra):
    """Finite list of points, or None for the infinite coordinate spectrum."""
    if isinstance(alg, FiniteEmvAlgebra):
        return list(range(len(_finite_maximal_ideals(alg))))
    if isinstance(alg, ChangAlgebra):
        return [0]
    if isinstance(alg, FinSupportAlgebra):
        return None
    raise PreconditionError(f"no spectrum for {alg.name}")


def point_label(alg: EmvAlgebra, p) -> str:
    if isinstance(alg, FiniteEmvAlgebra):
        return _finite_maximal_ideals(alg)[p].describe()
    if isinstance(alg, ChangAlgebra):
        return "Small(*)"
    return f"I_{p}"


def extent(alg: EmvAlgebra, x) -> frozenset:
    if isinstance(alg, FiniteEmvAlgebra):
        return frozenset(k for k, m in enumerate(_finite_maximal_ideals(alg)) if x not in m.members)
    if isinstance(alg, FinSupportAlgebra):
        return frozenset(x.support)
    if isinstance(alg, ChangAlgebra):
        return frozenset([0]) if x.big else frozenset()
    raise PreconditionError(f"no spectrum for {alg.name}")


def base_set(alg: EmvAlgebra, x) -> BaseSet:
    return BaseSet(x, extent(alg, x))


def _probes(alg, probes):
    if probes is not None:
        return list(probes)
    return list(alg.elements()) if alg.is_finite else alg.probe_elements()


def verify_base_identities(alg: EmvAlgebra, probes=None) -> Audit:
    ps = _probes(alg, probes)
    audit = Audit(f"base identities on {alg.name}")
    for name in ("empty_at_zero", "monotone", "meet_is_intersection", "join_is_union"):
        audit.record(name)
    if extent(alg, alg.zero):
        audit.fail("empty_at_zero", (alg.zero,))
    for x in ps:
        ex = extent(alg, x)
        for y in ps:
            ey = extent(alg, y)
            if alg.leq(x, y) and not ex <= ey:
                audit.fail("monotone", (x, y))
            if extent(alg, alg.meet(x, y)) != ex & ey:
                audit.fail("meet_is_intersection", (x, y))
            if extent(alg, alg.join(x, y)) != ex | ey:
                audit.fail("join_is_union", (x, y))
    return audit


def verify_hull_kernel_clauses(alg: EmvAlgebra, probes=None, semisimple: bool | None = None) -> Audit:
    """The six clauses relating M(b), M(x) and M(lam_b(x)) for x, y <= b idempotent.

    Clauses (iv) and (v) need a semisimple algebra and (vi) a top element;
    they are recorded as not applicable otherwise.
    """
    ps = _probes(alg, probes)
    if semisimple is None:
        semisimple = radical(alg, ps if not alg.is_finite else None).semisimple
    audit = Audit(f"hull-kernel clauses on {alg.name}")
    for name in ("i", "ii", "iii", "iv", "v", "vi"):
        audit.record(name)
    applicable = {"iv": semisimple, "v": semisimple, "vi": alg.has_top}
    bounds = [b for b in ps if alg.is_idempotent(b)]
    for b in ps:
        if b not in bounds:
            continue
        eb = extent(alg, b)
        below = [x for x in ps if alg.leq(x, b)]
        for x in below:
            ex = extent(alg, x)
            lx = alg.lam(b, x)
            diff = eb - ex
            el = extent(alg, lx)
            if not diff <= el:
                audit.fail("i", (x, b))
            idem = alg.is_idempotent(x)
            if idem and diff != el:
                audit.fail("ii", (x, b))
            if semisimple and idem != (diff == el):
                audit.fail("iv", (x, b))
            for y in below:
                ey = extent(alg, y)
                prod = extent(alg, alg.odot(y, lx))
                left = ey - extent(alg, alg.meet(x, y))
                if not (left == ey - ex and left <= prod <= el):
                    audit.fail("iii", (x, y, b))
                if semisimple and idem and alg.is_idempotent(y) and not (left == ey - ex == prod):
                    audit.fail("v", (x, y, b))
    if alg.has_top:
        top = alg.top
        pts = spectrum(alg)
        full = frozenset(pts) if pts is not None else None
        for a in bounds:
            ea = extent(alg, a)
            if not (extent(alg, alg.lam(top, a)) == extent(alg, top) - ea == full - ea):
                audit.fail("vi", (a,))
    audit.not_applicable = [k for k, ok in applicable.items() if not ok]
    return audit


def idempotency_witness(alg: EmvAlgebra, x, b) -> dict:
    """Both sides of the clause-(iv) equality, for reporting strict inclusions."""
    diff = extent(alg, b) - extent(alg, x)
    el = extent(alg, alg.lam(b, x))
    return {"difference": diff, "complement_set": el, "equal": diff == el, "strict": diff < el}


def verify_union_of_differences(alg: EmvAlgebra, x, a=None, horizon: int = DEFAULT_HORIZON) -> dict:
    """M(x) against the union over n of M(a) minus M(lam_a(n.x)).

    The union is accumulated until n.x settles (exact) or, on Chang where it
    never settles for infinitesimals, until ``horizon``.
    """
    covers = [a] if a is not None else (alg.covers_of(x) if isinstance(alg, FiniteEmvAlgebra) else [alg.cover(x)])
    results = []
    for b in covers:
        if not (alg.is_idempotent(b) and alg.leq(x, b)):
            raise PreconditionError("a must be an idempotent above x")
        eb = extent(alg, b)
        union = frozenset()
        nx = x
        settled = False
        for n in range(1, horizon + 1):
            union |= eb - extent(alg, alg.lam(b, nx))
            nxt = alg.oplus(nx, x)
            if nxt == nx:
                settled = True
                break
            nx = nxt
        lhs = extent(alg, x)
        results.append({"a": b, "lhs": lhs, "rhs": union, "equal": lhs == union, "settled": settled})
    return {"element": x, "covers": results, "equal": all(r["equal"] for r in results)}


@dataclass(frozen=True)
class SupVerdict:
    sup_holds: bool | None
    difference: frozenset | None
    agrees: bool | None
    status: str


def sup_criterion(alg: EmvAlgebra, x, xs, horizon: int = DEFAULT_HORIZON) -> SupVerdict:
    """x is the supremum of ``xs`` exactly when M(x) minus the union of M(x_t) is empty.

    Needs an algebra of idempotents (finite sets, or the idempotent
    subalgebra of a table algebra) and a family below x.  Emptiness stands
    in for nowhere density because the spectra here are discrete.
    """
    if isinstance(alg, FinSupportAlgebra):
        if alg.order != 1:
            raise PreconditionError("sup criterion needs a generalized Boolean algebra")
    elif isinstance(alg, FiniteEmvAlgebra):
        if any(not alg.is_idempotent(y) for y in alg.elements()):
            raise PreconditionError("sup criterion needs a generalized Boolean algebra")
    else:
        raise PreconditionError("sup criterion needs a generalized Boolean algebra")
    if isinstance(xs, RuleSequence):
        terms = [xs.term(n) for n in range(horizon)]
    else:
        terms = list(xs)
    if any(not alg.leq(t, x) for t in terms):
        raise PreconditionError("family must be majorized by x")
    res = sup_of(alg, xs, horizon)
    if res.status == UNDECIDED:
        return SupVerdict(None, None, None, UNDECIDED)
    if res.status == DOES_NOT_EXIST:
        raise TheoremViolationError("a family below x must have a supremum here")
    covered = frozenset().union(*(extent(alg, t) for t in terms)) if terms else frozenset()
    diff = extent(alg, x) - covered
    holds = res.value == x
    agrees = holds == (not diff)
    if not agrees:
        raise TheoremViolationError(f"sup criterion fails: sup={alg.format(res.value)}, difference={sorted(diff)}")
    return SupVerdict(holds, diff, agrees, "decided")


def hausdorff_pairs(alg: FiniteEmvAlgebra) -> Audit:
    """For distinct maximal ideals A, B build disjoint base sets separating them."""
    maxes = _finite_maximal_ideals(alg)
    audit = Audit(f"hausdorff on {alg.name}")
    audit.record("separated")
    for i, A in enumerate(maxes):
        for j, B in enumerate(maxes):
            if i == j:
                continue
            x = next(e for e in A.members if e not in B.members)
            y = next(e for e in B.members if e not in A.members)
            a = alg.cover(x, y)
            u = alg.odot(x, alg.lam(a, y))
            v = alg.odot(y, alg.lam(a, x))
            eu, ev = extent(alg, u), extent(alg, v)
            if not (i in ev and j in eu and not (eu & ev)):
                audit.fail("separated", (i, j))
    return audit


def verify_extent_extremes(alg: EmvAlgebra, probes=None) -> Audit:
    """Full extent forces a top; empty extent is exactly radical membership."""
    ps = _probes(alg, probes)
    audit = Audit(f"spectrum/top on {alg.name}")
    audit.record("full_extent_implies_top")
    audit.record("empty_extent_iff_radical")
    pts = spectrum(alg)
    rad = radical(alg, None if alg.is_finite else ps)
    rad_set = set(rad.formula_members)
    for x in ps:
        ex = extent(alg, x)
        if pts is not None and ex == frozenset(pts) and pts and not alg.has_top:
            audit.fail("full_extent_implies_top", (x,))
        if (not ex) != (x in rad_set):
            audit.fail("empty_extent_iff_radical", (x,))
    return audit


def compact_basis_audit(alg: EmvAlgebra, seq=None, idempotents=None) -> Audit:
    """M(join of a_n) is the union of the M(a_n); a -> M(a) is injective on idempotents."""
    audit = Audit(f"compact basis on {alg.name}")
    audit.record("union")
    audit.record("injective")
    if seq is not None:
        terms = list(seq)
        res = sup_of(alg, terms)
        if res.exists:
            union = frozenset().union(*(extent(alg, t) for t in terms)) if terms else frozenset()
            if extent(alg, res.value) != union:
                audit.fail("union", tuple(terms))
    if idempotents is None:
        idempotents = alg.idempotents() if alg.is_finite else [
            x for x in alg.probe_elements() if alg.is_idempotent(x)
        ]
    seen = {}
    for a in idempotents:
        e = extent(alg, a)
        if e in seen and seen[e] != a:
            audit.fail("injective", (seen[e], a))
        seen[e] = a
    return audit


def compactness_shadow(alg: EmvAlgebra) -> dict:
    pts = spectrum(alg)
    if pts is None:
        desc = "countably infinite discrete (coordinate ideals)"
        compact = False
    else:
        desc = f"finite, {len(pts)} point(s)"
        compact = True
    return {
        "has_top": alg.has_top,
        "spectrum": desc,
        "compact": compact,
        "equivalent": compact == alg.has_top,
    }


def designed_sup_cases(alg: FinSupportAlgebra):
    """Ten (x, family, expected) cases on finite sets: five joins, five strict gaps."""
    c = alg.char
    evens = RuleSequence(lambda n: c([2 * (n % 3)]), reach=None)
    return [
        (c([1, 2, 3]), [c([1]), c([2]), c([3])], True),
        (c([1, 2, 3]), [c([1, 2]), c([2, 3])], True),
        (c([5]), [c([5])], True),
        (alg.zero, [], True),
        (c([0, 2, 4]), evens, True),
        (c([1, 2, 3]), [c([1]), c([2])], False),
        (c([1, 2, 3]), [], False),
        (c([0, 9]), [c([0])], False),
        (c([1, 4, 7]), [c([1, 4]), c([4]), alg.zero], False),
        (c([0, 2, 4, 6]), evens, False),
    ]
