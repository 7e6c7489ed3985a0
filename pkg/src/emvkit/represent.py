"""The representing MV-algebra of an EMV-algebra without top.

Every element of N is either ``Direct(x)`` (an element of M) or
``Complement(x)`` (the negation of one).  The operation table:

* Direct(x) + Direct(y)         = Direct(x + y)
* Complement(x) + Complement(y) = Complement(x (.) y)
* Direct(x) + Complement(y)     = Complement(y (.) lam_b(x)),  b any idempotent above x, y
* neg(Direct(x)) = Complement(x) and neg(Complement(x)) = Direct(x)

The order and the other operations come from the MV identities
x (.) y = neg(neg x + neg y), x v y = (x (.) neg y) + y, x ^ y = x (.) (neg x + y).
Direct and Complement values never coincide because M has no top.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import DEFAULT_HORIZON, EmvAlgebra, FiniteEmvAlgebra
from .axioms import check_emv_axioms
from .backends import FinSupportAlgebra
from .errors import PreconditionError
from .ideals import SymbolicFamily
from .sequences import EventuallyConstant, inf_of, sup_of
from .states import Audit, StateMorphism, audit_state, fs_state, weak_convergence_check


@dataclass(frozen=True)
class NElem:
    complement: bool
    x: Any


def Direct(x) -> NElem:
    return NElem(False, x)


def Complement(x) -> NElem:
    return NElem(True, x)


@dataclass(frozen=True)
class AlreadyMV:
    """Marker returned by :func:`represent` when the algebra has a top element."""

    algebra: Any = field(compare=False)
    reason: str = "the algebra has a top element; it is already an MV-algebra"


_NLIT = re.compile(r"^\s*(Direct|Complement)\s*\((.*)\)\s*$", re.S)


class RepresentedMV(EmvAlgebra):
    is_finite = False
    has_top = True

    def __init__(self, base: EmvAlgebra):
        if base.has_top:
            raise PreconditionError("representation needs an algebra without top")
        self.base = base
        self.name = f"N({base.name})"

    @property
    def zero(self):
        return Direct(self.base.zero)

    @property
    def top(self):
        return Complement(self.base.zero)

    def check_element(self, z) -> None:
        if not isinstance(z, NElem):
            raise PreconditionError(f"{z!r} is not an element of {self.name}")
        self.base.check_element(z.x)

    def neg(self, z):
        return NElem(not z.complement, z.x)

    def oplus_via(self, b, z, w):
        """``z + w`` with the mixed case evaluated inside ``[0, b]``."""
        m = self.base
        if not z.complement and not w.complement:
            return Direct(m.oplus(z.x, w.x))
        if z.complement and w.complement:
            return Complement(m.odot(z.x, w.x))
        d, c = (z, w) if w.complement else (w, z)
        return Complement(m.odot_via(b, c.x, m.lam(b, d.x)))

    def oplus(self, z, w):
        if z.complement != w.complement:
            b = self.base.cover(z.x, w.x)
            return self.oplus_via(b, z, w)
        return self.oplus_via(None, z, w)

    def odot(self, z, w):
        return self.neg(self.oplus(self.neg(z), self.neg(w)))

    def leq(self, z, w) -> bool:
        return self.odot(z, self.neg(w)) == self.zero

    def join(self, z, w):
        return self.oplus(self.odot(z, self.neg(w)), w)

    def meet(self, z, w):
        return self.odot(z, self.oplus(self.neg(z), w))

    def is_idempotent(self, z) -> bool:
        return self.oplus(z, z) == z

    def cover(self, *zs):
        if any(z.complement for z in zs):
            return self.top
        return Direct(self.base.cover(*(z.x for z in zs)))

    def lam(self, a, z):
        self._require_below(a, z)
        return self.odot(a, self.neg(z))

    def format(self, z) -> str:
        return f"{'Complement' if z.complement else 'Direct'}({self.base.format(z.x)})"

    def parse_element(self, text: str):
        m = _NLIT.match(text)
        if not m:
            raise PreconditionError(f"expected Direct(..) or Complement(..): {text!r}")
        return NElem(m.group(1) == "Complement", self.base.parse_element(m.group(2)))

    def probe_elements(self, support: int = 8, seed: int = 0, count: int = 6):
        """Direct and Complement of 0, one idempotent and ``count`` seeded base probes."""
        pool = self.base.probe_elements(support=support, seed=seed, count=count)
        base = [self.base.zero] + [x for x in pool if self.base.is_idempotent(x)][1:2] + pool[-count:]
        base = list(dict.fromkeys(base))
        return [Direct(x) for x in base] + [Complement(x) for x in base]

    def restrict(self, indices) -> FiniteEmvAlgebra:
        """The finite subalgebra {Direct(x), Complement(x) : supp x inside ``indices``} (fs bases)."""
        sub = self.base.restrict(indices)
        elems = [Direct(sub.embed(k)) for k in sub.elements()] + [
            Complement(sub.embed(k)) for k in sub.elements()
        ]
        pos = {z: i for i, z in enumerate(elems)}
        op = [[pos[self.oplus(z, w)] for w in elems] for z in elems]
        jn = [[pos[self.join(z, w)] for w in elems] for z in elems]
        alg = FiniteEmvAlgebra(
            [self.format(z) for z in elems], op, pos[self.zero], join=jn, name=f"{self.name}|{list(indices)}"
        )
        alg.n_elements = tuple(elems)
        return alg

    def __repr__(self) -> str:
        return f"RepresentedMV({self.base!r})"


def represent(m: EmvAlgebra):
    if m.has_top:
        return AlreadyMV(m)
    return RepresentedMV(m)


# ---------------------------------------------------------------------------
# extended states


@dataclass(frozen=True)
class ExtendedState:
    """A state on N: the extension of ``base`` or, with ``base`` None, the state at infinity."""

    base: StateMorphism | None
    name: str

    def __call__(self, z) -> Fraction:
        if self.base is None:
            return Fraction(1 if z.complement else 0)
        v = self.base(z.x)
        return 1 - v if z.complement else v


def extend_state(s: StateMorphism, n) -> Any:
    if isinstance(n, AlreadyMV):
        return s
    return ExtendedState(s, f"{s.name}~")


def s_infinity(n: RepresentedMV) -> ExtendedState:
    return ExtendedState(None, "s_inf")


def _audit_n_state(n: RepresentedMV, st: ExtendedState, probes) -> Audit:
    wrapped = _WithWitness(st, n.top)
    return audit_state(n, wrapped, probes)


@dataclass(frozen=True)
class _WithWitness:
    inner: Any
    witness: Any

    def __call__(self, z):
        return self.inner(z)

    @property
    def name(self):
        return self.inner.name


def state_catalog(n: RepresentedMV):
    """SM(N) for a finite-support base: the extended coordinate states plus the state at infinity."""
    if not isinstance(n.base, FinSupportAlgebra):
        raise PreconditionError("state catalog is available for finite-support bases")
    base = n.base
    return {
        "extended": SymbolicFamily(lambda i: extend_state(fs_state(base, i), n), "s_i~, i in N"),
        "infinity": s_infinity(n),
        "count": "|SM(M)| + 1",
    }


def maxideal_space_of_n(n: RepresentedMV, bound: int = 3) -> dict:
    """Catalog {Ker(s_i~)} plus I_inf, audited on the finite restriction to indices < ``bound``.

    In the restriction the maximal ideals must be exactly the traces of
    Ker(s_i~) for i < bound and of the Direct image; no others may appear.
    """
    from .ideals import maximal_ideals

    if not isinstance(n.base, FinSupportAlgebra):
        raise PreconditionError("maximal-ideal catalog is available for finite-support bases")
    sub = n.restrict(range(bound))
    elems = sub.n_elements
    found = sorted(sorted(m.members) for m in maximal_ideals(sub))
    expected = []
    for i in range(bound):
        st = extend_state(fs_state(n.base, i), n)
        expected.append(sorted(k for k, z in enumerate(elems) if st(z) == 0))
    expected.append(sorted(k for k, z in enumerate(elems) if not z.complement))
    expected.sort()
    return {
        "catalog": [f"Ker(s_{i}~)" for i in range(bound)] + ["I_inf"],
        "restriction_size": sub.size,
        "found": len(found),
        "matches": found == expected,
    }


# ---------------------------------------------------------------------------
# audit


def _upper_bounds_ok(n, seq, s, probes):
    """``s`` bounds ``seq`` and lies below every probe that bounds it."""
    if not all(n.leq(z, s) for z in seq):
        return False
    return all(n.leq(s, u) for u in probes if all(n.leq(z, u) for z in seq))


def sup_transfer(n: RepresentedMV, seq, probes) -> dict:
    """Supremum of a finite (stabilized) family of N by the three-case rule."""
    m = n.base
    directs = [z.x for z in seq if not z.complement]
    comps = [z.x for z in seq if z.complement]
    parts = []
    if directs:
        r = sup_of(m, directs)
        parts.append(Direct(r.value))
    if comps:
        r = inf_of(m, comps)
        parts.append(Complement(r.value))
    case = 1 if not comps else 2 if not directs else 3
    s = parts[0] if len(parts) == 1 else n.join(parts[0], parts[1])
    fold = seq[0]
    for z in seq[1:]:
        fold = n.join(fold, z)
    return {
        "case": case,
        "sup": s,
        "agrees_with_join": s == fold,
        "least": _upper_bounds_ok(n, seq, s, probes),
        "sigma_ideal": case != 1 or not s.complement,
    }


def audit_representation(n: RepresentedMV, probes=None, sequences=None) -> Audit:
    m = n.base
    if probes is None:
        probes = n.probe_elements()
    probes = list(probes)
    audit = Audit(n.name)
    for name in (
        "mv_axioms", "involution", "mixed_cover_independence", "direct_is_ideal",
        "direct_proper", "direct_maximal", "sup_case_1", "sup_case_2", "sup_case_3",
    ):
        audit.record(name)

    # exact on a finite restriction, then on the (wider-support) probes
    if isinstance(m, FinSupportAlgebra):
        shadow = n.restrict(range(3 if m.order == 1 else 2))
        report = check_emv_axioms(shadow)
        if not report.passed:
            f = report.failures()[0]
            audit.fail("mv_axioms", (f.name, *(shadow.n_elements[k] for k in f.witness)))
    report = check_emv_axioms(n, probes)
    if not report.passed:
        f = report.failures()[0]
        audit.fail("mv_axioms", (f.name, *f.witness))
    for z in probes:
        if n.neg(n.neg(z)) != z:
            audit.fail("involution", (z,))

    base_idems = [x for x in m.probe_elements() if m.is_idempotent(x)]
    for z in probes:
        for w in probes:
            if z.complement or not w.complement:
                continue
            b0 = m.cover(z.x, w.x)
            for e in base_idems:
                b1 = m.join(b0, e)
                if n.oplus_via(b0, z, w) != n.oplus_via(b1, z, w):
                    audit.fail("mixed_cover_independence", (z, w, b0, b1))
            if n.oplus(w, z) != n.oplus(z, w):
                audit.fail("mixed_cover_independence", (z, w))

    for z in probes:
        for w in probes:
            if not w.complement and n.leq(z, w) and z.complement:
                audit.fail("direct_is_ideal", (z, w))
            if not z.complement and not w.complement and n.oplus(z, w).complement:
                audit.fail("direct_is_ideal", (z, w))
    if not n.top.complement:
        audit.fail("direct_proper", (n.top,))
    for z in probes:
        if z.complement and n.oplus(z, Direct(z.x)) != n.top:
            # adjoining Complement(y) to the Direct image reaches top via Direct(y)
            audit.fail("direct_maximal", (z,))

    for seq in sequences if sequences is not None else default_sequences(n):
        items = list(seq.prefix) + [seq.tail] if isinstance(seq, EventuallyConstant) else list(seq)
        res = sup_transfer(n, items, probes)
        key = f"sup_case_{res['case']}"
        if not (res["agrees_with_join"] and res["least"] and res["sigma_ideal"]):
            audit.fail(key, tuple(items))
    return audit


def default_sequences(n: RepresentedMV):
    m = n.base
    pool = m.probe_elements(count=6)
    xs = pool[:6]
    seqs = [
        EventuallyConstant(tuple(Direct(x) for x in xs[:3]), Direct(xs[3])),
        EventuallyConstant(tuple(Complement(x) for x in xs[1:4]), Complement(xs[4])),
        EventuallyConstant((Direct(xs[2]), Complement(xs[3])), Complement(xs[5])),
        [Direct(xs[1])],
    ]
    return seqs


# ---------------------------------------------------------------------------
# convergence of coordinate states


def coordinate_convergence(n: RepresentedMV, probes=None, horizon: int = DEFAULT_HORIZON):
    """The extended coordinate states against s_inf on finite and cofinite probes."""
    if not isinstance(n.base, FinSupportAlgebra):
        raise PreconditionError("coordinate convergence needs a finite-support base")
    base = n.base
    if probes is None:
        probes = n.probe_elements()
    s_inf = s_infinity(n)
    return weak_convergence_check(
        n, lambda k: extend_state(fs_state(base, k), n), probes, limit=s_inf, horizon=horizon
    )


def base_convergence(m: FinSupportAlgebra, probes=None, horizon: int = DEFAULT_HORIZON):
    """The coordinate states of M itself: the pointwise limit is 0 and not a state-morphism."""
    if probes is None:
        probes = m.probe_elements()
    return weak_convergence_check(m, lambda k: fs_state(m, k), probes, horizon=horizon)
