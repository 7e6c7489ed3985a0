"""EMV-clans and EMV-tribes of rational fuzzy sets over a finite domain.

Tribes are intensional: a membership oracle, a finite generator list and a
dominator map sending f to a characteristic function a in the tribe with
f <= a.  Countable sums are accepted only as finitely presented sequences
(all but finitely many terms are the zero function).

On a finite discrete domain every nowhere dense set is empty, so the
meager-set relation f ~ x of the construction below collapses to f = hat(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Any, Callable

from .algebra import FiniteEmvAlgebra
from .backends import ChangAlgebra
from .errors import PreconditionError
from .states import Audit, state_morphisms

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FuzzySet:
    domain: tuple
    values: tuple

    def __post_init__(self):
        if len(self.domain) != len(self.values):
            raise PreconditionError("fuzzy set needs one value per domain point")
        vals = tuple(Fraction(v) for v in self.values)
        for w, v in zip(self.domain, vals):
            if not ZERO <= v <= ONE:
                raise PreconditionError(f"value {v} at {w!r} is outside [0,1]")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, domain, fn) -> "FuzzySet":
        domain = tuple(domain)
        get = fn.get if isinstance(fn, dict) else fn
        return cls(domain, tuple(Fraction(get(w) or 0) for w in domain))

    def __call__(self, w) -> Fraction:
        return self.values[self.domain.index(w)]

    def items(self):
        return zip(self.domain, self.values)

    @property
    def is_characteristic(self) -> bool:
        return all(v in (ZERO, ONE) for v in self.values)

    def n_set(self) -> frozenset:
        return frozenset(w for w, v in self.items() if v != 0)

    def format(self) -> str:
        return "(" + ",".join(_frac(v) for v in self.values) + ")"

    def __repr__(self):
        return f"FuzzySet{self.format()}"


def _frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def zero_fn(domain) -> FuzzySet:
    domain = tuple(domain)
    return FuzzySet(domain, (ZERO,) * len(domain))


def char_fn(domain, subset) -> FuzzySet:
    domain = tuple(domain)
    subset = set(subset)
    return FuzzySet(domain, tuple(ONE if w in subset else ZERO for w in domain))


def _map(f: FuzzySet, g: FuzzySet, op) -> FuzzySet:
    if f.domain != g.domain:
        raise PreconditionError("fuzzy sets live on different domains")
    return FuzzySet(f.domain, tuple(op(u, v) for u, v in zip(f.values, g.values)))


def leq(f: FuzzySet, g: FuzzySet) -> bool:
    return all(u <= v for u, v in zip(f.values, g.values))


def fjoin(f, g):
    return _map(f, g, max)


def fmeet(f, g):
    return _map(f, g, min)


def minus(a: FuzzySet, f: FuzzySet) -> FuzzySet:
    """a - f for a characteristic a above f."""
    if not (a.is_characteristic and leq(f, a)):
        raise PreconditionError("a - f needs a characteristic a above f")
    return _map(a, f, lambda u, v: u - v)


def oplus(f, g, a) -> FuzzySet:
    return capped_sum([f, g], a)


def odot(f, g, a) -> FuzzySet:
    return FuzzySet(f.domain, tuple(max(u + v - c, ZERO) for u, v, c in zip(f.values, g.values, a.values)))


def star(f, g) -> FuzzySet:
    return _map(f, g, lambda u, v: max(u - v, ZERO))


def capped_sum(terms, a: FuzzySet) -> FuzzySet:
    """Pointwise min(sum of terms, a); every term must lie below a."""
    if not a.is_characteristic:
        raise PreconditionError("cap must be a characteristic function")
    terms = list(terms)
    for t in terms:
        if not leq(t, a):
            raise PreconditionError("summand is not below the cap")
    sums = [sum((t.values[k] for t in terms), ZERO) for k in range(len(a.domain))]
    return FuzzySet(a.domain, tuple(min(s, c) for s, c in zip(sums, a.values)))


def n_set(domain, values) -> frozenset:
    """N of an arbitrary rational function given by its values (may be negative)."""
    return frozenset(w for w, v in zip(domain, values) if v != 0)


# ---------------------------------------------------------------------------
# tribe handles


@dataclass
class TribeHandle:
    domain: tuple
    member: Callable[[FuzzySet], bool]
    generators: list
    dominator: Callable[[FuzzySet], Any]
    name: str = "T"
    elements: list | None = None

    def zero(self) -> FuzzySet:
        return zero_fn(self.domain)


def boolean_clan(domain, name: str = "boolean") -> TribeHandle:
    domain = tuple(domain)
    subsets = [char_fn(domain, s) for k in range(len(domain) + 1) for s in combinations(domain, k)]
    return TribeHandle(
        domain,
        member=lambda f: f.domain == domain and f.is_characteristic,
        generators=subsets,
        dominator=lambda f: f,
        name=name,
        elements=subsets,
    )


def _least_char_above(chars, f):
    ups = [a for a in chars if leq(f, a)]
    if not ups:
        return None
    return min(ups, key=lambda a: (sum(a.values), a.values))


def generated_tribe(domain, generators, name: str = "T", limit: int = 20000) -> TribeHandle:
    """Closure of rational generators under a - f, capped sums, joins and meets.

    Values stay on the grid of the common denominator, so the closure is
    finite and countable sums reduce to finite ones.
    """
    domain = tuple(domain)
    gens = [g if isinstance(g, FuzzySet) else FuzzySet(domain, tuple(g)) for g in generators]
    seen = {zero_fn(domain)}
    seen.update(gens)
    frontier = list(seen)
    while frontier:
        chars = [a for a in seen if a.is_characteristic]
        new = []
        items = list(seen)
        for f in frontier:
            for a in chars:
                if leq(f, a):
                    new.append(minus(a, f))
            for g in items:
                new.append(fjoin(f, g))
                new.append(fmeet(f, g))
                caps = [a for a in chars if leq(f, a) and leq(g, a)]
                if caps:
                    new.append(oplus(f, g, caps[0]))
        frontier = [h for h in set(new) if h not in seen]
        seen.update(frontier)
        if len(seen) > limit:
            raise PreconditionError(f"tribe closure exceeds {limit} functions")
    elements = sorted(seen, key=lambda f: f.values)
    chars = [a for a in elements if a.is_characteristic]
    members = set(elements)
    return TribeHandle(
        domain,
        member=members.__contains__,
        generators=gens,
        dominator=lambda f: _least_char_above(chars, f),
        name=name,
        elements=elements,
    )


def _clan_probes(t: TribeHandle, probes):
    if probes is not None:
        return list(probes)
    if t.elements is not None:
        return list(t.elements)
    base = [t.zero()] + list(t.generators)
    out = list(base)
    for f in base:
        a = t.dominator(f)
        if a is not None:
            out.append(a)
            out.append(minus(a, f))
    return list(dict.fromkeys(out))


def clan_audit(t: TribeHandle, probes=None) -> Audit:
    ps = _clan_probes(t, probes)
    audit = Audit(f"clan {t.name}")
    for name in ("members", "zero", "complement", "sum", "dominated", "covering"):
        audit.record(name)
    if not t.member(t.zero()):
        audit.fail("zero", (t.zero(),))
    for f in ps:
        if not t.member(f):
            audit.fail("members", (f,))
    chars = [a for a in ps if a.is_characteristic and t.member(a)]
    for f in ps:
        a = t.dominator(f)
        if a is None or not (a.is_characteristic and t.member(a) and leq(f, a)):
            audit.fail("dominated", (f,))
            continue
        if a not in chars:
            chars.append(a)
    for a in chars:
        below = [f for f in ps if leq(f, a)]
        for f in below:
            if not t.member(minus(a, f)):
                audit.fail("complement", (f, a))
            for g in below:
                if not t.member(oplus(f, g, a)):
                    audit.fail("sum", (f, g, a))
    for w in t.domain:
        if not any(f(w) == ONE for f in ps if t.member(f)):
            audit.fail("covering", (w,))
    return audit


@dataclass(frozen=True)
class EventuallyZero:
    """f_1, ..., f_k followed by the zero function forever."""

    terms: tuple


def _common_dominator(t: TribeHandle, terms):
    doms = [t.dominator(f) for f in terms]
    if any(d is None for d in doms):
        return None, doms
    a = zero_fn(t.domain)
    for d in doms:
        a = fjoin(a, d)
    return a, doms


def tribe_audit(t: TribeHandle, seq_probes=None) -> Audit:
    """Countable sums, cap independence and the pointwise inf/sup laws."""
    audit = Audit(f"tribe {t.name}")
    for name in ("sum_member", "cap_independent", "inf_pointwise", "sup_pointwise"):
        audit.record(name)
    if seq_probes is None:
        seq_probes = default_sequences(t)
    for seq in seq_probes:
        terms = list(seq.terms if isinstance(seq, EventuallyZero) else seq)
        if not terms:
            continue
        a, doms = _common_dominator(t, terms)
        if a is None or not t.member(a):
            audit.fail("sum_member", tuple(terms))
            continue
        total = capped_sum(terms, a)
        if not t.member(total):
            audit.fail("sum_member", tuple(terms))
        for d in doms:
            c = fjoin(a, d)
            if t.member(c) and capped_sum(terms, c) != total:
                audit.fail("cap_independent", tuple(terms))
        # the meet through the complement route a - sup(a - g_n)
        sup_comp = zero_fn(t.domain)
        for g in terms:
            sup_comp = fjoin(sup_comp, minus(a, g))
        inf_route = minus(a, sup_comp)
        inf_point = terms[0]
        sup_point = terms[0]
        for g in terms[1:]:
            inf_point = fmeet(inf_point, g)
            sup_point = fjoin(sup_point, g)
        if inf_route != inf_point or not t.member(inf_point):
            audit.fail("inf_pointwise", tuple(terms))
        if not t.member(sup_point):
            audit.fail("sup_pointwise", tuple(terms))
    return audit


def default_sequences(t: TribeHandle, limit: int = 12):
    pool = list(t.elements) if t.elements is not None else [t.zero()] + list(t.generators)
    pool = pool[:limit]
    seqs = [EventuallyZero((f,)) for f in pool]
    seqs += [EventuallyZero((f, g)) for f, g in cartesian(pool, repeat=2)]
    seqs += [EventuallyZero((f, f, f)) for f in pool]
    return seqs


def nset_audit(fs, a: FuzzySet) -> Audit:
    """The N-set calculus on all pairs from ``fs``, every function below ``a``."""
    audit = Audit("N-set calculus")
    for name in ("i", "ii", "iii", "iv", "v", "vi", "vii"):
        audit.record(name)
    fs = list(fs)
    dom = a.domain
    for f in fs:
        for g in fs:
            s = oplus(f, g, a)
            fg, gf = star(f, g), star(g, f)
            above = frozenset(w for w, u, v in zip(dom, f.values, g.values) if u > v)
            if s.n_set() != f.n_set() | g.n_set():
                audit.fail("i", (f, g))
            if fg.n_set() != above:
                audit.fail("ii", (f, g))
            if oplus(fg, gf, a).values != tuple(u + v for u, v in zip(fg.values, gf.values)):
                audit.fail("iii", (f, g))
            diff = n_set(dom, [u - v for u, v in zip(f.values, g.values)])
            if oplus(fg, gf, a).n_set() != diff:
                audit.fail("iv", (f, g))
            if leq(f, g) and not f.n_set() <= g.n_set():
                audit.fail("v", (f, g))
            if star(f, g).n_set() != above:
                audit.fail("vi", (f, g))
            over = frozenset(w for w, u, v in zip(dom, f.values, g.values) if u + v > 1)
            if odot(f, g, a).n_set() != over:
                audit.fail("vii", (f, g))
    return audit


# ---------------------------------------------------------------------------
# the finite construction


@dataclass
class LsWitness:
    algebra: FiniteEmvAlgebra
    omega: tuple
    states: list
    tribe: TribeHandle
    hat: dict
    h: dict = field(default_factory=dict)

    def trace(self, f: FuzzySet):
        """The unique x with f ~ x (f = hat(x) on a discrete domain)."""
        return self.h[f]


def hat(alg, states, x) -> FuzzySet:
    omega = tuple(s.name for s in states)
    return FuzzySet(omega, tuple(s(x) for s in states))


def ls_construct(alg: FiniteEmvAlgebra) -> LsWitness:
    if not isinstance(alg, FiniteEmvAlgebra):
        raise PreconditionError("the construction needs a finite table algebra")
    states = list(state_morphisms(alg))
    omega = tuple(s.name for s in states)
    hats = {x: hat(alg, states, x) for x in alg.elements()}
    h = {}
    for x, f in hats.items():
        if f in h:
            raise PreconditionError("hat is not injective: the algebra is not semisimple")
        h[f] = x
    elements = sorted(h, key=lambda f: f.values)

    def dominator(f):
        x = h.get(f)
        return None if x is None else hats[alg.cover(x)]

    tribe = TribeHandle(omega, member=h.__contains__, generators=list(elements),
                        dominator=dominator, name=f"hat({alg.name})", elements=elements)
    return LsWitness(alg, omega, states, tribe, hats, h)


def ls_audit(w: LsWitness) -> Audit:
    alg = w.algebra
    audit = Audit(f"construction on {alg.name}")
    for name in ("h_hat_identity", "hat_h_identity", "oplus", "lambda", "join", "meet", "sigma_sup", "injective"):
        audit.record(name)
    for x, f in w.hat.items():
        if w.h[f] != x:
            audit.fail("h_hat_identity", (x,))
    for f, x in w.h.items():
        if w.hat[x] != f:
            audit.fail("hat_h_identity", (f,))
    if len(set(w.hat.values())) != len(w.hat):
        audit.fail("injective", ())
    els = list(alg.elements())
    for x in els:
        for y in els:
            a = w.hat[alg.cover(x, y)]
            fx, fy = w.hat[x], w.hat[y]
            if w.hat[alg.oplus(x, y)] != oplus(fx, fy, a):
                audit.fail("oplus", (x, y))
            if w.hat[alg.join(x, y)] != fjoin(fx, fy):
                audit.fail("join", (x, y))
            if w.hat[alg.meet(x, y)] != fmeet(fx, fy):
                audit.fail("meet", (x, y))
            # countable sups of finite families reduce to joins
            if w.h[fjoin(fx, fy)] != alg.join(x, y):
                audit.fail("sigma_sup", (x, y))
        for b in alg.covers_of(x):
            if w.hat[alg.lam(b, x)] != minus(w.hat[b], w.hat[x]):
                audit.fail("lambda", (x, b))
    return audit


def chang_hat(alg: ChangAlgebra, x) -> FuzzySet:
    """Hat map of Chang over its single state: every infinitesimal goes to 0."""
    s = state_morphisms(alg)[0]
    return FuzzySet((s.name,), (s(x),))


def chang_hat_kernel(alg: ChangAlgebra, probes=None) -> dict:
    probes = list(probes) if probes is not None else alg.probe_elements()
    killed = [x for x in probes if chang_hat(alg, x).values == (ZERO,)]
    return {
        "killed": killed,
        "kills_radical": all(not x.big for x in killed) and all(x in killed for x in probes if not x.big),
        "injective": len({chang_hat(alg, x) for x in probes}) == len(probes),
    }


# ---------------------------------------------------------------------------
# a non-injective sigma-homomorphic image


@dataclass
class QuotientExample:
    source: TribeHandle
    target: TribeHandle
    h: Callable[[FuzzySet], FuzzySet]
    keep: tuple
    report: Audit


def _all_rational(domain):
    domain = tuple(domain)
    return TribeHandle(
        domain,
        member=lambda f: f.domain == domain,
        generators=[char_fn(domain, [w]) for w in domain],
        dominator=lambda f: char_fn(domain, f.n_set()),
        name=f"Q[0,1]^{{{','.join(map(str, domain))}}}",
    )


def ls_quotient_example(omega, keep, probes=None) -> QuotientExample:
    """Restriction of all rational fuzzy sets on omega to a nonempty ``keep``."""
    omega = tuple(omega)
    keep = tuple(w for w in omega if w in set(keep))
    if not keep:
        raise PreconditionError("keep must be a nonempty subset of omega")
    if len(keep) != len(set(keep)) or not set(keep) <= set(omega):
        raise PreconditionError("keep must be a subset of omega")
    src = _all_rational(omega)
    dst = _all_rational(keep)
    pos = [omega.index(w) for w in keep]

    def h(f: FuzzySet) -> FuzzySet:
        return FuzzySet(keep, tuple(f.values[k] for k in pos))

    def lift(g: FuzzySet) -> FuzzySet:
        return FuzzySet.of(omega, dict(zip(keep, g.values)))

    audit = Audit(f"restriction to {{{','.join(map(str, keep))}}}")
    for name in ("surjective", "kernel", "oplus", "lambda", "join", "meet", "sigma", "top"):
        audit.record(name)
    grid = [ZERO, Fraction(1, 2), ONE]
    if probes is None:
        probes = [FuzzySet(omega, v) for v in cartesian(grid, repeat=len(omega))]
    for f in probes:
        if h(lift(h(f))) != h(f):
            audit.fail("surjective", (f,))
        vanishes = all(f(w) == 0 for w in keep)
        if vanishes != (h(f) == zero_fn(keep)):
            audit.fail("kernel", (f,))
    for f in probes:
        for g in probes:
            a = fjoin(src.dominator(f), src.dominator(g))
            if h(oplus(f, g, a)) != oplus(h(f), h(g), h(a)):
                audit.fail("oplus", (f, g))
            if h(fjoin(f, g)) != fjoin(h(f), h(g)):
                audit.fail("join", (f, g))
            if h(fmeet(f, g)) != fmeet(h(f), h(g)):
                audit.fail("meet", (f, g))
        a = src.dominator(f)
        if h(minus(a, f)) != minus(h(a), h(f)):
            audit.fail("lambda", (f,))
    for f in probes[:12]:
        for g in probes[:12]:
            terms = [f, g, f]
            a = fjoin(src.dominator(f), src.dominator(g))
            if h(capped_sum(terms, a)) != capped_sum([h(t) for t in terms], h(a)):
                audit.fail("sigma", (f, g))
    if h(char_fn(omega, omega)) != char_fn(keep, keep):
        audit.fail("top", ())
    return QuotientExample(src, dst, h, keep, audit)


# ---------------------------------------------------------------------------
# the sigma-ring of sets


@dataclass
class SigmaRing:
    omega: tuple
    sets: list
    h0: dict
    audit: Audit


def sigma_ring_extract(w: LsWitness) -> SigmaRing:
    omega = w.omega
    subsets = [frozenset(s) for k in range(len(omega) + 1) for s in combinations(omega, k)]
    ring = [A for A in subsets if w.tribe.member(char_fn(omega, A))]
    audit = Audit(f"sigma-ring of {w.algebra.name}")
    for name in ("empty", "union", "difference", "countable_union", "h0_idempotent", "h0_surjective"):
        audit.record(name)
    rset = set(ring)
    if frozenset() not in rset:
        audit.fail("empty", ())
    for A in ring:
        for B in ring:
            if A | B not in rset:
                audit.fail("union", (sorted(A), sorted(B)))
            if A - B not in rset:
                audit.fail("difference", (sorted(A), sorted(B)))
    # a stabilizing countable union over a finite domain is a finite one
    total = frozenset().union(*ring) if ring else frozenset()
    if total not in rset:
        audit.fail("countable_union", ())
    h0 = {A: w.h[char_fn(omega, A)] for A in ring}
    alg = w.algebra
    for A, x in h0.items():
        if not alg.is_idempotent(x):
            audit.fail("h0_idempotent", (sorted(A),))
    if set(h0.values()) != set(alg.idempotents()):
        audit.fail("h0_surjective", ())
    return SigmaRing(omega, ring, h0, audit)
