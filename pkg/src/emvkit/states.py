"""State-morphisms, kernels, separation and the correspondence maps.

A state-morphism is an EMV-homomorphism into the standard interval [0,1]
(truncated addition, max, min) that takes the value 1 somewhere.  Values are
exact :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .algebra import DEFAULT_HORIZON, EmvAlgebra, FiniteEmvAlgebra
from .backends import Big, ChangAlgebra, FinSupportAlgebra, Small
from .errors import InternalConsistencyError, PreconditionError, TheoremViolationError
from .ideals import (
    Filter,
    Ideal,
    SymbolicFamily,
    _finite_maximal_ideals,
    idempotent_algebra,
    interval_algebra,
    maximal_filters,
    maximal_ideals,
    quotient_chain,
    radical,
)

ONE = Fraction(1)
ZERO = Fraction(0)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class StateMorphism:
    name: str
    ideal: Ideal
    witness: Any
    rule: str
    valuation: Callable = field(compare=False, repr=False)
    algebra: Any = field(default=None, compare=False, repr=False)

    def __call__(self, x) -> Fraction:
        return self.valuation(x)


def _finite_states(alg: FiniteEmvAlgebra):
    out = []
    for k, m in enumerate(_finite_maximal_ideals(alg)):
        q = quotient_chain(alg, m)
        table = tuple(q.value(x) for x in alg.elements())
        out.append(
            StateMorphism(
                f"s{k}",
                m,
                alg.top,
                f"class rank in a {q.length}-element chain",
                table.__getitem__,
                alg,
            )
        )
    return out


def fs_state(alg: FinSupportAlgebra, i: int) -> StateMorphism:
    n = alg.order
    return StateMorphism(
        f"s_{i}",
        Ideal("coordinate", index=i, maximal=True, algebra=alg),
        alg.char([i]),
        f"x -> x({i})/{n}",
        lambda x: Fraction(x.get(i), n),
        alg,
    )


def chang_state(alg: ChangAlgebra) -> StateMorphism:
    return StateMorphism(
        "s",
        Ideal("radical", maximal=True, algebra=alg),
        Big(0),
        "Small(k) -> 0, Big(k) -> 1",
        lambda x: ONE if x.big else ZERO,
        alg,
    )


class StateList(list):
    note: str = ""
    symbolic = False


def state_morphisms(alg: EmvAlgebra):
    """One state per maximal ideal: a list on finite and Chang backends, a family on fs."""
    if isinstance(alg, FiniteEmvAlgebra):
        out = StateList(_finite_states(alg))
        if alg.size == 1:
            out.note = "trivial algebra: no state-morphisms"
        kernels = [ker(alg, s).members for s in out]
        maxes = [m.members for m in _finite_maximal_ideals(alg)]
        if kernels != maxes:
            raise InternalConsistencyError("state kernels do not enumerate the maximal ideals")
        return out
    if isinstance(alg, FinSupportAlgebra):
        return SymbolicFamily(lambda i: fs_state(alg, i), f"s_i(x) = x(i)/{alg.order}, i in N")
    if isinstance(alg, ChangAlgebra):
        return StateList([chang_state(alg)])
    raise PreconditionError(f"no state catalog for {alg.name}")


def ker(alg: EmvAlgebra, s: StateMorphism) -> Ideal:
    if isinstance(alg, FiniteEmvAlgebra):
        members = frozenset(x for x in alg.elements() if s(x) == 0)
        maximal = members in {m.members for m in _finite_maximal_ideals(alg)}
        return Ideal("set", members, maximal=maximal, algebra=alg)
    return s.ideal


def ker1(alg: EmvAlgebra, s: StateMorphism) -> Filter:
    if isinstance(alg, FiniteEmvAlgebra):
        members = frozenset(x for x in alg.elements() if s(x) == 1)
        maximal = members in {f.members for f in maximal_filters(alg)}
        return Filter("set", members, maximal=maximal, algebra=alg)
    if isinstance(alg, FinSupportAlgebra):
        return Filter("coordinate", index=s.ideal.index, maximal=True, algebra=alg)
    return Filter("coradical", maximal=True, algebra=alg)


# ---------------------------------------------------------------------------
# audits


@dataclass
class Audit:
    """Named checks with the first witness of each failure."""

    subject: str
    checks: dict = field(default_factory=dict)
    not_applicable: list = field(default_factory=list)

    def record(self, name: str, witness=None):
        if name not in self.checks or self.checks[name] is None:
            self.checks[name] = witness

    def fail(self, name: str, witness):
        if self.checks.get(name) is None:
            self.checks[name] = witness

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.checks.values())

    def failures(self):
        return {k: w for k, w in self.checks.items() if w is not None}


def truncated_add(p: Fraction, q: Fraction) -> Fraction:
    return min(p + q, ONE)


def audit_state(alg: EmvAlgebra, s, probes=None) -> Audit:
    """Homomorphism laws of ``s``: exhaustive on finite backends, on ``probes`` otherwise."""
    if probes is None:
        probes = list(alg.elements()) if alg.is_finite else alg.probe_elements()
    probes = list(probes)
    audit = Audit(getattr(s, "name", "s"))
    for name in ("zero", "oplus", "join", "meet", "lambda", "range", "attains_one"):
        audit.record(name)
    if s(alg.zero) != 0:
        audit.fail("zero", (alg.zero,))
    for x in probes:
        if not 0 <= s(x) <= 1:
            audit.fail("range", (x,))
        for y in probes:
            if s(alg.oplus(x, y)) != truncated_add(s(x), s(y)):
                audit.fail("oplus", (x, y))
            if s(alg.join(x, y)) != max(s(x), s(y)):
                audit.fail("join", (x, y))
            if s(alg.meet(x, y)) != min(s(x), s(y)):
                audit.fail("meet", (x, y))
    for b in probes:
        if not alg.is_idempotent(b):
            continue
        for x in probes:
            if alg.leq(x, b) and s(alg.lam(b, x)) != s(b) - s(x):
                audit.fail("lambda", (b, x))
    w = getattr(s, "witness", None)
    if w is None or s(w) != 1:
        audit.fail("attains_one", (w,))
    return audit


# ---------------------------------------------------------------------------
# separation


def _require_outside(X, t):
    if t in X:
        raise PreconditionError("t must not belong to X")
    if not X:
        raise PreconditionError("X must be nonempty")


def find_separating_element(alg: FiniteEmvAlgebra, X, t):
    """First element e (index order) with t(e) = 1 and s(e) = 0 for every s in X."""
    _require_outside(X, t)
    for e in alg.elements():
        if t(e) == 1 and all(s(e) == 0 for s in X):
            return e
    raise TheoremViolationError("no separating element found")


def find_dual_separating_element(alg: FiniteEmvAlgebra, X, t):
    """First element e with t(e) = 0 and s(e) = 1 for every s in X."""
    _require_outside(X, t)
    for e in alg.elements():
        if t(e) == 0 and all(s(e) == 1 for s in X):
            return e
    raise TheoremViolationError("no dual separating element found")


def _kernel_gap(alg, s, t):
    # an element killed by t but not by s; exists because kernels are distinct maximal ideals
    for x in alg.elements():
        if t(x) == 0 and s(x) > 0:
            return x
    raise TheoremViolationError(f"Ker t is inside Ker {s.name}")


def _first_multiple_above_half(alg, s, x):
    n, y = 1, x
    while s(y) <= HALF:
        n += 1
        y = alg.oplus(y, x)
        if n > 4 * alg.size + 4:
            raise TheoremViolationError("multiples never exceed 1/2")
    return n, y


def _cover_where_one(alg, t, *xs):
    for b in alg.covers_of(*xs):
        if t(b) == 1:
            return b
    raise TheoremViolationError("no idempotent cover with t = 1")


@dataclass(frozen=True)
class RecipeTrace:
    element: Any
    steps: tuple


def separating_recipe(alg: FiniteEmvAlgebra, X, t) -> RecipeTrace:
    """Constructive separation: meet of lam_b(n.x) over X, then r.(a (.) a)."""
    _require_outside(X, t)
    parts = []
    for s in X:
        x = _kernel_gap(alg, s, t)
        b = _cover_where_one(alg, t, x)
        n, nx = _first_multiple_above_half(alg, s, x)
        parts.append((s.name, x, b, n, alg.lam(b, nx)))
    a = parts[0][4]
    for p in parts[1:]:
        a = alg.meet(a, p[4])
    if not (t(a) > HALF and all(s(a) < HALF for s in X)):
        raise TheoremViolationError("meet of local complements does not split at 1/2")
    b = _cover_where_one(alg, t, a)
    sq = alg.odot(a, a)
    via_meet = alg.odot(a, alg.lam(b, alg.meet(a, alg.lam(b, a))))
    if via_meet != sq:
        raise InternalConsistencyError("a (.) lam_b(a ^ lam_b a) differs from a (.) a")
    if t(sq) == 0 or any(s(sq) != 0 for s in X):
        raise TheoremViolationError("a (.) a does not separate")
    r, e = 1, sq
    while t(e) != 1:
        r += 1
        e = alg.oplus(e, sq)
    return RecipeTrace(e, (("parts", tuple(parts)), ("a", a), ("b", b), ("a.a", sq), ("r", r)))


def dual_separating_recipe(alg: FiniteEmvAlgebra, X, t) -> RecipeTrace:
    """Constructive dual separation: join of n.x over X, then doubled."""
    _require_outside(X, t)
    parts = []
    for s in X:
        x = _kernel_gap(alg, s, t)
        n, nx = _first_multiple_above_half(alg, s, x)
        parts.append((s.name, x, n, nx))
    a0 = parts[0][3]
    for p in parts[1:]:
        a0 = alg.join(a0, p[3])
    e = alg.oplus(a0, a0)
    return RecipeTrace(e, (("parts", tuple(parts)), ("a0", a0)))


def separates(X, t, e, dual: bool = False) -> bool:
    hi, lo = (ZERO, ONE) if dual else (ONE, ZERO)
    return t(e) == hi and all(s(e) == lo for s in X)


# ---------------------------------------------------------------------------
# correspondence maps and structural predicates


@dataclass
class Correspondence:
    theta: list
    zeta: list
    xi: list | None
    eta: list | None
    bijective: dict
    reason: str = ""


def correspondence_maps(alg: FiniteEmvAlgebra) -> Correspondence:
    """theta: s -> Ker s; zeta: s -> Ker1 s; xi: A -> A meet I(M); eta: s -> s on I(M)."""
    states = state_morphisms(alg)
    maxes = [m.members for m in _finite_maximal_ideals(alg)]
    mfils = [f.members for f in maximal_filters(alg)]
    theta = [(s.name, ker(alg, s).members) for s in states]
    zeta = [(s.name, ker1(alg, s).members) for s in states]

    def bij(pairs, target):
        images = [p[1] for p in pairs]
        return len(set(images)) == len(images) and set(images) == set(target)

    flags = {"theta": bij(theta, maxes), "zeta": bij(zeta, mfils)}
    ok, witness = check_general_comparability(alg)
    if not ok:
        return Correspondence(theta, zeta, None, None, flags, f"general comparability fails at {witness}")
    idem = idempotent_algebra(alg)
    to_parent = idem.parent_index
    idem_maxes = [frozenset(to_parent[k] for k in m.members) for m in _finite_maximal_ideals(idem)]
    idem_idems = frozenset(alg.idempotents())
    xi = [(m, m & idem_idems) for m in maxes]
    flags["xi"] = bij(xi, idem_maxes)
    idem_states = state_morphisms(idem)
    idem_tables = [tuple(s(k) for k in idem.elements()) for s in idem_states]
    eta = [(s.name, tuple(s(to_parent[k]) for k in idem.elements())) for s in states]
    flags["eta"] = bij(eta, idem_tables)
    return Correspondence(theta, zeta, xi, eta, flags)


def check_general_comparability(alg: EmvAlgebra):
    """(holds, witness): every x, y in [0,a] are split by an idempotent e <= a."""
    if isinstance(alg, FinSupportAlgebra):
        # pointwise: take e = full level where x exceeds y
        return True, None
    if isinstance(alg, ChangAlgebra):
        return True, None
    for a in alg.idempotents():
        below = alg.below(a)
        es = [e for e in below if alg.is_idempotent(e)]
        for x in below:
            for y in below:
                if not any(
                    alg.leq(alg.meet(x, e), y) and alg.leq(alg.meet(y, alg.lam(a, e)), x) for e in es
                ):
                    return False, (x, y, a)
    return True, None


def archimedean_witness(alg: EmvAlgebra, probes=None, horizon: int = DEFAULT_HORIZON):
    """(x, y) with n.x <= y for all n but x (.) y != x, or None."""
    if probes is None:
        probes = list(alg.elements()) if alg.is_finite else alg.probe_elements()
    for x in probes:
        for y in probes:
            if alg.multiples_bounded_by(x, y, horizon) and alg.odot(x, y) != x:
                return (x, y)
    return None


def is_archimedean_belluce(alg: EmvAlgebra, probes=None) -> bool:
    return archimedean_witness(alg, probes) is None


def _interval_shadows(alg: EmvAlgebra, probes=None):
    """The MV-algebras [0,a] used by the four-way check, as table algebras where possible."""
    if isinstance(alg, FiniteEmvAlgebra):
        return [interval_algebra(alg, a) for a in alg.idempotents()]
    if isinstance(alg, FinSupportAlgebra):
        sample = probes if probes is not None else alg.probe_elements()
        supports = sorted({alg.cover(x).support for x in sample if len(x.support) <= 3})
        return [alg.restrict(s) for s in supports]
    if isinstance(alg, ChangAlgebra):
        return [alg]
    raise PreconditionError(f"no interval shadows for {alg.name}")


def semisimplicity_predicates(alg: EmvAlgebra, probes=None) -> dict:
    """The four equivalent conditions, each computed on its own."""
    intervals = _interval_shadows(alg, probes)
    return {
        "archimedean": is_archimedean_belluce(alg, probes),
        "intervals_archimedean": all(is_archimedean_belluce(m, probes if m is alg else None) for m in intervals),
        "intervals_semisimple": all(radical(m, probes if m is alg else None).semisimple for m in intervals),
        "semisimple": radical(alg, probes).semisimple,
    }


# ---------------------------------------------------------------------------
# convergence


@dataclass
class ConvergenceReport:
    probes: list
    verdict: str
    limit_is_state: bool | None
    note: str = ""

    @property
    def converged(self) -> bool:
        return all(p["converged"] for p in self.probes)

    @property
    def agrees(self) -> bool:
        return all(p.get("agrees", True) for p in self.probes)


def weak_convergence_check(
    alg: EmvAlgebra, seq: Callable[[int], Callable], probes, limit: Callable | None = None,
    horizon: int = DEFAULT_HORIZON, fmt=None,
) -> ConvergenceReport:
    """Pointwise limits of ``seq(n)(x)`` on each probe, compared with ``limit`` if given.

    A probe converges when its values are constant over the second half of
    the horizon.  Without ``limit`` the pointwise limit itself is examined:
    it is flagged as not a state-morphism when it breaks a homomorphism law
    on the probes or never takes the value 1 there.
    """
    fmt = fmt or alg.format
    rows = []
    limits = {}
    for x in probes:
        vals = [seq(n)(x) for n in range(horizon)]
        tail = vals[horizon // 2 :]
        converged = all(v == tail[0] for v in tail)
        row = {"probe": fmt(x), "converged": converged, "limit": str(tail[0]) if converged else None}
        if converged:
            limits[x] = tail[0]
        if limit is not None:
            row["candidate"] = str(limit(x))
            row["agrees"] = converged and tail[0] == limit(x)
        rows.append(row)
    limit_is_state = None
    note = ""
    if limit is None and len(limits) == len(rows):
        pl = limits.__getitem__
        bad_law = None
        for x in limits:
            for y in limits:
                z = alg.oplus(x, y)
                if z in limits and pl(z) != truncated_add(pl(x), pl(y)):
                    bad_law = (x, y)
        attains = any(v == 1 for v in limits.values())
        limit_is_state = bad_law is None and attains
        if not attains:
            note = "not a state-morphism: the limit never takes the value 1 on the probes"
        elif bad_law is not None:
            note = "not a state-morphism: oplus is not preserved"
    verdict = "converges" if all(r["converged"] for r in rows) else "undecided"
    return ConvergenceReport(rows, verdict, limit_is_state, note)
