"""EMV-algebra interface and the finite table backend.

An EMV-algebra is a distributive lattice with bottom 0 carrying a commutative
monoid operation ``oplus`` such that every element sits below an idempotent
``a`` and each interval ``[0, a]`` is an MV-algebra whose negation is the
local complement ``lam(a, x)``.  Elements are backend-specific values: plain
integers (table indices) for :class:`FiniteEmvAlgebra`, immutable objects for
the lazy backends in :mod:`emvkit.backends`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import AxiomViolationError, InvalidAlgebraError, PreconditionError

DEFAULT_HORIZON = 64
DEFAULT_SUPPORT = 8


class EmvAlgebra:
    """Operations every backend provides.

    Subclasses implement ``zero``, ``oplus``, ``join``, ``meet``, ``leq``,
    ``cover`` and ``lam``; everything else has a generic definition here.
    """

    name: str = "M"
    is_finite: bool = False
    has_top: bool = False

    # -- primitive operations -------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def top(self):
        raise PreconditionError(f"{self.name} has no top element")

    def oplus(self, x, y):
        raise NotImplementedError

    def join(self, x, y):
        raise NotImplementedError

    def meet(self, x, y):
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        raise NotImplementedError

    def cover(self, *xs):
        """Least idempotent above all of ``xs`` (0 for no arguments)."""
        raise NotImplementedError

    def lam(self, a, x):
        """Local complement of ``x`` inside ``[0, a]``; ``a`` must be idempotent."""
        raise NotImplementedError

    # -- element syntax -------------------------------------------------------
    def format(self, x) -> str:
        return str(x)

    def parse_element(self, text: str):
        raise NotImplementedError

    def check_element(self, x) -> None:
        """Raise PreconditionError unless ``x`` is a valid element."""

    # -- derived operations ---------------------------------------------------
    def is_idempotent(self, x) -> bool:
        return self.oplus(x, x) == x

    def odot(self, x, y):
        a = self.cover(x, y)
        return self.lam(a, self.oplus(self.lam(a, x), self.lam(a, y)))

    def odot_via(self, a, x, y):
        """``x (.) y`` computed inside the interval ``[0, a]`` for a chosen cover ``a``."""
        self._require_below(a, x, y)
        return self.lam(a, self.oplus(self.lam(a, x), self.lam(a, y)))

    def ominus(self, x, y):
        """Truncated difference ``x (.) lam_a(y)`` for a cover ``a`` of both."""
        a = self.cover(x, y)
        return self.odot(x, self.lam(a, y))

    def nscale(self, n: int, x):
        if n < 0:
            raise PreconditionError("nscale needs n >= 0")
        acc = self.zero
        for _ in range(n):
            acc = self.oplus(acc, x)
        return acc

    def npower(self, n: int, x):
        if n == 0:
            if not self.has_top:
                raise PreconditionError("x^0 is defined only when a top element exists")
            return self.top
        if n < 0:
            raise PreconditionError("npower needs n >= 0")
        acc = x
        for _ in range(n - 1):
            acc = self.odot(acc, x)
        return acc

    def stable_multiple(self, x, horizon: int = DEFAULT_HORIZON):
        """(value, n) where n.x first stops growing, or None within ``horizon`` steps."""
        prev = x
        for n in range(1, horizon + 1):
            nxt = self.oplus(prev, x)
            if nxt == prev:
                return prev, n
            prev = nxt
        return None

    def stable_power(self, x, horizon: int = DEFAULT_HORIZON):
        prev = x
        for n in range(1, horizon + 1):
            nxt = self.odot(prev, x)
            if nxt == prev:
                return prev, n
            prev = nxt
        return None

    def multiples_bounded_by(self, x, y, horizon: int = DEFAULT_HORIZON) -> bool:
        """Whether n.x <= y for every n >= 0.

        Exact whenever n.x stabilizes within ``horizon``; backends where it
        does not (Chang) override this with a symbolic rule.
        """
        found = self.stable_multiple(x, horizon)
        if found is None:
            raise AxiomViolationError(f"n.x did not stabilize within {horizon} steps")
        return self.leq(found[0], y)

    def least_upper_idempotent(self, x):
        found = self.stable_multiple(x)
        if found is None:
            raise AxiomViolationError("n.x did not stabilize")
        return found[0]

    def greatest_lower_idempotent(self, x):
        found = self.stable_power(x)
        if found is None:
            raise AxiomViolationError("x^n did not stabilize")
        return found[0]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def _require_below(self, a, *xs):
        if not self.is_idempotent(a):
            raise PreconditionError(f"{self.format(a)} is not idempotent")
        for x in xs:
            if not self.leq(x, a):
                raise PreconditionError(f"{self.format(x)} is not below {self.format(a)}")

    # -- enumeration ------------------------------------------------------------
    def elements(self) -> Sequence:
        raise PreconditionError(f"{self.name} is infinite; use probe_elements()")

    def idempotents(self):
        return [x for x in self.elements() if self.is_idempotent(x)]

    def is_idempotent_member(self, x) -> bool:
        return self.is_idempotent(x)

    def probe_elements(self, support: int = DEFAULT_SUPPORT, seed: int = 0, count: int = 40):
        return list(self.elements())


def _format_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(_format_value(c) for c in v) + ")"
    return str(v)


def _readonly(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


class FiniteEmvAlgebra(EmvAlgebra):
    """EMV-algebra given by full operation tables on an indexed carrier.

    ``values`` are hashable labels (chain levels, tuples for products,
    strings for DSL tables).  Elements are their indices.  The order is
    derived from ``join`` when it is supplied, otherwise ``leq`` must be
    given and join/meet are computed as least upper / greatest lower bounds.
    All derived tables (meet, idempotent covers, local complements, odot) are
    built here, once; instances are immutable afterwards.
    """

    is_finite = True

    def __init__(self, values, oplus, zero: int, *, join=None, leq=None, name: str = "M"):
        self.name = name
        self.values = tuple(values)
        n = len(self.values)
        if n == 0:
            raise InvalidAlgebraError("empty carrier")
        self._index = {}
        for i, v in enumerate(self.values):
            if v in self._index:
                raise InvalidAlgebraError(f"duplicate element {v!r}")
            self._index[v] = i
        self._labels = {_format_value(v).replace(" ", ""): i for i, v in enumerate(self.values)}
        self.size = n
        op = self._table(oplus, "oplus")
        if not 0 <= zero < n:
            raise InvalidAlgebraError("zero is not an element")
        self._zero = int(zero)

        if join is not None:
            jn = self._table(join, "join")
            le = (jn == np.arange(n)[None, :]).astype(np.int8)
        elif leq is not None:
            le = np.asarray(leq, dtype=np.int8)
            if le.shape != (n, n):
                raise InvalidAlgebraError("leq matrix must be square over the carrier")
            jn = self._bound_table(le, upper=True)
        else:
            raise InvalidAlgebraError("supply either a join table or an order")
        if not all(le[i, i] for i in range(n)):
            raise InvalidAlgebraError("derived order is not reflexive")
        mt = self._bound_table(le, upper=False)

        self.oplus_table = _readonly(op)
        self.join_table = _readonly(jn)
        self.meet_table = _readonly(mt)
        self.leq_table = _readonly(le)
        self._op = op.tolist()
        self._jn = jn.tolist()
        self._mt = mt.tolist()
        self._le = le.astype(bool).tolist()

        self.idempotent_elements = tuple(x for x in range(n) if self._op[x][x] == x)
        self._cover = [self._least_idempotent_above(x) for x in range(n)]
        self.lambda_rows = {}
        for a in self.idempotent_elements:
            row = _kernels.lambda_row(self.oplus_table, self.leq_table, a)
            row.setflags(write=False)
            self.lambda_rows[a] = row
        self._lam = {a: row.tolist() for a, row in self.lambda_rows.items()}
        self._odot = [[self._odot_entry(x, y) for y in range(n)] for x in range(n)]
        self.odot_table = _readonly(np.array(self._odot, dtype=np.int64).reshape(n, n))
        tops = [x for x in range(n) if all(self._le[y][x] for y in range(n))]
        self._top = tops[0] if tops else None
        self.has_top = self._top is not None

    # -- construction helpers ---------------------------------------------------
    def _table(self, table, what):
        arr = np.asarray(table, dtype=np.int64)
        n = self.size
        if arr.shape != (n, n):
            raise InvalidAlgebraError(f"{what} table must be {n}x{n}, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise InvalidAlgebraError(f"{what} table has entries outside the carrier")
        return np.ascontiguousarray(arr)

    def _bound_table(self, le, upper):
        n = self.size
        out = np.zeros((n, n), dtype=np.int64)
        for x in range(n):
            for y in range(n):
                if upper:
                    bounds = [z for z in range(n) if le[x, z] and le[y, z]]
                    best = [z for z in bounds if all(le[z, w] for w in bounds)]
                else:
                    bounds = [z for z in range(n) if le[z, x] and le[z, y]]
                    best = [z for z in bounds if all(le[w, z] for w in bounds)]
                if len(best) != 1:
                    kind = "least upper" if upper else "greatest lower"
                    raise InvalidAlgebraError(
                        f"order has no {kind} bound for {self.values[x]!r}, {self.values[y]!r}"
                    )
                out[x, y] = best[0]
        return out

    def _least_idempotent_above(self, x):
        ups = [a for a in self.idempotent_elements if self._le[x][a]]
        if not ups:
            return -1
        least = [a for a in ups if all(self._le[a][b] for b in ups)]
        if least:
            return least[0]
        minimal = [a for a in ups if not any(b != a and self._le[b][a] for b in ups)]
        return min(minimal)

    def _odot_entry(self, x, y):
        a = self._cover[self._jn[x][y]]
        if a < 0:
            return -1
        row = self._lam[a]
        lx, ly = row[x], row[y]
        if lx < 0 or ly < 0:
            return -1
        s = self._op[lx][ly]
        if not self._le[s][a] or row[s] < 0:
            return -1
        return row[s]

    # -- element syntax -----------------------------------------------------------
    def el(self, value) -> int:
        """Index of the element with the given label value."""
        try:
            return self._index[value]
        except (KeyError, TypeError):
            raise PreconditionError(f"{value!r} is not an element of {self.name}") from None

    def value(self, x: int):
        return self.values[x]

    def format(self, x) -> str:
        return _format_value(self.values[x])

    def parse_element(self, text: str) -> int:
        key = text.replace(" ", "")
        if key not in self._labels:
            raise PreconditionError(f"{text!r} is not an element of {self.name}")
        return self._labels[key]

    def check_element(self, x) -> None:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.size:
            raise PreconditionError(f"{x!r} is not an element index of {self.name}")

    # -- primitive operations -----------------------------------------------------
    @property
    def zero(self) -> int:
        return self._zero

    @property
    def top(self) -> int:
        if self._top is None:
            raise PreconditionError(f"{self.name} has no top element")
        return self._top

    def oplus(self, x, y):
        return self._op[x][y]

    def join(self, x, y):
        return self._jn[x][y]

    def meet(self, x, y):
        return self._mt[x][y]

    def leq(self, x, y) -> bool:
        return self._le[x][y]

    def is_idempotent(self, x) -> bool:
        return self._op[x][x] == x

    def cover(self, *xs):
        j = self._zero
        for x in xs:
            j = self._jn[j][x]
        a = self._cover[j]
        if a < 0:
            raise AxiomViolationError(f"no idempotent above {self.format(j)}")
        return a

    def covers_of(self, *xs):
        """Every idempotent above all of ``xs``, in index order."""
        j = self._zero
        for x in xs:
            j = self._jn[j][x]
        return [a for a in self.idempotent_elements if self._le[j][a]]

    def lam(self, a, x):
        row = self._lam.get(a)
        if row is None:
            raise PreconditionError(f"{self.format(a)} is not idempotent")
        z = row[x]
        if z == -1:
            raise PreconditionError(f"{self.format(x)} is not below {self.format(a)}")
        if z == -2:
            raise AxiomViolationError(
                f"no minimum z in [0,{self.format(a)}] with z+{self.format(x)}={self.format(a)}"
            )
        return z

    def odot(self, x, y):
        z = self._odot[x][y]
        if z < 0:
            raise AxiomViolationError(f"odot undefined for {self.format(x)}, {self.format(y)}")
        return z

    # -- enumeration ----------------------------------------------------------------
    def elements(self):
        return range(self.size)

    def idempotents(self):
        return list(self.idempotent_elements)

    def below(self, a):
        return [x for x in range(self.size) if self._le[x][a]]

    def subalgebra(self, members: Iterable[int], name: str | None = None) -> "FiniteEmvAlgebra":
        """Restriction of the tables to ``members`` (must be closed under the operations)."""
        ms = sorted(set(int(m) for m in members))
        pos = {m: i for i, m in enumerate(ms)}
        if self._zero not in pos:
            raise PreconditionError("subalgebra must contain 0")
        for x in ms:
            for y in ms:
                for table in (self._op, self._jn, self._mt):
                    if table[x][y] not in pos:
                        raise PreconditionError("member set is not closed under the operations")
        op = [[pos[self._op[x][y]] for y in ms] for x in ms]
        jn = [[pos[self._jn[x][y]] for y in ms] for x in ms]
        sub = FiniteEmvAlgebra(
            [self.values[m] for m in ms], op, pos[self._zero], join=jn, name=name or f"sub({self.name})"
        )
        sub.parent_index = tuple(ms)
        return sub

    def __repr__(self) -> str:
        return f"FiniteEmvAlgebra({self.name!r}, size={self.size})"


class ChainAlgebra(FiniteEmvAlgebra):
    """The Lukasiewicz chain Gamma(Z, n): levels 0..n, level k standing for k/n."""

    def __init__(self, order: int, name: str | None = None):
        if not isinstance(order, int) or order < 1:
            raise PreconditionError("chain order must be an integer >= 1")
        self.order = order
        levels = range(order + 1)
        op = [[min(i + j, order) for j in levels] for i in levels]
        jn = [[max(i, j) for j in levels] for i in levels]
        super().__init__(list(levels), op, 0, join=jn, name=name or f"chain({order})")

    def rational(self, x: int) -> Fraction:
        return Fraction(x, self.order)


def build_chain(order: int) -> ChainAlgebra:
    return ChainAlgebra(order)


def product(a: FiniteEmvAlgebra, b: FiniteEmvAlgebra, name: str | None = None) -> FiniteEmvAlgebra:
    """Componentwise product; both factors must pass :func:`check_emv_axioms`."""
    from .axioms import check_emv_axioms

    for factor in (a, b):
        report = check_emv_axioms(factor)
        if not report.passed:
            raise InvalidAlgebraError(
                f"factor {factor.name} fails {', '.join(r.name for r in report.failures())}"
            )
    nb = b.size
    values = [(va, vb) for va in a.values for vb in b.values]

    def combine(ta, tb):
        return [
            [ta[i][k] * nb + tb[j][l] for k in range(a.size) for l in range(nb)]
            for i in range(a.size)
            for j in range(nb)
        ]

    op = combine(a._op, b._op)
    jn = combine(a._jn, b._jn)
    alg = FiniteEmvAlgebra(
        values, op, a.zero * nb + b.zero, join=jn, name=name or f"product({a.name},{b.name})"
    )
    alg.factors = (a, b)
    return alg


def trivial_algebra(name: str = "trivial") -> FiniteEmvAlgebra:
    """The one-element algebra {0}."""
    return FiniteEmvAlgebra([0], [[0]], 0, join=[[0]], name=name)


# -- module-level spellings of the element operations -------------------------------


def lam(alg: EmvAlgebra, bound, x):
    alg._require_below(bound, x)
    return alg.lam(bound, x)


def odot(alg: EmvAlgebra, x, y):
    return alg.odot(x, y)


def nscale(alg: EmvAlgebra, n: int, x):
    return alg.nscale(n, x)


def npower(alg: EmvAlgebra, n: int, x):
    return alg.npower(n, x)


def idempotents(alg: EmvAlgebra):
    """Finite backends: the list of idempotents.  Lazy backends: a membership predicate."""
    if alg.is_finite:
        return alg.idempotents()
    return alg.is_idempotent


def least_upper_idempotent(alg: EmvAlgebra, x):
    return alg.least_upper_idempotent(x)


def greatest_lower_idempotent(alg: EmvAlgebra, x):
    return alg.greatest_lower_idempotent(x)


def meet_of_idempotents_above(alg: FiniteEmvAlgebra, x) -> Any:
    """Brute-force a0(x): meet of every idempotent >= x."""
    ups = [a for a in alg.idempotents() if alg.leq(x, a)]
    acc = ups[0]
    for a in ups[1:]:
        acc = alg.meet(acc, a)
    return acc


def join_of_idempotents_below(alg: FiniteEmvAlgebra, x) -> Hashable:
    """Brute-force b0(x): join of every idempotent <= x."""
    acc = alg.zero
    for b in alg.idempotents():
        if alg.leq(b, x):
            acc = alg.join(acc, b)
    return acc
