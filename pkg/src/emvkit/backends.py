"""Lazily represented EMV-algebras.

``FinSupportAlgebra(n)``: maps from the natural numbers into the chain
{0..n} with finite support, all operations pointwise.  There is no top
element; the idempotents are the maps that take only the values 0 and n.
With n = 1 this is the generalized Boolean algebra of finite subsets of the
natural numbers.

Its maximal ideals are the coordinate ideals I_i = {x | x(i) = 0}.  An
ideal not inside any I_i contains, for each i in the support of a given x,
some element nonzero at i; finitely many of them join to an element whose
multiples reach the characteristic of supp(x), so the ideal contains x and
is improper.  Tests confirm the bounded version on ``restrict({0..k})``.

``ChangAlgebra``: the perfect MV-algebra Gamma(Z x_lex Z, (1,0)).  Its
elements are the infinitesimals ``Small(k) = (0,k)`` and the co-infinitesimals
``Big(k) = (1,-k)``.  It is the standard example that is not semisimple.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from .algebra import DEFAULT_SUPPORT, EmvAlgebra, FiniteEmvAlgebra
from .errors import PreconditionError


# ---------------------------------------------------------------------------
# finite-support maps


@dataclass(frozen=True)
class FS:
    """A finite-support map, stored as sorted (index, level) pairs with level > 0."""

    items: tuple = ()
    levels: dict = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "levels", dict(self.items))

    @classmethod
    def of(cls, mapping) -> "FS":
        return cls(tuple(sorted((int(i), int(v)) for i, v in dict(mapping).items() if v)))

    def get(self, i: int) -> int:
        return self.levels.get(i, 0)

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self.items)

    def as_dict(self) -> dict:
        return dict(self.levels)


def _pointwise(x: FS, y: FS, f) -> FS:
    dx, dy = x.levels, y.levels
    keys = sorted(dx.keys() | dy.keys())
    return FS(tuple((i, v) for i in keys if (v := f(dx.get(i, 0), dy.get(i, 0)))))


_FS_ENTRY = re.compile(r"^\s*(\d+)\s*(?::\s*(\d+))?\s*$")


class FinSupportAlgebra(EmvAlgebra):
    is_finite = False
    has_top = False

    def __init__(self, order: int, name: str | None = None):
        if not isinstance(order, int) or order < 1:
            raise PreconditionError("chain order must be an integer >= 1")
        self.order = order
        self.name = name or (f"finsupport(chain({order}))" if order > 1 else "finite_sets")

    @property
    def zero(self) -> FS:
        return FS()

    def element(self, mapping) -> FS:
        x = FS.of(mapping)
        self.check_element(x)
        return x

    def char(self, indices) -> FS:
        """Characteristic idempotent: level n on ``indices``."""
        return FS(tuple((int(i), self.order) for i in sorted(set(indices))))

    def check_element(self, x) -> None:
        if not isinstance(x, FS):
            raise PreconditionError(f"{x!r} is not a finite-support element")
        for i, v in x.items:
            if i < 0 or not 1 <= v <= self.order:
                raise PreconditionError(f"level {v} at index {i} outside chain({self.order})")

    # -- operations ----------------------------------------------------------
    def oplus(self, x, y):
        n = self.order
        return _pointwise(x, y, lambda u, v: min(u + v, n))

    def join(self, x, y):
        return _pointwise(x, y, max)

    def meet(self, x, y):
        return _pointwise(x, y, min)

    def leq(self, x, y) -> bool:
        dy = y.levels
        return all(v <= dy.get(i, 0) for i, v in x.items)

    def is_idempotent(self, x) -> bool:
        return all(v == self.order for _, v in x.items)

    def cover(self, *xs):
        return self.char(i for x in xs for i in x.support)

    def lam(self, a, x):
        n = self.order
        if any(v != n for _, v in a.items) or any(i not in a.levels for i, _ in x.items):
            self._require_below(a, x)
        return FS(tuple((i, n - x.get(i)) for i in a.support if n - x.get(i)))

    def odot(self, x, y):
        n = self.order
        return _pointwise(x, y, lambda u, v: max(u + v - n, 0))

    def odot_via(self, a, x, y):
        n = self.order
        if any(v != n for _, v in a.items) or not (x.levels.keys() | y.levels.keys()) <= a.levels.keys():
            self._require_below(a, x, y)
        return self.odot(x, y)

    def nscale(self, k: int, x):
        if k < 0:
            raise PreconditionError("nscale needs n >= 0")
        return FS(tuple((i, min(k * v, self.order)) for i, v in x.items)) if k else FS()

    def npower(self, k: int, x):
        if k == 0:
            raise PreconditionError("x^0 is defined only when a top element exists")
        if k < 0:
            raise PreconditionError("npower needs n >= 0")
        n = self.order
        return FS(tuple((i, w) for i, v in x.items if (w := max(k * v - (k - 1) * n, 0))))

    def least_upper_idempotent(self, x):
        return self.char(x.support)

    def greatest_lower_idempotent(self, x):
        return FS(tuple((i, v) for i, v in x.items if v == self.order))

    def multiples_bounded_by(self, x, y, horizon: int = 0) -> bool:
        return self.leq(self.char(x.support), y)

    def rational(self, x, i: int) -> Fraction:
        return Fraction(x.get(i), self.order)

    # -- syntax ----------------------------------------------------------------
    def format(self, x) -> str:
        if self.order == 1:
            return "{" + ",".join(str(i) for i in x.support) + "}"
        return "{" + ",".join(f"{i}:{v}" for i, v in x.items) + "}"

    def parse_element(self, text: str) -> FS:
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise PreconditionError(f"finite-support literal must be braced: {text!r}")
        body = body[1:-1].strip()
        mapping = {}
        if body:
            for part in body.split(","):
                m = _FS_ENTRY.match(part)
                if not m:
                    raise PreconditionError(f"bad finite-support entry {part.strip()!r}")
                i = int(m.group(1))
                v = int(m.group(2)) if m.group(2) is not None else self.order
                if i in mapping:
                    raise PreconditionError(f"index {i} given twice")
                mapping[i] = v
        x = FS.of(mapping)
        self.check_element(x)
        return x

    # -- samples and finite shadows --------------------------------------------
    def probe_elements(self, support: int = DEFAULT_SUPPORT, seed: int = 0, count: int = 40):
        """All maps supported in {0,1}, idempotents on {0..support-1}, then seeded random maps."""
        n = self.order
        out = [FS.of({0: u, 1: v}) for u in range(n + 1) for v in range(n + 1)]
        rng = random.Random(seed)
        out.append(self.char(range(support)))
        for _ in range(count):
            out.append(
                FS.of({i: rng.randint(0, n) for i in rng.sample(range(support), rng.randint(1, min(3, support)))})
            )
        return list(dict.fromkeys(out))

    def restrict(self, indices) -> "RestrictedFinSupport":
        return RestrictedFinSupport(self, tuple(sorted(set(indices))))

    def certify_unbounded(self, terms, reach):
        """Reason string if the probed supports confirm the declared unbounded reach."""
        prev = None
        for n, x in enumerate(terms):
            r = reach(n)
            if not x.support or max(x.support) < r:
                return None
            if prev is not None and r <= prev:
                return None
            prev = r
        return (
            f"supports reach index {prev} and grow strictly with the term number, "
            "so no finite-support element bounds them"
        )

    def __repr__(self) -> str:
        return f"FinSupportAlgebra(order={self.order})"


class RestrictedFinSupport(FiniteEmvAlgebra):
    """The finite subalgebra of maps supported inside a fixed index set."""

    def __init__(self, parent: FinSupportAlgebra, indices: tuple):
        self.parent = parent
        self.indices = indices
        n = parent.order
        levels = list(cartesian(range(n + 1), repeat=len(indices)))
        pos = {v: i for i, v in enumerate(levels)}
        op = [[pos[tuple(min(u + v, n) for u, v in zip(x, y))] for y in levels] for x in levels]
        jn = [[pos[tuple(max(u, v) for u, v in zip(x, y))] for y in levels] for x in levels]
        super().__init__(levels, op, pos[(0,) * len(indices)], join=jn, name=f"{parent.name}|{list(indices)}")

    def embed(self, k: int) -> FS:
        return FS.of(dict(zip(self.indices, self.values[k])))

    def project(self, x: FS) -> int:
        if not set(x.support) <= set(self.indices):
            raise PreconditionError("element is not supported inside the restriction")
        return self.el(tuple(x.get(i) for i in self.indices))


def fs_build(order: int) -> FinSupportAlgebra:
    return FinSupportAlgebra(order)


def fs_a0(alg: FinSupportAlgebra, x: FS) -> FS:
    return alg.least_upper_idempotent(x)


# ---------------------------------------------------------------------------
# Chang algebra


@dataclass(frozen=True)
class ChangElement:
    big: bool
    k: int

    def __repr__(self) -> str:
        return f"{'Big' if self.big else 'Small'}({self.k})"


def Small(k: int) -> ChangElement:
    if k < 0:
        raise PreconditionError("Small(k) needs k >= 0")
    return ChangElement(False, int(k))


def Big(k: int) -> ChangElement:
    if k < 0:
        raise PreconditionError("Big(k) needs k >= 0")
    return ChangElement(True, int(k))


_CHANG = re.compile(r"^\s*(Small|Big)\s*\(\s*(\d+)\s*\)\s*$")


class ChangAlgebra(EmvAlgebra):
    is_finite = False
    has_top = True

    def __init__(self, name: str = "chang"):
        self.name = name

    @property
    def zero(self):
        return Small(0)

    @property
    def top(self):
        return Big(0)

    def check_element(self, x) -> None:
        if not isinstance(x, ChangElement) or x.k < 0:
            raise PreconditionError(f"{x!r} is not a Chang element")

    def oplus(self, x, y):
        if x.big and y.big:
            return Big(0)
        if not x.big and not y.big:
            return Small(x.k + y.k)
        s, b = (x, y) if y.big else (y, x)
        return Big(max(b.k - s.k, 0))

    def leq(self, x, y) -> bool:
        if x.big != y.big:
            return not x.big
        return x.k <= y.k if not x.big else x.k >= y.k

    def join(self, x, y):
        return y if self.leq(x, y) else x

    def meet(self, x, y):
        return x if self.leq(x, y) else y

    def is_idempotent(self, x) -> bool:
        return x.k == 0

    def cover(self, *xs):
        return Small(0) if all(x == Small(0) for x in xs) else Big(0)

    def lam(self, a, x):
        self._require_below(a, x)
        if a == Small(0):
            return Small(0)
        return ChangElement(not x.big, x.k)

    def odot(self, x, y):
        if x.big and y.big:
            return Big(x.k + y.k)
        if not x.big and not y.big:
            return Small(0)
        s, b = (x, y) if y.big else (y, x)
        return Small(max(s.k - b.k, 0))

    def nscale(self, n: int, x):
        if n < 0:
            raise PreconditionError("nscale needs n >= 0")
        if n == 0:
            return Small(0)
        if not x.big:
            return Small(n * x.k)
        return x if n == 1 else Big(0)

    def npower(self, n: int, x):
        if n < 0:
            raise PreconditionError("npower needs n >= 0")
        if n == 0:
            return Big(0)
        if x.big:
            return Big(n * x.k)
        return x if n == 1 else Small(0)

    def multiples_bounded_by(self, x, y, horizon: int = 0) -> bool:
        # n.Small(k) = Small(nk) stays below every Big; n.Big(k) is top from n = 2 on
        if x == Small(0):
            return True
        if not x.big:
            return y.big
        return y == Big(0)

    def least_upper_idempotent(self, x):
        # n.x does not settle for a nonzero Small; the meet of idempotents above is used
        return self.cover(x)

    def greatest_lower_idempotent(self, x):
        return x if x == Big(0) else Small(0)

    def format(self, x) -> str:
        return repr(x)

    def parse_element(self, text: str):
        m = _CHANG.match(text)
        if not m:
            raise PreconditionError(f"Chang element must be Small(k) or Big(k): {text!r}")
        return ChangElement(m.group(1) == "Big", int(m.group(2)))

    def probe_elements(self, support: int = 16, seed: int = 0, count: int = 0):
        return [Small(k) for k in range(support + 1)] + [Big(k) for k in range(support + 1)]

    def __repr__(self) -> str:
        return "ChangAlgebra()"


def chang_build() -> ChangAlgebra:
    return ChangAlgebra()
