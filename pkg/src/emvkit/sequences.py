"""Suprema and infima of finite families and lazily presented sequences.

A sequence is given as a finite list, an :class:`EventuallyConstant` prefix
plus tail, or a :class:`RuleSequence` computing the n-th term.  Rule
sequences are probed up to a horizon; if the running join has not settled
the answer is ``undecided`` unless the backend can certify nonexistence
(finite-support backends do this when the caller declares how far the
supports reach).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .algebra import DEFAULT_HORIZON, EmvAlgebra

EXISTS = "exists"
DOES_NOT_EXIST = "does_not_exist"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class SupResult:
    status: str
    value: Any = None
    reason: str = ""
    settled_at: int | None = None

    @property
    def exists(self) -> bool:
        return self.status == EXISTS


@dataclass(frozen=True)
class EventuallyConstant:
    prefix: tuple
    tail: Any


@dataclass(frozen=True)
class RuleSequence:
    """Terms ``term(0), term(1), ...``.

    ``reach``, when given, is a claim that ``term(n)`` has a nonzero
    coordinate at an index >= ``reach(n)`` and that ``reach`` grows without
    bound; backends that understand supports use it to prove that no upper
    bound exists.  The claim is checked on every probed term.
    """

    term: Callable[[int], Any]
    reach: Callable[[int], int] | None = None


def _fold(alg, items, op):
    it = iter(items)
    acc = next(it)
    for x in it:
        acc = op(acc, x)
    return acc


def sup_of(alg: EmvAlgebra, xs, horizon: int = DEFAULT_HORIZON) -> SupResult:
    if isinstance(xs, EventuallyConstant):
        return SupResult(EXISTS, _fold(alg, (*xs.prefix, xs.tail), alg.join), "eventually constant")
    if not isinstance(xs, RuleSequence):
        items = list(xs)
        if not items:
            return SupResult(EXISTS, alg.zero, "empty family")
        return SupResult(EXISTS, _fold(alg, items, alg.join), "finite family")
    return _probe(alg, xs, horizon, alg.join, upper=True)


def inf_of(alg: EmvAlgebra, xs, horizon: int = DEFAULT_HORIZON) -> SupResult:
    if isinstance(xs, EventuallyConstant):
        return SupResult(EXISTS, _fold(alg, (*xs.prefix, xs.tail), alg.meet), "eventually constant")
    if not isinstance(xs, RuleSequence):
        items = list(xs)
        if not items:
            if alg.has_top:
                return SupResult(EXISTS, alg.top, "empty family")
            return SupResult(DOES_NOT_EXIST, None, "empty family and no top element")
        return SupResult(EXISTS, _fold(alg, items, alg.meet), "finite family")
    return _probe(alg, xs, horizon, alg.meet, upper=False)


def _probe(alg, seq: RuleSequence, horizon, op, upper):
    # Running joins/meets over the first `horizon` terms.  The value is
    # accepted once it is unchanged over the second half of the probe.
    terms = [seq.term(n) for n in range(horizon)]
    for x in terms:
        alg.check_element(x)
    acc = terms[0]
    last_change = 0
    for n, x in enumerate(terms[1:], start=1):
        nxt = op(acc, x)
        if nxt != acc:
            last_change = n
        acc = nxt
    if last_change < horizon // 2:
        return SupResult(EXISTS, acc, "running bound settled within the horizon", last_change)
    if upper and seq.reach is not None:
        certify = getattr(alg, "certify_unbounded", None)
        if certify is not None:
            verdict = certify(terms, seq.reach)
            if verdict is not None:
                return SupResult(DOES_NOT_EXIST, None, verdict)
    return SupResult(UNDECIDED, None, f"no settled value within {horizon} terms")
