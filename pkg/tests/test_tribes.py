from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import finite_corpus
from emvkit import (
    Small,
    build_chain,
    chang_build,
    clan_audit,
    ls_construct,
    ls_quotient_example,
    sigma_ring_extract,
    tribe_audit,
)
from emvkit import tribes as TR
from emvkit.algebra import trivial_algebra
from emvkit.errors import PreconditionError

CORPUS = finite_corpus()
H = Fraction(1, 2)


def fz(*vals):
    return TR.FuzzySet(tuple(range(len(vals))), tuple(Fraction(v) for v in vals))


def test_fuzzy_operations():
    a = fz(1, 1)
    f, g = fz(H, 1), fz(H, 0)
    assert TR.oplus(f, g, a) == fz(1, 1)
    assert TR.odot(f, g, a) == fz(0, 0)
    assert TR.star(f, g) == fz(0, 1)
    assert TR.minus(a, f) == fz(H, 0)
    assert f.format() == "(1/2,1)"


def test_capped_sum_overflow():
    a = fz(1, 0)
    assert TR.capped_sum([fz(H, 0), fz(H, 0), fz(H, 0)], a) == fz(1, 0)
    assert TR.capped_sum([fz(H, 0), TR.zero_fn((0, 1))], a) == fz(H, 0)


def test_boolean_clan_passes():
    t = TR.boolean_clan((1, 2))
    assert clan_audit(t).passed and tribe_audit(t).passed


def test_clan_without_zero_fails():
    dom = (1, 2)
    t = TR.TribeHandle(
        dom,
        member=lambda f: f != TR.zero_fn(dom),
        generators=[TR.char_fn(dom, [1]), TR.char_fn(dom, [2])],
        dominator=lambda f: TR.char_fn(dom, dom),
        name="no-zero",
    )
    audit = clan_audit(t)
    assert not audit.passed and "zero" in dict(audit.failures())


def test_generated_tribe_halves():
    dom = ("s0", "s1")
    gens = [TR.char_fn(dom, ["s0"]), TR.char_fn(dom, ["s1"]), TR.FuzzySet(dom, (H, Fraction(1)))]
    t = TR.generated_tribe(dom, gens)
    assert clan_audit(t).passed and tribe_audit(t).passed
    assert TR.FuzzySet(dom, (H, Fraction(0))) in t.elements


def test_generator_without_characteristic_cover_is_flagged():
    dom = ("s0", "s1")
    t = TR.generated_tribe(dom, [TR.FuzzySet(dom, (H, Fraction(1)))])
    assert "dominated" in dict(clan_audit(t).failures())


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_ls_construct_on_corpus(alg):
    w = ls_construct(alg)
    assert TR.ls_audit(w).passed
    for x in alg.elements():
        assert w.h[TR.hat(alg, w.states, x)] == x
    for f, x in w.h.items():
        assert TR.hat(alg, w.states, x) == f
    assert clan_audit(w.tribe).passed
    assert tribe_audit(w.tribe).passed
    ring = sigma_ring_extract(w)
    assert ring.audit.passed
    assert set(ring.h0.values()) == set(alg.idempotents())


def test_ls_chain2():
    w = ls_construct(build_chain(2))
    assert len(w.omega) == 1
    assert sorted(f.format() for f in w.h) == ["(0)", "(1)", "(1/2)"]


def test_ls_product(c12):
    w = ls_construct(c12)
    assert len(w.omega) == 2 and len(w.h) == 6


def test_ls_trivial():
    w = ls_construct(trivial_algebra())
    assert w.omega == () and len(w.h) == 1


def test_sigma_rings(c12, chain2):
    ring = sigma_ring_extract(ls_construct(c12))
    assert len(ring.sets) == 4
    assert sorted(c12.value(x) for x in ring.h0.values()) == [(0, 0), (0, 2), (1, 0), (1, 2)]
    ring2 = sigma_ring_extract(ls_construct(chain2))
    assert ring2.sets == [frozenset(), frozenset(ring2.omega)]
    assert sorted(ring2.h0.values()) == [0, 2]


def test_quotient_example():
    q = ls_quotient_example([1, 2, 3], [1, 2])
    assert q.report.passed
    om = (1, 2, 3)
    assert q.h(TR.char_fn(om, [3])) == TR.zero_fn((1, 2))
    assert q.h(TR.char_fn(om, om)) == TR.char_fn((1, 2), (1, 2))
    c3 = TR.char_fn(om, [3])
    assert q.h(TR.capped_sum([c3, c3, TR.zero_fn(om)], TR.char_fn(om, om))) == TR.zero_fn((1, 2))


def test_quotient_example_needs_keep():
    with pytest.raises(PreconditionError):
        ls_quotient_example([1, 2], [])


def test_chang_hat_kills_radical():
    k = chang_build()
    res = TR.chang_hat_kernel(k, k.probe_elements(8))
    assert res["kills_radical"] and not res["injective"]
    assert TR.chang_hat(k, Small(3)) == TR.chang_hat(k, k.zero)


def test_nset_calculus_on_grid():
    dom = (0, 1)
    grid = [Fraction(0), H, Fraction(1)]
    fs = [TR.FuzzySet(dom, (p, q)) for p in grid for q in grid]
    assert TR.nset_audit(fs, TR.char_fn(dom, dom)).passed


frac = st.sampled_from([Fraction(k, 4) for k in range(5)])


@settings(max_examples=60, deadline=None)
@given(st.tuples(frac, frac, frac), st.tuples(frac, frac, frac))
def test_n_sets_of_sum_and_difference(u, v):
    dom = (0, 1, 2)
    f, g = TR.FuzzySet(dom, u), TR.FuzzySet(dom, v)
    a = TR.char_fn(dom, dom)
    assert TR.oplus(f, g, a).n_set() == f.n_set() | g.n_set()
    assert TR.star(f, g).n_set() == {w for w in dom if f(w) > g(w)}
    assert TR.odot(f, g, a).n_set() <= f.n_set() & g.n_set()
