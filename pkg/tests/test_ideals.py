import pytest

import oracles
from conftest import finite_corpus, orders_of, small_corpus, to_tuple
from emvkit import (
    build_chain,
    chang_build,
    enumerate_ideals,
    fs_build,
    generated_ideal,
    ideal_of_filter,
    maximal_filters,
    maximal_ideals,
    quotient_chain,
    radical,
)
from emvkit import ideals as I
from emvkit.algebra import trivial_algebra
from emvkit.errors import PreconditionError

CORPUS = finite_corpus()
SMALL = small_corpus()


def _tuples(alg, members):
    return frozenset(to_tuple(alg, x) for x in members)


@pytest.mark.parametrize("alg", SMALL, ids=lambda a: a.name)
def test_ideals_match_powerset_oracle(alg):
    got = {_tuples(alg, i.members) for i in enumerate_ideals(alg)}
    assert got == set(oracles.all_ideals(orders_of(alg)))


@pytest.mark.parametrize("alg", SMALL, ids=lambda a: a.name)
def test_maximal_ideals_and_filters_match_oracle(alg):
    orders = orders_of(alg)
    assert {_tuples(alg, m.members) for m in maximal_ideals(alg)} == set(oracles.maximal_ideals(orders))
    assert {_tuples(alg, f.members) for f in maximal_filters(alg)} == set(oracles.maximal_filters(orders))


def test_chain2_ideals():
    c = build_chain(2)
    assert [sorted(i.members) for i in enumerate_ideals(c)] == [[0], [0, 1, 2]]


def test_product_ideals(c12):
    # the exhaustive scan finds 4 ideals, two of them maximal
    ids = enumerate_ideals(c12)
    assert len(ids) == 4
    assert {i.describe() for i in maximal_ideals(c12)} == {"{(0,0), (1,0)}", "{(0,0), (0,1), (0,2)}"}


def test_generated_ideal_examples(c12):
    assert generated_ideal(c12, [c12.zero]).describe() == "{(0,0)}"
    assert generated_ideal(c12, [c12.el((0, 1))]).describe() == "{(0,0), (0,1), (0,2)}"
    f = fs_build(1)
    A = f.char([1, 3])
    gen = generated_ideal(f, [A])
    assert f.char([1]) in gen and f.char([1, 3]) in gen
    assert f.char([2]) not in gen


def test_chang_catalog():
    k = chang_build()
    assert [i.describe() for i in enumerate_ideals(k)] == ["Zero", "Small(*)", "Full"]
    assert [m.describe() for m in maximal_ideals(k)] == ["Small(*)"]


def test_fs_maximal_ideals_symbolic():
    fam = maximal_ideals(fs_build(1))
    assert isinstance(fam, I.SymbolicFamily)
    assert fam.member(3).index == 3


def test_trivial_has_no_maximal_ideals():
    maxes = maximal_ideals(trivial_algebra())
    assert len(maxes) == 0 and "trivial" in maxes.note


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_maximal_ideals_are_prime(alg):
    for m in maximal_ideals(alg):
        assert I.prime_violation(alg, m) is None


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_radical_computations_agree_and_semisimple(alg):
    res = radical(alg)
    assert list(res.formula_members) == list(res.intersection_members)
    assert res.semisimple


def test_radical_examples(c12):
    assert radical(build_chain(2)).ideal.describe() == "{0}"
    assert radical(c12).ideal.describe() == "{(0,0)}"
    k = chang_build()
    res = radical(k, k.probe_elements(16))
    assert res.ideal.describe() == "Small(*)" and res.semisimple is False


def test_chain2_maximal_filter():
    c = build_chain(2)
    mf = maximal_filters(c)
    # 1 (.) 1 = 0, so {1, 2} is not a filter
    assert [sorted(f.members) for f in mf] == [[2]]
    assert ideal_of_filter(c, mf[0]).describe() == "{0}"


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_filter_ideal_bijection(alg):
    assert I.filter_ideal_bijection(alg)
    assert len(maximal_filters(alg)) == len(maximal_ideals(alg))


def test_quotient_chains(c12):
    q = quotient_chain(build_chain(2), maximal_ideals(build_chain(2))[0])
    assert [str(q.value(x)) for x in range(3)] == ["0", "1/2", "1"]
    by_name = {m.describe(): quotient_chain(c12, m) for m in maximal_ideals(c12)}
    first = by_name["{(0,0), (0,1), (0,2)}"]
    second = by_name["{(0,0), (1,0)}"]
    assert first.length == 2 and second.length == 3
    assert {str(first.value(x)) for x in c12.elements()} == {"0", "1"}


def test_quotient_rejects_non_maximal(c12):
    with pytest.raises(PreconditionError):
        quotient_chain(c12, enumerate_ideals(c12)[0])


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_interval_traces_are_full_or_maximal(alg):
    assert I.interval_trace_violation(alg) is None
