from pathlib import Path

import pytest

from conftest import finite_corpus
from emvkit import build_chain, chang_build, check_emv_axioms, check_identities, fs_build
from emvkit.algebra import FiniteEmvAlgebra
from emvkit.axioms import IDENTITY_NAMES
from emvkit.dsl import build_program, parse_spec

CORPUS = finite_corpus()
CORRUPTED = Path(__file__).parent / "failing" / "corrupted_chain2.emv"


def corrupted():
    return build_program(parse_spec(CORRUPTED.read_text()))["B"]


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_corpus_passes_axioms(alg):
    rep = check_emv_axioms(alg)
    assert rep.passed, [(r.name, r.witness) for r in rep.failures()]


@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_corpus_passes_identities(alg):
    rep = check_identities(alg)
    assert rep.passed, [(r.name, r.witness) for r in rep.failures()]
    assert {r.name for r in rep.results} == set(IDENTITY_NAMES)


@pytest.mark.parametrize("order", [1, 2])
def test_finite_support_probes_pass(order):
    alg = fs_build(order)
    rep = check_emv_axioms(alg, alg.probe_elements(support=8))
    assert rep.passed
    assert rep.sample_size > 0


def test_chang_probes_pass():
    alg = chang_build()
    rep = check_emv_axioms(alg, alg.probe_elements(support=16))
    assert rep.passed
    assert rep.sample_size == 34


def test_corrupted_chain_fails_with_witnesses():
    rep = check_emv_axioms(corrupted())
    bad = {r.name: r.witness for r in rep.failures()}
    # 1+1 = 1: lambda_2(1) = 2 still exists, but lambda_2(lambda_2(1)) = 0
    assert bad["interval.involution"] == (1, 2)
    assert bad["interval.mv_law"] == (0, 1, 2)
    assert bad["interval.order_agrees"] == (1, 0, 2)
    assert rep.get("monoid.associative").passed


def test_corrupted_chain_fails_identities():
    rep = check_identities(corrupted())
    assert not rep.passed
    assert rep.get("difference.split").witness == (1, 0, 2)


def test_missing_cover_is_reported():
    # join-semilattice {0, p, q, 1} with p+q = 1 but p, q not idempotent and no top idempotent above
    values = ["0", "p", "q", "1"]
    op = [[0, 1, 2, 3], [1, 3, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3]]
    jn = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    alg = FiniteEmvAlgebra(values, op, 0, join=jn, name="diamond")
    rep = check_emv_axioms(alg)
    assert not rep.passed


def test_report_serializes():
    rep = check_emv_axioms(build_chain(2))
    d = rep.to_dict()
    assert d["passed"] is True
