import numpy as np
import pytest

from conftest import finite_corpus
from emvkit import _kernels
from emvkit._kernels import python as py

compiled = _kernels.compiled
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
CORPUS = finite_corpus()


def _tables(alg):
    return alg.oplus_table, alg.join_table, alg.meet_table, alg.leq_table


@needs_ext
@pytest.mark.parametrize("alg", CORPUS, ids=lambda a: a.name)
def test_compiled_matches_python(alg):
    op, jn, mt, le = _tables(alg)
    for mod_fn in ("comm_violation", "assoc_violation"):
        assert getattr(compiled, mod_fn)(op) == getattr(py, mod_fn)(op)
    assert compiled.distrib_violation(jn, mt) == py.distrib_violation(jn, mt)
    for a in alg.idempotents():
        assert np.array_equal(compiled.lambda_row(op, le, a), py.lambda_row(op, le, a))
        members = [x for x in alg.elements() if alg.leq(x, a)]
        row = alg.lambda_rows[a]
        assert compiled.mv_law_violation(op, row, members) == py.mv_law_violation(op, row, members)
    n = alg.size
    for seed in range(n):
        mask = np.zeros(n, dtype=np.int8)
        mask[seed] = 1
        for down in (True, False):
            assert np.array_equal(compiled.closure(op, le, mask, down), py.closure(op, le, mask, down))


@needs_ext
def test_compiled_finds_the_same_violation():
    op = np.array([[0, 1, 2], [1, 1, 2], [2, 0, 2]], dtype=np.int64)
    assert compiled.comm_violation(op) == py.comm_violation(op) == (1, 2)
    assert compiled.assoc_violation(op) == py.assoc_violation(op)


def test_backend_flag():
    assert _kernels.BACKEND in ("cython", "python")
    assert (_kernels.BACKEND == "cython") == (compiled is not None)
