import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emvkit import audit_representation, build_chain, extend_state, fs_build, maxideal_space_of_n, represent, s_infinity
from emvkit.represent import (
    AlreadyMV,
    Complement,
    Direct,
    _WithWitness,
    base_convergence,
    coordinate_convergence,
    state_catalog,
    sup_transfer,
)
from emvkit.states import audit_state, fs_state


@pytest.fixture(scope="module")
def n1():
    return represent(fs_build(1))


def test_algebra_with_top_is_already_mv():
    assert isinstance(represent(build_chain(2)), AlreadyMV)


def test_top_is_complement_of_zero(n1):
    m = n1.base
    assert n1.top == Complement(m.zero)
    A = Direct(m.char([1, 2]))
    assert n1.oplus(A, n1.top) == n1.top


def test_finite_or_cofinite_sets(n1):
    m = n1.base
    A, B = m.char([1, 2]), m.char([2, 5])
    # A u (N \ B) = N \ (B \ A)
    assert n1.oplus(Direct(A), Complement(B)) == Complement(m.char([5]))
    assert n1.oplus(Complement(A), Complement(B)) == Complement(m.char([2]))
    assert n1.neg(Direct(A)) == Complement(A)


def test_audit_passes_on_fs1(n1):
    audit = audit_representation(n1)
    assert audit.passed, audit.failures()


def test_audit_passes_on_fs2():
    assert audit_representation(represent(fs_build(2))).passed


def test_sup_transfer_cases(n1):
    m = n1.base
    probes = n1.probe_elements()
    a, b, c = m.char([0]), m.char([1]), m.char([0, 2])
    assert sup_transfer(n1, [Direct(a), Direct(b)], probes)["case"] == 1
    two = sup_transfer(n1, [Complement(a), Complement(c)], probes)
    assert two["case"] == 2 and two["sup"] == Complement(m.char([0]))
    three = sup_transfer(n1, [Direct(b), Complement(c)], probes)
    assert three["case"] == 3 and three["agrees_with_join"] and three["least"]


def test_extended_states(n1):
    m = n1.base
    s3 = extend_state(fs_state(m, 3), n1)
    assert s3(Complement(m.char([3]))) == 0
    assert s3(Complement(m.char([4]))) == 1
    assert s3(Direct(m.zero)) == 0
    inf = s_infinity(n1)
    assert inf(Direct(m.char([1, 3]))) == 0 and inf(Complement(m.char([1]))) == 1


def test_extended_states_are_state_morphisms(n1):
    probes = n1.probe_elements()
    for i in range(4):
        st_ = extend_state(fs_state(n1.base, i), n1)
        assert audit_state(n1, _WithWitness(st_, n1.top), probes).passed


def test_state_catalog_and_maximal_ideals(n1):
    cat = state_catalog(n1)
    assert cat["infinity"].name == "s_inf"
    mx = maxideal_space_of_n(n1)
    assert mx["matches"]
    assert mx["catalog"][-1] == "I_inf"


def test_coordinate_states_converge_to_infinity(n1):
    rep = coordinate_convergence(n1)
    assert rep.converged and rep.agrees


def test_base_limit_is_not_a_state():
    rep = base_convergence(fs_build(1))
    assert rep.limit_is_state is False
    assert "not a state-morphism" in rep.note
    assert all(p["converged"] and p["limit"] == "0" for p in rep.probes)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 6), max_size=4), st.lists(st.integers(0, 6), max_size=4), st.booleans(), st.booleans())
def test_n_sum_is_set_union(xs, ys, cx, cy):
    n = represent(fs_build(1))
    m = n.base
    A, B = m.char(set(xs)), m.char(set(ys))
    z = Complement(A) if cx else Direct(A)
    w = Complement(B) if cy else Direct(B)
    universe = set(range(8))

    def as_set(v):
        s = set(v.x.support)
        return universe - s if v.complement else s

    assert as_set(n.oplus(z, w)) == as_set(z) | as_set(w)
    assert as_set(n.odot(z, w)) == as_set(z) & as_set(w)


def test_kernel_of_extension_meets_direct_image_in_base_kernel(n1):
    m = n1.base
    for i in range(4):
        base = fs_state(m, i)
        ext = extend_state(base, n1)
        for x in m.probe_elements(support=6):
            assert (ext(Direct(x)) == 0) == (base(x) == 0)


def test_adjoining_a_cofinite_set_reaches_top(n1):
    m = n1.base
    A = m.char([0, 3])
    assert n1.oplus(Complement(A), Direct(A)) == n1.top
