from hypothesis import given, settings
from hypothesis import strategies as st

from emvkit import Big, Small, chang_build, check_emv_axioms, fs_a0, fs_build, maximal_ideals
from emvkit.states import archimedean_witness, is_archimedean_belluce


def test_fs_pointwise_sum():
    f = fs_build(2)
    x = f.element({3: 1})
    assert f.oplus(x, x) == f.element({3: 2})


def test_fs_cover_is_support_characteristic():
    f = fs_build(2)
    assert f.least_upper_idempotent(f.element({3: 1, 7: 2})) == f.element({3: 2, 7: 2})


def test_fs_has_no_top():
    assert fs_build(1).has_top is False
    assert fs_build(3).has_top is False


def test_fs_sets_are_idempotent():
    f = fs_build(1)
    for idx in ([], [0], [1, 4, 9]):
        a = f.char(idx)
        assert f.is_idempotent(a)
        assert fs_a0(f, a) == a


def test_fs_a0_examples():
    f = fs_build(2)
    assert fs_a0(f, f.zero) == f.zero
    assert fs_a0(f, f.element({5: 1})) == f.element({5: 2})


def test_fs_parse_and_format_round_trip():
    f = fs_build(3)
    x = f.element({2: 1, 6: 3})
    assert f.parse_element(f.format(x)) == x


def test_chang_sums():
    k = chang_build()
    assert k.oplus(Small(2), Small(3)) == Small(5)
    assert k.oplus(Big(1), Big(1)) == Big(0) == k.top
    assert k.oplus(Small(1), Big(3)) == Big(2)
    assert k.lam(k.top, Small(3)) == Big(3)
    assert k.has_top


def test_chang_archimedean_failure():
    k = chang_build()
    for n in range(1, 6):
        for m in range(8):
            assert k.leq(k.nscale(m, Small(n)), Big(n))
        assert k.odot(Small(n), Big(n)) == k.zero != Small(n)
    assert not is_archimedean_belluce(k)
    assert archimedean_witness(k) == (Small(1), Big(1))


def test_chang_big_integers():
    k = chang_build()
    huge = 10**40
    assert k.nscale(huge, Small(3)) == Small(3 * huge)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.dictionaries(st.integers(0, 12), st.integers(1, 3), max_size=4))
def test_fs_multiples_stabilize_within_the_order(order, mapping):
    f = fs_build(order)
    x = f.element({i: min(v, order) for i, v in mapping.items()})
    assert f.nscale(order, x) == f.nscale(order + 5, x) == fs_a0(f, x)
    assert f.npower(order, x) == f.npower(order + 5, x)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2), st.dictionaries(st.integers(0, 2), st.integers(0, 2), max_size=3))
def test_fs_lambda_matches_finite_restriction(order, mapping):
    f = fs_build(order)
    x = f.element({i: min(v, order) for i, v in mapping.items()})
    sub = f.restrict((0, 1, 2))
    a = f.char((0, 1, 2))
    got = f.lam(a, x)
    assert sub.embed(sub.lam(sub.project(a), sub.project(x))) == got


def test_fs_maximal_ideals_on_bounded_subalgebras():
    # maximal ideals of the restriction to {0..k} are the coordinate ideals
    for order in (1, 2):
        f = fs_build(order)
        for k in (1, 2):
            sub = f.restrict(tuple(range(k + 1)))
            maxes = maximal_ideals(sub)
            assert len(maxes) == k + 1
            for m in maxes:
                zero_coords = [i for i in range(k + 1) if all(sub.embed(x).get(i) == 0 for x in m.members)]
                assert len(zero_coords) == 1


def test_probe_sets_pass_axioms():
    k = chang_build()
    assert check_emv_axioms(k, k.probe_elements(support=8)).passed
