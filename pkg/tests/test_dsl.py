from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SPECIMENS
from emvkit.algebra import ChainAlgebra
from emvkit.backends import ChangAlgebra, FinSupportAlgebra
from emvkit.dsl import (
    Chain,
    DslError,
    FiniteSets,
    Product,
    build_program,
    parse_spec,
    print_expr,
    print_program,
    tokenize,
)
from emvkit.tribes import TribeHandle

GOOD = sorted(SPECIMENS.glob("*.emv"))
BAD = sorted((SPECIMENS / "bad").glob("*.emv"))


def test_there_are_fifteen_specimens():
    assert len(GOOD) == 15


@pytest.mark.parametrize("path", GOOD, ids=lambda p: p.stem)
def test_print_parse_round_trip(path):
    prog = parse_spec(path.read_text())
    text = print_program(prog)
    again = parse_spec(text)
    assert again == prog
    assert print_program(again) == text


@pytest.mark.parametrize("path", GOOD, ids=lambda p: p.stem)
def test_specimens_build(path):
    env = build_program(parse_spec(path.read_text()))
    assert env


def test_simple_declarations():
    prog = parse_spec("algebra C = chain(3)\nalgebra P = product(C, chain(1))\nalgebra T = finite_sets\n")
    (c, p, t) = prog.stmts
    assert c.expr == Chain(3)
    assert isinstance(p.expr, Product)
    assert t.expr == FiniteSets()
    env = build_program(prog)
    assert isinstance(env["C"], ChainAlgebra) and env["P"].size == 8
    assert isinstance(env["T"], FinSupportAlgebra) and env["T"].order == 1


def test_backends_and_tribes():
    env = build_program(parse_spec("algebra K = chang\nalgebra F = finsupport(chain(2))\ntribe X on {a, b} = {(1, 0), (1/2, 1)}\n"))
    assert isinstance(env["K"], ChangAlgebra)
    assert env["F"].order == 2
    assert isinstance(env["X"], TribeHandle)
    assert env["X"].generators[1].values == (Fraction(1, 2), Fraction(1))


def test_table_declaration_names_the_algebra():
    text = (SPECIMENS / "table_join.emv").read_text()
    env = build_program(parse_spec(text))
    (name,) = list(env)
    assert env[name].name == name


@pytest.mark.parametrize(
    "text, code, line, col",
    [
        ("algebra B = chain(0)", "E201", 1, 19),
        ("algebra P = product(chain(1))", "E200", 1, 13),
        ("algebra C = chain(2", "E100", 1, 20),
        ("algebra C = chain(2)\nalgebra D = product(C, E)", "E400", 2, 24),
        ("algebra C = chain(2)\nalgebra C = chain(3)", "E401", 2, 1),
        ("algebra C = chain(2) $", "E101", 1, 22),
        ("tribe X on {a} = {(3/2)}", "E202", 1, 20),
        ("tribe X on {a} = {(1/0)}", "E202", 1, 22),
        ("tribe X on {a, a} = {(1, 1)}", "E301", 1, 17),
        ("algebra F = finsupport(product(chain(1), chain(1)))", "E203", 1, 13),
    ],
)
def test_positioned_diagnostics(text, code, line, col):
    with pytest.raises(DslError) as info:
        parse_spec(text)
    e = info.value
    assert (e.code, e.line, e.col) == (code, line, col)
    assert str(e).startswith(f"{line}:{col}: {code}")


@pytest.mark.parametrize("path", BAD, ids=lambda p: p.stem)
def test_bad_specimens_are_rejected(path):
    with pytest.raises(DslError) as info:
        build_program(parse_spec(path.read_text()))
    assert info.value.line >= 1 and info.value.col >= 1


def test_comments_and_blank_lines_are_ignored():
    prog = parse_spec("# header\n\nalgebra C = chain(1)  # trailing\n")
    assert len(prog.stmts) == 1


def test_tokens_carry_positions():
    toks = tokenize("algebra C = chain(2)")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert toks[3].col == 13


chain_exprs = st.recursive(
    st.integers(1, 5).map(Chain),
    lambda inner: st.tuples(inner, inner).map(lambda p: Product(*p)),
    max_leaves=3,
)


@settings(max_examples=40, deadline=None)
@given(chain_exprs)
def test_expression_round_trip(expr):
    text = f"algebra A = {print_expr(expr)}\n"
    assert parse_spec(text).stmts[0].expr == expr
