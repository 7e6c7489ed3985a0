"""Acceptance suite: one verdict line per criterion, exact comparisons throughout.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import SPECIMENS, finite_corpus  # noqa: E402
from emvkit import (  # noqa: E402
    Big,
    Small,
    audit_representation,
    chang_build,
    check_emv_axioms,
    check_identities,
    clan_audit,
    compact_basis_audit,
    correspondence_maps,
    find_dual_separating_element,
    find_separating_element,
    fs_a0,
    fs_build,
    is_archimedean_belluce,
    ls_construct,
    ls_quotient_example,
    maximal_filters,
    maximal_ideals,
    maxideal_space_of_n,
    radical,
    represent,
    sigma_ring_extract,
    state_morphisms,
    sup_criterion,
    tribe_audit,
    verify_base_identities,
    verify_hull_kernel_clauses,
    verify_union_of_differences,
)
from emvkit import spectra as S  # noqa: E402
from emvkit import states as ST  # noqa: E402
from emvkit import tribes as TR  # noqa: E402
from emvkit.algebra import join_of_idempotents_below, meet_of_idempotents_above  # noqa: E402
from emvkit.dsl import DslError, build_program, parse_spec, print_program  # noqa: E402
from emvkit.represent import base_convergence, coordinate_convergence, state_catalog  # noqa: E402

CORPUS = finite_corpus()
RESULTS = {}

TITLES = {
    1: "axiom suite",
    2: "identity suite",
    3: "structure suite",
    4: "separation suite",
    5: "spectra suite",
    6: "representation suite",
    7: "Loomis-Sikorski suite",
    8: "hulls suite",
    9: "CLI suite",
}


class Tally:
    """Counts checks and keeps the first few failures."""

    def __init__(self):
        self.checks = 0
        self.failures = []

    def expect(self, ok, what):
        self.checks += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(what)

    @property
    def ok(self):
        return not self.failures


def record(n, tally, start):
    secs = time.perf_counter() - start
    status = "PASS" if tally.ok else "FAIL"
    detail = f"{tally.checks} checks" if tally.ok else "; ".join(map(str, tally.failures))
    line = f"criterion {n} ({TITLES[n]}): {status} [{detail}] {secs:.2f}s"
    RESULTS[n] = line
    print(line)
    return tally


# ---------------------------------------------------------------------------


def criterion_1():
    t = Tally()
    for alg in CORPUS:
        rep = check_emv_axioms(alg)
        t.expect(rep.passed, f"{alg.name}: {[r.name for r in rep.failures()]}")
    for order in (1, 2):
        alg = fs_build(order)
        t.expect(check_emv_axioms(alg, alg.probe_elements(support=8)).passed, alg.name)
    k = chang_build()
    t.expect(check_emv_axioms(k, k.probe_elements(support=16)).passed, "chang")
    bad = build_program(parse_spec((SPECIMENS.parent / "failing" / "corrupted_chain2.emv").read_text()))["B"]
    rep = check_emv_axioms(bad)
    t.expect(not rep.passed, "corrupted chain(2) passed")
    t.expect(all(r.witness is not None for r in rep.failures()), "failure without witness")
    return t


def criterion_2():
    t = Tally()
    for alg in CORPUS:
        rep = check_identities(alg)
        t.expect(rep.passed, f"{alg.name}: {[(r.name, r.witness) for r in rep.failures()]}")
    return t


def criterion_3():
    t = Tally()
    for alg in CORPUS:
        n_states = len(state_morphisms(alg))
        t.expect(n_states == len(maximal_ideals(alg)) == len(maximal_filters(alg)), f"{alg.name}: counts")
        if alg.size > 1:
            cm = correspondence_maps(alg)
            t.expect(cm.bijective["theta"] and cm.bijective["zeta"], f"{alg.name}: theta/zeta")
        res = radical(alg)
        t.expect(list(res.formula_members) == list(res.intersection_members), f"{alg.name}: radical")
        preds = ST.semisimplicity_predicates(alg)
        t.expect(len(set(preds.values())) == 1, f"{alg.name}: predicates {preds}")
    k = chang_build()
    probes = k.probe_elements(support=16)
    t.expect(not is_archimedean_belluce(k, probes), "chang archimedean")
    t.expect(ST.archimedean_witness(k, probes) == (Small(1), Big(1)), "chang witness")
    t.expect(k.odot(Small(1), Big(1)) == k.zero, "Small(1).Big(1)")
    res = radical(k, probes)
    t.expect(res.ideal.describe() == "Small(*)" and not res.semisimple, "chang radical")
    smalls = [x for x in probes if x in res.ideal]
    t.expect(smalls == [x for x in probes if not x.big], "radical is the Smalls")
    return t


def criterion_4():
    t = Tally()
    for alg in CORPUS:
        sts = list(state_morphisms(alg))
        for tt in sts:
            others = [s for s in sts if s is not tt]
            for k in range(1, len(others) + 1):
                for X in combinations(others, k):
                    e = find_separating_element(alg, X, tt)
                    d = find_dual_separating_element(alg, X, tt)
                    t.expect(ST.separates(X, tt, e), f"{alg.name}: search")
                    t.expect(ST.separates(X, tt, d, dual=True), f"{alg.name}: dual search")
                    r = ST.separating_recipe(alg, X, tt).element
                    rd = ST.dual_separating_recipe(alg, X, tt).element
                    t.expect(ST.separates(X, tt, r), f"{alg.name}: recipe")
                    t.expect(ST.separates(X, tt, rd, dual=True), f"{alg.name}: dual recipe")
    return t


def criterion_5():
    t = Tally()
    targets = [(alg, None) for alg in CORPUS]
    for order in (1, 2):
        f = fs_build(order)
        targets.append((f, f.probe_elements(support=8)))
    k = chang_build()
    targets.append((k, k.probe_elements(support=16)))
    for alg, probes in targets:
        t.expect(verify_base_identities(alg, probes).passed, f"{alg.name}: base identities")
        audit = verify_hull_kernel_clauses(alg, probes)
        t.expect(audit.passed, f"{alg.name}: clauses {audit.failures()}")
        t.expect(compact_basis_audit(alg).passed, f"{alg.name}: injectivity")
        for x in probes if probes is not None else alg.elements():
            t.expect(verify_union_of_differences(alg, x)["equal"], f"{alg.name}: union at {alg.format(x)}")
    f1 = fs_build(1)
    cases = S.designed_sup_cases(f1)
    t.expect(len(cases) >= 10 and sum(1 for c in cases if c[2]) >= 5 and sum(1 for c in cases if not c[2]) >= 5,
             "designed case counts")
    for x, fam, expected in cases:
        v = sup_criterion(f1, x, fam)
        t.expect(v.status == "decided" and v.agrees and v.sup_holds is expected, f"sup case {f1.format(x)}")
    return t


def criterion_6():
    t = Tally()
    m = fs_build(1)
    n = represent(m)
    audit = audit_representation(n)
    for name in ("mv_axioms", "mixed_cover_independence", "direct_is_ideal", "direct_proper",
                 "direct_maximal", "sup_case_1", "sup_case_2", "sup_case_3"):
        t.expect(audit.checks.get(name, "missing") is None, f"audit {name}")
    cat = state_catalog(n)
    t.expect(cat["infinity"].name == "s_inf" and cat["count"] == "|SM(M)| + 1", "state catalog")
    t.expect(maxideal_space_of_n(n)["matches"], "maximal ideal catalog")
    probes = n.probe_elements()
    t.expect(any(z.complement for z in probes) and any(not z.complement for z in probes),
             "finite and cofinite probes")
    conv = coordinate_convergence(n, probes)
    t.expect(conv.converged and conv.agrees, "lim s_n~ = s_inf")
    base = base_convergence(m)
    t.expect(all(p["converged"] and p["limit"] == "0" for p in base.probes), "base limit is 0")
    t.expect(base.limit_is_state is False and "not a state-morphism" in base.note, "non-state flagged")
    return t


def criterion_7():
    t = Tally()
    for alg in CORPUS:
        w = ls_construct(alg)
        for x in alg.elements():
            t.expect(w.h[TR.hat(alg, w.states, x)] == x, f"{alg.name}: h(hat x)")
        for f, x in w.h.items():
            t.expect(TR.hat(alg, w.states, x) == f, f"{alg.name}: hat(h f)")
        t.expect(TR.ls_audit(w).passed, f"{alg.name}: ls audit")
        t.expect(tribe_audit(w.tribe).passed, f"{alg.name}: tribe audit")
        t.expect(clan_audit(w.tribe).passed, f"{alg.name}: clan audit")
        ring = sigma_ring_extract(w)
        t.expect(ring.audit.passed, f"{alg.name}: sigma ring")
        t.expect(set(ring.h0.values()) == set(alg.idempotents()), f"{alg.name}: h0 onto idempotents")
    q = ls_quotient_example((1, 2, 3), (1, 2))
    t.expect(q.report.passed, f"quotient {q.report.failures()}")
    t.expect(q.h(TR.char_fn((1, 2, 3), [3])) == TR.zero_fn((1, 2)), "kernel contains chi{3}")
    t.expect(tribe_audit(q.target).passed, "restricted tribe")
    return t


def criterion_8():
    t = Tally()
    for alg in CORPUS:
        for x in alg.elements():
            t.expect(alg.least_upper_idempotent(x) == meet_of_idempotents_above(alg, x), f"{alg.name}: a0")
            t.expect(alg.greatest_lower_idempotent(x) == join_of_idempotents_below(alg, x), f"{alg.name}: b0")
    rng = random.Random(20261015)
    for _ in range(20):
        order = rng.randint(1, 4)
        f = fs_build(order)
        idx = rng.sample(range(50), rng.randint(0, 6))
        x = f.element({i: rng.randint(1, order) for i in idx})
        t.expect(fs_a0(f, x) == f.element({i: order for i in idx}), f"fs({order}) a0 at {f.format(x)}")
    return t


def criterion_9():
    t = Tally()
    specimens = sorted(SPECIMENS.glob("*.emv"))
    t.expect(len(specimens) == 15, f"{len(specimens)} specimens")
    for path in specimens:
        prog = parse_spec(path.read_text())
        text = print_program(prog)
        t.expect(parse_spec(text) == prog and print_program(parse_spec(text)) == text, f"round trip {path.name}")
    for path in sorted((SPECIMENS / "bad").glob("*.emv")):
        try:
            build_program(parse_spec(path.read_text()))
            t.expect(False, f"{path.name} accepted")
        except DslError:
            pass
        p = subprocess.run([sys.executable, "-m", "emvkit.cli", "check", str(path)], capture_output=True, text=True)
        loc = p.stderr.split(": ")[0].rsplit(":", 2)
        positioned = len(loc) == 3 and loc[1].isdigit() and loc[2].isdigit()
        t.expect(p.returncode == 2 and positioned, f"{path.name}: exit {p.returncode}, {p.stderr.strip()}")
    argv = [sys.executable, "-m", "emvkit.cli", "all", str(SPECIMENS / "corpus.emv"), "--seed", "11"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    t.expect(a.returncode == 0 and a.stdout and a.stdout == b.stdout, "seeded run not byte-identical")
    return t


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


@pytest.mark.parametrize("n", sorted(CRITERIA), ids=lambda n: f"criterion_{n}")
def test_acceptance(n):
    start = time.perf_counter()
    tally = record(n, CRITERIA[n](), start)
    assert tally.ok, RESULTS[n]


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        start = time.perf_counter()
        failed += not record(n, CRITERIA[n](), start).ok
    sys.exit(1 if failed else 0)
