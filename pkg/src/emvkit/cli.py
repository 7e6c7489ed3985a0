"""Command-line driver: parse a description file, run one operation, print JSON.

Exit codes: 0 every verdict passed (undecided allowed unless --strict),
1 a check failed and its witness is in the report, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from itertools import combinations

from . import ideals as I
from . import spectra as S
from . import states as ST
from . import tribes as TR
from .algebra import (
    DEFAULT_HORIZON,
    DEFAULT_SUPPORT,
    FiniteEmvAlgebra,
    build_chain,
    join_of_idempotents_below,
    meet_of_idempotents_above,
)
from .axioms import check_emv_axioms, check_identities
from .backends import ChangAlgebra, FinSupportAlgebra, fs_a0, fs_build
from .dsl import DslError, build_program, parse_spec
from .errors import EmvError, InvalidAlgebraError, PreconditionError
from .represent import (
    AlreadyMV,
    audit_representation,
    base_convergence,
    coordinate_convergence,
    maxideal_space_of_n,
    represent,
    state_catalog,
)
from .sequences import UNDECIDED
from .tribes import TribeHandle

SCHEMA = 1
UNDEC = "undecided"


class Run:
    """Collects one command's payload, verdicts and witnesses."""

    def __init__(self, alg=None):
        self.alg = alg
        self.payload = {}
        self.verdicts = {}
        self.witnesses = {}

    def lit(self, v):
        alg = self.alg
        if isinstance(v, (list, tuple)):
            return [self.lit(u) for u in v]
        if isinstance(v, (frozenset, set)):
            return sorted(self.lit(u) for u in v)
        if isinstance(v, Fraction):
            return str(v)
        if isinstance(v, TR.FuzzySet):
            return v.format()
        if alg is not None:
            try:
                return alg.format(v)
            except Exception:  # not an element of this algebra
                pass
        return v if isinstance(v, (int, str, bool)) or v is None else str(v)

    def verdict(self, name, ok, witness=None):
        self.verdicts[name] = ok
        if ok is False and witness is not None:
            self.witnesses[name] = self.lit(witness)

    def audit(self, prefix, audit):
        for name, w in audit.checks.items():
            if name in getattr(audit, "not_applicable", ()):
                self.verdicts[f"{prefix}.{name}"] = "not_applicable"
                continue
            self.verdict(f"{prefix}.{name}", w is None, w)


def _probes(alg, opts):
    if isinstance(alg, FinSupportAlgebra):
        return alg.probe_elements(support=opts.support, seed=opts.seed)
    if isinstance(alg, ChangAlgebra):
        return alg.probe_elements(support=2 * opts.support)
    return list(alg.elements())


def _require_finite(alg, what):
    if not isinstance(alg, FiniteEmvAlgebra):
        raise PreconditionError(f"{what} needs a finite table algebra")


def _alg_target(target):
    if isinstance(target, TribeHandle):
        raise PreconditionError(f"{target.name} is a tribe, not an algebra")
    return target


# ---------------------------------------------------------------------------
# commands


def cmd_check(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    sample = None if alg.is_finite else _probes(alg, opts)
    rep = check_emv_axioms(alg, sample)
    r.payload["algebra"] = alg.name
    r.payload["sample_size"] = rep.sample_size
    for res in rep.results:
        r.verdict(f"axiom.{res.name}", res.passed, res.witness)
    if alg.is_finite:
        for res in check_identities(alg).results:
            r.verdict(f"identity.{res.name}", res.passed, res.witness)
    return r


def _describe_family(fam, count=3):
    if isinstance(fam, I.SymbolicFamily):
        return {"family": fam.description, "first": [_describe(m) for m in fam.examples(count)]}
    return _describe(fam)


def _describe(x):
    if isinstance(x, (I.Ideal, I.Filter)):
        return x.describe()
    if isinstance(x, I.SymbolicFamily):
        return _describe_family(x)
    return str(x)


def cmd_ideals(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    ids = I.enumerate_ideals(alg)
    r.payload["ideals"] = [_describe(i) for i in ids]
    if alg.is_finite:
        r.payload["count"] = len(ids)
        for i in ids:
            r.verdict(f"closed.{i.describe()}", I.is_ideal(alg, i.members))
    return r


def cmd_maximal_ideals(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    maxes = I.maximal_ideals(alg)
    if isinstance(maxes, I.SymbolicFamily):
        r.payload["maximal_ideals"] = _describe_family(maxes)
        r.payload["symbolic"] = True
    else:
        r.payload["maximal_ideals"] = [m.describe() for m in maxes]
        r.payload["count"] = len(maxes)
        if maxes.note:
            r.payload["note"] = maxes.note
        if alg.is_finite:
            for m in maxes:
                w = I.prime_violation(alg, m)
                r.verdict(f"prime.{m.describe()}", w is None, w)
    return r


def cmd_radical(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    res = I.radical(alg, None if alg.is_finite else _probes(alg, opts), opts.horizon)
    r.payload["radical"] = res.ideal.describe()
    r.payload["semisimple"] = res.semisimple
    r.verdict("formula_equals_meet", list(res.formula_members) == list(res.intersection_members))
    return r


def _state_row(alg, s):
    row = {"name": s.name, "kernel": s.ideal.describe(), "rule": s.rule}
    if alg.is_finite:
        row["values"] = {alg.format(x): str(s(x)) for x in alg.elements()}
    return row


def cmd_states(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    sts = ST.state_morphisms(alg)
    if isinstance(sts, I.SymbolicFamily):
        r.payload["states"] = {"family": sts.description, "first": [_state_row(alg, s) for s in sts.take(3)]}
        r.payload["symbolic"] = True
        probes = _probes(alg, opts)
        for s in sts.take(3):
            r.audit(f"audit.{s.name}", ST.audit_state(alg, s, probes))
        return r
    r.payload["states"] = [_state_row(alg, s) for s in sts]
    if sts.note:
        r.payload["note"] = sts.note
    probes = _probes(alg, opts)
    for s in sts:
        r.audit(f"audit.{s.name}", ST.audit_state(alg, s, probes))
    if alg.is_finite:
        r.verdict("count_matches_maximal_ideals", len(sts) == len(I.maximal_ideals(alg)))
        r.verdict("count_matches_maximal_filters", len(sts) == len(I.maximal_filters(alg)))
        if alg.size > 1:
            cm = ST.correspondence_maps(alg)
            for k, v in cm.bijective.items():
                r.verdict(f"bijective.{k}", v)
            if cm.reason:
                r.payload["correspondence_note"] = cm.reason
    preds = ST.semisimplicity_predicates(alg, None if alg.is_finite else _probes(alg, opts))
    r.payload["predicates"] = preds
    r.verdict("predicates_agree", len(set(preds.values())) == 1)
    w = ST.archimedean_witness(alg, None if alg.is_finite else _probes(alg, opts))
    r.payload["archimedean_witness"] = r.lit(w) if w is not None else None
    return r


def cmd_filters(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    mf = I.maximal_filters(alg)
    if isinstance(mf, I.SymbolicFamily):
        r.payload["maximal_filters"] = _describe_family(mf)
        r.payload["ideal_of_first"] = [I.ideal_of_filter(alg, f).describe() for f in mf.take(3)]
        return r
    r.payload["maximal_filters"] = [f.describe() for f in mf]
    r.payload["ideal_of_filter"] = {f.describe(): I.ideal_of_filter(alg, f).describe() for f in mf}
    if alg.is_finite:
        fs = I.enumerate_filters(alg)
        r.payload["filters"] = [f.describe() for f in fs]
        r.verdict("bijection", I.filter_ideal_bijection(alg))
    return r


def cmd_separate(target, opts):
    alg = _alg_target(target)
    _require_finite(alg, "separate")
    r = Run(alg)
    sts = list(ST.state_morphisms(alg))
    rows = []
    ok = {"search": True, "dual_search": True, "recipe": True, "dual_recipe": True}
    for t in sts:
        others = [s for s in sts if s is not t]
        for k in range(1, len(others) + 1):
            for X in combinations(others, k):
                row = {"X": [s.name for s in X], "t": t.name}
                e = ST.find_separating_element(alg, X, t)
                d = ST.find_dual_separating_element(alg, X, t)
                re = ST.separating_recipe(alg, X, t).element
                rd = ST.dual_separating_recipe(alg, X, t).element
                row.update(search=alg.format(e), dual_search=alg.format(d),
                           recipe=alg.format(re), dual_recipe=alg.format(rd))
                checks = {
                    "search": ST.separates(X, t, e), "dual_search": ST.separates(X, t, d, dual=True),
                    "recipe": ST.separates(X, t, re), "dual_recipe": ST.separates(X, t, rd, dual=True),
                }
                for name, good in checks.items():
                    if not good and ok[name]:
                        ok[name] = False
                        r.witnesses[name] = row
                rows.append(row)
    r.payload["pairs"] = rows
    r.payload["state_count"] = len(sts)
    for name, good in ok.items():
        r.verdicts[name] = good
    return r


def cmd_represent(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    n = represent(alg)
    if isinstance(n, AlreadyMV):
        r.payload["represent"] = "already an MV-algebra"
        r.payload["top"] = alg.format(alg.top)
        return r
    r.alg = n
    r.payload["represent"] = n.name
    r.audit("audit", audit_representation(n))
    if isinstance(alg, FinSupportAlgebra):
        cat = state_catalog(n)
        r.payload["states"] = {"extended": cat["extended"].description, "infinity": cat["infinity"].name,
                               "count": cat["count"]}
        mx = maxideal_space_of_n(n)
        r.payload["maximal_ideals"] = {k: v for k, v in mx.items() if k != "matches"}
        r.verdict("maximal_ideal_catalog", mx["matches"])
    return r


def cmd_spectrum(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    probes = _probes(alg, opts)
    pts = S.spectrum(alg)
    r.payload["points"] = [S.point_label(alg, p) for p in pts] if pts is not None else "I_i, i in N"
    r.payload["base_sets"] = {
        alg.format(x): sorted(S.point_label(alg, p) for p in S.extent(alg, x)) for x in probes
    }
    r.payload["compactness"] = S.compactness_shadow(alg)
    r.verdict("compact_iff_top", r.payload["compactness"]["equivalent"])
    r.audit("base", S.verify_base_identities(alg, probes))
    r.audit("hull_kernel", S.verify_hull_kernel_clauses(alg, probes))
    r.audit("top_and_radical", S.verify_extent_extremes(alg, probes))
    r.audit("compact_basis", S.compact_basis_audit(alg))
    bad = None
    for x in probes:
        res = S.verify_union_of_differences(alg, x, horizon=opts.horizon)
        if not res["equal"]:
            bad = (x,)
            break
    r.verdict("union_of_differences", bad is None, bad)
    if isinstance(alg, FiniteEmvAlgebra):
        r.audit("hausdorff", S.hausdorff_pairs(alg))
    return r


def cmd_hulls(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    rows = {}
    bad_a = bad_b = None
    if isinstance(alg, FiniteEmvAlgebra):
        for x in alg.elements():
            a0, b0 = alg.least_upper_idempotent(x), alg.greatest_lower_idempotent(x)
            rows[alg.format(x)] = {"a0": alg.format(a0), "b0": alg.format(b0)}
            if a0 != meet_of_idempotents_above(alg, x) and bad_a is None:
                bad_a = (x,)
            if b0 != join_of_idempotents_below(alg, x) and bad_b is None:
                bad_b = (x,)
    else:
        for x in _probes(alg, opts):
            a0, b0 = alg.least_upper_idempotent(x), alg.greatest_lower_idempotent(x)
            rows[alg.format(x)] = {"a0": alg.format(a0), "b0": alg.format(b0)}
            if isinstance(alg, FinSupportAlgebra):
                if fs_a0(alg, x) != alg.char(x.support) and bad_a is None:
                    bad_a = (x,)
                if not alg.is_idempotent(b0) or not alg.leq(b0, x):
                    bad_b = bad_b or (x,)
            elif not (alg.is_idempotent(a0) and alg.leq(x, a0)):
                bad_a = bad_a or (x,)
    r.payload["hulls"] = rows
    r.verdict("a0", bad_a is None, bad_a)
    r.verdict("b0", bad_b is None, bad_b)
    return r


def _parse_family(alg, text):
    return [alg.parse_element(p) for p in text.split(";") if p.strip()] if text else []


def cmd_sup_criterion(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    if isinstance(alg, FinSupportAlgebra):
        boolean = fs_build(1)
        r.payload["domain"] = "finite_sets" if alg.order == 1 else "idempotents, as finite_sets"
    elif isinstance(alg, ChangAlgebra):
        boolean = build_chain(1)
        r.payload["domain"] = "idempotents {0, 1}"
    else:
        boolean = I.idempotent_algebra(alg)
        r.payload["domain"] = "idempotent subalgebra"
    r.alg = boolean
    if opts.element is not None:
        x = boolean.parse_element(opts.element)
        fam = _parse_family(boolean, opts.family)
        cases = [(x, fam, None)]
    elif isinstance(boolean, FinSupportAlgebra):
        cases = S.designed_sup_cases(boolean)
    else:
        cases = []
        els = list(boolean.elements())
        for x in els:
            below = [y for y in els if boolean.leq(y, x) and y != x]
            cases.append((x, below, None))
            cases.extend((x, [y, z], None) for y, z in combinations(below, 2))
    rows = []
    undecided = False
    for x, fam, expected in cases:
        v = S.sup_criterion(boolean, x, fam, opts.horizon)
        shown = [boolean.format(y) for y in fam] if isinstance(fam, list) else "rule"
        row = {"x": boolean.format(x), "family": shown, "status": v.status}
        if v.status == UNDECIDED:
            undecided = True
        else:
            row["sup_holds"] = v.sup_holds
            row["difference"] = sorted(v.difference)
            if expected is not None and v.sup_holds != expected:
                r.verdict("designed_expectations", False, [x])
        rows.append(row)
    r.payload["cases"] = rows
    r.verdicts.setdefault("designed_expectations", True)
    r.verdicts["biconditional"] = UNDEC if undecided else True
    return r


def cmd_ls_witness(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    if isinstance(alg, ChangAlgebra):
        k = TR.chang_hat_kernel(alg, _probes(alg, opts))
        r.payload["hat_kernel"] = [alg.format(x) for x in k["killed"]]
        r.payload["semisimple"] = False
        r.verdict("hat_kills_radical", k["kills_radical"])
        return r
    _require_finite(alg, "ls-witness")
    w = TR.ls_construct(alg)
    r.payload["omega"] = list(w.omega)
    r.payload["tribe"] = [{"f": f.format(), "h": alg.format(x)} for f, x in sorted(w.h.items(), key=lambda p: p[0].values)]
    r.audit("construction", TR.ls_audit(w))
    r.audit("clan", TR.clan_audit(w.tribe))
    r.audit("tribe", TR.tribe_audit(w.tribe))
    return r


def cmd_sigma_ring(target, opts):
    alg = _alg_target(target)
    _require_finite(alg, "sigma-ring")
    r = Run(alg)
    ring = TR.sigma_ring_extract(TR.ls_construct(alg))
    r.payload["ring"] = [sorted(A) for A in ring.sets]
    r.payload["h0"] = [{"set": sorted(A), "x": alg.format(x)} for A, x in ring.h0.items()]
    r.audit("ring", ring.audit)
    return r


def cmd_tribe_audit(target, opts):
    r = Run()
    if isinstance(target, TribeHandle):
        t = target
    else:
        _require_finite(target, "tribe-audit")
        t = TR.ls_construct(target).tribe
    r.payload["tribe"] = t.name
    r.payload["domain"] = list(t.domain)
    if t.elements is not None:
        r.payload["size"] = len(t.elements)
    r.audit("clan", TR.clan_audit(t))
    r.audit("tribe", TR.tribe_audit(t))
    pool = list(t.elements) if t.elements is not None else [t.zero()] + list(t.generators)
    tops = [a for a in pool if a.is_characteristic and all(TR.leq(f, a) for f in pool)]
    if tops and t.domain:
        r.audit("nset", TR.nset_audit(pool[:40], tops[0]))
    return r


def cmd_convergence(target, opts):
    alg = _alg_target(target)
    r = Run(alg)
    if isinstance(alg, FinSupportAlgebra):
        base = base_convergence(alg, _probes(alg, opts), opts.horizon)
        r.payload["base"] = {"verdict": base.verdict, "limit_is_state": base.limit_is_state, "note": base.note,
                             "limits": {p["probe"]: p["limit"] for p in base.probes}}
        r.verdict("base_limit_flagged", base.limit_is_state is False)
        n = represent(alg)
        rep = coordinate_convergence(n, horizon=opts.horizon)
        r.payload["extended"] = {"verdict": rep.verdict,
                                 "limits": {p["probe"]: p["limit"] for p in rep.probes}}
        r.verdicts["extended_to_infinity"] = (rep.converged and rep.agrees) if rep.verdict != UNDECIDED else UNDEC
        return r
    sts = ST.state_morphisms(alg)
    probes = _probes(alg, opts)
    rows = {}
    for s in sts:
        rep = ST.weak_convergence_check(alg, lambda k, s=s: s, probes, limit=s, horizon=opts.horizon)
        rows[s.name] = rep.verdict
        r.verdict(f"constant.{s.name}", rep.converged and rep.agrees)
    r.payload["constant_sequences"] = rows
    return r


COMMANDS = {
    "check": cmd_check,
    "ideals": cmd_ideals,
    "maximal-ideals": cmd_maximal_ideals,
    "radical": cmd_radical,
    "states": cmd_states,
    "filters": cmd_filters,
    "separate": cmd_separate,
    "represent": cmd_represent,
    "spectrum": cmd_spectrum,
    "hulls": cmd_hulls,
    "sup-criterion": cmd_sup_criterion,
    "ls-witness": cmd_ls_witness,
    "sigma-ring": cmd_sigma_ring,
    "tribe-audit": cmd_tribe_audit,
    "convergence": cmd_convergence,
}


# ---------------------------------------------------------------------------
# driver


def _failed(verdicts, strict):
    bad = any(v is False for v in verdicts.values())
    if strict:
        bad = bad or any(v == UNDEC for v in verdicts.values())
    return bad


def _run_one(cmd, name, target, opts):
    start = time.perf_counter()
    run = COMMANDS[cmd](target, opts)
    out = {"command": cmd, "target": name}
    out.update(run.payload)
    out["verdicts"] = run.verdicts
    out["witnesses"] = run.witnesses
    if opts.timing:
        out["timing_ms"] = round(1000 * (time.perf_counter() - start), 3)
    return out


def run_command(cmd, text, opts):
    """(report, exit code) for one command on a description text; raises on bad input."""
    prog = parse_spec(text)
    env = build_program(prog)
    report = {
        "schema": SCHEMA,
        "command": cmd,
        "input": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "options": {"horizon": opts.horizon, "support": opts.support, "seed": opts.seed},
    }
    if cmd == "all":
        runs = []
        failed = False
        for decl in prog.stmts:
            target = env[decl.name]
            cmds = ["tribe-audit"] if isinstance(target, TribeHandle) else list(COMMANDS)
            for c in cmds:
                try:
                    res = _run_one(c, decl.name, target, opts)
                except PreconditionError as e:
                    res = {"command": c, "target": decl.name, "skipped": str(e)}
                runs.append(res)
                failed = failed or _failed(res.get("verdicts", {}), opts.strict)
        report["runs"] = runs
        return report, 1 if failed else 0
    if opts.algebra is not None:
        if opts.algebra not in env:
            raise PreconditionError(f"no declaration named {opts.algebra!r}")
        name = opts.algebra
    else:
        decls = prog.tribes() if cmd == "tribe-audit" and prog.tribes() else prog.algebras()
        if not decls:
            raise PreconditionError("the file declares no algebra")
        name = decls[0].name
    res = _run_one(cmd, name, env[name], opts)
    report.update({k: v for k, v in res.items() if k != "command"})
    return report, 1 if _failed(res["verdicts"], opts.strict) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="emvkit", description="Exact checks on EMV-algebras described in a small DSL.")
    p.add_argument("command", choices=sorted(COMMANDS) + ["all", "parse"])
    p.add_argument("file", help="description file ('-' for standard input)")
    p.add_argument("--algebra", help="declaration to run on (default: the first algebra)")
    p.add_argument("--element", help="element literal for sup-criterion")
    p.add_argument("--family", help="';'-separated element literals for sup-criterion")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.add_argument("--support", type=int, default=DEFAULT_SUPPORT)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="treat undecided entries as failures")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (not byte-stable)")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv=None) -> int:
    from .dsl import print_program

    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        print(f"emvkit: {e}", file=sys.stderr)
        return 2
    try:
        if args.command == "parse":
            sys.stdout.write(print_program(parse_spec(text)))
            return 0
        report, code = run_command(args.command, text, args)
    except DslError as e:
        print(f"{args.file}:{e}", file=sys.stderr)
        return 2
    except (PreconditionError, InvalidAlgebraError) as e:
        print(f"emvkit: {e}", file=sys.stderr)
        return 2
    except (EmvError, AssertionError) as e:
        print(_dump({"schema": SCHEMA, "command": args.command, "error": type(e).__name__, "witness": str(e)}))
        return 1
    print(_dump(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
