"""End-to-end acceptance checks.

Each test records one PASS/FAIL line; the lines are echoed in pytest's
terminal summary (see conftest.py) so they show up in plain ``pytest -v``
output.  Run this file directly for just these checks.
"""

import random
import time

import pytest

from dqratpu import depscheme, oracle
from dqratpu.cli import main
from dqratpu.core import Prefix
from dqratpu.dqratcheck import Status, check_script
from dqratpu.genfam import (FamilyParams, ParityVars, gen_bridged_refutation, gen_family,
                            running_example, running_example_proof)
from dqratpu.prefixorder import OuterSets
from dqratpu.propagate import ata_check, unit_propagate
from dqratpu.respsys import LdqConfig, check_dres, check_ldq, translate_dres_to_dqrat
from dqratpu.textio import (ADD, DELETE, MODIFY_EXISTENTIAL, REDUCE, ProofLine, parse_dqdimacs,
                            parse_dqrat, serialize_dqrat)

RESULTS = []


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def renumber(lines):
    return parse_dqrat(serialize_dqrat(lines))


def test_1_golden_replay(data):
    t = time.perf_counter()
    f = parse_dqdimacs((data / "two_player.dqdimacs").read_text())
    v = check_script(f, parse_dqrat((data / "two_player.dqrat").read_text()))
    dt = time.perf_counter() - t
    record(1, v.status is Status.REFUTATION_VERIFIED and v.status.value == 0 and dt < 1.0,
           f"status={v.status.name} time={dt:.3f}s")


def test_2_ordering_sensitivity(two_player, golden_script):
    moved = list(golden_script)
    removal = moved.pop(9)
    assert removal.kind == MODIFY_EXISTENTIAL and removal.lits == (5, -1)
    moved.insert(7, removal)  # before the two deletions
    v = check_script(two_player, renumber(moved))
    ok = v.status is Status.REJECTED and v.line == 8 and v.rule == "pu" and "(1,5)" in (v.reason or "")
    record(2, ok, v.diagnostic())


def test_3_scheme_table(pathy):
    u, v, x, y, z = 1, 2, 3, 4, 5
    pu = depscheme.all_pairs(pathy, "pu")
    rrs = depscheme.all_pairs(pathy, "rrs")
    want_pu = {(u, x), (v, y), (v, z)}
    want_rrs = want_pu | {(u, y), (u, z)}
    ok = pu == want_pu and rrs == want_rrs and (v, x) not in pu and (v, x) not in rrs
    record(3, ok, f"pu={sorted(pu)} rrs={sorted(rrs)} expected rrs={sorted(want_rrs)}")


LATTICE_OUTER = """\
1: 1 5
2: 1 2 5 8
3: 1 3 5 8
4: 1 2 3 4 5 6 7 8
5: 5
6: 1 2 5 6 8
7: 1 3 5 7 8
8: 1 5 8
"""


def test_4_outer_sets(capsys, data):
    rc = main(["analyze", "--outer", str(data / "lattice.dqdimacs")])
    text = capsys.readouterr().out
    golden = rc == 0 and text == LATTICE_OUTER
    rng = random.Random(2024)
    bad = 0
    for _ in range(10_000):
        n = rng.randint(1, 8)
        kinds = [rng.random() < 0.4 for _ in range(n)]
        us = [i + 1 for i in range(n) if kinds[i]]
        p = Prefix(us, {i + 1: [w for w in us if rng.random() < 0.5] for i in range(n) if not kinds[i]})
        o = OuterSets(p)
        bad += sum(1 for a in p for b in o[a] if not o[b] <= o[a])
    record(4, golden and bad == 0, f"golden={'match' if golden else 'mismatch'} preorder_violations={bad} over 10000 prefixes")


def test_5_parity_separation():
    t = time.perf_counter()
    problems, worst = [], 0.0
    for n in range(2, 11):
        f = gen_family(FamilyParams("bridged_ts_lqparity", n))
        v = ParityVars(n)
        if depscheme.all_pairs(f, "pu") != {(v.z, v.b)}:
            problems.append(f"N={n} pu")
        if depscheme.all_pairs(f, "rrs") != depscheme.all_pairs(f, "trv"):
            problems.append(f"N={n} rrs")
        proof = gen_bridged_refutation(n)
        worst = max(worst, proof.node_count() / n)
        if proof.node_count() > 26 * n:
            problems.append(f"N={n} size")
        if check_ldq(f, proof, LdqConfig("pu")).status is not Status.REFUTATION_VERIFIED:
            problems.append(f"N={n} pu-check")
        if check_ldq(f, proof, LdqConfig("rrs")).status is not Status.REJECTED:
            problems.append(f"N={n} rrs-check")
    dt = time.perf_counter() - t
    record(5, not problems and dt < 5.0,
           f"problems={problems} max nodes/N={worst:.1f} (c=26) time={dt:.2f}s")


@pytest.mark.slow
def test_6_soundness_sweep():
    r = oracle.scheme_soundness_sweep(oracle.SweepParams(2, 2, 4, 3))
    expected = oracle.formula_count(oracle.SweepParams(2, 2, 4, 3))
    ok = r.ok and r.represented == expected and r.seconds < 600
    record(6, ok, f"formulas={r.represented} evaluated={r.instances} reduced={r.reduced} "
                  f"violations={len(r.violations)} time={r.seconds:.1f}s")


def test_7_dres_round_trip():
    f, proof = running_example(), running_example_proof()
    a = check_dres(f, proof)
    script = translate_dres_to_dqrat(f, proof)
    b = check_script(f, script)
    ok = (a.status is Status.REFUTATION_VERIFIED and b.status is Status.REFUTATION_VERIFIED
          and len(script) <= 3 * proof.node_count())
    record(7, ok, f"dres={a.status.name} script={b.status.name} lines={len(script)} nodes={proof.node_count()}")


def mutations(f, script):
    """Single-line mutations of an accepted script, tagged with their kind."""
    out = []
    for i, line in enumerate(script):
        start = 1 if line.kind == MODIFY_EXISTENTIAL else 0
        for j in range(start, len(line.lits)):
            lits = list(line.lits)
            lits[j] = -lits[j]
            out.append(("flip", script[:i] + [ProofLine(line.kind, tuple(lits))] + script[i + 1:]))
        if line.kind == DELETE:
            out.append(("drop-deletion", script[:i] + script[i + 1:]))
        if line.kind == MODIFY_EXISTENTIAL and any(d < 0 for d in line.deltas):
            for k in range(i):
                if script[k].kind == DELETE:
                    out.append(("reorder-removal", script[:k] + [line] + script[k:i] + script[i + 1:]))
        if line.kind == ADD and len(line.lits) > 1 and i < 3:
            for k in range(1, len(line.lits)):
                lits = (line.lits[k],) + line.lits[:k] + line.lits[k + 1:]
                out.append(("pivot", script[:i] + [ProofLine(ADD, lits)] + script[i + 1:]))
        if line.kind == REDUCE:
            us = [l for l in line.lits[1:] if f.prefix.is_universal(abs(l))]
            for l in us:
                rest = [x for x in line.lits if x != l]
                out.append(("dependent-universal", script[:i] + [ProofLine(REDUCE, (l, *rest))] + script[i + 1:]))
    return out


def test_8_mutations(two_player, golden_script):
    cases = [(two_player, golden_script)]
    f = running_example()
    cases.append((f, translate_dres_to_dqrat(f, running_example_proof())))
    total, missed, kinds = 0, [], set()
    for formula, script in cases:
        assert check_script(formula, script).status is Status.REFUTATION_VERIFIED
        for kind, mutant in mutations(formula, list(script)):
            total += 1
            kinds.add(kind)
            v = check_script(formula, renumber(mutant))
            if v.status is not Status.REJECTED or v.line is None:
                missed.append(kind)
    ok = total >= 30 and not missed and len(kinds) == 5
    record(8, ok, f"mutants={total} kinds={sorted(kinds)} not_rejected={len(missed)}")


def ata_cases(two_player, golden_script, rng):
    """(matrix, clause) pairs from the golden replay plus random CNFs."""
    from dqratpu.dqratcheck import CheckState
    cases = []
    st = CheckState(two_player)
    for line in golden_script:
        if line.kind == ADD:
            cases.append((list(st.matrix), line.lits))
        st.apply(line)
    while len(cases) < 50:
        n = rng.randint(3, 8)
        m = [tuple(rng.choice([v, -v]) for v in rng.sample(range(1, n + 1), rng.randint(1, 3)))
             for _ in range(rng.randint(3, 14))]
        c = tuple(rng.choice([v, -v]) for v in rng.sample(range(1, n + 1), rng.randint(0, 2)))
        cases.append((m, c))
    return cases


def test_9_propagation_confluence(two_player, golden_script):
    rng = random.Random(99)
    cases = ata_cases(two_player, golden_script, rng)
    diffs = replays = 0
    for m, c in cases:
        base = ata_check(m, c)
        assign = None if base else unit_propagate(m, [-l for l in c]).assignment
        for _ in range(1000 // len(cases) + 1):
            r = random.Random(rng.getrandbits(32))
            replays += 1
            if ata_check(m, c, r) != base:
                diffs += 1
            elif assign is not None and unit_propagate(m, [-l for l in c], r).assignment != assign:
                diffs += 1
    record(9, replays >= 1000 and diffs == 0, f"cases={len(cases)} replays={replays} differing={diffs}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
