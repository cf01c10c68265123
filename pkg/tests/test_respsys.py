import random

import pytest

from dqratpu.core import Formula, InputError, Prefix, make_clause
from dqratpu.dqratcheck import Status, check_script
from dqratpu.genfam import (FamilyParams, gen_bridged_refutation, gen_family, running_example,
                            running_example_proof)
from dqratpu.oracle import eval_qbf
from dqratpu.respsys import LdqConfig, check_dres, check_ldq, translate_dres_to_dqrat
from dqratpu.textio import AXIOM, INDEXT, RED, RES, ResNode, ResProof, parse_resproof

from conftest import qbf


def proof(*nodes):
    return ResProof([ResNode(i, *n) for i, n in enumerate(nodes, 1)])


def test_ldq_merge_blocked_by_dependency():
    # exists x forall u: (x u) and (-x -u); x does not depend on u so the merge is fine
    f = qbf([("e", [1]), ("a", [2])], [(1, 2), (-1, -2)])
    p = proof((AXIOM, (), (1, 2)), (AXIOM, (), (-1, -2)), (RES, (1, 2), (2, -2)), (RED, (3,), ()))
    assert check_ldq(f, p, LdqConfig("trv")).status is Status.REFUTATION_VERIFIED
    # forall u exists x: now (u,x) is a dependency pair under every scheme
    g = qbf([("a", [2]), ("e", [1])], [(1, 2), (-1, -2), (1, -2), (-1, 2)])
    v = check_ldq(g, p, LdqConfig("pu"))
    assert v.status is Status.REJECTED and v.line == 3


def test_ldq_reduction_blocked():
    f = qbf([("a", [1]), ("e", [2])], [(1, 2), (-1, 2)])
    p = proof((AXIOM, (), (1, 2)), (RED, (1,), (2,)))
    v = check_ldq(f, p, LdqConfig("trv"))
    assert v.status is Status.REJECTED and v.rule == "Red"


def test_ldq_stated_clause_must_match():
    f = qbf([("e", [1, 2])], [(1, 2), (-1,)])
    p = proof((AXIOM, (), (1, 2)), (AXIOM, (), (-1,)), (RES, (1, 2), ()))
    assert check_ldq(f, p).status is Status.REJECTED
    ok = proof((AXIOM, (), (1, 2)), (AXIOM, (), (-1,)), (RES, (1, 2), (2,)))
    assert check_ldq(f, ok).status is Status.VALID_NO_REFUTATION


def test_ldq_rejects_non_axiom():
    f = qbf([("e", [1])], [(1,)])
    assert check_ldq(f, proof((AXIOM, (), (-1,)))).status is Status.REJECTED


@pytest.mark.parametrize("n", [2, 4])
def test_bridged_refutation(n):
    f = gen_family(FamilyParams("bridged_ts_lqparity", n))
    p = gen_bridged_refutation(n)
    assert check_ldq(f, p, LdqConfig("pu")).status is Status.REFUTATION_VERIFIED
    v = check_ldq(f, p, LdqConfig("rrs"))
    assert v.status is Status.REJECTED and v.line == 2


def test_dres_running_example():
    f = running_example()
    assert check_dres(f, running_example_proof()).status is Status.REFUTATION_VERIFIED


def test_dres_red_needs_independence():
    # u in D_x, so u cannot go from (u n x) even though n is independent
    f = Formula(Prefix([1], {2: [], 3: [1]}), [(1, 2, 3)])
    p = proof((AXIOM, (), (1, 2, 3)), (RED, (1,), (2, 3)))
    assert check_dres(f, p).status is Status.REJECTED


def test_dres_red_forbids_both_polarities():
    f = Formula(Prefix([1], {2: []}), [(1, 2), (-1, -2)])
    p = proof((AXIOM, (), (1, 2)), (AXIOM, (), (-1, -2)))
    assert check_dres(f, p).status is Status.VALID_NO_REFUTATION
    merged = ResProof(list(p.nodes) + [ResNode(3, RES, (1, 2), (1, -1))])
    assert check_dres(f, merged).status is Status.REJECTED


def test_dres_indext_conditions():
    f = running_example()
    bad_cond = parse_resproof("1 x 5 : 3 : 3 3 0\n")
    assert check_dres(f, bad_cond).status is Status.REJECTED
    not_fresh = parse_resproof("1 x 4 : -1 : 3 3 0\n")
    assert check_dres(f, not_fresh).status is Status.REJECTED
    good = parse_resproof("1 x 5 : -1 : 3 4 0\n")
    assert check_dres(f, good).status is Status.VALID_NO_REFUTATION


def test_translation_round_trip():
    f = running_example()
    p = running_example_proof()
    script = translate_dres_to_dqrat(f, p)
    assert check_script(f, script).status is Status.REFUTATION_VERIFIED
    assert len(script) <= 3 * p.node_count()


def test_translation_without_extension():
    f = qbf([("e", [1, 2])], [(1, 2), (-1, 2), (-2,)])
    p = proof((AXIOM, (), (1, 2)), (AXIOM, (), (-1, 2)), (RES, (1, 2), (2,)),
              (AXIOM, (), (-2,)), (RES, (3, 4), ()))
    script = translate_dres_to_dqrat(f, p)
    assert {l.kind for l in script} == {"add"}
    assert check_script(f, script).status is Status.REFUTATION_VERIFIED


def test_translation_refuses_bad_proof():
    f = running_example()
    with pytest.raises(InputError):
        translate_dres_to_dqrat(f, parse_resproof("1 a 1 2 0\n"))


def random_qbf(rng):
    kinds = [rng.random() < 0.4 for _ in range(rng.randint(2, 5))]
    blocks = [("a" if k else "e", [i]) for i, k in enumerate(kinds, 1)]
    n = len(kinds)
    m = set()
    for _ in range(rng.randint(2, 7)):
        vs = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
        m.add(make_clause(rng.choice([v, -v]) for v in vs))
    return qbf(blocks, sorted(m))


def grow_ldq(f, rng, cfg, steps=25):
    """Randomly extend an accepted LDQ derivation; returns it once refuted or out of steps."""
    nodes = [ResNode(i, AXIOM, (), c) for i, c in enumerate(f.matrix, 1)]
    for _ in range(steps):
        nid = len(nodes) + 1
        if rng.random() < 0.6:
            a, b = rng.sample(nodes, 2) if len(nodes) > 1 else (nodes[0], nodes[0])
            piv = [abs(l) for l in a.clause if -l in b.clause and f.prefix.is_existential(abs(l))]
            if not piv:
                continue
            x = piv[0]
            cand = ResNode(nid, RES, (a.id, b.id), make_clause(l for l in a.clause + b.clause if abs(l) != x))
        else:
            a = rng.choice(nodes)
            us = sorted({abs(l) for l in a.clause if f.prefix.is_universal(abs(l))})
            if not us:
                continue
            u = rng.choice(us)
            cand = ResNode(nid, RED, (a.id,), tuple(l for l in a.clause if abs(l) != u))
        if check_ldq(f, ResProof(nodes + [cand]), cfg).ok:
            nodes.append(cand)
            if not cand.clause:
                return ResProof(nodes), True
    return ResProof(nodes), False


@pytest.mark.parametrize("scheme", ["trv", "pu"])
def test_ldq_refutations_are_sound(scheme):
    rng = random.Random(17)
    refuted = 0
    for _ in range(250):
        f = random_qbf(rng)
        cfg = LdqConfig(scheme)
        _, done = grow_ldq(f, rng, cfg)
        if done:
            refuted += 1
            assert not eval_qbf(f)
    assert refuted > 20
