import random

from hypothesis import given, strategies as st

from dqratpu.core import InputError, Prefix
from dqratpu.prefixorder import OuterSets, outer_assumptions, outer_set, prefix_leq

LATTICE_OUTER = {
    1: {1, 5}, 2: {1, 2, 5, 8}, 3: {1, 3, 5, 8}, 4: set(range(1, 9)),
    5: {5}, 6: {1, 2, 5, 6, 8}, 7: {1, 3, 5, 7, 8}, 8: {1, 5, 8},
}


def test_lattice_outer_sets(lattice_prefix):
    sets = OuterSets(lattice_prefix).all()
    assert {v: set(s) for v, s in sets.items()} == LATTICE_OUTER


def test_leq(lattice_prefix):
    assert prefix_leq(lattice_prefix, 5, 1)        # constant before everything
    assert prefix_leq(lattice_prefix, 1, 8)        # u before e(u)
    assert not prefix_leq(lattice_prefix, 2, 3)    # v and w incomparable
    assert not prefix_leq(lattice_prefix, 4, 6)


def test_universal_without_inner_existentials():
    p = Prefix([1, 2], {3: [1]})
    # nothing depends on 2, so everything not depending on 2 is outer to it
    assert outer_set(p, 2) == {1, 2, 3}
    assert outer_set(p, 1) == {1}


def test_outer_assumptions():
    p = Prefix([1, 2], {3: [1], 4: [2], 5: []})
    # pivot x=3; clause D = (-3 1 2 5): 1 and 5 are outer to 3, 2 is not
    assert outer_assumptions(p, (-3, 1, 2, 5), 3) == {1: False, 5: False}
    try:
        outer_assumptions(p, (1, 2), 3)
    except InputError:
        pass
    else:
        raise AssertionError("missing negated pivot must be refused")


def random_prefix(rng, n):
    kinds = [rng.random() < 0.4 for _ in range(n)]
    univ = [v + 1 for v in range(n) if kinds[v]]
    deps = {v + 1: [u for u in univ if rng.random() < 0.5] for v in range(n) if not kinds[v]}
    return Prefix(univ, deps)


def test_preorder_random():
    rng = random.Random(7)
    for _ in range(2000):
        p = random_prefix(rng, rng.randint(1, 8))
        o = OuterSets(p)
        for x in p:
            assert x in o[x]
            for y in o[x]:
                assert o[y] <= o[x]


@given(st.lists(st.booleans(), max_size=7))
def test_linear_prefix_matches_position(kinds):
    # QBF prefix ending in an existential: y is outer to x exactly when y
    # comes before the first later variable of the opposite quantifier
    kinds = kinds + [False]
    univ, deps = [], {}
    for i, k in enumerate(kinds, 1):
        if k:
            univ.append(i)
        else:
            deps[i] = list(univ)
    p = Prefix(univ, deps, range(1, len(kinds) + 1))
    o = OuterSets(p)
    for x, kx in enumerate(kinds, 1):
        stop = next((j for j in range(x + 1, len(kinds) + 1) if kinds[j - 1] != kx), len(kinds) + 1)
        assert o[x] == set(range(1, stop))
