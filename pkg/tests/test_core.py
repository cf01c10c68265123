import pytest
from hypothesis import given, strategies as st

from dqratpu.core import (Formula, InputError, Prefix, clause_depset, is_tautology, make_clause,
                          negate_clause, negate_literal, restrict)

lits = st.integers(1, 6).flatmap(lambda v: st.sampled_from([v, -v]))


@pytest.mark.parametrize("lit, expected", [(3, -3), (-3, 3), (1, -1)])
def test_negate_literal(lit, expected):
    assert negate_literal(lit) == expected
    assert negate_literal(negate_literal(lit)) == lit


def test_negate_zero_is_rejected():
    with pytest.raises(InputError):
        negate_literal(0)


def test_restrict_examples():
    x, y, z = 1, 2, 3
    assert restrict([(x, y), (-x, z)], {x: True}) == [(z,)]
    assert restrict([(x, y), (-x, z)], {}) == [(x, y), (-x, z)]
    assert restrict([(x,)], {x: False}) == [()]


@given(st.lists(st.lists(lits, min_size=1, max_size=4), max_size=6),
       st.dictionaries(st.integers(1, 3), st.booleans()),
       st.dictionaries(st.integers(4, 6), st.booleans()))
def test_restrict_composes(m, a, b):
    assert restrict(restrict(m, a), b) == restrict(m, {**a, **b})


def test_make_clause_canonical():
    assert make_clause([3, -1, 3, 2]) == (-1, 2, 3)
    assert make_clause([]) == ()
    assert make_clause([-2, 2]) == (2, -2)
    assert is_tautology((2, -2)) and not is_tautology((1, 2))


def test_clause_depset(lattice_prefix):
    p = Prefix([1], {2: [1]})
    assert clause_depset(p, (2,)) == {1}
    assert clause_depset(p, (1, 2)) == {1}
    # c has {u,v}, d has {u,w}
    assert clause_depset(lattice_prefix, (6, 7)) == {1, 2, 3}
    with pytest.raises(InputError):
        clause_depset(p, (9,))


@given(st.lists(lits, max_size=5), st.lists(lits, max_size=3))
def test_clause_depset_monotone(c, extra):
    p = Prefix([1, 2], {3: [1], 4: [2], 5: [1, 2], 6: []})
    assert clause_depset(p, c) <= clause_depset(p, c + extra)


def test_negate_clause():
    assert negate_clause((1, -2)) == {1: False, 2: True}
    assert negate_clause(()) == {}
    with pytest.raises(InputError):
        negate_clause((1, -1))


@given(st.lists(lits, max_size=5).filter(lambda c: not is_tautology(c)))
def test_negate_clause_falsifies(c):
    alpha = negate_clause(c)
    assert set(alpha) == {abs(l) for l in c}
    assert restrict([tuple(c)], alpha) == [()]


def test_prefix_rules():
    p = Prefix([1, 2], {3: [1]})
    assert p.deps(1) == {1} and p.deps(3) == {1}
    assert p.universals == (1, 2) and p.existentials == (3,)
    with pytest.raises(InputError):
        Prefix([1], {2: [5]})
    with pytest.raises(InputError):
        Prefix([1], {1: []})
    assert p.with_universal(4).is_universal(4)
    assert p.with_dependencies(3, [2]).deps(3) == {2}
    assert p.deps(3) == {1}  # unchanged copy
    assert Prefix([2, 1], {3: [1]}) == p


def test_formula_must_be_closed():
    with pytest.raises(InputError):
        Formula(Prefix([1], {}), [(1, 2)])
    f = Formula(Prefix([1], {2: [1]}), [(2, 1, 2)])
    assert f.matrix == ((1, 2),)
