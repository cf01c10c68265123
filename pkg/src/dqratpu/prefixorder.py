"""Outer-variable sets and the induced pre-order on a DQBF prefix."""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Optional

from .core import Assignment, InputError, Prefix


def outer_set(prefix: Prefix, v: int) -> FrozenSet[int]:
    """Outer_v: the variables that are "left of" ``v`` in the prefix.

    For an existential x this is every variable whose dependency set is
    contained in D_x.  For a universal u it is u itself together with the
    variables whose dependency set fits inside D_x minus u for every
    existential x depending on u.  If nothing depends on u, every variable
    not depending on u counts as outer.
    """
    if prefix.is_existential(v):
        dx = prefix.deps(v)
        return frozenset(y for y in prefix if prefix.deps(y) <= dx)
    if not prefix.is_universal(v):
        raise InputError(f"variable {v} is not declared")
    inner = [x for x in prefix.existentials if v in prefix.deps(x)]
    if not inner:
        return frozenset(y for y in prefix if y == v or v not in prefix.deps(y))
    # intersection over x in Inner_v of {y | D_y ⊆ D_x \ {v}} = {y | D_y ⊆ ⋂ (D_x \ {v})}
    common = frozenset.intersection(*(prefix.deps(x) - {v} for x in inner))
    return frozenset(y for y in prefix if prefix.deps(y) <= common) | {v}


def prefix_leq(prefix: Prefix, x: int, y: int) -> bool:
    """x ≲ y, i.e. x is an outer variable of y."""
    if x not in prefix:
        raise InputError(f"variable {x} is not declared")
    return x in outer_set(prefix, y)


class OuterSets:
    """Lazily computed outer sets for one prefix."""

    def __init__(self, prefix: Prefix):
        self.prefix = prefix
        self._cache: Dict[int, FrozenSet[int]] = {}

    def __getitem__(self, v: int) -> FrozenSet[int]:
        s = self._cache.get(v)
        if s is None:
            s = self._cache[v] = outer_set(self.prefix, v)
        return s

    def leq(self, x: int, y: int) -> bool:
        return x in self[y]

    def all(self) -> Dict[int, FrozenSet[int]]:
        return {v: self[v] for v in self.prefix}


def outer_assumptions(prefix: Prefix, clause: Iterable[int], pivot: int,
                      outer: Optional[OuterSets] = None) -> Assignment:
    """Falsify the literals of ``clause`` (other than the negated pivot) outer to the pivot."""
    lits = list(clause)
    if -pivot not in lits:
        raise InputError(f"negated pivot {-pivot} not in clause {tuple(lits)}")
    target = outer[abs(pivot)] if outer is not None else outer_set(prefix, abs(pivot))
    alpha: Assignment = {}
    for lit in lits:
        if lit != -pivot and abs(lit) in target:
            alpha[abs(lit)] = lit < 0
    return alpha
