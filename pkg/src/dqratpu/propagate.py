"""Unit propagation and the reverse-unit-propagation (ATA) test."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Union

from .core import Assignment, is_tautology, negate_clause, assignment_literals

Assumptions = Union[Mapping[int, bool], Iterable[int]]


@dataclass
class PropResult:
    conflict: bool
    assignment: Assignment = field(default_factory=dict)
    clause: Optional[int] = None  # index of the falsified clause, None for clashing assumptions

    @property
    def fixed_point(self) -> bool:
        return not self.conflict


def _literals(assumptions: Assumptions | None) -> list:
    if assumptions is None:
        return []
    if isinstance(assumptions, Mapping):
        return assignment_literals(assumptions)
    return list(assumptions)


def unit_propagate(clauses: Sequence[Sequence[int]], assumptions: Assumptions | None = None,
                   rng: random.Random | None = None) -> PropResult:
    """Propagate unit clauses of ``clauses`` under ``assumptions`` to a fixpoint.

    ``assumptions`` is either a variable->bool map or an iterable of true
    literals; two opposing literals give an immediate conflict.  With
    ``rng`` the propagation queue is drained in random order, which must
    not change the outcome.
    """
    assign: Dict[int, bool] = {}
    for lit in _literals(assumptions):
        v, val = abs(lit), lit > 0
        if assign.get(v, val) != val:
            return PropResult(True, assign, None)
        assign[v] = val

    occurs: Dict[int, list] = {}
    queue = []
    for i, c in enumerate(clauses):
        free = None
        n_free = 0
        sat = False
        for lit in c:
            occurs.setdefault(lit, []).append(i)
            val = assign.get(abs(lit))
            if val is None:
                n_free += 1
                free = lit
            elif val == (lit > 0):
                sat = True
        if sat:
            continue
        if n_free == 0:
            return PropResult(True, assign, i)
        if n_free == 1:
            queue.append(free)

    # assumptions were already taken into account by the initial scan
    while queue:
        k = rng.randrange(len(queue)) if rng is not None else len(queue) - 1
        lit = queue[k]
        queue[k] = queue[-1]
        queue.pop()
        v, val = abs(lit), lit > 0
        cur = assign.get(v)
        if cur is not None:
            if cur != val:
                # the unit clause that queued lit is now falsified
                return PropResult(True, assign, _falsified(clauses, occurs.get(lit, ()), assign))
            continue
        assign[v] = val
        for i in occurs.get(-lit, ()):
            free = None
            n_free = 0
            sat = False
            for other in clauses[i]:
                val = assign.get(abs(other))
                if val is None:
                    n_free += 1
                    free = other
                    if n_free > 1:
                        break
                elif val == (other > 0):
                    sat = True
                    break
            if sat:
                continue
            if n_free == 0:
                return PropResult(True, assign, i)
            if n_free == 1:
                queue.append(free)
    return PropResult(False, assign, None)


def _falsified(clauses, candidates, assign) -> Optional[int]:
    for i in candidates:
        if all(assign.get(abs(l)) == (l < 0) for l in clauses[i]):
            return i
    return None


def propagates_to_conflict(clauses: Sequence[Sequence[int]], assumptions: Assumptions | None = None,
                           rng: random.Random | None = None) -> bool:
    return unit_propagate(clauses, assumptions, rng).conflict


def ata_check(clauses: Sequence[Sequence[int]], clause: Sequence[int],
              rng: random.Random | None = None) -> bool:
    """True iff ``clauses`` together with the negation of ``clause`` propagates to a conflict.

    Tautological candidates pass: they are implied by anything.
    """
    if is_tautology(clause):
        return True
    return unit_propagate(clauses, negate_clause(clause), rng).conflict
