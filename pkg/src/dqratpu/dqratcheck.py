"""Line-by-line replay of DQRAT proofs with the pure-universal prefix rule.

Clause additions are checked by ATA first and by DQRAT-exists second (pivot
= first literal as written).  ``u`` lines reduce their first literal by UR,
DQRAT-forall, or, when enabled, local pure literal reduction.  ``e`` lines
introduce existential variables or remove dependencies; a removal must be
justified by the dependency scheme on the current formula.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import depscheme
from .core import (Formula, InputError, Prefix, clause_depset, is_tautology, make_clause,
                   negate_clause)
from .prefixorder import OuterSets, outer_assumptions
from .propagate import propagates_to_conflict
from .textio import (ADD, DECLARE_UNIVERSAL, DELETE, MODIFY_EXISTENTIAL, REDUCE, ProofLine)

log = logging.getLogger(__name__)


class Status(enum.Enum):
    REFUTATION_VERIFIED = 0
    REJECTED = 1
    VALID_NO_REFUTATION = 2


@dataclass
class Verdict:
    status: Status
    line: Optional[int] = None
    rule: Optional[str] = None
    reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status is not Status.REJECTED

    def diagnostic(self) -> str:
        if self.status is Status.REJECTED:
            return f"REJECT line={self.line} rule={self.rule} reason={self.reason}"
        return self.status.name


class Rejected(Exception):
    def __init__(self, rule: str, reason: str):
        super().__init__(f"{rule}: {reason}")
        self.rule = rule
        self.reason = reason


@dataclass
class CheckOptions:
    lplr: bool = False
    scheme: str = "pu"  # scheme justifying dependency removals
    strict: bool = False


@dataclass
class Removal:
    """An accepted dependency removal, kept for post-hoc auditing."""

    line: Optional[int]
    formula: Formula  # formula the removal was checked against
    u: int
    x: int


class CheckState:
    """The evolving formula during replay."""

    def __init__(self, f: Formula, opts: CheckOptions | None = None):
        self.opts = opts or CheckOptions()
        if self.opts.scheme not in ("rrs", "pu"):
            raise ValueError("dependency removals are justified by 'rrs' or 'pu'")
        if self.opts.strict:
            declared = set(f.prefix)
            missing = f.variables() - declared
            if missing:
                raise InputError(f"undeclared matrix variables {sorted(missing)}")
        self.prefix: Prefix = f.prefix
        self.matrix: List[Tuple[int, ...]] = list(f.matrix)
        self.counts = Counter(self.matrix)
        self.version = 0
        self.refuted = False
        self.removals: List[Removal] = []
        self._outer: Optional[OuterSets] = None
        self._outer_version = -1

    # -- helpers ---------------------------------------------------------
    @property
    def formula(self) -> Formula:
        return Formula.trusted(self.prefix, tuple(self.matrix))

    def outer(self) -> OuterSets:
        if self._outer_version != self.version:
            self._outer = OuterSets(self.prefix)
            self._outer_version = self.version
        return self._outer

    def _set_prefix(self, prefix: Prefix) -> None:
        self.prefix = prefix
        self.version += 1

    def _declare_free(self, lits: Sequence[int], rule: str) -> None:
        for lit in lits:
            v = abs(lit)
            if v not in self.prefix:
                if self.opts.strict:
                    raise Rejected(rule, f"variable {v} is not declared")
                self._set_prefix(self.prefix.with_dependencies(v, self.prefix.universals))

    def _append(self, clause: Tuple[int, ...]) -> None:
        self.matrix.append(clause)
        self.counts[clause] += 1
        if not clause:
            self.refuted = True

    def _find(self, clause: Tuple[int, ...]) -> int:
        if self.counts[clause] == 0:
            return -1
        return self.matrix.index(clause)

    def _remove_at(self, i: int) -> None:
        clause = self.matrix.pop(i)
        self.counts[clause] -= 1

    def _rat(self, rest: Sequence[int], pivot: int, pivot_value: bool) -> Optional[Tuple[int, ...]]:
        """Check the DQRAT side condition for every clause containing the negated pivot.

        Returns the first clause for which propagation does not conflict.
        """
        outer = self.outer()
        base = negate_clause(rest)
        if base.get(abs(pivot), pivot_value) != pivot_value:
            return None  # the assumptions already clash
        base[abs(pivot)] = pivot_value
        for d in self.matrix:
            if -pivot not in d:
                continue
            assume = dict(base)
            clash = False
            for v, val in outer_assumptions(self.prefix, d, pivot, outer).items():
                if assume.get(v, val) != val:
                    clash = True
                    break
                assume[v] = val
            if clash:
                continue
            if not propagates_to_conflict(self.matrix, assume):
                return d
        return None

    # -- rules -------------------------------------------------------------
    def apply_add(self, lits: Sequence[int]) -> str:
        """Add a clause by ATA or DQRAT-exists; returns the rule used."""
        self._declare_free(lits, "add")
        clause = make_clause(lits)
        if is_tautology(clause):
            raise Rejected("add", f"tautological clause {tuple(lits)}")
        if propagates_to_conflict(self.matrix, negate_clause(clause)):
            self._append(clause)
            return "ATA"
        if not lits:
            raise Rejected("ATA", "empty clause does not follow by unit propagation")
        pivot = lits[0]
        if not self.prefix.is_existential(abs(pivot)):
            raise Rejected("ATA/DQRAT-E", f"ATA failed and pivot {pivot} is not existential")
        rest = [l for l in clause if l != pivot]
        witness = self._rat(rest, pivot, pivot < 0)
        if witness is not None:
            raise Rejected("ATA/DQRAT-E", f"ATA failed; DQRAT-E on pivot {pivot} fails against {list(witness)}")
        self._append(clause)
        return "DQRAT-E"

    def apply_delete(self, lits: Sequence[int]) -> str:
        clause = make_clause(lits)
        i = self._find(clause)
        if i < 0:
            raise Rejected("delete", f"clause {list(lits)} is not in the formula")
        self._remove_at(i)
        return "Del"

    def apply_reduce(self, lits: Sequence[int]) -> str:
        """Reduce the first literal of ``lits`` from the clause made of all of ``lits``."""
        if not lits:
            raise Rejected("reduce", "no literal to reduce")
        lit = lits[0]
        if not self.prefix.is_universal(abs(lit)):
            raise Rejected("reduce", f"literal {lit} is not universal")
        full = make_clause(lits)
        i = self._find(full)
        if i < 0:
            raise Rejected("reduce", f"clause {list(lits)} is not in the formula")
        rest = tuple(l for l in full if l != lit)
        if any(abs(l) not in self.prefix for l in rest):
            raise Rejected("reduce", "clause mentions undeclared variables")
        rule = None
        if abs(lit) not in clause_depset(self.prefix, rest):
            rule = "UR"
        elif self._rat(rest, lit, lit > 0) is None:
            rule = "DQRAT-A"
        elif self.opts.lplr and depscheme.lplr_ok(self.formula, i, lit):
            rule = "lplr"
        if rule is None:
            raise Rejected("reduce", f"cannot reduce {lit} from {list(lits)}: UR, DQRAT-A"
                           + (" and lplr" if self.opts.lplr else "") + " fail")
        self._remove_at(i)
        self.matrix.insert(i, rest)
        self.counts[rest] += 1
        if not rest:
            self.refuted = True
        return rule

    def apply_declare_universal(self, vs: Sequence[int]) -> str:
        prefix = self.prefix
        for v in vs:
            if v in prefix:
                raise Rejected("BPM", f"variable {v} is already declared")
            prefix = prefix.with_universal(v)
        self._set_prefix(prefix)
        return "BPM"

    def apply_modify_existential(self, head: int, deltas: Sequence[int]) -> str:
        prefix = self.prefix
        if prefix.is_universal(head):
            raise Rejected("BPM", f"variable {head} is universal")
        if head not in prefix:
            deps = set()
            for d in deltas:
                if d < 0:
                    raise Rejected("BPM", f"cannot remove {-d} from the fresh variable {head}")
                deps |= self._inherited(d)
            self._set_prefix(prefix.with_dependencies(head, deps))
            return "BPM"
        rule = "BPM"
        for d in deltas:
            if d > 0:
                if any(abs(l) == head for c in self.matrix for l in c):
                    raise Rejected("BPM", f"cannot add dependencies to {head} while it occurs in the matrix")
                self._set_prefix(self.prefix.with_dependencies(head, self.prefix.deps(head) | self._inherited(d)))
                continue
            u = -d
            if not self.prefix.is_universal(u) or u not in self.prefix.deps(head):
                raise Rejected(self.opts.scheme, f"{u} is not in the dependency set of {head}")
            f = self.formula
            why = depscheme.dependency_witness(f, u, head, self.opts.scheme)
            if why is not None:
                raise Rejected(self.opts.scheme, f"({u},{head}) is a dependency pair: {why}")
            self.removals.append(Removal(None, f, u, head))
            self._set_prefix(self.prefix.with_dependencies(head, self.prefix.deps(head) - {u}))
            rule = self.opts.scheme
        return rule

    def _inherited(self, v: int) -> frozenset:
        if v not in self.prefix:
            raise Rejected("BPM", f"variable {v} is not declared")
        return self.prefix.deps(v)

    def apply(self, line: ProofLine) -> str:
        n_removals = len(self.removals)
        if line.kind == ADD:
            rule = self.apply_add(line.lits)
        elif line.kind == DELETE:
            rule = self.apply_delete(line.lits)
        elif line.kind == REDUCE:
            rule = self.apply_reduce(line.lits)
        elif line.kind == DECLARE_UNIVERSAL:
            rule = self.apply_declare_universal(line.lits)
        elif line.kind == MODIFY_EXISTENTIAL:
            rule = self.apply_modify_existential(line.head, line.deltas)
        else:
            raise ValueError(f"unknown proof line kind {line.kind!r}")
        for r in self.removals[n_removals:]:
            r.line = line.line
        return rule


def new_session(f: Formula, opts: CheckOptions | None = None) -> CheckState:
    return CheckState(f, opts)


def check_script(f: Formula, script: Sequence[ProofLine], opts: CheckOptions | None = None,
                 state: CheckState | None = None) -> Verdict:
    """Replay ``script`` on ``f``.  Stops at the first invalid line."""
    state = state or CheckState(f, opts)
    for n, line in enumerate(script, 1):
        lineno = line.line if line.line is not None else n
        try:
            rule = state.apply(line)
        except Rejected as e:
            log.debug("line %s rejected: %s", lineno, e)
            return Verdict(Status.REJECTED, lineno, e.rule, e.reason)
        except InputError as e:
            return Verdict(Status.REJECTED, lineno, line.kind, str(e))
        log.debug("line %s ok via %s", lineno, rule)
    if state.refuted:
        return Verdict(Status.REFUTATION_VERIFIED)
    return Verdict(Status.VALID_NO_REFUTATION)
