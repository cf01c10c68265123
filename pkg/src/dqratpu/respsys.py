"""Checkers for long-distance Q-resolution with a dependency scheme and for
QU-resolution with independent extension, plus a translation of the latter
into DQRAT scripts.

Both checkers work on stated clauses: every node says which clause it
derives and the checker only confirms it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from . import depscheme
from .core import Formula, InputError, Prefix, is_tautology, make_clause
from .dqratcheck import Status, Verdict
from .textio import (ADD, AXIOM, DECLARE_UNIVERSAL, INDEXT, MODIFY_EXISTENTIAL, PREFIX_ADD, RED,
                     REDUCE, RES, ProofLine, ResNode, ResProof)


class NodeError(Exception):
    def __init__(self, node: ResNode, rule: str, reason: str):
        super().__init__(f"node {node.id}: {reason}")
        self.node = node
        self.rule = rule
        self.reason = reason

    def verdict(self) -> Verdict:
        line = self.node.line if self.node.line is not None else self.node.id
        return Verdict(Status.REJECTED, line, self.rule, f"node {self.node.id}: {self.reason}")


@dataclass
class LdqConfig:
    scheme: str = "pu"
    pairs: Optional[Set[Tuple[int, int]]] = None  # snapshot; computed from the input when None

    def snapshot(self, f: Formula) -> Set[Tuple[int, int]]:
        if self.pairs is None:
            self.pairs = depscheme.all_pairs(f, self.scheme)
        return self.pairs


def _antecedent(clauses: Dict[int, Tuple[int, ...]], node: ResNode, k: int) -> Tuple[int, ...]:
    try:
        return clauses[k]
    except KeyError:
        raise NodeError(node, node.rule, f"antecedent {k} is not a clause")


def _axiom(matrix: Set[Tuple[int, ...]], node: ResNode) -> Tuple[int, ...]:
    c = make_clause(node.clause)
    if c not in matrix:
        raise NodeError(node, "Ax", f"{list(node.clause)} is not a matrix clause")
    return c


def _stated(node: ResNode, computed: Tuple[int, ...]) -> Tuple[int, ...]:
    if make_clause(node.clause) != computed:
        raise NodeError(node, node.rule, f"stated clause {list(node.clause)} differs from derived {list(computed)}")
    return computed


def _clashes(a: Tuple[int, ...], b: Tuple[int, ...]) -> List[int]:
    bs = set(b)
    return sorted({abs(l) for l in a if -l in bs})


# -- LDQ(D)-Res --------------------------------------------------------------

def check_ldq(f: Formula, proof: ResProof, cfg: LdqConfig | None = None) -> Verdict:
    cfg = cfg or LdqConfig()
    pairs = cfg.snapshot(f)
    prefix = f.prefix
    matrix = set(f.matrix)
    clauses: Dict[int, Tuple[int, ...]] = {}
    refuted = False
    try:
        for node in proof:
            if node.rule == AXIOM:
                c = _axiom(matrix, node)
            elif node.rule == RES:
                a, b = (_antecedent(clauses, node, k) for k in node.antecedents)
                clash = _clashes(a, b)
                ex = [v for v in clash if prefix.is_existential(v)]
                if len(ex) != 1:
                    raise NodeError(node, "Res", f"expected one existential pivot, found {ex}")
                x = ex[0]
                for v in clash:
                    if v != x and (v, x) in pairs:
                        raise NodeError(node, "Res", f"universal {v} clashes and ({v},{x}) is a dependency pair")
                c = _stated(node, make_clause(l for l in a + b if abs(l) != x))
                if any(prefix.is_existential(abs(l)) and -l in c for l in c):
                    raise NodeError(node, "Res", "resolvent is an existential tautology")
            elif node.rule == RED:
                (a,) = (_antecedent(clauses, node, k) for k in node.antecedents)
                c = make_clause(node.clause)
                removed = set(a) - set(c)
                if not set(c) <= set(a) or not removed:
                    raise NodeError(node, "Red", "stated clause is not the antecedent minus a universal literal")
                rv = {abs(l) for l in removed}
                if len(rv) != 1 or not prefix.is_universal(next(iter(rv))):
                    raise NodeError(node, "Red", f"removed literals {sorted(removed)} are not one universal variable")
                u = rv.pop()  # the complementary literal may stay in c
                for l in c:
                    if prefix.is_existential(abs(l)) and (u, abs(l)) in pairs:
                        raise NodeError(node, "Red", f"({u},{abs(l)}) is a dependency pair")
            else:
                raise NodeError(node, node.rule, f"rule {node.rule!r} is not part of LDQ-resolution")
            clauses[node.id] = c
            if not c:
                refuted = True
    except NodeError as e:
        return e.verdict()
    return Verdict(Status.REFUTATION_VERIFIED if refuted else Status.VALID_NO_REFUTATION)


# -- IndExt-QU-Res -----------------------------------------------------------

class _DresState:
    def __init__(self, f: Formula):
        self.prefix: Prefix = f.prefix
        self.matrix = set(f.matrix)
        self.used = set(f.variables()) | set(f.prefix)
        self.clauses: Dict[int, Tuple[int, ...]] = {}
        self.refuted = False

    def store(self, nid: int, c: Tuple[int, ...]) -> None:
        self.clauses[nid] = c
        if not c:
            self.refuted = True

    def step(self, node: ResNode) -> None:
        prefix = self.prefix
        if node.rule == AXIOM:
            self.store(node.id, _axiom(self.matrix, node))
        elif node.rule == RES:
            a, b = (_antecedent(self.clauses, node, k) for k in node.antecedents)
            clash = _clashes(a, b)
            if len(clash) != 1 or not prefix.is_existential(clash[0]):
                raise NodeError(node, "Res", f"clashing variables {clash}; need exactly one existential pivot")
            x = clash[0]
            c = _stated(node, make_clause(l for l in a + b if abs(l) != x))
            if is_tautology(c):
                raise NodeError(node, "Res", "tautological resolvent")
            self.store(node.id, c)
        elif node.rule == RED:
            (a,) = (_antecedent(self.clauses, node, k) for k in node.antecedents)
            c = make_clause(node.clause)
            removed = [l for l in a if l not in c]
            if not set(c) <= set(a) or len(removed) != 1:
                raise NodeError(node, "Red", "stated clause is not the antecedent minus one literal")
            u = removed[0]
            if not prefix.is_universal(abs(u)):
                raise NodeError(node, "Red", f"{u} is not universal")
            if -u in c:
                raise NodeError(node, "Red", f"{-u} remains in the clause")
            for l in c:
                if prefix.is_existential(abs(l)) and abs(u) in prefix.deps(abs(l)):
                    raise NodeError(node, "Red", f"{abs(l)} depends on {abs(u)}")
            self.store(node.id, c)
        elif node.rule == INDEXT:
            v = node.var
            if v in self.used:
                raise NodeError(node, "IndExt", f"extension variable {v} is not fresh")
            for l in node.cond:
                if not prefix.is_universal(abs(l)):
                    raise NodeError(node, "IndExt", f"condition literal {l} is not universal")
            for y in node.args:
                if abs(y) not in prefix:
                    raise NodeError(node, "IndExt", f"argument {y} is not declared")
            deps = (prefix.deps(abs(node.args[0])) | prefix.deps(abs(node.args[1]))) - {abs(l) for l in node.cond}
            self.prefix = prefix.with_dependencies(v, deps)
            self.used.add(v)
            for nid, lits in zip(node.ids, node.extension_clauses()):
                c = make_clause(lits)
                if is_tautology(c):
                    raise NodeError(node, "IndExt", f"extension clause {list(lits)} is tautological")
                self.store(nid, c)
        elif node.rule == PREFIX_ADD:
            v = node.var
            if v in self.used:
                raise NodeError(node, "PrefixAdd", f"variable {v} is not fresh")
            if node.universal:
                self.prefix = prefix.with_universal(v)
            else:
                for d in node.deps:
                    if not prefix.is_universal(d):
                        raise NodeError(node, "PrefixAdd", f"dependency {d} is not a universal")
                self.prefix = prefix.with_dependencies(v, node.deps)
            self.used.add(v)
        else:
            raise NodeError(node, node.rule, f"unknown rule {node.rule!r}")


def check_dres(f: Formula, proof: ResProof) -> Verdict:
    st = _DresState(f)
    try:
        for node in proof:
            st.step(node)
    except NodeError as e:
        return e.verdict()
    except InputError as e:
        return Verdict(Status.REJECTED, None, "input", str(e))
    return Verdict(Status.REFUTATION_VERIFIED if st.refuted else Status.VALID_NO_REFUTATION)


# -- translation -------------------------------------------------------------

def translate_dres_to_dqrat(f: Formula, proof: ResProof) -> List[ProofLine]:
    """Turn an accepted IndExt-QU-Res proof into a DQRAT script.

    Resolvents are added by ATA.  A reduction consumes its antecedent, so a
    later use of that antecedent re-adds it first (again by ATA: the reduced
    clause is still present and subsumes it).
    """
    verdict = check_dres(f, proof)
    if verdict.status is Status.REJECTED:
        raise InputError(f"input proof is not valid: {verdict.diagnostic()}")
    st = _DresState(f)
    present = Counter(f.matrix)
    out: List[ProofLine] = []

    def add(lits) -> None:
        out.append(ProofLine(ADD, tuple(lits)))
        present[make_clause(lits)] += 1

    def ensure(c: Tuple[int, ...]) -> None:
        if present[c] == 0:
            add(c)

    for node in proof:
        before = st.prefix
        st.step(node)
        if node.rule == AXIOM:
            continue
        if node.rule == RES:
            add(st.clauses[node.id])
        elif node.rule == RED:
            parent = st.clauses[node.antecedents[0]]
            ensure(parent)
            u = next(l for l in parent if l not in st.clauses[node.id])
            out.append(ProofLine(REDUCE, (u,) + st.clauses[node.id]))
            present[parent] -= 1
            present[st.clauses[node.id]] += 1
        elif node.rule == INDEXT:
            v = node.var
            full = before.deps(abs(node.args[0])) | before.deps(abs(node.args[1]))
            out.append(ProofLine(MODIFY_EXISTENTIAL, (v, *sorted(full))))
            seen = set()
            for lits in node.extension_clauses():
                c = make_clause(lits)
                if c in seen:
                    continue
                seen.add(c)
                add(dict.fromkeys(lits))
            for u in sorted({abs(l) for l in node.cond} & full):
                out.append(ProofLine(MODIFY_EXISTENTIAL, (v, -u)))
        elif node.rule == PREFIX_ADD:
            if node.universal:
                out.append(ProofLine(DECLARE_UNIVERSAL, (node.var,)))
            else:
                out.append(ProofLine(MODIFY_EXISTENTIAL, (node.var, *node.deps)))
    return out
