"""Resolution-path reachability and the trv / rrs / pu dependency schemes.

Paths are computed as a least fixpoint over a pair of sets: the clauses
reached and the literals collected so far.  A clause E is entered through a
collected literal p when the complement of p occurs in E; entering adds the
S-literals of E except that complement.  The pure variant parameterized by
a universal literal u never enters a clause that contains the complement
of u.  Tautological clauses never take part in paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .core import Formula, InputError, Prefix, is_tautology

SCHEMES = ("trv", "rrs", "pu")


@dataclass(frozen=True)
class ReachSets:
    clauses: FrozenSet[int]
    literals: FrozenSet[int]


class PathIndex:
    """Occurrence lists of a matrix, shared across reachability queries."""

    __slots__ = ("matrix", "occurs", "taut")

    def __init__(self, matrix):
        self.matrix = matrix
        self.occurs: Dict[int, List[int]] = {}
        self.taut: Set[int] = set()
        for i, c in enumerate(matrix):
            if is_tautology(c):
                self.taut.add(i)
                continue
            for lit in c:
                self.occurs.setdefault(lit, []).append(i)

    def containing(self, lit: int) -> List[int]:
        return self.occurs.get(lit, [])


def _reach(index: PathIndex, seed: Iterable[int], s: Set[int] | FrozenSet[int],
           blocked: Optional[int] = None) -> ReachSets:
    """Fixpoint from ``seed``; clauses containing literal ``blocked`` are never entered."""
    matrix = index.matrix
    occurs = index.occurs
    reached = set()
    lits = set()
    work = []
    for i in seed:
        if i in index.taut:
            continue
        reached.add(i)
        for lit in matrix[i]:
            if abs(lit) in s and lit not in lits:
                lits.add(lit)
                work.append(lit)
    while work:
        p = work.pop()
        for j in occurs.get(-p, ()):
            clause = matrix[j]
            if blocked is not None and blocked in clause:
                continue
            reached.add(j)
            for lit in clause:
                if lit != -p and lit not in lits and abs(lit) in s:
                    lits.add(lit)
                    work.append(lit)
    return ReachSets(frozenset(reached), frozenset(lits))


def _index(f: Formula, index: Optional[PathIndex]) -> PathIndex:
    return index if index is not None and index.matrix is f.matrix else PathIndex(f.matrix)


def rrs_reach(f: Formula, seed: Iterable[int], s: Iterable[int],
              index: Optional[PathIndex] = None) -> ReachSets:
    return _reach(_index(f, index), seed, frozenset(s))


def pu_reach(f: Formula, u: int, seed: Iterable[int], s: Iterable[int],
             index: Optional[PathIndex] = None) -> ReachSets:
    """Like :func:`rrs_reach` but never entering a clause that contains ``-u``."""
    return _reach(_index(f, index), seed, frozenset(s), blocked=-u)


def dependents(prefix: Prefix, u: int) -> FrozenSet[int]:
    """S_u: existential variables whose dependency set contains ``u``."""
    return frozenset(x for x in prefix.existentials if u in prefix.deps(x))


def _check_universal(prefix: Prefix, u: int) -> None:
    if not prefix.is_universal(u):
        raise InputError(f"variable {u} is not universal")


def _check_existential(prefix: Prefix, x: int) -> None:
    if not prefix.is_existential(x):
        raise InputError(f"variable {x} is not existential")


def literal_reach(f: Formula, ulit: int, pure: bool, index: Optional[PathIndex] = None) -> FrozenSet[int]:
    """Existential literals reachable from universal literal ``ulit``."""
    _check_universal(f.prefix, abs(ulit))
    idx = _index(f, index)
    s = dependents(f.prefix, abs(ulit))
    if not s:
        return frozenset()
    return _reach(idx, idx.containing(ulit), s, blocked=-ulit if pure else None).literals


def rrs_connected(f: Formula, ulit: int, elit: int, index: Optional[PathIndex] = None) -> bool:
    _check_existential(f.prefix, abs(elit))
    return elit in literal_reach(f, ulit, False, index)


def pu_connected(f: Formula, ulit: int, elit: int, index: Optional[PathIndex] = None) -> bool:
    _check_existential(f.prefix, abs(elit))
    return elit in literal_reach(f, ulit, True, index)


def _polarity_witness(pos: FrozenSet[int], neg: FrozenSet[int], x: int) -> Optional[Tuple[int, int]]:
    """Return the (u-side, x-side) literal signs that make the pair dependent, if any."""
    if x in pos and -x in neg:
        return (1, 1)
    if x in neg and -x in pos:
        return (-1, 1)
    return None


def pair_in_scheme(f: Formula, u: int, x: int, scheme: str, index: Optional[PathIndex] = None) -> bool:
    """Whether ``(u, x)`` is a dependency pair of ``f`` under ``scheme``."""
    return dependency_witness(f, u, x, scheme, index) is not None


def dependency_witness(f: Formula, u: int, x: int, scheme: str,
                       index: Optional[PathIndex] = None) -> Optional[str]:
    """A human readable reason why ``(u, x)`` is a dependency pair, or None."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    _check_universal(f.prefix, u)
    _check_existential(f.prefix, x)
    if u not in f.prefix.deps(x):
        return None
    if scheme == "trv":
        return f"{u} in D_{x}"
    idx = _index(f, index)
    pure = scheme == "pu"
    pos = literal_reach(f, u, pure, idx)
    neg = literal_reach(f, -u, pure, idx)
    w = _polarity_witness(pos, neg, x)
    if w is None:
        return None
    if w == (1, 1):
        return f"{u}~>{x} and {-u}~>{-x}"
    return f"{-u}~>{x} and {u}~>{-x}"


def dependent_on(f: Formula, u: int, scheme: str, index: Optional[PathIndex] = None) -> Set[int]:
    """All existential x with (u, x) in the scheme, using one fixpoint per polarity of u."""
    _check_universal(f.prefix, u)
    s = dependents(f.prefix, u)
    if scheme == "trv" or not s:
        return set(s)
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    idx = _index(f, index)
    pure = scheme == "pu"
    pos = _reach(idx, idx.containing(u), s, -u if pure else None).literals
    neg = _reach(idx, idx.containing(-u), s, u if pure else None).literals
    return {x for x in s if (x in pos and -x in neg) or (x in neg and -x in pos)}


def all_pairs(f: Formula, scheme: str) -> Set[Tuple[int, int]]:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    idx = PathIndex(f.matrix)
    out = set()
    for u in f.prefix.universals:
        out.update((u, x) for x in dependent_on(f, u, scheme, idx))
    return out


def apply_pairs(f: Formula, pairs: Iterable[Tuple[int, int]]) -> Formula:
    """Shrink every dependency set to the given pairs (never enlarging)."""
    keep: Dict[int, set] = {}
    for u, x in pairs:
        keep.setdefault(x, set()).add(u)
    prefix = f.prefix
    new = {x: prefix.deps(x) & keep.get(x, set()) for x in prefix.existentials}
    return f.with_prefix(Prefix(prefix.universals, new, prefix.order))


def apply_scheme(f: Formula, scheme: str) -> Formula:
    return apply_pairs(f, all_pairs(f, scheme))


def _universal_in(f: Formula, ci: int, u: int) -> None:
    _check_universal(f.prefix, abs(u))
    if u not in f.matrix[ci]:
        raise InputError(f"literal {u} does not occur in clause {ci}")


def eur_ok(f: Formula, ci: int, u: int, index: Optional[PathIndex] = None) -> bool:
    """Extended universal reduction: no S_u-path from clause ``ci`` to a clause with ``-u``."""
    _universal_in(f, ci, u)
    idx = _index(f, index)
    reach = _reach(idx, [ci], dependents(f.prefix, abs(u)))
    return not any(-u in f.matrix[j] for j in reach.clauses)


def lplr_ok(f: Formula, ci: int, u: int, index: Optional[PathIndex] = None) -> bool:
    """Local pure literal reduction of ``u`` from clause ``ci``.

    Paths start at the clause and are pure for ``-u``: they may not pass
    through clauses containing ``u``.  The reduction is allowed when no
    reached clause contains ``-u``.
    """
    _universal_in(f, ci, u)
    idx = _index(f, index)
    reach = _reach(idx, [ci], dependents(f.prefix, abs(u)), blocked=u)
    return not any(-u in f.matrix[j] for j in reach.clauses)


PairsFn = Callable[[Formula], Set[Tuple[int, int]]]
