"""Crafted formula families: ts-LQParity, its bridged variant, and the
small two-universal running example, plus a short LDQ refutation of the
bridged family that is only legal when z can be reduced early.

Numbering for size N: x1..xN are 1..N, z is N+1, t2..tN are N+2..2N,
s2..sN are 2N+1..3N-1 and the bridge variable b is 3N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core import Formula, Prefix, make_clause
from .textio import AXIOM, RED, RES, ResNode, ResProof, parse_resproof

FAMILIES = ("ts_lqparity", "bridged_ts_lqparity", "running_example")


@dataclass(frozen=True)
class FamilyParams:
    family: str
    n: int = 2

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family != "running_example" and self.n < 2:
            raise ValueError("parity families need N >= 2")


@dataclass(frozen=True)
class ParityVars:
    n: int

    def x(self, i: int) -> int:
        return i

    @property
    def z(self) -> int:
        return self.n + 1

    def t(self, i: int) -> int:
        return self.n + i

    def s(self, i: int) -> int:
        return 2 * self.n + i - 1

    @property
    def b(self) -> int:
        return 3 * self.n

    def legend(self) -> List[str]:
        n = self.n
        return [f"x1..x{n} = 1..{n}", f"z = {self.z}", f"t2..t{n} = {self.t(2)}..{self.t(n)}",
                f"s2..s{n} = {self.s(2)}..{self.s(n)}", f"b = {self.b}"]


def xor_gadget(o1: int, o2: int, o: int, zlit: int) -> List[Tuple[int, ...]]:
    """Four clauses forcing o = o1 xor o2 whenever ``zlit`` is false."""
    if len({abs(o1), abs(o2), abs(o), abs(zlit)}) != 4:
        raise ValueError("xor_gadget needs four distinct variables")
    return [
        (zlit, -o1, -o2, -o),
        (zlit, o1, o2, -o),
        (zlit, -o1, o2, o),
        (zlit, o1, -o2, o),
    ]


def _chain(v: ParityVars, out, zlit: int) -> List[Tuple[int, ...]]:
    clauses = xor_gadget(v.x(1), v.x(2), out(2), zlit)
    for i in range(3, v.n + 1):
        clauses += xor_gadget(out(i - 1), v.x(i), out(i), zlit)
    return clauses


def _parity_clauses(v: ParityVars) -> List[Tuple[int, ...]]:
    z = v.z
    return _chain(v, v.t, z) + _chain(v, v.s, -z) + [(z, v.t(v.n)), (-z, -v.s(v.n))]


def _bridge_clauses(v: ParityVars) -> List[Tuple[int, ...]]:
    z, tn, sn, b = v.z, v.t(v.n), v.s(v.n), v.b
    return [(z, -tn, b), (z, tn, -b), (-z, -sn, b), (-z, sn, -b)]


def running_example() -> Formula:
    """forall u v, exists x(u) y(v) over six clauses; a small false DQBF."""
    u, v, x, y = 1, 2, 3, 4
    prefix = Prefix([u, v], {x: [u], y: [v]})
    return Formula(prefix, [
        (u, x, y), (-u, -v, x, y), (-u, v, x, -y),
        (u, -x, -y), (-u, -v, -x, -y), (-u, v, -x, y),
    ])


def gen_family(p: FamilyParams) -> Formula:
    if p.family == "running_example":
        return running_example()
    v = ParityVars(p.n)
    inner = [v.t(i) for i in range(2, p.n + 1)] + [v.s(i) for i in range(2, p.n + 1)]
    clauses = _parity_clauses(v)
    if p.family == "bridged_ts_lqparity":
        inner.append(v.b)
        clauses += _bridge_clauses(v)
    outer = [v.x(i) for i in range(1, p.n + 1)]
    order = outer + [v.z] + inner
    deps = {x: () for x in outer}
    deps.update({y: (v.z,) for y in inner})
    return Formula(Prefix([v.z], deps, order), clauses)


class _ProofBuilder:
    def __init__(self):
        self.nodes: List[ResNode] = []
        self.by_clause: Dict[Tuple[int, ...], int] = {}

    def _push(self, rule: str, ants, clause) -> Tuple[int, ...]:
        nid = len(self.nodes) + 1
        c = make_clause(clause)
        self.nodes.append(ResNode(nid, rule, tuple(ants), c))
        self.by_clause[c] = nid
        return c

    def axiom(self, clause) -> Tuple[int, ...]:
        return self._push(AXIOM, (), clause)

    def reduce(self, clause, lit: int) -> Tuple[int, ...]:
        c = make_clause(clause)
        return self._push(RED, (self.by_clause[c],), [l for l in c if l != lit])

    def resolve(self, a, b, pivot: int) -> Tuple[int, ...]:
        a, b = make_clause(a), make_clause(b)
        out = [l for l in a + b if abs(l) != pivot]
        return self._push(RES, (self.by_clause[a], self.by_clause[b]), out)


def gen_bridged_refutation(n: int) -> ResProof:
    """An LDQ refutation of the bridged family of size ``n`` that reduces z right away.

    It is accepted when (z, t_i) and (z, s_i) are not dependency pairs,
    which holds under the pure-path scheme but not the reflexive one.
    """
    if n < 2:
        raise ValueError("N must be at least 2")
    v = ParityVars(n)
    z = v.z
    pb = _ProofBuilder()
    for c in _parity_clauses(v):
        pb.axiom(c)
        pb.reduce(c, z if z in c else -z)
    x, t, s = v.x, v.t, v.s

    def implication(a, b, i):
        """Derive (-a_i | b_i) where a, b are the two chains (t or s)."""
        if i == 2:
            p = pb.resolve((-x(1), x(2), b(2)), (x(1), x(2), -a(2)), x(1))
            q = pb.resolve((x(1), -x(2), b(2)), (-x(1), -x(2), -a(2)), x(1))
            return pb.resolve(p, q, x(2))
        # with (-b_{i-1} | a_{i-1}) and (-a_{i-1} | b_{i-1}) available
        p = pb.resolve((-b(i - 1), a(i - 1)), (-a(i - 1), -x(i), -a(i)), a(i - 1))
        p = pb.resolve(p, (b(i - 1), -x(i), b(i)), b(i - 1))
        q = pb.resolve((-a(i - 1), b(i - 1)), (a(i - 1), x(i), -a(i)), a(i - 1))
        q = pb.resolve(q, (-b(i - 1), x(i), b(i)), b(i - 1))
        return pb.resolve(p, q, x(i))

    for i in range(2, n + 1):
        implication(t, s, i)
        implication(s, t, i)
    last = pb.resolve((-t(n), s(n)), (t(n),), t(n))
    pb.resolve(last, (-s(n),), s(n))
    return ResProof(pb.nodes)


RUNNING_EXAMPLE_PROOF = """\
c u=1 v=2 x=3 y=4, extension variable n=5
1 a 1 3 4 0
2 a -1 -2 3 4 0
3 a -1 2 3 -4 0
4 a 1 -3 -4 0
5 a -1 -2 -3 -4 0
6 a -1 2 -3 4 0
7 x 5 : -1 : 3 3 0
10 r 7 5 -1 -2 5 -4 0
11 r 7 6 -1 2 5 4 0
12 r 9 2 -1 -2 -5 4 0
13 r 9 3 -1 2 -5 -4 0
14 u 10 -2 5 -4 0
15 u 11 2 5 4 0
16 u 12 -2 -5 4 0
17 u 13 2 -5 -4 0
18 r 1 17 1 2 -5 3 0
19 r 4 16 1 -2 -5 -3 0
20 r 4 15 1 2 5 -3 0
21 r 1 14 1 -2 5 3 0
22 u 18 1 -5 3 0
23 u 19 1 -5 -3 0
24 u 20 1 5 -3 0
25 u 21 1 5 3 0
26 r 22 23 1 -5 0
27 r 24 25 1 5 0
28 u 26 -5 0
29 u 27 5 0
30 r 28 29 0
"""


def running_example_proof() -> ResProof:
    """IndExt-QU-Res refutation of :func:`running_example` (30 clauses)."""
    return parse_resproof(RUNNING_EXAMPLE_PROOF)
