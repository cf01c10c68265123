"""Brute-force semantics for tiny DQBFs and an exhaustive soundness sweep.

Three evaluators live here and are used to cross-check one another:

* :func:`eval_dqbf` searches Skolem tables universal assignment by
  universal assignment, committing table entries as it goes.
* :func:`eval_qbf` is a plain game-tree recursion, usable only when the
  dependency sets form a chain (i.e. the formula is a QBF).
* :class:`BatchEvaluator` precomputes, for one prefix, a bitmask per clause
  over every (Skolem combination, universal assignment) pair; a formula is
  then true iff the AND of its clause masks has a combination whose bits
  are all set.  This is what makes the exhaustive sweep affordable.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from . import depscheme
from .core import Formula, InputError, Prefix, is_tautology, restrict

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2 ** 24


class BudgetExceeded(InputError):
    pass


def skolem_space(prefix: Prefix) -> int:
    """Number of candidate Skolem-function tuples for ``prefix``."""
    total = 1
    for x in prefix.existentials:
        total *= 2 ** (2 ** len(prefix.deps(x)))
    return total


def _check_budget(prefix: Prefix, budget: int) -> None:
    size = skolem_space(prefix)
    if size > budget:
        raise BudgetExceeded(f"{size} Skolem table combinations exceed the budget of {budget}")


def eval_dqbf(f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """Truth value of ``f`` by search over Skolem tables."""
    _check_budget(f.prefix, budget)
    prefix = f.prefix
    us = sorted(prefix.universals)
    xs = list(prefix.existentials)
    dsorted = {x: sorted(prefix.deps(x)) for x in xs}
    clauses = [c for c in f.matrix if not is_tautology(c)]
    betas = [dict(zip(us, bits)) for bits in itertools.product((False, True), repeat=len(us))]
    table: Dict[Tuple[int, tuple], bool] = {}

    def satisfied(assign: Dict[int, bool]) -> bool:
        return all(any(assign[abs(l)] == (l > 0) for l in c) for c in clauses)

    def solve(k: int) -> bool:
        if k == len(betas):
            return True
        beta = betas[k]
        keys = [(x, tuple(beta[u] for u in dsorted[x])) for x in xs]
        free = [key for key in keys if key not in table]
        for vals in itertools.product((False, True), repeat=len(free)):
            table.update(zip(free, vals))
            assign = dict(beta)
            for key in keys:
                assign[key[0]] = table[key]
            if satisfied(assign) and solve(k + 1):
                return True
        for key in free:
            table.pop(key, None)
        return False

    return solve(0)


def linear_order(prefix: Prefix) -> List[int]:
    """A quantifier order realizing a chain-shaped prefix, outermost first."""
    if not prefix.is_qbf_shaped():
        raise InputError("dependency sets do not form a chain; not a QBF")
    order: List[int] = []
    placed: Set[int] = set()
    for x in sorted(prefix.existentials, key=lambda x: len(prefix.deps(x))):
        for u in sorted(prefix.deps(x) - placed):
            order.append(u)
            placed.add(u)
        order.append(x)
    order += [u for u in sorted(prefix.universals) if u not in placed]
    return order


def eval_qbf(f: Formula) -> bool:
    """Game-tree evaluation; only for chain-shaped prefixes."""
    order = linear_order(f.prefix)
    prefix = f.prefix

    def go(i: int, clauses: list) -> bool:
        if any(len(c) == 0 for c in clauses):
            return False
        if not clauses:
            return True
        v = order[i]
        branches = (go(i + 1, restrict(clauses, {v: val})) for val in (False, True))
        return all(branches) if prefix.is_universal(v) else any(branches)

    return go(0, [c for c in f.matrix if not is_tautology(c)])


# -- bit-parallel evaluation -------------------------------------------------

class BatchEvaluator:
    """Clause masks for one prefix over a fixed universe of clauses.

    Universals must be 1..nu and existentials nu+1..nu+ne.
    """

    def __init__(self, prefix: Prefix, budget: int = DEFAULT_BUDGET):
        _check_budget(prefix, budget)
        self.prefix = prefix
        us = sorted(prefix.universals)
        xs = sorted(prefix.existentials)
        self.nb = 2 ** len(us)
        radices = [2 ** (2 ** len(prefix.deps(x))) for x in xs]
        self.ncombo = 1
        for r in radices:
            self.ncombo *= r
        nbits = self.ncombo * self.nb
        self._lit: Dict[int, int] = {}
        for i, u in enumerate(us):
            pat = sum(1 << b for b in range(self.nb) if b >> i & 1)
            self._lit[u] = self._repeat(pat)
        stride = 1
        for x, radix in zip(xs, radices):
            dpos = [us.index(u) for u in sorted(prefix.deps(x))]
            bits = 0
            for pos in range(nbits):
                c, b = divmod(pos, self.nb)
                g = (c // stride) % radix
                row = sum(((b >> p) & 1) << j for j, p in enumerate(dpos))
                if g >> row & 1:
                    bits |= 1 << pos
            self._lit[x] = bits
            stride *= radix
        self.full = (1 << nbits) - 1
        for v in list(self._lit):
            self._lit[-v] = self.full ^ self._lit[v]
        self.select = self._repeat(1)
        self._cache: Dict[Tuple[int, ...], int] = {}

    def _repeat(self, pattern: int) -> int:
        out = 0
        for c in range(self.ncombo):
            out |= pattern << (c * self.nb)
        return out

    def clause_mask(self, clause: Tuple[int, ...]) -> int:
        m = self._cache.get(clause)
        if m is None:
            m = 0
            for l in clause:
                m |= self._lit[l]
            self._cache[clause] = m
        return m

    def evaluate(self, clauses: Sequence[Tuple[int, ...]]) -> bool:
        m = self.full
        for c in clauses:
            m &= self.clause_mask(c)
            if not m:
                return False
        shift = 1
        while shift < self.nb:
            m &= m >> shift
            shift *= 2
        return bool(m & self.select)


# -- enumeration -------------------------------------------------------------

@dataclass(frozen=True)
class SweepParams:
    max_universals: int
    max_existentials: int
    max_clauses: int
    max_width: int


def clause_universe(n: int, width: int) -> List[Tuple[int, ...]]:
    """Every non-tautological clause over variables 1..n with 1..width literals."""
    out = []
    for k in range(1, min(width, n) + 1):
        for vs in itertools.combinations(range(1, n + 1), k):
            for signs in itertools.product((1, -1), repeat=k):
                out.append(tuple(v * s for v, s in zip(vs, signs)))
    return out


def prefixes(nu: int, ne: int) -> Iterator[Prefix]:
    us = list(range(1, nu + 1))
    subsets = [s for k in range(nu + 1) for s in itertools.combinations(us, k)]
    for choice in itertools.product(subsets, repeat=ne):
        deps = {nu + 1 + i: d for i, d in enumerate(choice)}
        yield Prefix(us, deps)


def enumerate_formulas(params: SweepParams) -> Iterator[Formula]:
    """Every formula within the bounds, in a fixed order (clause sets, no repeats)."""
    for nu in range(params.max_universals + 1):
        for ne in range(params.max_existentials + 1):
            universe = clause_universe(nu + ne, params.max_width)
            for prefix in prefixes(nu, ne):
                for k in range(params.max_clauses + 1):
                    for cs in itertools.combinations(universe, k):
                        yield Formula.trusted(prefix, cs)


def formula_count(params: SweepParams) -> int:
    """Closed-form size of :func:`enumerate_formulas`."""
    total = 0
    for nu in range(params.max_universals + 1):
        for ne in range(params.max_existentials + 1):
            n = nu + ne
            m = sum(comb(n, j) * 2 ** j for j in range(1, min(params.max_width, n) + 1))
            sets = sum(comb(m, k) for k in range(params.max_clauses + 1))
            total += (2 ** nu) ** ne * sets
    return total


def polarity_orbits(universe: List[Tuple[int, ...]], n: int, max_clauses: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Clause-index sets up to flipping variable polarities, with orbit sizes.

    Flipping polarities preserves truth and every dependency pair, so one
    representative per orbit is enough.
    """
    index = {c: i for i, c in enumerate(universe)}
    perms = []
    for flips in itertools.product((1, -1), repeat=n):
        perms.append([index[tuple(sorted((l * flips[abs(l) - 1] for l in c), key=abs))] for c in universe])
    reps = []
    for k in range(max_clauses + 1):
        seen: Set[Tuple[int, ...]] = set()
        for cs in itertools.combinations(range(len(universe)), k):
            if cs in seen:
                continue
            orbit = {tuple(sorted(p[i] for i in cs)) for p in perms}
            seen.update(orbit)
            reps.append((cs, len(orbit)))
    return reps


@dataclass
class Violation:
    formula: Formula
    kind: str
    detail: str


@dataclass
class SweepReport:
    params: SweepParams
    instances: int = 0          # formulas actually evaluated
    represented: int = 0        # formulas covered, counting symmetric copies
    reduced: int = 0            # instances where the scheme shrank the prefix
    true_count: int = 0
    violations: List[Violation] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        p = self.params
        return [
            f"params universals={p.max_universals} existentials={p.max_existentials} "
            f"clauses={p.max_clauses} width={p.max_width}",
            f"instances {self.instances}",
            f"represented {self.represented}",
            f"prefix_reduced {self.reduced}",
            f"true {self.true_count}",
            f"violations {len(self.violations)}",
            f"seconds {self.seconds:.1f}",
        ]

    def summary(self) -> dict:
        return {
            "instances": self.instances, "represented": self.represented, "reduced": self.reduced,
            "true": self.true_count, "violations": len(self.violations),
            "examples": [{"kind": v.kind, "detail": v.detail} for v in self.violations[:5]],
            "seconds": round(self.seconds, 3),
        }


PairsFn = Callable[[Formula], Set[Tuple[int, int]]]


def scheme_soundness_sweep(params: SweepParams, pairs_fn: Optional[PairsFn] = None,
                           symmetry: bool = True, max_violations: int = 20,
                           progress: Optional[Callable[[str], None]] = None) -> SweepReport:
    """Check that shrinking the prefix to the pu pairs keeps the truth value.

    Also checks pu <= rrs <= trv pair containment on every instance.
    ``pairs_fn`` replaces the pu pair computation for fault injection.
    """
    start = time.perf_counter()
    report = SweepReport(params)
    for nu in range(params.max_universals + 1):
        for ne in range(params.max_existentials + 1):
            n = nu + ne
            universe = clause_universe(n, params.max_width)
            if symmetry:
                sets = polarity_orbits(universe, n, params.max_clauses)
            else:
                sets = [(cs, 1) for k in range(params.max_clauses + 1)
                        for cs in itertools.combinations(range(len(universe)), k)]
            evaluators: Dict[Prefix, BatchEvaluator] = {}

            def evaluator(p: Prefix) -> BatchEvaluator:
                if p not in evaluators:
                    evaluators[p] = BatchEvaluator(p)
                return evaluators[p]

            for prefix in prefixes(nu, ne):
                ev = evaluator(prefix)
                for cs, weight in sets:
                    clauses = tuple(universe[i] for i in cs)
                    f = Formula.trusted(prefix, clauses)
                    report.instances += 1
                    report.represented += weight
                    truth = ev.evaluate(clauses)
                    report.true_count += weight if truth else 0
                    if nu == 0 or ne == 0:
                        continue
                    trv = depscheme.all_pairs(f, "trv")
                    rrs = depscheme.all_pairs(f, "rrs")
                    pu = depscheme.all_pairs(f, "pu")
                    if not (pu <= rrs <= trv):
                        _record(report, f, "containment", f"pu={sorted(pu)} rrs={sorted(rrs)} trv={sorted(trv)}")
                    pairs = pairs_fn(f) if pairs_fn is not None else pu
                    g = depscheme.apply_pairs(f, pairs)
                    if g.prefix == prefix:
                        continue
                    report.reduced += weight
                    if evaluator(g.prefix).evaluate(clauses) != truth:
                        _record(report, f, "truth", f"original {truth}, after applying pairs {sorted(pairs)}: {not truth}")
                    if len(report.violations) >= max_violations:
                        report.seconds = time.perf_counter() - start
                        return report
                if progress:
                    progress(f"prefix {prefix!r}: {report.instances} instances")
    report.seconds = time.perf_counter() - start
    return report


def _record(report: SweepReport, f: Formula, kind: str, detail: str) -> None:
    log.warning("violation (%s) on %r: %s", kind, f, detail)
    report.violations.append(Violation(f, kind, detail))
