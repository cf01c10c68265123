"""Literals, clauses, assignments, prefixes and formulas.

Literals are nonzero ints (DIMACS style). A clause is a tuple of literals
in canonical order: sorted by variable, positive before negative, no
duplicates. Assignments are ``dict`` objects mapping a variable to a bool.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Sequence, Tuple

Literal = int
Clause = Tuple[int, ...]
Assignment = Dict[int, bool]


class InputError(ValueError):
    """Raised for malformed or ill-scoped input (bad literal, undeclared variable, ...)."""


def var(lit: Literal) -> int:
    return abs(lit)


def negate_literal(lit: Literal) -> Literal:
    if lit == 0:
        raise InputError("0 is not a literal")
    return -lit


def _lit_key(lit: int) -> Tuple[int, bool]:
    return (abs(lit), lit < 0)


def make_clause(lits: Iterable[Literal]) -> Clause:
    """Canonical clause: duplicates merged, sorted by variable then sign."""
    seen = set()
    for lit in lits:
        if lit == 0:
            raise InputError("0 is not a literal")
        seen.add(lit)
    return tuple(sorted(seen, key=_lit_key))


def is_tautology(clause: Iterable[Literal]) -> bool:
    lits = set(clause)
    return any(-lit in lits for lit in lits)


def clause_vars(clause: Iterable[Literal]) -> set:
    return {abs(lit) for lit in clause}


def negate_clause(clause: Iterable[Literal]) -> Assignment:
    """The assignment falsifying every literal of ``clause``."""
    alpha: Assignment = {}
    for lit in clause:
        value = lit < 0
        if alpha.get(abs(lit), value) != value:
            raise InputError(f"tautological clause {tuple(clause)} has no falsifying assignment")
        alpha[abs(lit)] = value
    return alpha


def assignment_literals(alpha: Mapping[int, bool]) -> list:
    """Write an assignment as the list of literals it makes true."""
    return [v if value else -v for v, value in alpha.items()]


def restrict(matrix: Iterable[Sequence[Literal]], alpha: Mapping[int, bool]) -> list:
    """Apply a partial assignment to a CNF.

    Satisfied clauses disappear and falsified literals are dropped; the
    relative order of the surviving clauses and literals is kept.
    """
    out = []
    for clause in matrix:
        kept = []
        satisfied = False
        for lit in clause:
            value = alpha.get(abs(lit))
            if value is None:
                kept.append(lit)
            elif value == (lit > 0):
                satisfied = True
                break
        if not satisfied:
            out.append(tuple(kept))
    return out


class Prefix:
    """A DQBF prefix in S-form.

    Every variable is either universal or existential; existential variables
    carry an explicit dependency set of universal variables.  Declaration
    order is kept only for serialization.  Instances are immutable; the
    ``with_*`` methods return modified copies.
    """

    __slots__ = ("_order", "_universals", "_deps")

    def __init__(self, universals: Iterable[int] = (), dependencies: Mapping[int, Iterable[int]] | None = None,
                 order: Sequence[int] | None = None):
        univ = list(dict.fromkeys(universals))
        deps = {x: frozenset(d) for x, d in (dependencies or {}).items()}
        uset = frozenset(univ)
        for x, d in deps.items():
            if x in uset:
                raise InputError(f"variable {x} declared both universal and existential")
            if x <= 0:
                raise InputError(f"bad variable {x}")
            missing = d - uset
            if missing:
                raise InputError(f"dependency set of {x} mentions non-universal variables {sorted(missing)}")
        for u in univ:
            if u <= 0:
                raise InputError(f"bad variable {u}")
        if order is None:
            order = univ + [x for x in deps]
        order = tuple(order)
        if set(order) != uset | deps.keys() or len(order) != len(uset) + len(deps):
            raise InputError("declaration order does not match declared variables")
        self._order = order
        self._universals = uset
        self._deps = deps

    # -- queries -------------------------------------------------------
    @property
    def order(self) -> Tuple[int, ...]:
        return self._order

    @property
    def universals(self) -> Tuple[int, ...]:
        return tuple(v for v in self._order if v in self._universals)

    @property
    def existentials(self) -> Tuple[int, ...]:
        return tuple(v for v in self._order if v in self._deps)

    def __contains__(self, v: int) -> bool:
        return v in self._universals or v in self._deps

    def __len__(self) -> int:
        return len(self._order)

    def __iter__(self) -> Iterator[int]:
        return iter(self._order)

    def is_universal(self, v: int) -> bool:
        return v in self._universals

    def is_existential(self, v: int) -> bool:
        return v in self._deps

    def deps(self, v: int) -> FrozenSet[int]:
        """D_v, with the convention D_u = {u} for universal u."""
        if v in self._deps:
            return self._deps[v]
        if v in self._universals:
            return frozenset((v,))
        raise InputError(f"variable {v} is not declared")

    def dependency_map(self) -> Dict[int, FrozenSet[int]]:
        return dict(self._deps)

    def max_var(self) -> int:
        return max(self._order, default=0)

    def is_qbf_shaped(self) -> bool:
        """True iff the dependency sets are totally ordered by inclusion."""
        sets = sorted(set(self._deps.values()), key=len)
        return all(a <= b for a, b in zip(sets, sets[1:]))

    # -- modification ---------------------------------------------------
    def with_universal(self, u: int) -> "Prefix":
        if u in self:
            raise InputError(f"variable {u} already declared")
        return Prefix(self._universals | {u}, self._deps, self._order + (u,))

    def with_dependencies(self, x: int, deps: Iterable[int]) -> "Prefix":
        """Declare ``x`` existential, or replace its dependency set."""
        if x in self._universals:
            raise InputError(f"variable {x} is universal")
        new = dict(self._deps)
        new[x] = frozenset(deps)
        order = self._order if x in self._deps else self._order + (x,)
        return Prefix(self._universals, new, order)

    # -- value semantics --------------------------------------------------
    def _key(self):
        return (self._universals, frozenset(self._deps.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Prefix) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        parts = []
        for v in self._order:
            if v in self._universals:
                parts.append(f"A{v}")
            else:
                parts.append(f"E{v}({','.join(map(str, sorted(self._deps[v])))})")
        return f"Prefix({' '.join(parts)})"


def clause_depset(prefix: Prefix, clause: Iterable[Literal]) -> FrozenSet[int]:
    """Union of D_v over the variables of ``clause`` (D_u = {u} for universals)."""
    out = set()
    for lit in clause:
        out |= prefix.deps(abs(lit))
    return frozenset(out)


class Formula:
    """A closed DQBF: prefix plus CNF matrix (clauses in canonical form)."""

    __slots__ = ("prefix", "matrix")

    def __init__(self, prefix: Prefix, matrix: Iterable[Iterable[Literal]] = ()):
        clauses = tuple(make_clause(c) for c in matrix)
        for c in clauses:
            for lit in c:
                if abs(lit) not in prefix:
                    raise InputError(f"variable {abs(lit)} occurs in the matrix but is not declared")
        self.prefix = prefix
        self.matrix = clauses

    @classmethod
    def trusted(cls, prefix: Prefix, matrix: Tuple[Clause, ...]) -> "Formula":
        """Build without validation; ``matrix`` must already be canonical and closed."""
        f = cls.__new__(cls)
        f.prefix = prefix
        f.matrix = matrix
        return f

    def with_prefix(self, prefix: Prefix) -> "Formula":
        return Formula.trusted(prefix, self.matrix)

    def variables(self) -> set:
        return {abs(lit) for c in self.matrix for lit in c}

    def __eq__(self, other) -> bool:
        """Structural equality: same prefix semantics and same clause multiset."""
        return (isinstance(other, Formula) and self.prefix == other.prefix
                and sorted(self.matrix) == sorted(other.matrix))

    def __hash__(self) -> int:
        return hash((self.prefix, tuple(sorted(self.matrix))))

    def __repr__(self) -> str:
        return f"Formula({self.prefix!r}, {list(self.matrix)!r})"
