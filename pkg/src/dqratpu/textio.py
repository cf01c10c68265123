"""Readers and writers for .qdimacs/.dqdimacs, .dqrat and .resproof text.

All formats are whitespace separated and 0-terminated: a record ends at its
``0`` token, not at the end of a line, and lines starting with ``c`` are
comments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import IO, Iterator, List, Optional, Sequence, Tuple, Union

from .core import Formula, InputError, Prefix, is_tautology, make_clause

log = logging.getLogger(__name__)

Text = Union[str, bytes, IO]


class ParseError(InputError):
    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _text(src: Text) -> str:
    if hasattr(src, "read"):
        src = src.read()
    if isinstance(src, bytes):
        src = src.decode("ascii")
    return src


def _tokens(src: Text) -> Iterator[Tuple[str, int]]:
    for lineno, line in enumerate(_text(src).splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        for tok in stripped.split():
            yield tok, lineno


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line) from None


class _Records:
    """Split a token stream into 0-terminated records with an optional letter tag."""

    def __init__(self, tokens, letters: str):
        self.tokens = list(tokens)
        self.letters = letters
        self.pos = 0

    def __iter__(self):
        toks = self.tokens
        n = len(toks)
        while self.pos < n:
            tok, line = toks[self.pos]
            tag = None
            if not _looks_int(tok):
                if tok not in self.letters:
                    raise ParseError(f"unknown record type {tok!r}", line)
                tag = tok
                self.pos += 1
            values = []
            while True:
                if self.pos >= n:
                    raise ParseError("record is missing its 0 terminator", line)
                t, l = toks[self.pos]
                self.pos += 1
                v = _int(t, l)
                if v == 0:
                    break
                values.append(v)
            yield tag, values, line


def _looks_int(tok: str) -> bool:
    return tok.lstrip("-+").isdigit()


# ---------------------------------------------------------------------------
# (D)QDIMACS

def parse_dqdimacs(src: Text, strict: bool = False, allow_taut: bool = False) -> Formula:
    """Parse QDIMACS or DQDIMACS.

    ``e`` blocks depend on every universal declared before them, ``d`` lines
    give explicit dependency sets.  Matrix variables declared nowhere become
    existentials depending on all universals, unless ``strict``.
    Tautological clauses are an error unless ``allow_taut``.
    """
    toks = list(_tokens(src))
    if len(toks) < 4 or toks[0][0] != "p" or toks[1][0] not in ("cnf", "dnf"):
        raise ParseError("missing or malformed 'p cnf <vars> <clauses>' header", toks[0][1] if toks else None)
    if toks[1][0] != "cnf":
        raise ParseError("only CNF input is supported", toks[1][1])
    nvars = _int(toks[2][0], toks[2][1])
    nclauses = _int(toks[3][0], toks[3][1])
    if nvars < 0 or nclauses < 0:
        raise ParseError("negative counts in header", toks[0][1])

    universals: List[int] = []
    deps = {}
    order: List[int] = []
    clauses = []
    in_prefix = True
    for tag, values, line in _Records(toks[4:], "aed"):
        for v in values:
            if abs(v) > nvars:
                raise ParseError(f"variable {abs(v)} exceeds header bound {nvars}", line)
        if tag is not None:
            if not in_prefix:
                raise ParseError(f"quantifier line '{tag}' after the first clause", line)
            if tag == "d":
                if not values or values[0] <= 0:
                    raise ParseError("'d' line needs a positive variable", line)
                x, ds = values[0], values[1:]
                if x in universals:
                    raise ParseError(f"'d' line for universal variable {x}", line)
                if x in deps:
                    raise ParseError(f"variable {x} declared twice", line)
                for u in ds:
                    if u not in universals:
                        raise ParseError(f"dependency {u} of {x} is not a declared universal", line)
                deps[x] = frozenset(ds)
                order.append(x)
                continue
            for v in values:
                if v <= 0:
                    raise ParseError(f"bad variable {v} in quantifier line", line)
                if v in deps or v in universals:
                    raise ParseError(f"variable {v} declared twice", line)
                order.append(v)
                if tag == "a":
                    universals.append(v)
                else:
                    deps[v] = frozenset(universals)
            continue
        in_prefix = False
        if is_tautology(values):
            if not allow_taut:
                raise ParseError(f"tautological clause {values}", line)
            log.warning("line %d: tautological clause kept (excluded from path computations)", line)
        clauses.append(make_clause(values))

    declared = set(order)
    free = sorted({abs(l) for c in clauses for l in c} - declared)
    if free:
        if strict:
            raise ParseError(f"undeclared variables in matrix: {free}")
        for x in free:
            deps[x] = frozenset(universals)
            order.append(x)
    if len(clauses) != nclauses:
        log.info("header announces %d clauses, found %d", nclauses, len(clauses))
    return Formula(Prefix(universals, deps, order), clauses)


def _qbf_blocks(prefix: Prefix) -> Optional[List[Tuple[str, List[int]]]]:
    """Quantifier blocks reproducing the prefix in declaration order, if it is a QBF prefix."""
    blocks: List[Tuple[str, List[int]]] = []
    seen = set()
    for v in prefix.order:
        q = "a" if prefix.is_universal(v) else "e"
        if q == "a":
            seen.add(v)
        elif prefix.deps(v) != seen:
            return None
        if blocks and blocks[-1][0] == q:
            blocks[-1][1].append(v)
        else:
            blocks.append((q, [v]))
    return blocks


def serialize_dqdimacs(f: Formula, comments: Sequence[str] = ()) -> str:
    """Write QDIMACS blocks when the prefix is linear in declaration order, DQDIMACS ``d`` lines otherwise."""
    prefix = f.prefix
    nvars = max([prefix.max_var()] + [abs(l) for c in f.matrix for l in c])
    out = [f"c {c}" for c in comments]
    out.append(f"p cnf {nvars} {len(f.matrix)}")
    blocks = _qbf_blocks(prefix)
    if blocks is not None:
        for q, vs in blocks:
            out.append(f"{q} {' '.join(map(str, vs))} 0")
    else:
        if prefix.universals:
            out.append(f"a {' '.join(map(str, prefix.universals))} 0")
        for x in prefix.existentials:
            out.append(" ".join(["d", str(x), *map(str, sorted(prefix.deps(x))), "0"]))
    for c in f.matrix:
        out.append(" ".join([*map(str, c), "0"]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# .dqrat proofs

ADD, DELETE, REDUCE, DECLARE_UNIVERSAL, MODIFY_EXISTENTIAL = "add", "delete", "reduce", "universal", "existential"

_DQRAT_TAGS = {None: ADD, "d": DELETE, "u": REDUCE, "a": DECLARE_UNIVERSAL, "e": MODIFY_EXISTENTIAL}
_DQRAT_LETTERS = {v: k for k, v in _DQRAT_TAGS.items()}


@dataclass(frozen=True)
class ProofLine:
    """One record of a .dqrat proof; ``lits`` keeps source order.

    For ``existential`` lines ``lits[0]`` is the head variable and the rest
    are signed dependency edits.
    """

    kind: str
    lits: Tuple[int, ...]
    line: Optional[int] = None

    @property
    def head(self) -> int:
        return self.lits[0]

    @property
    def deltas(self) -> Tuple[int, ...]:
        return self.lits[1:]

    def __str__(self) -> str:
        tag = _DQRAT_LETTERS[self.kind]
        body = " ".join([*map(str, self.lits), "0"])
        return f"{tag} {body}" if tag else body


def parse_dqrat(src: Text) -> List[ProofLine]:
    script = []
    for tag, values, line in _Records(_tokens(src), "duae"):
        kind = _DQRAT_TAGS[tag]
        if kind == MODIFY_EXISTENTIAL and (not values or values[0] <= 0):
            raise ParseError("'e' line needs a positive head variable", line)
        if kind == DECLARE_UNIVERSAL and any(v <= 0 for v in values):
            raise ParseError("'a' line takes positive variables", line)
        if kind == REDUCE and not values:
            raise ParseError("'u' line needs at least one literal", line)
        script.append(ProofLine(kind, tuple(values), line))
    return script


def serialize_dqrat(script: Sequence[ProofLine]) -> str:
    return "".join(f"{line}\n" for line in script)


# ---------------------------------------------------------------------------
# .resproof

AXIOM, RES, RED, INDEXT, PREFIX_ADD = "a", "r", "u", "x", "p"


@dataclass(frozen=True)
class ResNode:
    """A node of a resolution-style proof.

    ``clause`` is the stated clause (source order).  IndExt nodes carry the
    fresh variable ``var``, the conditioning literals ``cond`` exactly as
    they appear in the extension clauses, and the two arguments ``args``;
    they stand for three clauses with ids ``id``, ``id+1``, ``id+2``.
    PrefixAdd nodes declare ``var`` existential with dependency set
    ``deps``, or universal when ``universal`` is set.
    """

    id: int
    rule: str
    antecedents: Tuple[int, ...] = ()
    clause: Tuple[int, ...] = ()
    var: int = 0
    cond: Tuple[int, ...] = ()
    args: Tuple[int, ...] = ()
    deps: Tuple[int, ...] = ()
    universal: bool = False
    line: Optional[int] = None

    @property
    def ids(self) -> Tuple[int, ...]:
        return (self.id, self.id + 1, self.id + 2) if self.rule == INDEXT else (self.id,)

    def extension_clauses(self) -> Tuple[Tuple[int, ...], ...]:
        y1, y2 = self.args
        v = self.var
        return ((v, *self.cond, y1), (v, *self.cond, y2), (-v, *self.cond, -y1, -y2))

    def __str__(self) -> str:
        head = f"{self.id} {self.rule}"
        if self.rule == INDEXT:
            return f"{head} {self.var} : {' '.join(map(str, self.cond))} : {' '.join(map(str, self.args))} 0".replace("  ", " ")
        if self.rule == PREFIX_ADD:
            v = -self.var if self.universal else self.var
            return " ".join([head, str(v), *map(str, self.deps), "0"])
        return " ".join([head, *map(str, self.antecedents), *map(str, self.clause), "0"])


@dataclass
class ResProof:
    nodes: List[ResNode] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def node_count(self) -> int:
        """Number of derived clauses and declarations (an IndExt node counts as three)."""
        return sum(len(n.ids) for n in self.nodes)


_ANTECEDENTS = {AXIOM: 0, RES: 2, RED: 1}


def parse_resproof(src: Text) -> ResProof:
    """Parse the line-oriented resolution proof format (see :class:`ResNode`).

    ``<id> p <var> <deps> 0`` declares an existential; a negative ``<var>``
    declares the universal ``-var`` instead.
    """
    nodes: List[ResNode] = []
    used = set()
    last = 0
    toks = list(_tokens(src))
    pos = 0
    while pos < len(toks):
        tok, line = toks[pos]
        nid = _int(tok, line)
        if pos + 1 >= len(toks):
            raise ParseError("truncated node", line)
        rule = toks[pos + 1][0]
        pos += 2
        if nid <= last:
            raise ParseError(f"node id {nid} is not larger than the previous id {last}", line)
        body = []
        while True:
            if pos >= len(toks):
                raise ParseError("node is missing its 0 terminator", line)
            t, l = toks[pos]
            pos += 1
            if t == "0":
                break
            body.append(t)
        if rule in _ANTECEDENTS:
            nums = [_int(t, line) for t in body]
            k = _ANTECEDENTS[rule]
            if len(nums) < k:
                raise ParseError(f"rule {rule!r} needs {k} antecedents", line)
            ants = tuple(nums[:k])
            for a in ants:
                if a not in used:
                    raise ParseError(f"antecedent {a} does not refer to an earlier node", line)
            node = ResNode(nid, rule, ants, tuple(nums[k:]), line=line)
        elif rule == INDEXT:
            if body.count(":") != 2:
                raise ParseError("IndExt node needs '<var> : <cond> : <args>'", line)
            i, j = body.index(":"), len(body) - 1 - body[::-1].index(":")
            head = [_int(t, line) for t in body[:i]]
            cond = tuple(_int(t, line) for t in body[i + 1:j])
            args = tuple(_int(t, line) for t in body[j + 1:])
            if len(head) != 1 or head[0] <= 0:
                raise ParseError("IndExt node needs one positive extension variable", line)
            if len(args) != 2:
                raise ParseError("IndExt node needs exactly two arguments", line)
            node = ResNode(nid, rule, var=head[0], cond=cond, args=args, line=line)
        elif rule == PREFIX_ADD:
            nums = [_int(t, line) for t in body]
            if not nums:
                raise ParseError("PrefixAdd node needs a variable", line)
            v = nums[0]
            if v < 0 and len(nums) > 1:
                raise ParseError("a universal declaration takes no dependencies", line)
            node = ResNode(nid, rule, var=abs(v), deps=tuple(nums[1:]), universal=v < 0, line=line)
        else:
            raise ParseError(f"unknown rule tag {rule!r}", line)
        for k in node.ids:
            if k in used:
                raise ParseError(f"duplicate node id {k}", line)
            used.add(k)
        last = node.ids[-1]
        nodes.append(node)
    return ResProof(nodes)


def serialize_resproof(proof: ResProof) -> str:
    return "".join(f"{n}\n" for n in proof.nodes)
