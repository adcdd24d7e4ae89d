"""Genome model for SCJ rearrangement.

A genome over a fixed gene set is stored as the set of its adjacencies
(vertices where two gene extremities meet) plus the set of its telomeres
(free extremities).  Every extremity of every gene occurs exactly once,
either inside one adjacency or as one telomere; extremities not mentioned
at construction time become telomeres automatically.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .errors import (
    GenomeFormatError,
    IllegalOperationError,
    InvalidGenomeError,
)

HEAD = "h"
TAIL = "t"

CUT = "cut"
JOIN = "join"


class Extremity(NamedTuple):
    """One end (head or tail) of a gene; prints as ``<gene>_h`` / ``<gene>_t``."""

    gene: str
    end: str

    def __str__(self):
        return f"{self.gene}_{self.end}"

    @classmethod
    def parse(cls, text: str) -> "Extremity":
        gene, sep, end = text.rpartition("_")
        if not sep or not gene or end not in (HEAD, TAIL):
            raise GenomeFormatError(
                f"malformed extremity {text!r}, expected <gene>_h or <gene>_t"
            )
        return cls(gene, end)


def head(gene: str) -> Extremity:
    return Extremity(gene, HEAD)


def tail(gene: str) -> Extremity:
    return Extremity(gene, TAIL)


class Adjacency(tuple):
    """Unordered pair of two distinct extremities, stored in sorted order."""

    __slots__ = ()

    def __new__(cls, a: Extremity, b: Extremity):
        if a == b:
            raise InvalidGenomeError(f"adjacency with identical extremities {a}")
        if b < a:
            a, b = b, a
        return tuple.__new__(cls, (a, b))

    def __getnewargs__(self):
        return (self[0], self[1])

    @property
    def first(self) -> Extremity:
        return self[0]

    @property
    def second(self) -> Extremity:
        return self[1]

    def other(self, ext: Extremity) -> Extremity:
        if ext == self[0]:
            return self[1]
        if ext == self[1]:
            return self[0]
        raise ValueError(f"{ext} is not an extremity of {self}")

    def __str__(self):
        return f"({self[0]},{self[1]})"

    def __repr__(self):
        return f"Adjacency({self[0]}, {self[1]})"


class ScjOp(NamedTuple):
    """A single SCJ operation: cut one adjacency, or join two telomeres."""

    kind: str
    pair: Adjacency

    def inverse(self) -> "ScjOp":
        return ScjOp(JOIN if self.kind == CUT else CUT, self.pair)

    def __str__(self):
        return f"{self.kind} {self.pair.first} {self.pair.second}"


def cut(a: Extremity, b: Extremity) -> ScjOp:
    return ScjOp(CUT, Adjacency(a, b))


def join(a: Extremity, b: Extremity) -> ScjOp:
    return ScjOp(JOIN, Adjacency(a, b))


class Genome:
    """Immutable genome: a name, a gene set, adjacencies and telomeres."""

    __slots__ = ("name", "genes", "adjacencies", "telomeres")

    def __init__(self, name, adjacencies=(), telomeres=(), genes=()):
        adj_set = frozenset(adjacencies)
        gene_set = set(genes)
        for adj in adj_set:
            gene_set.add(adj.first.gene)
            gene_set.add(adj.second.gene)
        covered = set()
        for adj in adj_set:
            for ext in adj:
                if ext in covered:
                    raise InvalidGenomeError(f"duplicate extremity {ext}")
                covered.add(ext)
        telomere_set = set()
        for ext in telomeres:
            gene_set.add(ext.gene)
            if ext in covered:
                raise InvalidGenomeError(
                    f"extremity {ext} is both in an adjacency and a telomere"
                )
            if ext in telomere_set:
                raise InvalidGenomeError(f"duplicate telomere {ext}")
            telomere_set.add(ext)
        # untouched extremities are telomeres
        for gene in gene_set:
            for ext in (Extremity(gene, HEAD), Extremity(gene, TAIL)):
                if ext not in covered:
                    telomere_set.add(ext)
        self.name = name
        self.genes = frozenset(gene_set)
        self.adjacencies = adj_set
        self.telomeres = frozenset(telomere_set)

    def __eq__(self, other):
        if not isinstance(other, Genome):
            return NotImplemented
        return (
            self.name == other.name
            and self.genes == other.genes
            and self.adjacencies == other.adjacencies
        )

    def __hash__(self):
        return hash((self.name, self.genes, self.adjacencies))

    def __repr__(self):
        return (
            f"Genome({self.name!r}, {len(self.genes)} genes, "
            f"{len(self.adjacencies)} adjacencies)"
        )


def is_valid_assignment(adjacencies: Iterable[Adjacency]) -> bool:
    """True iff no two adjacencies of the set share an extremity."""
    seen = set()
    for adj in adjacencies:
        for ext in adj:
            if ext in seen:
                return False
            seen.add(ext)
    return True


def apply_scj(genome: Genome, op: ScjOp) -> Genome:
    """Apply one cut or join to a genome, returning the new genome."""
    pair = op.pair
    if op.kind == CUT:
        if pair not in genome.adjacencies:
            raise IllegalOperationError(
                f"illegal SCJ operation: cannot cut {pair}, not an adjacency"
            )
        return Genome(genome.name, genome.adjacencies - {pair}, genes=genome.genes)
    if op.kind == JOIN:
        for ext in pair:
            if ext not in genome.telomeres:
                raise IllegalOperationError(
                    f"illegal SCJ operation: cannot join at {ext}, not a telomere"
                )
        return Genome(genome.name, genome.adjacencies | {pair}, genes=genome.genes)
    raise IllegalOperationError(f"unknown SCJ operation kind {op.kind!r}")


def parse_genome(text: str) -> Genome:
    """Parse the line-oriented .scjg genome format.

    Recognized lines: ``genome <name>`` (first), ``adjacency <ext> <ext>``,
    ``telomere <ext>`` and ``gene <label>`` (declares a gene whose extremities
    default to telomeres).  ``#`` starts a comment.
    """
    name = None
    adjacencies = []
    telomeres = []
    genes = []
    covered = {}

    def fail(message, lineno, raw, token):
        column = raw.find(token) + 1 if token and token in raw else 1
        raise GenomeFormatError(message, line=lineno, column=column)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword = fields[0]
        if name is None:
            if keyword != "genome" or len(fields) != 2:
                fail("expected 'genome <name>' header", lineno, raw, keyword)
            name = fields[1]
            continue
        if keyword == "adjacency":
            if len(fields) != 3:
                fail("expected 'adjacency <ext> <ext>'", lineno, raw, keyword)
            exts = []
            for token in fields[1:]:
                try:
                    exts.append(Extremity.parse(token))
                except GenomeFormatError as exc:
                    fail(str(exc), lineno, raw, token)
            if exts[0] == exts[1]:
                fail(f"adjacency with identical extremities {exts[0]}", lineno, raw, fields[1])
            for token, ext in zip(fields[1:], exts):
                if ext in covered:
                    fail(f"duplicate extremity {ext}", lineno, raw, token)
                covered[ext] = lineno
            adjacencies.append(Adjacency(exts[0], exts[1]))
        elif keyword == "telomere":
            if len(fields) != 2:
                fail("expected 'telomere <ext>'", lineno, raw, keyword)
            try:
                ext = Extremity.parse(fields[1])
            except GenomeFormatError as exc:
                fail(str(exc), lineno, raw, fields[1])
            if ext in covered:
                fail(f"duplicate extremity {ext}", lineno, raw, fields[1])
            covered[ext] = lineno
            telomeres.append(ext)
        elif keyword == "gene":
            if len(fields) != 2:
                fail("expected 'gene <label>'", lineno, raw, keyword)
            genes.append(fields[1])
        else:
            fail(f"unrecognized keyword {keyword!r}", lineno, raw, keyword)
    if name is None:
        raise GenomeFormatError("missing 'genome <name>' header", line=1, column=1)
    return Genome(name, adjacencies, telomeres, genes)


def print_genome(genome: Genome) -> str:
    """Canonical text form: adjacencies sorted lexicographically, then telomeres."""
    lines = [f"genome {genome.name}"]
    for adj in sorted(genome.adjacencies):
        lines.append(f"adjacency {adj.first} {adj.second}")
    for ext in sorted(genome.telomeres):
        lines.append(f"telomere {ext}")
    return "\n".join(lines) + "\n"


def load_genome(path) -> Genome:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_genome(handle.read())
