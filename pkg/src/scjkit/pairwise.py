"""Distance, exact scenario counting and exact uniform sampling for genome pairs.

All counts are plain Python integers, i.e. exact arbitrary-precision
naturals; no floating point enters the counting or sampling path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .adjacency_graph import (
    CYCLE,
    M_SHAPED,
    ODD_PATH,
    W_SHAPED,
    Component,
    decompose_adjacency_sets,
)
from .errors import GeneSetMismatchError, SearchLimitError
from .genome import CUT, JOIN, Genome, ScjOp, apply_scj


@dataclass(frozen=True)
class ComponentTables:
    """Numbers of sorting scenarios for single components, indexed by the
    count of first-genome adjacencies in the component."""

    w: tuple[int, ...]
    m: tuple[int, ...]
    o: tuple[int, ...]
    c: tuple[int, ...]


def component_tables(max_i: int) -> ComponentTables:
    """Fill the W/M/O/C tables up to ``max_i`` by the forward recursions.

    A scenario for a non-trivial component starts by cutting one of its
    first-genome adjacencies, which splits the component in two; the split
    position is summed over, weighted by the number of interleavings of the
    two sub-scenarios.
    """
    if max_i < 0:
        raise ValueError("max_i must be non-negative")
    w = [0] * (max_i + 1)
    m = [0] * (max_i + 1)
    o = [0] * (max_i + 1)
    c = [0] * (max_i + 1)
    w[0] = 1  # lone second-genome adjacency: one join
    o[0] = 1  # one-edge path: nothing to do
    for i in range(1, max_i + 1):
        w[i] = sum(comb(2 * i, 2 * j - 1) * w[j - 1] * w[i - j] for j in range(1, i + 1))
        o[i] = sum(comb(2 * i - 1, 2 * j - 2) * o[j - 1] * w[i - j] for j in range(1, i + 1))
        m[i] = sum(comb(2 * i - 2, 2 * j - 2) * o[j - 1] * o[i - j] for j in range(1, i + 1))
        c[i] = i * w[i - 1]
    return ComponentTables(tuple(w), tuple(m), tuple(o), tuple(c))


def zigzag_numbers(n_max: int) -> list[int]:
    """Alternating-permutation counts ``A_0 .. A_n`` via the boustrophedon
    (Entringer) triangle: E(0,0)=1, E(n,k)=E(n,k-1)+E(n-1,n-k), A_n=E(n,n)."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    result = [1]
    row = [1]
    for n in range(1, n_max + 1):
        prev = row
        row = [0]
        for k in range(1, n + 1):
            row.append(row[k - 1] + prev[n - k])
        result.append(row[n])
    return result


def _check_gene_sets(g1: Genome, g2: Genome):
    if g1.genes != g2.genes:
        raise GeneSetMismatchError(
            f"genomes {g1.name!r} and {g2.name!r} have different gene sets"
        )


def scj_distance(g1: Genome, g2: Genome) -> int:
    """SCJ distance: size of the symmetric difference of the adjacency sets."""
    _check_gene_sets(g1, g2)
    return len(g1.adjacencies ^ g2.adjacencies)


def _component_count(component: Component, tables: ComponentTables) -> int:
    size = len(component.g1_adjacencies)
    if component.kind == W_SHAPED:
        return tables.w[size]
    if component.kind == M_SHAPED:
        return tables.m[size]
    if component.kind == ODD_PATH:
        return tables.o[size]
    return tables.c[size]


def count_scenarios_for_sets(pi1, pi2) -> int:
    """Most-parsimonious scenario count between two adjacency sets."""
    components = [c for c in decompose_adjacency_sets(pi1, pi2) if not c.is_trivial]
    if not components:
        return 1
    tables = component_tables(max(len(c.g1_adjacencies) for c in components))
    total = 1
    placed = 0
    for component in components:
        ops = component.op_count
        total *= comb(placed + ops, ops) * _component_count(component, tables)
        placed += ops
    return total


def count_scenarios(g1: Genome, g2: Genome) -> int:
    """Number of most parsimonious SCJ scenarios from ``g1`` to ``g2``:
    a multinomial over per-component operation counts times the product of
    the per-component scenario counts."""
    _check_gene_sets(g1, g2)
    return count_scenarios_for_sets(g1.adjacencies, g2.adjacencies)


@dataclass(frozen=True)
class Scenario:
    """An ordered sequence of SCJ operations."""

    ops: tuple[ScjOp, ...]

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def apply_to(self, genome: Genome) -> Genome:
        for op in self.ops:
            genome = apply_scj(genome, op)
        return genome


def enumerate_scenarios(g1: Genome, g2: Genome, cap: int = 10**6) -> list[Scenario]:
    """Exhaustive list of all most parsimonious scenarios.

    Brute-force oracle: depth-first search over every legal ordering of the
    required cut/join multiset.  Raises :class:`SearchLimitError` once more
    than ``cap`` scenarios are found.
    """
    _check_gene_sets(g1, g2)
    cuts = sorted(g1.adjacencies - g2.adjacencies)
    joins = sorted(g2.adjacencies - g1.adjacencies)
    depth = len(cuts) + len(joins)
    covered = set()
    for adj in g1.adjacencies:
        covered.update(adj)
    cut_done = [False] * len(cuts)
    join_done = [False] * len(joins)
    sequence = []
    out = []

    def extend():
        if len(sequence) == depth:
            if len(out) >= cap:
                raise SearchLimitError(f"more than {cap} scenarios")
            out.append(Scenario(tuple(sequence)))
            return
        for idx, adj in enumerate(cuts):
            if cut_done[idx]:
                continue
            cut_done[idx] = True
            covered.difference_update(adj)
            sequence.append(ScjOp(CUT, adj))
            extend()
            sequence.pop()
            covered.update(adj)
            cut_done[idx] = False
        for idx, adj in enumerate(joins):
            if join_done[idx] or adj.first in covered or adj.second in covered:
                continue
            join_done[idx] = True
            covered.update(adj)
            sequence.append(ScjOp(JOIN, adj))
            extend()
            sequence.pop()
            covered.difference_update(adj)
            join_done[idx] = False

    extend()
    return out


def _interleave(parts, rng):
    """Merge op sequences, drawing the source of each slot with probability
    proportional to its remaining length (uniform over all interleavings)."""
    remaining = [len(p) for p in parts]
    position = [0] * len(parts)
    total = sum(remaining)
    out = []
    while total:
        r = rng.randrange(total)
        for idx, rem in enumerate(remaining):
            if r < rem:
                break
            r -= rem
        out.append(parts[idx][position[idx]])
        position[idx] += 1
        remaining[idx] -= 1
        total -= 1
    return out


def _sample_w(g1a, g2a, tables, rng):
    i = len(g1a)
    if i == 0:
        return [ScjOp(JOIN, g2a[0])]
    r = rng.randrange(tables.w[i])
    for j in range(1, i + 1):
        term = comb(2 * i, 2 * j - 1) * tables.w[j - 1] * tables.w[i - j]
        if r < term:
            break
        r -= term
    left = _sample_w(g1a[: j - 1], g2a[:j], tables, rng)
    right = _sample_w(g1a[j:], g2a[j:], tables, rng)
    return [ScjOp(CUT, g1a[j - 1])] + _interleave([left, right], rng)


def _sample_o(g1a, g2a, tables, rng):
    v = len(g1a)
    if v == 0:
        return []
    r = rng.randrange(tables.o[v])
    for j in range(1, v + 1):
        term = comb(2 * v - 1, 2 * j - 2) * tables.o[j - 1] * tables.w[v - j]
        if r < term:
            break
        r -= term
    left = _sample_o(g1a[: j - 1], g2a[: j - 1], tables, rng)
    right = _sample_w(g1a[j:], g2a[j - 1 :], tables, rng)
    return [ScjOp(CUT, g1a[j - 1])] + _interleave([left, right], rng)


def _sample_m(g1a, g2a, tables, rng):
    i = len(g1a)
    r = rng.randrange(tables.m[i])
    for j in range(1, i + 1):
        term = comb(2 * i - 2, 2 * j - 2) * tables.o[j - 1] * tables.o[i - j]
        if r < term:
            break
        r -= term
    left = _sample_o(g1a[: j - 1], g2a[: j - 1], tables, rng)
    right = _sample_o(g1a[j:][::-1], g2a[j - 1 :][::-1], tables, rng)
    return [ScjOp(CUT, g1a[j - 1])] + _interleave([left, right], rng)


def _sample_c(g1a, g2a, tables, rng):
    size = len(g1a)
    idx = rng.randrange(size)  # every cycle opening is equally likely
    rest = _sample_w(g1a[idx + 1 :] + g1a[:idx], g2a[idx:] + g2a[:idx], tables, rng)
    return [ScjOp(CUT, g1a[idx])] + rest


def _sample_component(component: Component, tables, rng):
    g1a = list(component.g1_adjacencies)
    g2a = list(component.g2_adjacencies)
    if component.kind == W_SHAPED:
        return _sample_w(g1a, g2a, tables, rng)
    if component.kind == M_SHAPED:
        return _sample_m(g1a, g2a, tables, rng)
    if component.kind == ODD_PATH:
        return _sample_o(g1a, g2a, tables, rng)
    return _sample_c(g1a, g2a, tables, rng)


def sample_scenario_with_rng(g1: Genome, g2: Genome, rng: random.Random) -> Scenario:
    """One scenario drawn from the exact uniform distribution.

    Backward phase of the dynamic program: in every recursion the split
    index is chosen with probability proportional to its exact term, then
    the per-component scenarios are merged by a uniformly random
    interleaving (the multinomial coefficient of the counting formula).
    """
    _check_gene_sets(g1, g2)
    components = [
        c
        for c in decompose_adjacency_sets(g1.adjacencies, g2.adjacencies)
        if not c.is_trivial
    ]
    if not components:
        return Scenario(())
    tables = component_tables(max(len(c.g1_adjacencies) for c in components))
    parts = [_sample_component(c, tables, rng) for c in components]
    return Scenario(tuple(_interleave(parts, rng)))


def sample_scenario(g1: Genome, g2: Genome, seed: int) -> Scenario:
    """Uniformly random most parsimonious scenario, reproducible per seed."""
    return sample_scenario_with_rng(g1, g2, random.Random(seed))
