"""Bipartite adjacency graph of two genomes and its component decomposition.

The graph has one vertex per adjacency/telomere of either genome and one
edge per shared extremity, so every vertex has degree 1 or 2 and the graph
falls apart into cycles, odd paths, W-shaped paths (both endpoints are
telomeres of the first genome) and M-shaped paths (both endpoints are
telomeres of the second genome).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GeneSetMismatchError
from .genome import Adjacency, Extremity, Genome

CYCLE = "cycle"
ODD_PATH = "odd_path"
W_SHAPED = "w_shaped"
M_SHAPED = "m_shaped"


@dataclass(frozen=True)
class Component:
    """One cycle or path, with adjacencies listed in traversal order.

    For paths, ``g1_adjacencies``/``g2_adjacencies`` run from the canonical
    start end (the lexicographically smaller endpoint for W/M paths, the
    second-genome telomere for odd paths).  For cycles, ``g2_adjacencies[j]``
    lies between ``g1_adjacencies[j]`` and ``g1_adjacencies[j+1]`` (cyclically).
    """

    kind: str
    g1_adjacencies: tuple[Adjacency, ...]
    g2_adjacencies: tuple[Adjacency, ...]
    g1_telomeres: tuple[Extremity, ...]
    g2_telomeres: tuple[Extremity, ...]

    @property
    def is_trivial(self) -> bool:
        if self.kind == CYCLE:
            return len(self.g1_adjacencies) == 1
        if self.kind == ODD_PATH:
            return not self.g1_adjacencies
        return False

    @property
    def op_count(self) -> int:
        """SCJ operations needed to sort this component (0 when trivial)."""
        if self.is_trivial:
            return 0
        return len(self.g1_adjacencies) + len(self.g2_adjacencies)


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Component, ...]

    def nontrivial(self) -> list[Component]:
        return [c for c in self.components if not c.is_trivial]

    @property
    def op_counts(self) -> tuple[int, ...]:
        return tuple(c.op_count for c in self.components)

    @property
    def total_ops(self) -> int:
        return sum(self.op_counts)


def _extremity_map(adjacencies) -> dict:
    by_ext = {}
    for adj in adjacencies:
        by_ext[adj.first] = adj
        by_ext[adj.second] = adj
    return by_ext


def _walk_path(start, tel_side, by1, by2, visited):
    g1_seq, g2_seq = [], []
    tels = {1: [], 2: []}
    tels[tel_side].append(start)
    cur, side = start, tel_side
    while True:
        visited.add(cur)
        nxt_side = 2 if side == 1 else 1
        vertex = (by2 if nxt_side == 2 else by1).get(cur)
        if vertex is None:
            tels[nxt_side].append(cur)
            break
        (g2_seq if nxt_side == 2 else g1_seq).append(vertex)
        cur = vertex.other(cur)
        side = nxt_side
    if tels[1] and tels[2]:
        kind = ODD_PATH
        if tel_side == 1:
            # canonical odd-path orientation starts at the G2-telomere end
            g1_seq.reverse()
            g2_seq.reverse()
    else:
        kind = W_SHAPED if tels[1] else M_SHAPED
    return Component(kind, tuple(g1_seq), tuple(g2_seq), tuple(tels[1]), tuple(tels[2]))


def _walk_cycle(start, by1, by2, visited):
    first = by1[start]
    g1_seq, g2_seq = [first], []
    cur = start
    while True:
        visited.add(cur)
        vertex2 = by2[cur]
        g2_seq.append(vertex2)
        nxt = vertex2.other(cur)
        visited.add(nxt)
        vertex1 = by1[nxt]
        if vertex1 == first:
            break
        g1_seq.append(vertex1)
        cur = vertex1.other(nxt)
    return Component(CYCLE, tuple(g1_seq), tuple(g2_seq), (), ())


def decompose_adjacency_sets(pi1, pi2) -> list[Component]:
    """Components of the adjacency graph spanned by two adjacency sets.

    Telomere-telomere pairs of extremities touched by neither set are not
    reported here; :func:`build_adjacency_graph` adds them from the gene set.
    """
    by1 = _extremity_map(pi1)
    by2 = _extremity_map(pi2)
    all_exts = sorted(set(by1) | set(by2))
    visited = set()
    components = []
    for ext in all_exts:
        if ext in visited or (ext in by1 and ext in by2):
            continue
        components.append(_walk_path(ext, 1 if ext not in by1 else 2, by1, by2, visited))
    for ext in all_exts:
        if ext not in visited:
            components.append(_walk_cycle(ext, by1, by2, visited))
    return components


def build_adjacency_graph(g1: Genome, g2: Genome) -> Decomposition:
    """Full decomposition of two genomes over the same gene set."""
    if g1.genes != g2.genes:
        raise GeneSetMismatchError(
            f"genomes {g1.name!r} and {g2.name!r} have different gene sets"
        )
    components = decompose_adjacency_sets(g1.adjacencies, g2.adjacencies)
    for ext in sorted(g1.telomeres & g2.telomeres):
        components.append(Component(ODD_PATH, (), (), (ext,), (ext,)))
    return Decomposition(tuple(components))
