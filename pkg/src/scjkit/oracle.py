"""Independent brute-force references used to validate the fast paths.

These are deliberately naive and share no recursion logic with the dynamic
programs, so agreement between the two routes is meaningful evidence.
"""

from __future__ import annotations

from itertools import permutations

from .adjacency_graph import CYCLE, M_SHAPED, ODD_PATH, W_SHAPED
from .errors import SearchLimitError
from .genome import Adjacency, Genome, head
from .pairwise import enumerate_scenarios

_BRUTE_PERMUTATION_LIMIT = 10
_BRUTE_OPS_LIMIT = 9


def is_alternating(sequence) -> bool:
    """True iff c1 < c2 > c3 < c4 ... holds along the whole sequence."""
    for i in range(len(sequence) - 1):
        if i % 2 == 0:
            if not sequence[i] < sequence[i + 1]:
                return False
        elif not sequence[i] > sequence[i + 1]:
            return False
    return True


def brute_alternating(n: int) -> int:
    """Count alternating permutations of {1..n} by exhaustive enumeration."""
    if n > _BRUTE_PERMUTATION_LIMIT:
        raise SearchLimitError(f"brute_alternating limited to n <= {_BRUTE_PERMUTATION_LIMIT}")
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(1 for p in permutations(range(1, n + 1)) if is_alternating(p))


def component_instance(kind: str, size: int) -> tuple[Genome, Genome]:
    """Synthetic genome pair whose adjacency graph is one component of the
    given kind with ``size`` first-genome adjacencies (plus trivial leftovers).

    Extremities are the heads of genes g1, g2, ...; all tails stay telomeric
    on both sides and only contribute trivial components.
    """
    if kind == W_SHAPED:
        n_ext = 2 * size + 2
        x = [head(f"g{i}") for i in range(1, n_ext + 1)]
        pi1 = [Adjacency(x[2 * j - 1], x[2 * j]) for j in range(1, size + 1)]
        pi2 = [Adjacency(x[2 * j - 2], x[2 * j - 1]) for j in range(1, size + 2)]
    elif kind == M_SHAPED:
        if size < 1:
            raise ValueError("M-shaped paths have at least one adjacency")
        n_ext = 2 * size
        x = [head(f"g{i}") for i in range(1, n_ext + 1)]
        pi1 = [Adjacency(x[2 * j - 2], x[2 * j - 1]) for j in range(1, size + 1)]
        pi2 = [Adjacency(x[2 * j - 1], x[2 * j]) for j in range(1, size)]
    elif kind == ODD_PATH:
        n_ext = 2 * size + 1
        x = [head(f"g{i}") for i in range(1, n_ext + 1)]
        pi1 = [Adjacency(x[2 * j - 2], x[2 * j - 1]) for j in range(1, size + 1)]
        pi2 = [Adjacency(x[2 * j - 1], x[2 * j]) for j in range(1, size + 1)]
    elif kind == CYCLE:
        if size < 1:
            raise ValueError("cycles have at least one adjacency")
        n_ext = 2 * size
        x = [head(f"g{i}") for i in range(1, n_ext + 1)]
        pi1 = [Adjacency(x[2 * j - 2], x[2 * j - 1]) for j in range(1, size + 1)]
        pi2 = [Adjacency(x[2 * j - 1], x[2 * j % n_ext]) for j in range(1, size + 1)]
    else:
        raise ValueError(f"unknown component kind {kind!r}")
    genes = {e.gene for e in x}
    return (
        Genome("g1", pi1, genes=genes),
        Genome("g2", pi2, genes=genes),
    )


def brute_component_count(kind: str, size: int) -> int:
    """Scenario count for a single synthetic component, by listing every
    legal op ordering."""
    g1, g2 = component_instance(kind, size)
    ops = len(g1.adjacencies ^ g2.adjacencies)
    if ops > _BRUTE_OPS_LIMIT:
        raise SearchLimitError(f"brute_component_count limited to {_BRUTE_OPS_LIMIT} ops")
    return len(enumerate_scenarios(g1, g2))
