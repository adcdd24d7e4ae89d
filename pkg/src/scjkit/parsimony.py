"""Small parsimony for SCJ on rooted binary trees.

Per adjacency the problem is the textbook two-state small parsimony problem,
solved bottom-up by Fitch's set rule and, independently, by the Sankoff
dynamic program.  Whole-genome assignments resolve every root ambiguity to
absence by default, which always yields valid genomes at the internal nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .errors import GeneSetMismatchError, GenomeFormatError, ScjError, SearchLimitError
from .genome import Adjacency, Genome, is_valid_assignment
from .pairwise import count_scenarios_for_sets

ABSENT_SET = 1  # Fitch set {0}
PRESENT_SET = 2  # Fitch set {1}
AMBIGUOUS = 3  # Fitch set {0,1}


class PhyloTree:
    """Rooted binary tree with uniquely named leaves.

    Nodes are integer ids; ``children[i]`` is a pair for internal nodes and
    ``None`` for leaves.  All traversals are iterative, so arbitrarily deep
    (caterpillar) trees are fine.
    """

    __slots__ = ("children", "names", "parent", "root", "postorder", "leaf_ids")

    def __init__(self, children, names, root):
        self.children = tuple(children)
        self.names = tuple(names)
        self.root = root
        n = len(children)
        if not 0 <= root < n:
            raise ScjError("tree root out of range")
        parent = [-1] * n
        for u, kids in enumerate(children):
            if kids is None:
                continue
            if len(kids) != 2:
                raise ScjError(f"internal node {u} has {len(kids)} children, tree is not binary")
            for v in kids:
                if parent[v] != -1:
                    raise ScjError(f"node {v} has two parents")
                parent[v] = u
        self.parent = tuple(parent)
        order = []
        stack = [root]
        seen = 0
        while stack:
            u = stack.pop()
            order.append(u)
            seen += 1
            if children[u] is not None:
                stack.extend(children[u])
        if seen != n:
            raise ScjError("tree has nodes unreachable from the root")
        order.reverse()
        self.postorder = tuple(order)
        self.leaf_ids = tuple(u for u in range(n) if children[u] is None)
        leaf_names = [names[u] for u in self.leaf_ids]
        if None in leaf_names:
            raise ScjError("every leaf needs a name")
        if len(set(leaf_names)) != len(leaf_names):
            raise ScjError("leaf names are not unique")

    def __len__(self):
        return len(self.children)

    def is_leaf(self, node: int) -> bool:
        return self.children[node] is None

    @property
    def leaf_names(self):
        return tuple(self.names[u] for u in self.leaf_ids)

    def internal_nodes(self):
        return [u for u in range(len(self.children)) if self.children[u] is not None]

    def edges(self):
        """(parent, child) pairs, children of each node left before right."""
        out = []
        for u in self.postorder:
            kids = self.children[u]
            if kids is not None:
                out.append((u, kids[0]))
                out.append((u, kids[1]))
        return out

    def node_label(self, node: int) -> str:
        name = self.names[node]
        return name if name is not None else f"node{node}"

    @classmethod
    def from_newick(cls, text: str) -> "PhyloTree":
        builder = TreeBuilder()
        s = text.strip()
        if s.endswith(";"):
            s = s[:-1]
        if not s:
            raise GenomeFormatError("empty newick string")
        stack = []
        last = None
        pos = 0
        n = len(s)
        specials = "(),:;"
        while pos < n:
            ch = s[pos]
            if ch.isspace():
                pos += 1
            elif ch == "(":
                stack.append([])
                last = None
                pos += 1
            elif ch == ",":
                if not stack or last is None:
                    raise GenomeFormatError("misplaced ',' in newick string")
                stack[-1].append(last)
                last = None
                pos += 1
            elif ch == ")":
                if not stack or last is None:
                    raise GenomeFormatError("misplaced ')' in newick string")
                stack[-1].append(last)
                kids = stack.pop()
                if len(kids) != 2:
                    raise ScjError(
                        f"tree is not binary: found a node with {len(kids)} children"
                    )
                last = builder.node(kids[0], kids[1])
                pos += 1
                # skip an internal label if present
                start = pos
                while pos < n and s[pos] not in specials and not s[pos].isspace():
                    pos += 1
                del start
            elif ch == ":":
                pos += 1
                while pos < n and s[pos] not in specials and not s[pos].isspace():
                    pos += 1
            else:
                start = pos
                while pos < n and s[pos] not in specials and not s[pos].isspace():
                    pos += 1
                if last is not None:
                    raise GenomeFormatError(f"unexpected name {s[start:pos]!r} in newick string")
                last = builder.leaf(s[start:pos])
        if stack or last is None:
            raise GenomeFormatError("unbalanced parentheses in newick string")
        return builder.build(last)

    def to_newick(self) -> str:
        parts = [None] * len(self.children)
        for u in self.postorder:
            kids = self.children[u]
            if kids is None:
                parts[u] = self.names[u]
            else:
                parts[u] = f"({parts[kids[0]]},{parts[kids[1]]})"
        return parts[self.root] + ";"


class TreeBuilder:
    """Incremental construction of a PhyloTree, bottom-up."""

    def __init__(self):
        self._children = []
        self._names = []

    def leaf(self, name: str) -> int:
        self._children.append(None)
        self._names.append(name)
        return len(self._children) - 1

    def node(self, left: int, right: int) -> int:
        self._children.append((left, right))
        self._names.append(None)
        return len(self._children) - 1

    def comb(self, roots) -> int:
        """Join subtrees left-to-right into a caterpillar; returns its root."""
        roots = list(roots)
        if not roots:
            raise ValueError("empty comb")
        node = roots[-1]
        for sub in reversed(roots[:-1]):
            node = self.node(sub, node)
        return node

    def build(self, root=None) -> PhyloTree:
        if root is None:
            root = len(self._children) - 1
        return PhyloTree(self._children, self._names, root)


def fitch_bottom_up(tree: PhyloTree, presence: Mapping[str, int]) -> list[int]:
    """Fitch sets per node as bitmasks (1={0}, 2={1}, 3={0,1}):
    intersection of the children's sets when non-empty, else their union."""
    b = [0] * len(tree)
    for u in tree.postorder:
        kids = tree.children[u]
        if kids is None:
            state = presence[tree.names[u]]
            if state not in (0, 1):
                raise ScjError(f"leaf presence must be 0 or 1, got {state!r}")
            b[u] = 1 << state
        else:
            inter = b[kids[0]] & b[kids[1]]
            b[u] = inter if inter else (b[kids[0]] | b[kids[1]])
    return b


def fitch_top_down(tree: PhyloTree, b: list[int], root_choice: int) -> list[int]:
    """Propagate a root state down: a node keeps its parent's state whenever
    its own Fitch set allows it, otherwise takes its forced state."""
    if not (1 << root_choice) & b[tree.root]:
        raise ScjError(f"root choice {root_choice} outside the root's Fitch set")
    f = [0] * len(tree)
    f[tree.root] = root_choice
    for u in reversed(tree.postorder):
        kids = tree.children[u]
        if kids is None:
            continue
        for v in kids:
            f[v] = f[u] if (1 << f[u]) & b[v] else (0 if b[v] == ABSENT_SET else 1)
    return f


def fitch_changes(tree: PhyloTree, f: list[int]) -> int:
    return sum(1 for u, v in tree.edges() if f[u] != f[v])


def sankoff(tree: PhyloTree, presence: Mapping[str, int]):
    """Sankoff dynamic program; returns (s0, s1) lists over nodes.

    s0/s1 are the minimum numbers of state changes below a node given that
    the node is labelled absent/present; infeasible leaf states carry the
    math.inf sentinel.
    """
    n = len(tree)
    s0 = [0] * n
    s1 = [0] * n
    for u in tree.postorder:
        kids = tree.children[u]
        if kids is None:
            state = presence[tree.names[u]]
            if state not in (0, 1):
                raise ScjError(f"leaf presence must be 0 or 1, got {state!r}")
            s0[u] = 0 if state == 0 else math.inf
            s1[u] = math.inf if state == 0 else 0
        else:
            l, r = kids
            s1[u] = min(s1[l], s0[l] + 1) + min(s1[r], s0[r] + 1)
            s0[u] = min(s0[l], s1[l] + 1) + min(s0[r], s1[r] + 1)
    return s0, s1


def sankoff_minimum(tree: PhyloTree, presence: Mapping[str, int]) -> int:
    s0, s1 = sankoff(tree, presence)
    return min(s0[tree.root], s1[tree.root])


def count_sankoff_labelings(tree: PhyloTree, presence: Mapping[str, int]):
    """(min_score, number of optimal full labelings) for one adjacency."""
    n = len(tree)
    cost = [[0, 0] for _ in range(n)]
    ways = [[0, 0] for _ in range(n)]
    for u in tree.postorder:
        kids = tree.children[u]
        if kids is None:
            state = presence[tree.names[u]]
            for s in (0, 1):
                cost[u][s] = 0 if s == state else math.inf
                ways[u][s] = 1 if s == state else 0
        else:
            for s in (0, 1):
                total_cost = 0
                total_ways = 1
                for v in kids:
                    options = [cost[v][t] + (1 if t != s else 0) for t in (0, 1)]
                    best = min(options)
                    total_cost += best
                    total_ways *= sum(
                        ways[v][t] for t in (0, 1) if options[t] == best
                    )
                cost[u][s] = total_cost
                ways[u][s] = total_ways
    root = tree.root
    best = min(cost[root])
    return best, sum(ways[root][s] for s in (0, 1) if cost[root][s] == best)


@dataclass(frozen=True)
class TreeAssignment:
    """Genomes assigned to every node of a tree (leaves fixed to the input)."""

    tree: PhyloTree
    genes: frozenset
    node_adjacencies: tuple
    score: int

    def genome_at(self, node: int, name=None) -> Genome:
        label = name if name is not None else self.tree.node_label(node)
        return Genome(label, self.node_adjacencies[node], genes=self.genes)


def _leaf_presence(tree, leaf_sets, adjacency):
    return {name: int(adjacency in leaf_sets[name]) for name in tree.leaf_names}


def _check_leaf_genomes(tree: PhyloTree, leaf_genomes: Mapping[str, Genome]):
    tree_names = set(tree.leaf_names)
    if tree_names != set(leaf_genomes):
        missing = sorted(tree_names - set(leaf_genomes))
        extra = sorted(set(leaf_genomes) - tree_names)
        raise ScjError(
            f"leaf genomes do not match tree leaves (missing {missing}, extra {extra})"
        )
    genes = None
    for name in sorted(leaf_genomes):
        g = leaf_genomes[name].genes
        if genes is None:
            genes = g
        elif g != genes:
            raise GeneSetMismatchError(f"leaf genome {name!r} has a different gene set")
    return genes


def solve_spscj(
    tree: PhyloTree,
    leaf_genomes: Mapping[str, Genome],
    resolve: str = "absent",
) -> TreeAssignment:
    """Optimal valid genome assignment for all internal nodes.

    Runs Fitch per adjacency of the union of the leaf adjacency sets.  Root
    ambiguities resolve to absence by default (two adjacencies can only
    clash when both are present, so this is always valid); ``resolve="greedy"``
    prefers presence whenever no extremity conflict arises, in lexicographic
    adjacency order.  The returned score equals the sum over adjacencies of
    the Sankoff root minima.
    """
    if resolve not in ("absent", "greedy"):
        raise ScjError(f"unknown resolve mode {resolve!r}")
    genes = _check_leaf_genomes(tree, leaf_genomes)
    leaf_sets = {name: leaf_genomes[name].adjacencies for name in leaf_genomes}
    universe = sorted(set().union(*leaf_sets.values()) if leaf_sets else set())
    node_sets = [set() for _ in range(len(tree))]
    score = 0
    fitch_union_score = 0
    ambiguous = []
    forced_extremities = set()
    deferred = []
    for adjacency in universe:
        presence = _leaf_presence(tree, leaf_sets, adjacency)
        b = fitch_bottom_up(tree, presence)
        fitch_union_score += sum(
            1
            for u in tree.postorder
            if tree.children[u] is not None
            and not b[tree.children[u][0]] & b[tree.children[u][1]]
        )
        s0, s1 = sankoff(tree, presence)
        score += min(s0[tree.root], s1[tree.root])
        if b[tree.root] == AMBIGUOUS:
            ambiguous.append(adjacency)
            if resolve == "absent":
                choice = 0
            else:
                deferred.append((adjacency, b))
                continue
        else:
            choice = 0 if b[tree.root] == ABSENT_SET else 1
            if choice:
                forced_extremities.update(adjacency)
        f = fitch_top_down(tree, b, choice)
        for u in range(len(tree)):
            if f[u]:
                node_sets[u].add(adjacency)
    for adjacency, b in deferred:
        # greedy: present unless an extremity is already taken at the root
        conflict = adjacency.first in forced_extremities or adjacency.second in forced_extremities
        choice = 0 if conflict else 1
        if choice:
            forced_extremities.update(adjacency)
        f = fitch_top_down(tree, b, choice)
        for u in range(len(tree)):
            if f[u]:
                node_sets[u].add(adjacency)
    if fitch_union_score != score:
        raise ScjError(
            f"internal inconsistency: Fitch score {fitch_union_score} != Sankoff score {score}"
        )
    for u in range(len(tree)):
        if tree.children[u] is not None and not is_valid_assignment(node_sets[u]):
            raise ScjError(f"internal node {u} received an invalid genome")
    edge_score = sum(
        len(node_sets[u] ^ node_sets[v]) for u, v in tree.edges()
    )
    if edge_score != score:
        raise ScjError(
            f"internal inconsistency: edge score {edge_score} != Sankoff score {score}"
        )
    return TreeAssignment(
        tree, frozenset(genes), tuple(frozenset(s) for s in node_sets), score
    )


def count_fitch_assignments(tree: PhyloTree, leaf_genomes: Mapping[str, Genome]) -> int:
    """Number of Fitch genome assignments, for instances whose adjacencies are
    pairwise extremity-disjoint: 2 ** (number of root ambiguities)."""
    _check_leaf_genomes(tree, leaf_genomes)
    leaf_sets = {name: leaf_genomes[name].adjacencies for name in leaf_genomes}
    universe = sorted(set().union(*leaf_sets.values()) if leaf_sets else set())
    if not is_valid_assignment(universe):
        raise ScjError(
            "Fitch assignment counting is only supported when all adjacencies "
            "are pairwise extremity-disjoint"
        )
    ambiguous = 0
    for adjacency in universe:
        b = fitch_bottom_up(tree, _leaf_presence(tree, leaf_sets, adjacency))
        if b[tree.root] == AMBIGUOUS:
            ambiguous += 1
    return 2**ambiguous


def count_scenarios_for_assignment(assignment: TreeAssignment) -> int:
    """Scenario count for a fixed assignment: scenarios on distinct edges do
    not interleave, so the per-edge counts multiply."""
    total = 1
    for u, v in assignment.tree.edges():
        total *= count_scenarios_for_sets(
            assignment.node_adjacencies[u], assignment.node_adjacencies[v]
        )
    return total


def brute_force_spscj_count(
    tree: PhyloTree,
    leaf_genomes: Mapping[str, Genome],
    max_adjacencies: int = 4,
    max_internal: int = 7,
    max_combinations: int = 2_000_000,
):
    """Exact (min_score, total scenario count) by enumerating every valid
    adjacency-set assignment to the internal nodes.

    Oracle for the tree solution space: total counts scenarios (assignments
    weighted by the product of per-edge scenario counts), not assignments.
    """
    genes = _check_leaf_genomes(tree, leaf_genomes)
    del genes
    leaf_sets = {name: leaf_genomes[name].adjacencies for name in leaf_genomes}
    universe = sorted(set().union(*leaf_sets.values()) if leaf_sets else set())
    internal = tree.internal_nodes()
    if len(universe) > max_adjacencies:
        raise SearchLimitError(f"brute force limited to {max_adjacencies} adjacencies")
    if len(internal) > max_internal:
        raise SearchLimitError(f"brute force limited to {max_internal} internal nodes")
    subsets = []
    for mask in range(1 << len(universe)):
        subset = frozenset(universe[i] for i in range(len(universe)) if mask >> i & 1)
        if is_valid_assignment(subset):
            subsets.append(subset)
    if len(subsets) ** len(internal) > max_combinations:
        raise SearchLimitError("brute force would enumerate too many assignments")
    fixed = [None] * len(tree)
    for u in tree.leaf_ids:
        fixed[u] = frozenset(leaf_sets[tree.names[u]])
    edges = tree.edges()
    min_score = None
    optimal = []
    for combo in product(subsets, repeat=len(internal)):
        node_sets = list(fixed)
        for u, subset in zip(internal, combo):
            node_sets[u] = subset
        total = sum(len(node_sets[u] ^ node_sets[v]) for u, v in edges)
        if min_score is None or total < min_score:
            min_score = total
            optimal = [node_sets]
        elif total == min_score:
            optimal.append(node_sets)
    pair_counts = {}

    def edge_count(a, b):
        key = (a, b)
        if key not in pair_counts:
            pair_counts[key] = count_scenarios_for_sets(a, b)
        return pair_counts[key]

    grand_total = 0
    for node_sets in optimal:
        combo_total = 1
        for u, v in edges:
            combo_total *= edge_count(node_sets[u], node_sets[v])
        grand_total += combo_total
    return min_score, grand_total
