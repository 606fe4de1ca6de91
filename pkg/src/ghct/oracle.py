"""Independent brute-force ground truth.

Deliberately naive: minimum cuts by exhaustive enumeration, cut-tree
verification by checking every node pair, laminarity by pairwise tests.
This module must stay independent of the algorithms it judges, so the only
engine it touches is the max-flow reference (and only above the
enumeration limit, or where the definition itself is flow-based).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, cut_cost, sorted_labels
from .maxflow import WorkCounter, min_cut

MAX_ENUM_NODES = 20
# Above this size verify_gh_tree falls back to the max-flow engine as the
# per-pair reference instead of enumerating.
MAX_PAIRWISE_ENUM_NODES = 12


@dataclass(frozen=True)
class BruteCutResult:
    """Exhaustive minimum S-T cut: value, witness, and tie census."""

    cost: int
    sink_side: frozenset
    num_minimum: int
    minimal_sink_side: frozenset


def _enumerate_min_sides(g: Graph, s_side, t_side):
    """Gray-code walk over all sink sides U with T <= U <= V - S."""
    s_idx = g.indices(s_side)
    t_idx = g.indices(t_side)
    if not s_idx or not t_idx:
        raise ValueError("terminal sides must be non-empty")
    if s_idx & t_idx:
        raise ValueError("terminal sides must be disjoint")
    if g.num_nodes > MAX_ENUM_NODES:
        raise ValueError(f"enumeration limited to {MAX_ENUM_NODES} nodes")

    free = [i for i in range(g.num_nodes) if i not in s_idx and i not in t_idx]
    adj = g.adjacency()
    inside = [False] * g.num_nodes
    for i in t_idx:
        inside[i] = True
    cost = 0
    for iu, iv, w in g.edges:
        if inside[iu] != inside[iv]:
            cost += w

    def flip(i):
        nonlocal cost
        entering = not inside[i]
        for j, w in adj[i]:
            if inside[j]:
                cost += -w if entering else w
            else:
                cost += w if entering else -w
        inside[i] = entering

    best = cost
    best_sides = [frozenset(i for i in range(g.num_nodes) if inside[i])]
    for step in range(1, 1 << len(free)):
        # Gray code: between step-1 and step exactly bit (lowest set bit
        # of step) flips.
        bit = (step & -step).bit_length() - 1
        flip(free[bit])
        if cost < best:
            best = cost
            best_sides = [frozenset(i for i in range(g.num_nodes) if inside[i])]
        elif cost == best:
            best_sides.append(frozenset(i for i in range(g.num_nodes) if inside[i]))
    return best, best_sides


def brute_min_cut(g: Graph, s_side, t_side) -> BruteCutResult:
    """Exact minimum by exhaustive enumeration, with the tie count.

    `num_minimum` counts distinct minimum cuts (a uniqueness detector) and
    `minimal_sink_side` is the intersection of all minimum sink sides,
    which is itself a minimum cut.
    """
    best, sides = _enumerate_min_sides(g, s_side, t_side)
    labels = g.labels

    def as_labels(side):
        return frozenset(labels[i] for i in side)

    minimal = frozenset.intersection(*sides)
    first = min(sides, key=sorted)
    return BruteCutResult(best, as_labels(first), len(sides), as_labels(minimal))


def brute_all_min_cuts(g: Graph, s_side, t_side) -> list:
    """All minimum sink sides, as label sets."""
    _, sides = _enumerate_min_sides(g, s_side, t_side)
    labels = g.labels
    return [frozenset(labels[i] for i in side) for side in sides]


@dataclass
class Report:
    """Verification outcome; serializes to JSON for CI consumption."""

    kind: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, **fields) -> None:
        self.violations.append(fields)

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "ok": self.ok,
            "violations": [
                {k: sorted_labels(v) if isinstance(v, (set, frozenset)) else v
                 for k, v in item.items()}
                for item in self.violations
            ],
        }
        return json.dumps(payload, indent=2, default=str)


def reference_cut_value(g: Graph, s, t) -> int:
    """Per-pair reference: enumeration when feasible, max flow otherwise."""
    if g.num_nodes <= MAX_PAIRWISE_ENUM_NODES:
        return brute_min_cut(g, {s}, {t}).cost
    return min_cut(g, {s}, {t}, WorkCounter()).cost


def verify_gh_tree(g: Graph, tree, reference: dict | None = None) -> Report:
    """Check the cut-tree property for every node pair.

    For each pair (s, t) the minimum edge on the tree path must equal the
    true minimum s-t cut value, and removing that edge must induce a cut
    of exactly that cost in `g`.  `reference` may supply precomputed
    {(s, t): value} entries to avoid recomputing across methods.
    """
    report = Report("gh-tree")
    if set(tree.nodes) != set(g.labels):
        raise ValueError("tree and graph have different node sets")
    nodes = sorted_labels(g.labels)
    for i, s in enumerate(nodes):
        for t in nodes[i + 1:]:
            if reference is not None and (s, t) in reference:
                expected = reference[(s, t)]
            else:
                expected = reference_cut_value(g, s, t)
                if reference is not None:
                    reference[(s, t)] = expected
            value, cut = tree.query(s, t)
            induced = cut_cost(g, cut.members)
            if value != expected or induced != expected:
                report.add(s=s, t=t, tree_value=value, expected=expected,
                           induced_cut_cost=induced, cut=cut.members)
    return report


def is_laminar(family: Iterable) -> bool:
    """True iff every pair of sets is nested or disjoint."""
    sets = [frozenset(s) for s in family]
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if a & b and not (a <= b or b <= a):
                return False
    return True


def verify_oc1(partition, seq, g: Graph) -> Report:
    """Check a named partition against its defining node sequence.

    Condition (i): the block of each representative v (at position k) is a
    minimum ({s} + earlier representatives)-v cut, checked via max flow.
    Condition (ii): every sequence node is covered by the block of some
    representative at an earlier-or-equal position.
    """
    report = Report("oc1")
    seq = tuple(seq)
    s = seq[0]
    reps = set(partition.reps)
    counter = WorkCounter()
    earlier_reps: list = []
    for v in seq[1:]:
        if v in reps:
            block = partition.blocks[v]
            expected = min_cut(g, {s, *earlier_reps}, {v}, counter).cost
            actual = cut_cost(g, block)
            if actual != expected:
                report.add(condition="block-minimality", node=v,
                           block_cost=actual, expected=expected)
            covered = True  # v covers itself via its own block
            earlier_reps.append(v)
        else:
            covered = any(v in partition.blocks[r] for r in earlier_reps)
        if not covered:
            report.add(condition="coverage", node=v)
    return report
