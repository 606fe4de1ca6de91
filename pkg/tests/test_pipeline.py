import math
import random

import pytest

from ghct.graph import Graph, cut_cost
from ghct.maxflow import WorkCounter, min_cut
from ghct.oracle import brute_all_min_cuts, is_laminar, verify_gh_tree
from ghct.pipeline import (
    AttemptLimitError,
    PipelineStats,
    certified_ordered_cuts,
    cut_less,
    fixed_source_blocks,
    fixed_source_laminar,
    gh_via_oc1,
    gh_via_weak_oc,
    partition_schedule,
    perturb,
    random_subset,
    select_source_oc1,
    select_source_weak,
    source_schedule,
)

from conftest import connected_random_graph, random_graph


class TestPerturb:
    def test_scale_formula(self, g2):
        # n=2, m=1: offsets below 4, scale 4, so the weight lands in [20, 24).
        for seed in range(10):
            got = perturb(g2, random.Random(seed))
            (_, _, w), = got.edge_labels()
            assert 20 <= w < 24

    def test_original_weight_recoverable(self):
        rng = random.Random(5)
        g = random_graph(rng, 8)
        scale = g.num_edges * g.num_nodes ** 2
        got = perturb(g, rng)
        for (u, v, w), (_, _, w2) in zip(g.edge_labels(), got.edge_labels()):
            assert w2 // scale == w

    def test_minimum_cuts_stay_minimum(self):
        rng = random.Random(7)
        for _ in range(25):
            g = random_graph(rng, rng.randint(2, 8))
            got = perturb(g, rng)
            labels = sorted(g.labels)
            s, t = rng.sample(labels, 2)
            original = set(brute_all_min_cuts(g, {s}, {t}))
            for side in brute_all_min_cuts(got, {s}, {t}):
                assert side in original

    def test_edgeless_graph_passthrough(self):
        g = Graph([1, 2])
        assert perturb(g, random.Random(0)) == g


class TestRandomSubset:
    def test_rate_one_returns_everything(self):
        assert random_subset({1, 2, 3}, 1.0, random.Random(0)) == {1, 2, 3}

    def test_mean_size(self):
        rng = random.Random(1)
        sizes = [len(random_subset(range(100), 0.3, rng)) for _ in range(200)]
        assert 25 < sum(sizes) / len(sizes) < 35

    def test_fixed_seed_reproducible(self):
        a = random_subset(range(50), 0.4, random.Random(9))
        b = random_subset(range(50), 0.4, random.Random(9))
        assert a == b

    def test_rejects_bad_rate(self):
        with pytest.raises(ValueError):
            random_subset({1}, 0.0, random.Random(0))


class TestSchedules:
    def test_partition_schedule_shape(self):
        for size in (1, 2, 5, 23, 100):
            sched = partition_schedule(size).probabilities
            depth = size.bit_length() - 1
            block = tuple(2.0 ** -j for j in range(depth + 1))
            repeats = max(1, math.ceil(math.log2(size + 1) ** 2))
            assert len(sched) == len(block) * repeats
            assert sched[: len(block)] == block
            assert sched == block * repeats

    def test_source_schedule_shape(self):
        for size, n in ((2, 6), (5, 30), (23, 24)):
            sched = source_schedule(size, n).probabilities
            depth = size.bit_length() - 1
            k = max(1, math.ceil(math.log2(math.log2(n + 4))))
            assert len(sched) == depth * k + 1
            assert sched[-1] == 1.0
            assert all(sched[i] <= sched[i + 1] for i in range(len(sched) - 1))

    def test_scale_flag_grows_schedule(self):
        short = partition_schedule(23, 0.5).probabilities
        long = partition_schedule(23, 2.0).probabilities
        assert len(long) > len(short)


class TestCutOrder:
    def test_cost_dominates(self):
        x = {1, 2}
        assert cut_less(frozenset({1}), frozenset({2, 3}), 3, 5, x)
        assert not cut_less(frozenset({2, 3}), frozenset({1}), 5, 3, x)

    def test_supernode_overlap_breaks_cost_ties(self):
        x = {1, 2, 3}
        a, b = frozenset({1, 9}), frozenset({2, 3})
        assert cut_less(a, b, 7, 7, x)

    def test_strict_total_order_on_random_cuts(self):
        rng = random.Random(11)
        for _ in range(20):
            g = random_graph(rng, rng.randint(3, 9))
            labels = sorted(g.labels)
            x = set(rng.sample(labels, rng.randint(1, len(labels))))
            cuts = []
            for _ in range(6):
                k = rng.randint(1, g.num_nodes - 1)
                side = frozenset(rng.sample(labels, k))
                cuts.append((side, cut_cost(g, side)))
            for a, ca in cuts:
                assert not cut_less(a, a, ca, ca, x)
                for b, cb in cuts:
                    if a != b:
                        assert cut_less(a, b, ca, cb, x) != cut_less(b, a, cb, ca, x)
            for a, ca in cuts:
                for b, cb in cuts:
                    for c, cc in cuts:
                        if cut_less(a, b, ca, cb, x) and cut_less(b, c, cb, cc, x):
                            assert cut_less(a, c, ca, cc, x)


class TestCertifiedOrderedCuts:
    def test_triangle_nothing_certified(self, tri):
        estimates, certified = certified_ordered_cuts(1, (2, 3), tri, WorkCounter())
        assert estimates[2] == 3
        assert estimates[3] == 3
        assert certified == {}

    def test_single_edge_certified(self, g2):
        estimates, certified = certified_ordered_cuts(1, (2,), g2, WorkCounter())
        assert estimates[2] == 5
        assert set(certified) == {2}
        assert certified[2].members == {2}

    def test_estimates_upper_bound_true_values(self):
        rng = random.Random(13)
        counter = WorkCounter()
        for _ in range(30):
            g = random_graph(rng, rng.randint(3, 12))
            labels = sorted(g.labels)
            rng.shuffle(labels)
            s, seq = labels[0], tuple(labels[1: rng.randint(2, len(labels))])
            if not seq:
                continue
            estimates, certified = certified_ordered_cuts(s, seq, g, counter)
            for v in g.labels:
                if v == s:
                    continue
                exact = min_cut(g, {s}, {v}, counter).cost
                assert estimates[v] >= exact
            seen = set()
            for v, cut in certified.items():
                assert cut.cost == min_cut(g, {s}, {v}, counter).cost
                assert not (cut.members & seen)
                seen |= cut.members

    @pytest.mark.parametrize("mode", ["isolating", "octree"])
    def test_both_certification_modes_sound(self, mode):
        rng = random.Random(17)
        counter = WorkCounter()
        for _ in range(20):
            g = random_graph(rng, rng.randint(3, 10))
            labels = sorted(g.labels)
            rng.shuffle(labels)
            s, seq = labels[0], tuple(labels[1:])
            estimates, certified = certified_ordered_cuts(s, seq, g, counter,
                                                          certify=mode)
            seen = set()
            for v, cut in certified.items():
                assert cut.cost == min_cut(g, {s}, {v}, counter).cost
                assert not (cut.members & seen)
                seen |= cut.members

    def test_unknown_mode_rejected(self, g2):
        with pytest.raises(ValueError):
            certified_ordered_cuts(1, (2,), g2, WorkCounter(), certify="x")


class TestFixedSourceBlocks:
    def test_singleton_ground_set(self, tri):
        # The block is the latest minimum 1-3 cut: {2,3} at cost 3.
        part = fixed_source_blocks(1, {3}, tri, random.Random(0), WorkCounter())
        assert part.reps == (3,)
        assert part.blocks[3] == {2, 3}
        assert cut_cost(tri, part.blocks[3]) == 3

    def test_triangle_covers_both(self, tri):
        # f(1,2) = f(1,3) = 3 via {2,3}; one representative owns the block.
        part = fixed_source_blocks(1, {2, 3}, perturb(tri, random.Random(1)),
                                   random.Random(2), WorkCounter())
        assert len(part.reps) == 1
        assert part.blocks[part.reps[0]] == {2, 3}

    def test_blocks_are_minimum_source_cuts(self):
        rng = random.Random(19)
        counter = WorkCounter()
        for _ in range(20):
            g = connected_random_graph(rng, rng.randint(3, 12))
            labels = sorted(g.labels)
            s = labels[0]
            ground = set(rng.sample(labels[1:], rng.randint(1, len(labels) - 1)))
            perturbed = perturb(g, rng)
            part = fixed_source_blocks(s, ground, perturbed, rng, counter)
            part.check()
            assert set(part.reps) <= ground
            for v in part.reps:
                block = part.blocks[v]
                assert cut_cost(perturbed, block) == min_cut(
                    perturbed, {s}, {v}, counter).cost
                # Prop-4.1 carryover: also minimum in the unperturbed graph.
                assert cut_cost(g, block) == min_cut(g, {s}, {v}, counter).cost

    def test_empty_ground_set(self, tri):
        part = fixed_source_blocks(1, set(), tri, random.Random(0), WorkCounter())
        assert part.reps == ()


class TestSelectSourceOc1:
    def test_two_member_supernode(self, g2):
        s, family = select_source_oc1(g2, {1, 2}, random.Random(3), WorkCounter())
        assert s in {1, 2}
        (block,) = family
        assert block == {1, 2} - {s}

    def test_family_disjoint_and_minimum(self):
        rng = random.Random(23)
        counter = WorkCounter()
        for _ in range(15):
            g = connected_random_graph(rng, rng.randint(3, 10))
            x = set(g.labels)
            stats = PipelineStats()
            s, family = select_source_oc1(g, x, rng, counter, stats=stats)
            assert s in x
            assert is_laminar(family)
            seen = set()
            for block in family:
                assert not (block & seen)
                seen |= block
                assert s not in block
                reps = block & x
                assert reps
                # Every block is a true minimum source cut of the
                # unperturbed graph for some member.
                costs = [min_cut(g, {s}, {v}, counter).cost for v in reps]
                assert cut_cost(g, block) in costs
            assert x - {s} <= seen
            assert stats.attempts_max >= 1

    def test_attempt_cap_raises(self, tri):
        with pytest.raises(AttemptLimitError):
            select_source_oc1(tri, {1, 2, 3}, random.Random(0), WorkCounter(),
                              max_attempts=0)


class TestFixedSourceLaminar:
    def test_two_node_graph_full_limit(self, g2):
        family = fixed_source_laminar(1, {2}, 1, g2, random.Random(0), WorkCounter())
        assert family == [frozenset({2})]

    def test_members_pass_cut_oracle(self):
        rng = random.Random(29)
        counter = WorkCounter()
        for _ in range(15):
            g = connected_random_graph(rng, rng.randint(3, 10))
            labels = sorted(g.labels)
            s = labels[0]
            ground = set(labels[1:])
            limit = max(1, len(ground) // 2)
            perturbed = perturb(g, rng)
            family = fixed_source_laminar(s, ground, limit, perturbed, rng, counter)
            assert is_laminar(family)
            for block in family:
                assert len(block & ground) <= limit
                costs = [min_cut(g, {s}, {v}, counter).cost for v in block & ground]
                assert cut_cost(g, block) in costs


class TestSelectSourceWeak:
    def test_two_member_supernode(self, g2):
        s, family = select_source_weak(g2, {1, 2}, random.Random(7), WorkCounter())
        other = ({1, 2} - {s}).pop()
        assert any(other in block for block in family)

    def test_accepted_families_are_antichains(self):
        rng = random.Random(31)
        counter = WorkCounter()
        for _ in range(10):
            g = connected_random_graph(rng, rng.randint(3, 10))
            x = set(g.labels)
            s, family = select_source_weak(g, x, rng, counter)
            for a in family:
                for b in family:
                    if a != b:
                        assert not (a <= b)
            uncovered = (g.node_set - set().union(*family)) & x
            assert len(uncovered) <= math.ceil(len(x) / 2)

    def test_attempt_cap_raises(self, tri):
        with pytest.raises(AttemptLimitError):
            select_source_weak(tri, {1, 2, 3}, random.Random(0), WorkCounter(),
                               max_attempts=0)


class TestEndToEnd:
    def test_triangle_both_methods(self, tri):
        classic_costs = {(1, 2): 3, (1, 3): 3, (2, 3): 4}
        for builder in (gh_via_oc1, gh_via_weak_oc):
            tree = builder(tri, random.Random(5), WorkCounter())
            for (s, t), cost in classic_costs.items():
                assert tree.query(s, t)[0] == cost

    def test_single_node(self):
        g = Graph([1])
        for builder in (gh_via_oc1, gh_via_weak_oc):
            tree = builder(g, random.Random(0), WorkCounter())
            assert tree.nodes == (1,)
            assert tree.edges == ()

    def test_methods_agree_on_random_instances(self):
        rng = random.Random(37)
        for trial in range(6):
            g = random_graph(rng, rng.randint(2, 12))
            reference = {}
            classic = __import__("ghct.ghtree", fromlist=["gomory_hu_classic"]) \
                .gomory_hu_classic(g, WorkCounter())
            assert verify_gh_tree(g, classic, reference).ok
            a = gh_via_oc1(g, random.Random(trial), WorkCounter(),
                           stats=PipelineStats())
            assert verify_gh_tree(g, a, reference).ok
            b = gh_via_weak_oc(g, random.Random(trial), WorkCounter(),
                               stats=PipelineStats())
            assert verify_gh_tree(g, b, reference).ok

    def test_weak_octree_certification_mode(self):
        rng = random.Random(41)
        for trial in range(4):
            g = random_graph(rng, rng.randint(2, 10))
            tree = gh_via_weak_oc(g, random.Random(trial), WorkCounter(),
                                  certify="octree")
            assert verify_gh_tree(g, tree).ok

    def test_depth_accounting_through_driver(self):
        rng = random.Random(43)
        for trial in range(5):
            g = random_graph(rng, rng.randint(6, 14), density=0.7)
            depth_stats = {}
            gh_via_oc1(g, random.Random(trial), WorkCounter(),
                       depth_stats=depth_stats)
            assert depth_stats
            for nodes, edges in depth_stats.values():
                assert nodes <= 3 * g.num_nodes + 2
                assert edges <= 2 * g.num_edges + g.num_nodes
