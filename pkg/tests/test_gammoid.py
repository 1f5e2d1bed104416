import itertools
import random

import pytest

from matred import core, verifier, zoo
from matred.bitset import mask_of
from matred.core import coloring_number
from matred.errors import (
    IterationCapExceeded,
    NoB2Forest,
    NoLargeComponent,
    NoReachableSmall,
    TightSetMeetsS,
)
from matred.gammoid import (
    B2Forest,
    BipartitePresentation,
    check_k_matchings,
    compute_potential,
    dualize_gammoid,
    find_b2_forest,
    find_clean_forest,
    improve_step,
    maximal_tight_set,
    minimize_presentation,
    reduce_gammoid,
)
from tests.instances import random_gammoid_data


def tight_instance(k):
    spec = zoo.tight_gammoid_laminar(k)
    digraph, sources, sinks = zoo.laminar_to_digraph(spec)
    return digraph, sources, sinks, zoo.gammoid(digraph, sources, sinks)


def stepping_instance():
    """A gammoid whose local search must take at least one improve step."""
    arcs = ((0, 4), (0, 5), (1, 2), (3, 0), (3, 7), (4, 6), (5, 1), (5, 2),
            (6, 2), (6, 5), (6, 7), (7, 2), (7, 4))
    digraph = zoo.Digraph(8, arcs)
    return digraph, [3, 7], [2, 3, 4, 5, 6, 7]


def oracle_equal(pres, M):
    pm = pres.presented_matroid()
    return all(pm.indep(m) == M.indep(m) for m in range(1 << M.n))


class TestDualize:
    def test_free_matroid_empty_b(self):
        D = zoo.Digraph(3, ())
        pres = dualize_gammoid(D, [0, 1, 2], [0, 1, 2])
        assert pres.b_vertices == ()
        assert sorted(pres.marked) == [0, 1, 2]

    def test_tight_instance_equivalence(self):
        digraph, sources, sinks, M = tight_instance(3)
        pres = dualize_gammoid(digraph, sources, sinks)
        assert oracle_equal(pres, M)

    def test_single_source_two_sinks(self):
        D = zoo.Digraph(3, ((0, 1), (0, 2)))
        pres = dualize_gammoid(D, [0], [1, 2])
        assert len(pres.a_vertices) - len(pres.b_vertices) == 1
        assert oracle_equal(pres, zoo.gammoid(D, [0], [1, 2]))

    def test_random_digraphs_exhaustive(self):
        rng = random.Random(29)
        for _ in range(12):
            digraph, sources, sinks = random_gammoid_data(rng)
            M = zoo.gammoid(digraph, sources, sinks)
            pres = dualize_gammoid(digraph, sources, sinks)
            assert oracle_equal(pres, M)


class TestMinimize:
    def test_already_minimal_unchanged(self):
        pres = BipartitePresentation.build(
            [0, 1, 2], [0], [(0, 0), (1, 0), (2, 0)], [0, 1, 2]
        )
        assert minimize_presentation(pres) == pres

    def test_tight_block_split_off(self):
        # two B-vertices matched perfectly by two unmarked A-vertices
        pres = BipartitePresentation.build(
            [0, 1, 2],
            [0, 1],
            [(0, 0), (0, 1), (1, 0), (1, 1)],
            [2],
        )
        out = minimize_presentation(pres)
        assert out.b_vertices == ()
        assert out.a_vertices == (2,)

    def test_every_step_preserves_matroid(self):
        rng = random.Random(37)
        for _ in range(10):
            digraph, sources, sinks = random_gammoid_data(rng)
            M = zoo.gammoid(digraph, sources, sinks)
            pres = dualize_gammoid(digraph, sources, sinks)
            steps = []
            out = minimize_presentation(
                pres, on_step=lambda old, new, label: steps.append((new, label))
            )
            for new, label in steps:
                assert oracle_equal(new, M), label
            assert oracle_equal(out, M)

    def test_tight_set_meeting_marked_rejected(self):
        pres = BipartitePresentation.build(
            [0, 1], [0], [(0, 0)], [0, 1]
        )
        with pytest.raises(TightSetMeetsS):
            minimize_presentation(pres)

    def test_output_has_clean_forest_and_strong_hall(self):
        rng = random.Random(41)
        for _ in range(10):
            digraph, sources, sinks = random_gammoid_data(rng)
            pres = minimize_presentation(dualize_gammoid(digraph, sources, sinks))
            assert not maximal_tight_set(pres)
            forest = find_b2_forest(pres)
            assert forest.dirty_leaf() is None


class TestMaximalTightSet:
    def test_detects_tight_pair(self):
        # N({b0, b1}) = {0, 1}, so the pair is tight
        pres = BipartitePresentation.build(
            [0, 1, 2], [0, 1], [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)], [2]
        )
        assert maximal_tight_set(pres) == set()
        tight = BipartitePresentation.build(
            [0, 1, 2], [0, 1], [(0, 0), (0, 1), (1, 0), (1, 1)], [2]
        )
        assert maximal_tight_set(tight) == {0, 1}

    def test_maximality_against_all_tight_sets(self):
        rng = random.Random(53)
        for _ in range(12):
            digraph, sources, sinks = random_gammoid_data(rng, max_vertices=6)
            pres = dualize_gammoid(digraph, sources, sinks)
            adj = pres.adj_of_b()
            tights = [
                set(combo)
                for r in range(1, len(pres.b_vertices) + 1)
                for combo in itertools.combinations(pres.b_vertices, r)
                if len({a for b in combo for a in adj[b]}) == len(combo)
            ]
            z = maximal_tight_set(pres)
            assert all(t <= z for t in tights)
            if z:
                assert len({a for b in z for a in adj[b]}) == len(z)


class TestB2Forest:
    def test_empty_b(self):
        pres = BipartitePresentation.build([0, 1], [], [], [0, 1])
        forest = find_b2_forest(pres)
        assert forest.forest_edges == frozenset()
        assert len(forest.components) == 2

    def test_single_path(self):
        pres = BipartitePresentation.build(
            [0, 1], [7], [(0, 7), (1, 7)], [0, 1]
        )
        forest = find_b2_forest(pres)
        assert forest.forest_edges == {(0, 7), (1, 7)}

    def test_strong_hall_failure(self):
        pres = BipartitePresentation.build(
            [0, 1], [0, 1], [(0, 0), (0, 1), (1, 0), (1, 1)], [0]
        )
        with pytest.raises(NoB2Forest):
            find_b2_forest(pres)

    def test_component_count_invariant(self):
        rng = random.Random(61)
        for _ in range(10):
            digraph, sources, sinks = random_gammoid_data(rng)
            pres = minimize_presentation(dualize_gammoid(digraph, sources, sinks))
            forest = find_b2_forest(pres)
            assert len(forest.components) == len(pres.a_vertices) - len(
                pres.b_vertices
            )
            for b in pres.b_vertices:
                assert sum(1 for _, y in forest.forest_edges if y == b) == 2


def path_fixture():
    """One large component (a path on five marked vertices) plus a small
    component reachable through a single cross edge; every vertex marked."""
    a_vertices = [0, 1, 2, 3, 4, 9]
    b_vertices = [0, 1, 2, 3]
    forest = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)]
    cross = [(9, 0)]
    pres = BipartitePresentation.build(
        a_vertices, b_vertices, forest + cross, a_vertices
    )
    return pres, frozenset(forest)


class TestPotentialAndImprove:
    def test_no_large_components_zero_violation(self):
        digraph, sources, sinks, M = tight_instance(3)
        res = reduce_gammoid(digraph, sources, sinks)
        assert res.chi() <= 4

    def test_violation_counts_excess(self):
        pres, forest_edges = path_fixture()
        forest = B2Forest(pres, forest_edges)
        # k=3: the path holds 5 marked vertices, one over the 2k-2 target
        pot = compute_potential(forest, 3)
        assert pot.total_violation == 1
        pot2 = compute_potential(forest, 4)
        assert pot2.total_violation == 0

    def test_improve_step_fixes_path_fixture(self):
        pres, forest_edges = path_fixture()
        forest = B2Forest(pres, forest_edges)
        before = compute_potential(forest, 3)
        records = []
        after = improve_step(forest, 3, trace=records.append)
        pot = compute_potential(after, 3)
        assert pot < before
        assert pot.total_violation == 0
        assert len(after.components) == len(forest.components)
        assert records[0]["case"] == "large"

    def test_no_large_component_error(self):
        pres, forest_edges = path_fixture()
        forest = B2Forest(pres, forest_edges)
        with pytest.raises(NoLargeComponent):
            improve_step(forest, 4)  # with k=4 nothing is large

    def test_unreachable_small_error(self):
        # no cross edges at all: the large component reaches nothing
        a_vertices = [0, 1, 2, 3, 4, 9]
        b_vertices = [0, 1, 2, 3]
        forest = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)]
        pres = BipartitePresentation.build(a_vertices, b_vertices, forest, a_vertices)
        with pytest.raises(NoReachableSmall):
            improve_step(B2Forest(pres, frozenset(forest)), 3)

    def test_random_steps_strictly_decrease(self):
        rng = random.Random(67)
        checked = 0
        trials = 0
        while checked < 20 and trials < 300:
            trials += 1
            digraph, sources, sinks = random_gammoid_data(rng)
            M = zoo.gammoid(digraph, sources, sinks)
            k, _ = coloring_number(M)
            if k < 2:
                continue
            pres = minimize_presentation(dualize_gammoid(digraph, sources, sinks))
            forest = find_b2_forest(pres)
            while forest.large_components(k):
                before = compute_potential(forest, k)
                nxt = improve_step(forest, k)
                assert compute_potential(nxt, k) < before
                assert len(nxt.components) == len(forest.components)
                checked += 1
                if nxt.dirty_leaf() is not None:
                    nxt = find_clean_forest(pres, prefer=nxt.forest_edges)
                forest = nxt
        assert checked >= 5


class TestReduceGammoid:
    def test_free_matroid_singletons(self):
        D = zoo.Digraph(3, ())
        res = reduce_gammoid(D, [0, 1, 2], [0, 1, 2])
        assert res.partition.as_sets() == [[0], [1], [2]]

    def test_tight_instance(self):
        digraph, sources, sinks, M = tight_instance(3)
        res = reduce_gammoid(digraph, sources, sinks)
        assert res.chi() <= 4
        assert res.claimed_chi_bound == 4
        assert len(res.partition.classes) == M.rank()
        for combo in itertools.product(*res.partition.as_sets()):
            assert M.indep(mask_of(combo))
        assert verifier.min_partition_reduction_chi(M) == 4

    def test_iteration_cap(self):
        digraph, sources, sinks = stepping_instance()
        with pytest.raises(IterationCapExceeded):
            reduce_gammoid(digraph, sources, sinks, cap=0)

    def test_random_small_gammoids(self):
        rng = random.Random(71)
        for _ in range(30):
            digraph, sources, sinks = random_gammoid_data(rng)
            M = zoo.gammoid(digraph, sources, sinks)
            res = reduce_gammoid(digraph, sources, sinks)
            k, _ = coloring_number(M)
            assert res.chi() <= max(2 * k - 2, 1)
            report = verifier.verify_reduction(res, M)
            assert report.certified and report.weak_map
            if k >= 2:
                assert report.rank_preserving

    def test_trace_stream(self):
        digraph, sources, sinks = stepping_instance()
        records = []
        res = reduce_gammoid(digraph, sources, sinks, trace=records.append)
        assert records, "this instance takes at least one step"
        for record in records:
            assert {"case", "small", "split", "edge", "removed", "potential"} <= set(
                record
            )
        M = zoo.gammoid(digraph, sources, sinks)
        report = verifier.verify_reduction(res, M)
        assert report.certified and report.rank_preserving


class TestCheckKMatchings:
    def test_tight_presentation(self):
        digraph, sources, sinks, M = tight_instance(3)
        pres = minimize_presentation(dualize_gammoid(digraph, sources, sinks))
        assert check_k_matchings(pres, 3)

    def test_k1_with_marked_all(self):
        pres = BipartitePresentation.build(
            [0, 1], [5], [(0, 5), (1, 5)], [0, 1]
        )
        assert not check_k_matchings(pres, 1)

    def test_colorable_presentations_pass(self):
        rng = random.Random(73)
        for _ in range(10):
            digraph, sources, sinks = random_gammoid_data(rng)
            M = zoo.gammoid(digraph, sources, sinks)
            k, _ = coloring_number(M)
            pres = minimize_presentation(dualize_gammoid(digraph, sources, sinks))
            assert check_k_matchings(pres, max(k, 2))
