"""Reductions of concrete matroid classes to partition matroids.

Each reducer returns a :class:`ReductionResult` whose partition is a weak
map of the source matroid (every transversal of the classes is independent
in the source) together with the coloring-number bound the construction
guarantees. Tie-breaking is by ascending ids everywhere so certificates are
reproducible across runs.
"""

import itertools
from dataclasses import dataclass

from matred import kernels, zoo
from matred.bitset import bit_list, mask_of
from matred.core import Matroid, Partition, coloring_number, truncate
from matred.errors import (
    BoundViolated,
    CutBoundExceeded,
    GroundSetTooLarge,
    InvalidPartition,
    PresentationNotReduced,
    RankNotThree,
    RankNotTwo,
    SinglePartitionClass,
)


@dataclass(frozen=True)
class ReductionResult:
    """A partition-matroid reduction plus the bound it claims.

    ``claimed_chi_bound`` dominates the largest class size;
    ``rank_preserving_claimed`` records whether the construction guarantees
    rank preservation; ``source_chi`` is the coloring number of the source
    matroid the bound was derived from.
    """

    partition: Partition
    claimed_chi_bound: int
    rank_preserving_claimed: bool
    provenance: str
    source_chi: int

    def __post_init__(self):
        if self.partition.max_class_size() > self.claimed_chi_bound:
            raise BoundViolated(
                f"class of size {self.partition.max_class_size()} exceeds "
                f"claimed bound {self.claimed_chi_bound}"
            )

    def chi(self):
        return self.partition.max_class_size()


# ---------------------------------------------------------------------------
# transversal matroids: classes grouped by matched right-hand vertex


def _kuhn_augment(adj, match_a, match_b, a, seen=None):
    if seen is None:
        seen = set()
    for b in adj[a]:
        if b in seen:
            continue
        seen.add(b)
        if match_b[b] == -1 or _kuhn_augment(adj, match_a, match_b, match_b[b], seen):
            match_b[b] = a
            match_a[a] = b
            return True
    return False


def _max_matching(adj, na, nb, ordered_a=None):
    match_a = [-1] * na
    match_b = [-1] * nb
    for a in ordered_a if ordered_a is not None else range(na):
        _kuhn_augment(adj, match_a, match_b, a)
    return match_a, match_b


def shrink_presentation(graph: zoo.BipartiteGraph):
    """Delete right-hand vertices until their count equals the rank.

    A right vertex exposed by a maximum matching can be dropped without
    changing the family of matchable left sets; iterating yields a
    presentation with |B| = rank.
    """
    keep = list(range(graph.num_right))
    edges = list(graph.edges)
    while True:
        remap = {b: i for i, b in enumerate(keep)}
        cur = [(a, remap[b]) for a, b in edges if b in remap]
        adj = [[] for _ in range(graph.num_left)]
        for a, b in sorted(cur):
            adj[a].append(b)
        match_a, match_b = _max_matching(adj, graph.num_left, len(keep))
        exposed = [i for i, a in enumerate(match_b) if a == -1]
        if not exposed:
            shrunk = zoo.BipartiteGraph(graph.num_left, len(keep), tuple(sorted(cur)))
            rank = sum(1 for a in match_a if a != -1)
            if len(keep) != rank:
                raise PresentationNotReduced(
                    f"|B|={len(keep)} after shrink, rank={rank}"
                )
            return shrunk
        del keep[exposed[0]]


def reduce_transversal(graph: zoo.BipartiteGraph):
    """Rank-preserving reduction of a transversal matroid whose classes
    stay within the coloring number.

    Computes an optimal coloring, seeds every color class's matching from
    one fixed maximum matching (so all right vertices stay covered
    jointly), extends each matching over its own class, and groups left
    vertices by their matched right vertex.
    """
    graph = shrink_presentation(graph)
    M = zoo.transversal_matroid(graph)  # rejects uncovered left vertices
    k, coloring = coloring_number(M)
    adj = graph.adjacency()
    na, nb = graph.num_left, graph.num_right
    base_a, _ = _max_matching(adj, na, nb)
    owner = [None] * na  # matched right vertex per left vertex
    for j, cls in enumerate(coloring.classes):
        members = bit_list(cls)
        match_a = [-1] * na
        match_b = [-1] * nb
        for a in members:  # seed with the shared maximum matching
            if base_a[a] != -1:
                match_a[a] = base_a[a]
                match_b[base_a[a]] = a
        class_adj = [adj[x] if cls >> x & 1 else [] for x in range(na)]
        for a in members:
            if match_a[a] == -1:
                ok = _kuhn_augment(class_adj, match_a, match_b, a)
                assert ok, "color class must be matchable"
        for a in members:
            owner[a] = match_a[a]
    classes = [mask_of(a for a in range(na) if owner[a] == t) for t in range(nb)]
    assert all(classes), "every right vertex stays matched in some class"
    partition = Partition(na, tuple(classes))
    return ReductionResult(partition, k, True, "transversal-matching", k)


# ---------------------------------------------------------------------------
# graphic matroids: peel minimum cuts


def _stoer_wagner(vertices, weights):
    """Global minimum cut of a connected weighted graph.

    ``weights`` maps unordered vertex pairs to positive weights. Returns
    the vertex set on one side of a minimum cut. Maximum-adjacency order
    with smallest-id tie-breaks keeps the result deterministic.
    """
    active = sorted(vertices)
    merged = {v: frozenset([v]) for v in active}
    w = {}
    for (u, v), wt in weights.items():
        w[(u, v)] = w[(v, u)] = wt
    best_value, best_side = None, None
    while len(active) > 1:
        start = active[0]
        in_set = {start}
        order = [start]
        attach = {v: w.get((start, v), 0) for v in active if v != start}
        while len(order) < len(active):
            pick = max(
                (v for v in active if v not in in_set),
                key=lambda v: (attach.get(v, 0), -v),
            )
            in_set.add(pick)
            order.append(pick)
            for v in active:
                if v not in in_set:
                    attach[v] = attach.get(v, 0) + w.get((pick, v), 0)
        s, t = order[-2], order[-1]
        cut_value = sum(w.get((t, v), 0) for v in active if v != t)
        if best_value is None or cut_value < best_value:
            best_value, best_side = cut_value, merged[t]
        # merge t into s
        merged[s] = merged[s] | merged[t]
        for v in active:
            if v not in (s, t):
                val = w.get((s, v), 0) + w.get((t, v), 0)
                if val:
                    w[(s, v)] = w[(v, s)] = val
        active.remove(t)
    return best_side


def _components(num_vertices, edge_pairs):
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edge_pairs:
        parent[find(u)] = find(v)
    comps = {}
    for v in range(num_vertices):
        comps.setdefault(find(v), set()).add(v)
    return sorted((sorted(c) for c in comps.values()), key=lambda c: c[0])


def reduce_graphic(graph: zoo.Graph):
    """Rank-preserving reduction of a graphic matroid with classes of size
    at most 2k-1, where k is the coloring number (the arboricity).

    Repeatedly removes a minimum edge cut of a remaining component of size
    at least two; every cycle meets its first-touched class at least twice,
    so the peeled classes form a weak map.
    """
    M = zoo.graphic_matroid(graph)
    k, _ = coloring_number(M)
    remaining = set(range(M.n))
    classes = []
    while True:
        pairs = [(graph.edges[e], e) for e in sorted(remaining)]
        comps = _components(graph.num_vertices, [p for p, _ in pairs])
        comp = next((c for c in comps if len(c) > 1), None)
        if comp is None:
            break
        comp_set = set(comp)
        weights = {}
        for (u, v), _ in pairs:
            if u in comp_set and v in comp_set:
                key = (min(u, v), max(u, v))
                weights[key] = weights.get(key, 0) + 1
        side = _stoer_wagner(comp, weights)
        cut = [
            e
            for (u, v), e in pairs
            if u in comp_set and v in comp_set and (u in side) != (v in side)
        ]
        assert cut and len(cut) <= 2 * k - 1
        classes.append(mask_of(cut))
        remaining.difference_update(cut)
    partition = Partition(M.n, tuple(classes))
    return ReductionResult(partition, 2 * k - 1, True, "graphic-mincut-peeling", k)


# ---------------------------------------------------------------------------
# paving matroids


def _round_robin_split(elements, parts):
    classes = [[] for _ in range(parts)]
    for i, e in enumerate(sorted(elements)):
        classes[i % parts].append(e)
    return classes


def reduce_paving(family: zoo.HyperplaneFamily):
    """Reduction of a paving matroid of rank r into r-1 near-equal classes.

    Any set of at most r-1 elements is independent, so every transversal
    is; the bound ceil(r*k/(r-1)) follows from |S| <= r*k. Not rank
    preserving in general.
    """
    r, n = family.rank, family.n
    k = zoo.paving_coloring_number(family)
    classes = _round_robin_split(range(n), r - 1)
    bound = -(-r * k // (r - 1))
    partition = Partition.from_sets(n, classes)
    return ReductionResult(partition, bound, False, "paving-even-split", k)


def parallel_classes(M: Matroid):
    """Classes of pairwise parallel elements, sorted by size descending
    (ties by smallest member). Requires a loopless oracle."""
    M.require_loopless()
    reps = []
    classes = []
    for e in range(M.n):
        for i, rep in enumerate(reps):
            if not M.indep((1 << rep) | (1 << e)):
                classes[i].append(e)
                break
        else:
            reps.append(e)
            classes.append([e])
    return sorted(classes, key=lambda c: (-len(c), c[0]))


def reduce_paving_rank2(M: Matroid):
    """Rank-preserving two-class reduction of a rank-2 matroid with max
    class size at most floor(4k/3).

    Splits the parallel classes (largest first) at the first prefix
    reaching a third of the ground set.
    """
    if M.rank() != 2:
        raise RankNotTwo(f"rank is {M.rank()}")
    k, _ = coloring_number(M)
    groups = parallel_classes(M)
    if len(groups) == 1:
        raise SinglePartitionClass("all elements pairwise parallel")
    n = M.n
    prefix = 0
    split = 0
    for i, g in enumerate(groups):
        prefix += len(g)
        if 3 * prefix >= n:
            split = i + 1
            break
    first = [e for g in groups[:split] for e in g]
    second = [e for g in groups[split:] for e in g]
    assert second, "threshold split leaves the tail nonempty"
    bound = 4 * k // 3
    partition = Partition.from_sets(n, [sorted(first), sorted(second)])
    return ReductionResult(partition, bound, True, "rank2-parallel-split", k)


def reduce_paving_rank3(family: zoo.HyperplaneFamily):
    """Rank-preserving reduction of a rank-3 paving matroid with max class
    size at most 2k-1.

    If the largest hyperplane is big (|S|/3 <= |H1|/2), split it in two and
    keep the complement as the third class. Otherwise pick a pivot element,
    group the pivot's punctured hyperplanes into one class without ever
    splitting one of them, and the rest (minus the pivot) into another.
    """
    if family.rank != 3:
        raise RankNotThree(f"family rank is {family.rank}")
    n = family.n
    k = zoo.paving_coloring_number(family)
    hyps = sorted(family.hyperplanes, key=lambda h: (-h.bit_count(), h))
    bound = 2 * k - 1
    if hyps and 2 * n <= 3 * hyps[0].bit_count():
        h1 = bit_list(hyps[0])
        half = _round_robin_split(h1, 2)
        rest = sorted(set(range(n)) - set(h1))
        partition = Partition.from_sets(n, [half[0], half[1], rest])
        return ReductionResult(
            partition, bound, True, "rank3-hyperplane-split", k
        )
    # pivot: element covered by the most hyperplanes, smallest id on ties
    cover = [sum(1 for h in hyps if h >> e & 1) for e in range(n)]
    s = max(range(n), key=lambda e: (cover[e], -e))
    punctured = sorted(
        ((h & ~(1 << s)) for h in hyps if h >> s & 1),
        key=lambda h: (-h.bit_count(), h),
    )
    total = sum(h.bit_count() for h in punctured)
    if 3 * total < n:
        t_mask = 0
        for h in punctured:
            t_mask |= h
        for e in range(n):
            if t_mask.bit_count() >= n // 2:
                break
            if e != s and not t_mask >> e & 1:
                t_mask |= 1 << e
    else:
        t_mask = 0
        for h in punctured:
            t_mask |= h
            if 3 * t_mask.bit_count() >= n:
                break
    rest = [e for e in range(n) if e != s and not t_mask >> e & 1]
    assert rest, "pivot class split leaves the remainder nonempty"
    partition = Partition.from_sets(n, [[s], bit_list(t_mask), rest])
    return ReductionResult(partition, bound, True, "rank3-pivot-split", k)


# ---------------------------------------------------------------------------
# generic cocircuit peeling


def reduce_by_cocircuits(M: Matroid, k=None):
    """Peel a minimum cocircuit of the current restriction until the ground
    set is exhausted.

    A circuit never meets a cocircuit in exactly one element, so every
    circuit meets its first-touched class at least twice and the peeled
    classes form a rank-preserving weak map. When ``k`` is given, any
    peeled cocircuit larger than k raises ``CutBoundExceeded``; otherwise
    the claimed bound is the largest observed cocircuit.
    """
    if M.n > 14:
        raise GroundSetTooLarge("cocircuit peeling capped at 14 elements")
    M.require_loopless()
    ranks = kernels.rank_table(M.table(), M.n) if M.n else None
    current = M.full
    classes = []
    while current:
        r_cur = ranks[current]
        found = None
        elems = bit_list(current)
        for size in range(1, len(elems) + 1):
            for combo in itertools.combinations(elems, size):
                drop = mask_of(combo)
                if ranks[current & ~drop] < r_cur:
                    found = drop
                    break
            if found is not None:
                break
        if k is not None and found.bit_count() > k:
            raise CutBoundExceeded(
                f"cocircuit of size {found.bit_count()} exceeds asserted bound {k}"
            )
        classes.append(found)
        current &= ~found
    bound = k if k is not None else max((c.bit_count() for c in classes), default=0)
    partition = Partition(M.n, tuple(classes))
    chi_m, _ = coloring_number(M)
    return ReductionResult(partition, bound, True, "cocircuit-peeling", chi_m)


# ---------------------------------------------------------------------------
# truncation transfer


def reduce_truncation(M: Matroid, result: ReductionResult, target_rank):
    """Carry a reduction with chi(N) <= 2 chi(M) over to the one-step
    truncation of M by merging the two smallest classes.

    With at most rank-1 classes the partition is reused unchanged.
    """
    chi_m, _ = coloring_number(M)
    chi_n = result.partition.max_class_size()
    if chi_n > 2 * chi_m:
        raise BoundViolated(
            f"input reduction has chi {chi_n} > 2*chi(M) = {2 * chi_m}"
        )
    r = M.rank()
    if target_rank != r - 1:
        raise ValueError("single-step truncation requires target_rank = rank - 1")
    q = len(result.partition.classes)
    if q > r:
        raise InvalidPartition("a weak map never has more classes than the rank")
    truncated = truncate(M, target_rank)
    chi_m2, _ = coloring_number(truncated)
    if q <= r - 1:
        new_classes = result.partition.classes
    else:
        ordered = sorted(
            result.partition.classes, key=lambda c: (-c.bit_count(), c)
        )
        new_classes = tuple(ordered[: r - 2]) + (ordered[r - 2] | ordered[r - 1],)
    partition = Partition(M.n, new_classes)
    rank_preserving = len(new_classes) == target_rank
    return ReductionResult(
        partition, 2 * chi_m2, rank_preserving, "truncation-merge", chi_m2
    )
