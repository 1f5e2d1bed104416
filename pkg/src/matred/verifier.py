"""Independent certification of reductions and the brute-force oracles
behind every tightness claim: exhaustive weak-map checking, the minimum
achievable reduction coloring number, Gallai colorings, the projective
trichotomy, strong base orderability, and exhaustive list-coloring search.
"""

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from matred import kernels
from matred.bitset import bit_list, bits, mask_of
from matred.core import (
    Matroid,
    Partition,
    bases,
    coloring_number,
    matroid_intersection_max,
)
from matred.errors import (
    GroundSetMismatch,
    GroundSetTooLarge,
    LineWithThreeColors,
    NotGallai,
    SearchSpaceTooLarge,
    TooLarge,
)
from matred.zoo import Graph, HyperplaneFamily, partition_matroid

EXHAUSTIVE_LIMIT = 10**6
DEFAULT_TRIALS = 10**5


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking a partition against a source matroid.

    ``weak_map`` is certified only when ``method`` is "exhaustive";
    a sampled run that found no violation reports weak_map=True but stays
    uncertified. ``witness`` holds a violating transversal when one was
    found. ``bound_satisfied`` compares the reduction's coloring number
    against ``claimed_bound`` (trivially true when no bound was claimed).
    """

    weak_map: bool
    rank_preserving: bool
    chi_source: int
    chi_reduction: int
    bound_satisfied: bool
    method: str
    trials: int = 0
    witness: tuple = ()

    @property
    def certified(self):
        return self.weak_map and self.method == "exhaustive"


def _transversal_space(partition: Partition):
    size = 1
    for c in partition.classes:
        size *= c.bit_count()
    return size


def is_weak_map(partition: Partition, M: Matroid, claimed_bound=None, trials=None, jobs=1):
    """Check that every transversal of the classes is independent in M.

    Exhaustive (with early abort) when the transversal space has at most
    10^6 members, uniform sampling otherwise. Rank preservation is decided
    via a maximum common independent set of M with the partition matroid.
    """
    if partition.n != M.n:
        raise GroundSetMismatch("partition and matroid ground sets differ")
    space = _transversal_space(partition)
    witness = ()
    if space <= EXHAUSTIVE_LIMIT and trials is None:
        method = "exhaustive"
        used_trials = 0
        if M.n <= 16:
            hit = kernels.weak_map_witness(M.table(), M.n, list(partition.classes))
            if hit != -1:
                witness = tuple(bit_list(hit))
        else:
            hit = _weak_map_dfs(M, partition.classes)
            if hit is not None:
                witness = hit
    else:
        method = "sampled"
        used_trials = trials or DEFAULT_TRIALS
        class_sets = partition.as_sets()

        def run_shard(args):
            seed, count = args
            rng = random.Random(seed)
            for _ in range(count):
                pick = [rng.choice(c) for c in class_sets]
                if not M.indep(mask_of(pick)):
                    return tuple(sorted(pick))
            return None

        shards = max(1, jobs)
        per = -(-used_trials // shards)
        shard_args = [(0xACE + i, per) for i in range(shards)]
        if shards == 1:
            results = [run_shard(shard_args[0])]
        else:
            with ThreadPoolExecutor(max_workers=shards) as pool:
                results = list(pool.map(run_shard, shard_args))
        witness = next((w for w in results if w is not None), ())

    weak = not witness
    chi_source, _ = coloring_number(M)
    chi_reduction = partition.max_class_size()
    q = len(partition.classes)
    common, size = matroid_intersection_max(M, partition_matroid(partition))
    rank_preserving = size == q and q == M.rank()
    bound_ok = claimed_bound is None or chi_reduction <= claimed_bound
    return VerificationReport(
        weak,
        rank_preserving,
        chi_source,
        chi_reduction,
        bound_ok,
        method,
        used_trials,
        witness,
    )


def _weak_map_dfs(M, classes):
    """Oracle-driven early-abort transversal sweep for large ground sets."""
    q = len(classes)

    def dfs(prefix, i):
        if i == q:
            return None
        for e in bits(classes[i]):
            nxt = prefix | (1 << e)
            if not M.indep(nxt):
                for j in range(i + 1, q):
                    nxt |= classes[j] & -classes[j]
                return tuple(bit_list(nxt))
            hit = dfs(nxt, i + 1)
            if hit is not None:
                return hit
        return None

    return dfs(0, 0)


def verify_reduction(result, M: Matroid, trials=None, jobs=1):
    """Certify a ReductionResult against its source matroid."""
    return is_weak_map(
        result.partition, M, claimed_bound=result.claimed_chi_bound,
        trials=trials, jobs=jobs,
    )


def min_partition_reduction_chi(M: Matroid, rank_preserving=False):
    """Minimum over all weak-map partitions of the largest class size.

    The brute-force oracle behind every tightness claim; enumerates set
    partitions in restricted-growth order with pruning.
    """
    if M.n > 12:
        raise GroundSetTooLarge("partition sweep capped at 12 elements")
    M.require_loopless()
    return kernels.min_partition_chi(M.table(), M.n, M.rank(), rank_preserving)


def random_weak_map_partitions(M: Matroid, num_classes, trials, seed=0xC0FFEE, jobs=1):
    """Sampled search for weak-map partitions into at most ``num_classes``
    classes; yields (classes-as-sets, max class size) for every hit.

    Candidates are uniform random class assignments; each candidate is
    checked exhaustively (early abort), so every returned partition is a
    certified weak map even though the search over candidates is sampled.
    """
    n = M.n

    def run_shard(args):
        shard_seed, count = args
        rng = random.Random(shard_seed)
        hits = []
        for _ in range(count):
            assignment = [rng.randrange(num_classes) for _ in range(n)]
            classes = [0] * num_classes
            for e, c in enumerate(assignment):
                classes[c] |= 1 << e
            classes = [c for c in classes if c]
            if _weak_map_dfs(M, classes) is None:
                hits.append(
                    (
                        [bit_list(c) for c in classes],
                        max(c.bit_count() for c in classes),
                    )
                )
        return hits

    shards = max(1, jobs)
    per = -(-trials // shards)
    args = [(seed + 7919 * i, per) for i in range(shards)]
    if shards == 1:
        all_hits = [run_shard(args[0])]
    else:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            all_hits = list(pool.map(run_shard, args))
    return [hit for hits in all_hits for hit in hits]


# ---------------------------------------------------------------------------
# graph colorings


def gallai_check(graph: Graph, coloring: Partition):
    """For an edge coloring of a complete graph without rainbow triangles,
    decide whether some color class contains a spanning connected subgraph."""
    nv = graph.num_vertices
    if len(graph.edges) != nv * (nv - 1) // 2 or len(set(graph.edges)) != len(
        graph.edges
    ):
        raise NotGallai("graph must be complete and simple")
    if coloring.n != len(graph.edges):
        raise GroundSetMismatch("coloring is not over the edge set")
    color = {}
    for e in range(coloring.n):
        color[graph.edges[e]] = coloring.class_of(e)
    pair_color = {}
    for (u, v), c in color.items():
        pair_color[(min(u, v), max(u, v))] = c
    for t in itertools.combinations(range(nv), 3):
        cs = {
            pair_color[(t[0], t[1])],
            pair_color[(t[0], t[2])],
            pair_color[(t[1], t[2])],
        }
        if len(cs) == 3:
            raise NotGallai(f"rainbow triangle on vertices {t}")
    for cls in coloring.classes:
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in bits(cls):
            u, v = graph.edges[e]
            parent[find(u)] = find(v)
        if len({find(v) for v in range(nv)}) == 1:
            return True
    return False


@dataclass(frozen=True)
class ViolationWitness:
    """A trichotomy violation: a line-condition-respecting 3-coloring with
    no empty class, no singleton class, and no class complementing a line."""

    classes: tuple


def check_projective_trichotomy(family: HyperplaneFamily, classes):
    """Classify a 3-coloring of a projective plane's points in which every
    line meets at most two classes.

    Returns "(i)" (an empty class), "(ii)" (a singleton class), "(iii)"
    (a class is the complement of a line), or a ViolationWitness.
    """
    classes = list(classes)
    if len(classes) > 3:
        raise ValueError("at most three classes expected")
    while len(classes) < 3:
        classes.append(0)
    union = 0
    for c in classes:
        if union & c:
            raise ValueError("classes overlap")
        union |= c
    if union != (1 << family.n) - 1:
        raise ValueError("classes do not cover the points")
    for line in family.hyperplanes:
        met = sum(1 for c in classes if c & line)
        if met >= 3:
            raise LineWithThreeColors(bit_list(line))
    if any(c == 0 for c in classes):
        return "(i)"
    if any(c.bit_count() == 1 for c in classes):
        return "(ii)"
    full = (1 << family.n) - 1
    complements = {full & ~line for line in family.hyperplanes}
    if any(c in complements for c in classes):
        return "(iii)"
    return ViolationWitness(tuple(classes))


# ---------------------------------------------------------------------------
# base orderability and list colorings


def is_strongly_base_orderable(M: Matroid):
    """Decide whether every pair of bases admits a bijection under which
    every subset swap stays a basis (brute force over bijections)."""
    if M.n > 10 or M.rank() > 5:
        raise TooLarge("base-orderability check capped at 10 elements, rank 5")
    table = M.table()
    all_bases = bases(M)

    def swap_ok(b1_list, image):
        # gamma maps b1_list[i] -> image[i]; check every subset swap
        r = len(b1_list)
        b1_mask = mask_of(b1_list)
        for sub in range(1 << r):
            swapped = b1_mask
            for i in range(r):
                if sub >> i & 1:
                    swapped = (swapped & ~(1 << b1_list[i])) | (1 << image[i])
            if swapped.bit_count() != r or not table[swapped]:
                return False
        return True

    for i, b1 in enumerate(all_bases):
        b1_list = bit_list(b1)
        for b2 in all_bases[i + 1 :]:
            b2_list = bit_list(b2)
            # allowed targets from the single-swap condition prune the
            # bijection search hard
            allowed = []
            for e in b1_list:
                targets = [
                    f
                    for f in b2_list
                    if table[(b1 & ~(1 << e)) | (1 << f)]
                    and ((b1 & ~(1 << e)) | (1 << f)).bit_count() == len(b1_list)
                ]
                if not targets:
                    break
                allowed.append(targets)
            else:
                if any(
                    len(set(image)) == len(b1_list) and swap_ok(b1_list, image)
                    for image in itertools.product(*allowed)
                ):
                    continue
            return False
    return True


def list_colorable(matroids, lists):
    """Exhaustive search for a list coloring in which every color class is
    independent in every given matroid.

    ``lists`` maps each element to its available colors (arbitrary
    hashable labels). Returns (True, {element: color}) or (False, None).
    """
    matroids = list(matroids)
    n = matroids[0].n
    if any(M.n != n for M in matroids):
        raise GroundSetMismatch("matroids must share the ground set")
    space = 1
    for e in range(n):
        space *= len(lists[e])
        if space > 10**7:
            raise SearchSpaceTooLarge("list-coloring space exceeds 10^7")
    labels = sorted({c for e in range(n) for c in lists[e]})
    index = {c: i for i, c in enumerate(labels)}
    int_lists = [[index[c] for c in lists[e]] for e in range(n)]
    if n <= 16 and all(M.n <= 16 for M in matroids):
        tables = [M.table() for M in matroids]
        assignment = kernels.list_color_witness(tables, n, int_lists)
    else:
        assignment = _list_color_dfs(matroids, int_lists, len(labels))
    if assignment is None:
        return False, None
    return True, {e: labels[assignment[e]] for e in range(n)}


def _list_color_dfs(matroids, int_lists, num_colors):
    n = matroids[0].n
    masks = [0] * num_colors
    assign = [-1] * n

    def dfs(e):
        if e == n:
            return True
        bit = 1 << e
        for c in int_lists[e]:
            new = masks[c] | bit
            if all(M.indep(new) for M in matroids):
                masks[c] = new
                assign[e] = c
                if dfs(e + 1):
                    return True
                masks[c] ^= bit
                assign[e] = -1
        return False

    return assign if dfs(0) else None


def common_independent_partition(matroids, k):
    """Exhaustive search for a partition of the ground set into at most k
    sets independent in every given matroid; returns (bool, Partition)."""
    matroids = list(matroids)
    n = matroids[0].n
    if n > 10:
        raise GroundSetTooLarge("common-partition search capped at 10 elements")
    if any(M.n != n for M in matroids):
        raise GroundSetMismatch("matroids must share the ground set")
    classes = [0] * k

    def dfs(e, used):
        if e == n:
            return True
        bit = 1 << e
        limit = min(used + 1, k)
        for c in range(limit):
            new = classes[c] | bit
            if all(M.indep(new) for M in matroids):
                classes[c] = new
                if dfs(e + 1, max(used, c + 1)):
                    return True
                classes[c] ^= bit
        return False

    if not dfs(0, 0):
        return False, None
    found = tuple(c for c in classes if c)
    return True, Partition(n, found)
