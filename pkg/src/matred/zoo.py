"""Concrete matroid classes: partition, uniform, graphic, transversal,
gammoid, paving and laminar matroids, plus generators for the extremal
instances used throughout the test suite (complete graphs, projective
planes, the three-partition-matroid list-coloring fixture, and the tight
laminar constructions of ranks 2 and k-1).
"""

from dataclasses import dataclass

from matred.bitset import bit_list, bits, full_mask, mask_of
from matred.core import Matroid, Partition
from matred.errors import (
    ElementOutsideT,
    InvalidFamily,
    LoopPresent,
    NotLaminar,
    SelfLoopPresent,
    UnsupportedOrder,
)

# ---------------------------------------------------------------------------
# combinatorial carriers


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph without self-loops; edge index = element id."""

    num_vertices: int
    edges: tuple

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise SelfLoopPresent(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError("edge endpoint out of range")


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph on parts of sizes ``num_left`` and ``num_right``."""

    num_left: int
    num_right: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        for a, b in self.edges:
            if not (0 <= a < self.num_left and 0 <= b < self.num_right):
                raise ValueError("edge endpoint out of range")
            if (a, b) in seen:
                raise ValueError("duplicate edge in bipartite graph")
            seen.add((a, b))

    def adjacency(self):
        adj = [[] for _ in range(self.num_left)]
        for a, b in sorted(self.edges):
            adj[a].append(b)
        return adj


@dataclass(frozen=True)
class Digraph:
    num_vertices: int
    arcs: tuple

    def __post_init__(self):
        for u, v in self.arcs:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError("arc endpoint out of range")


@dataclass(frozen=True)
class HyperplaneFamily:
    """Family H_1..H_q presenting a paving matroid of rank r.

    Conditions validated at construction: every H_i is a proper subset of
    the ground set with at least r elements, and distinct members intersect
    in at most r-2 elements.
    """

    rank: int
    n: int
    hyperplanes: tuple  # masks

    def __post_init__(self):
        r, n = self.rank, self.n
        if r < 2:
            raise InvalidFamily("rank must be at least 2")
        if n < r:
            raise InvalidFamily("ground set smaller than the rank")
        full = full_mask(n)
        hs = self.hyperplanes
        for h in hs:
            if h & ~full:
                raise InvalidFamily("hyperplane outside the ground set")
            if h == full:
                raise InvalidFamily("hyperplane equals the ground set")
            if h.bit_count() < r:
                raise InvalidFamily(f"hyperplane smaller than the rank: {bit_list(h)}")
        for i in range(len(hs)):
            for j in range(i + 1, len(hs)):
                if (hs[i] & hs[j]).bit_count() > r - 2:
                    raise InvalidFamily(
                        f"hyperplanes {i} and {j} share more than r-2 elements"
                    )

    @staticmethod
    def from_sets(rank, n, sets):
        return HyperplaneFamily(rank, n, tuple(mask_of(s) for s in sets))


@dataclass(frozen=True)
class LaminarSpec:
    """Nested set family with per-set capacities (n, ((mask, cap), ...))."""

    n: int
    sets: tuple

    def __post_init__(self):
        full = full_mask(self.n)
        for mask, cap in self.sets:
            if mask == 0:
                raise NotLaminar("empty set in laminar family")
            if mask & ~full:
                raise NotLaminar("set outside the ground set")
            if cap < 1:
                raise NotLaminar("capacities must be at least 1")
        for i in range(len(self.sets)):
            for j in range(i + 1, len(self.sets)):
                a, b = self.sets[i][0], self.sets[j][0]
                inter = a & b
                if inter and inter != a and inter != b:
                    raise NotLaminar("family members cross")

    @staticmethod
    def from_sets(n, sets_with_caps):
        return LaminarSpec(n, tuple((mask_of(s), c) for s, c in sets_with_caps))


# ---------------------------------------------------------------------------
# matroid classes


class PartitionMatroid(Matroid):
    def __init__(self, partition: Partition):
        super().__init__(partition.n)
        self.partition = partition

    def _indep(self, mask):
        return all((mask & c).bit_count() <= 1 for c in self.partition.classes)


class UniformMatroid(Matroid):
    def __init__(self, r, n):
        if not 0 <= r <= n:
            raise ValueError("uniform matroid needs 0 <= r <= n")
        if r == 0 and n > 0:
            raise LoopPresent("rank-0 uniform matroid on a nonempty set")
        super().__init__(n)
        self.r = r

    def _indep(self, mask):
        return mask.bit_count() <= self.r


class GraphicMatroid(Matroid):
    """Edge subsets are independent iff they form a forest (union-find)."""

    def __init__(self, graph: Graph):
        super().__init__(len(graph.edges))
        self.graph = graph

    def _indep(self, mask):
        parent = list(range(self.graph.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in bits(mask):
            u, v = self.graph.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True


class TransversalMatroid(Matroid):
    """Ground set = left part; independent = matchable into the right part."""

    def __init__(self, graph: BipartiteGraph):
        super().__init__(graph.num_left)
        self.graph = graph
        self._adj = graph.adjacency()
        for a in range(graph.num_left):
            if not self._adj[a]:
                raise LoopPresent(f"left vertex {a} has no neighbors")

    def _indep(self, mask):
        match_b = [-1] * self.graph.num_right

        def augment(a, seen):
            for b in self._adj[a]:
                if b in seen:
                    continue
                seen.add(b)
                if match_b[b] == -1 or augment(match_b[b], seen):
                    match_b[b] = a
                    return True
            return False

        for a in bits(mask):
            if not augment(a, set()):
                return False
        return True


def deficiency_rank(graph: BipartiteGraph, elements):
    """Rank of a left-vertex set in the transversal matroid by the
    deficiency formula min over Y of |X| - |Y| + |N(Y)| (brute force)."""
    elems = list(elements)
    adj = graph.adjacency()
    best = len(elems)
    for sub in range(1, 1 << len(elems)):
        y = [elems[i] for i in bits(sub)]
        nbrs = set()
        for a in y:
            nbrs.update(adj[a])
        best = min(best, len(elems) - len(y) + len(nbrs))
    return best


class Gammoid(Matroid):
    """Subsets of the sinks linkable from the sources by vertex-disjoint
    directed paths; decided by unit-capacity max-flow with vertex splitting."""

    def __init__(self, digraph: Digraph, sources, sinks):
        nv = digraph.num_vertices
        sources = sorted(set(sources))
        sinks = sorted(set(sinks))
        if any(not 0 <= v < nv for v in sources + sinks):
            raise ValueError("source or sink out of range")
        super().__init__(len(sinks))
        self.digraph = digraph
        self.sources = tuple(sources)
        self.sinks = tuple(sinks)
        self._arc_heads = {}  # v_out adjacency over split nodes
        for u, v in sorted(set(digraph.arcs)):
            self._arc_heads.setdefault(u, []).append(v)
        for e in range(self.n):
            if not self.indep(1 << e):
                raise LoopPresent(f"sink {self.sinks[e]} not linkable from the sources")

    def is_linkable(self, vertex_set):
        """Linkability of an explicit set of sink vertices."""
        vs = set(vertex_set)
        if not vs.issubset(self.sinks):
            raise ElementOutsideT(f"{sorted(vs - set(self.sinks))} are not sinks")
        index = {v: i for i, v in enumerate(self.sinks)}
        return self.indep(mask_of(index[v] for v in vs))

    def _indep(self, mask):
        targets = {self.sinks[e] for e in bits(mask)}
        if not targets:
            return True
        # split nodes: ('i', v) / ('o', v), plus 'src' and 'snk'
        cap = {}

        def add(u, v):
            cap[(u, v)] = 1

        nv = self.digraph.num_vertices
        for v in range(nv):
            add(("i", v), ("o", v))
        for u, heads in self._arc_heads.items():
            for v in heads:
                if u != v:
                    add(("o", u), ("i", v))
        for s in self.sources:
            add(("src", None), ("i", s))
        for t in sorted(targets):
            add(("o", t), ("snk", None))
        adj = {}
        for (u, v) in cap:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        flow = 0
        src, snk = ("src", None), ("snk", None)
        for _ in range(len(targets)):
            prev = {src: None}
            queue = [src]
            while queue and snk not in prev:
                nxt = []
                for u in queue:
                    for v in adj.get(u, ()):
                        if v in prev:
                            continue
                        if cap.get((u, v), 0) > 0:
                            prev[v] = u
                            nxt.append(v)
                queue = nxt
            if snk not in prev:
                return False
            v = snk
            while prev[v] is not None:
                u = prev[v]
                cap[(u, v)] -= 1
                cap[(v, u)] = cap.get((v, u), 0) + 1
                v = u
            flow += 1
        return flow == len(targets)


class PavingMatroid(Matroid):
    """Every set below the rank is independent; rank-size sets are
    independent unless contained in a family hyperplane."""

    def __init__(self, family: HyperplaneFamily):
        super().__init__(family.n)
        self.family = family

    def _indep(self, mask):
        size = mask.bit_count()
        r = self.family.rank
        if size < r:
            return True
        if size > r:
            return False
        return all(mask & ~h for h in self.family.hyperplanes)


class LaminarMatroid(Matroid):
    def __init__(self, spec: LaminarSpec):
        super().__init__(spec.n)
        self.spec = spec

    def _indep(self, mask):
        return all((mask & f).bit_count() <= c for f, c in self.spec.sets)


# constructor functions (the names the rest of the package uses)


def partition_matroid(classes, n=None):
    """Partition matroid from a Partition or an iterable of classes."""
    if not isinstance(classes, Partition):
        sets = [list(c) for c in classes]
        if n is None:
            n = sum(len(c) for c in sets)
        classes = Partition.from_sets(n, sets)
    return PartitionMatroid(classes)


def uniform(r, n):
    return UniformMatroid(r, n)


def free_matroid(n):
    return UniformMatroid(n, n)


def graphic_matroid(graph: Graph):
    return GraphicMatroid(graph)


def transversal_matroid(graph: BipartiteGraph):
    return TransversalMatroid(graph)


def gammoid(digraph: Digraph, sources, sinks):
    return Gammoid(digraph, sources, sinks)


def paving_matroid(family: HyperplaneFamily):
    return PavingMatroid(family)


def paving_coloring_number(family: HyperplaneFamily):
    """Closed-form coloring number of the paving matroid: the maximum of
    ceil(|S|/r) and ceil(|H_i|/(r-1)) over the family."""
    r = family.rank
    best = -(-family.n // r)
    for h in family.hyperplanes:
        best = max(best, -(-h.bit_count() // (r - 1)))
    return best


def laminar_matroid(spec: LaminarSpec):
    return LaminarMatroid(spec)


# ---------------------------------------------------------------------------
# finite projective planes

_GF_POLY = {4: (2, 0b111), 8: (2, 0b1011)}  # (characteristic, modulus)


def _gf_tables(q):
    if q in (2, 3, 5, 7):
        add = [[(a + b) % q for b in range(q)] for a in range(q)]
        mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        return add, mul
    if q in _GF_POLY:
        _, poly = _GF_POLY[q]
        deg = q.bit_length() - 1

        def pmul(a, b):
            acc = 0
            while b:
                if b & 1:
                    acc ^= a
                a <<= 1
                if a >> deg:
                    a ^= poly
                b >>= 1
            return acc

        add = [[a ^ b for b in range(q)] for a in range(q)]
        mul = [[pmul(a, b) for b in range(q)] for a in range(q)]
        return add, mul
    raise UnsupportedOrder(f"no GF({q}) arithmetic available")


def projective_plane(q):
    """Points and lines of PG(2, q) for q in {2,3,4,5,7,8}.

    Returns (points, family): homogeneous coordinate triples and the lines
    as a rank-3 hyperplane family over point indices. The incidence axioms
    and the standard counts are verified before returning.
    """
    if q not in (2, 3, 4, 5, 7, 8):
        raise UnsupportedOrder(f"unsupported plane order {q}")
    add, mul = _gf_tables(q)
    points = [(1, y, z) for y in range(q) for z in range(q)]
    points += [(0, 1, z) for z in range(q)]
    points.append((0, 0, 1))
    assert len(points) == q * q + q + 1

    def dot(u, v):
        acc = 0
        for i in range(3):
            acc = add[acc][mul[u[i]][v[i]]]
        return acc

    lines = []
    for coeff in points:  # lines share the canonical triple enumeration
        m = mask_of(i for i, p in enumerate(points) if dot(coeff, p) == 0)
        lines.append(m)
    for m in lines:
        if m.bit_count() != q + 1:
            raise UnsupportedOrder("line size check failed")
    npts = len(points)
    for i in range(npts):  # (P1): two points, one common line
        for j in range(i + 1, npts):
            both = 1 << i | 1 << j
            if sum(1 for m in lines if m & both == both) != 1:
                raise UnsupportedOrder("axiom (P1) failed")
    for i in range(len(lines)):  # (P2): two lines, one common point
        for j in range(i + 1, len(lines)):
            if (lines[i] & lines[j]).bit_count() != 1:
                raise UnsupportedOrder("axiom (P2) failed")
    quad = [points.index(p) for p in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]]
    for a in range(4):  # (P3): a quadrangle with no collinear triple
        for b in range(a + 1, 4):
            for c in range(b + 1, 4):
                tri = mask_of((quad[a], quad[b], quad[c]))
                if any(m & tri == tri for m in lines):
                    raise UnsupportedOrder("axiom (P3) failed")
    family = HyperplaneFamily(3, npts, tuple(lines))
    return points, family


def fano_family():
    """The seven lines of the order-2 plane as a rank-3 family."""
    _, family = projective_plane(2)
    return family


# ---------------------------------------------------------------------------
# generators for named instances


def complete_graph(n):
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n))
    return Graph(n, edges)


def kiraly_triple():
    """Three partition matroids on {a..f} = {0..5} whose ground set splits
    into two common bases, together with the 2-element color lists that
    admit no proper list coloring.
    """
    c1 = [[0, 3], [1, 4], [2, 5]]
    c2 = [[0, 4], [1, 5], [2, 3]]
    c3 = [[0, 5], [1, 3], [2, 4]]
    matroids = [partition_matroid(c, 6) for c in (c1, c2, c3)]
    lists = {0: [1, 2], 1: [1, 3], 2: [2, 3], 3: [1, 2], 4: [1, 3], 5: [2, 3]}
    return matroids, lists


def tight_rank2_laminar(k):
    """Rank-2 laminar instance on 2k elements: three near-equal blocks with
    capacity 1 under a global capacity of 2. Its coloring number is k and
    no partition-matroid reduction beats max class size floor(4k/3)."""
    if k < 1:
        raise ValueError("k must be positive")
    n = 2 * k
    s1 = -(-n // 3)
    s3 = n // 3
    s2 = n - s1 - s3
    blocks = [list(range(0, s1)), list(range(s1, s1 + s2)), list(range(s1 + s2, n))]
    sets = [(list(range(n)), 2)] + [(b, 1) for b in blocks if b]
    return LaminarSpec.from_sets(n, sets)


def tight_gammoid_laminar(k):
    """Laminar instance on k(k-1) elements: k blocks of size k-1 with
    capacity 1 under a global capacity of k-1. Its coloring number is k and
    no partition-matroid reduction beats max class size 2k-2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    n = k * (k - 1)
    blocks = [list(range(i * (k - 1), (i + 1) * (k - 1))) for i in range(k)]
    sets = [(list(range(n)), k - 1)] + [(b, 1) for b in blocks]
    return LaminarSpec.from_sets(n, sets)


def laminar_to_digraph(spec: LaminarSpec):
    """Realize a laminar matroid as a gammoid.

    Elements become sink vertices 0..n-1. Each family set gets one gate
    vertex per unit of capacity; paths must climb the nesting chain through
    one gate per ancestor, so vertex-disjointness enforces exactly the
    capacity constraints. Source vertices feed the root gates and the
    elements lying outside every family set.
    """
    n = spec.n
    sets = list(spec.sets)
    order = sorted(range(len(sets)), key=lambda i: sets[i][0].bit_count())
    parent = [-1] * len(sets)
    for pos, i in enumerate(order):
        for j in order[pos + 1 :]:
            if sets[i][0] & ~sets[j][0] == 0 and i != j:
                parent[i] = j
                break
    gates = []
    next_vertex = n
    for mask, cap in sets:
        count = min(cap, mask.bit_count())
        gates.append(list(range(next_vertex, next_vertex + count)))
        next_vertex += count
    num_sources = n if n else 1
    sources = list(range(next_vertex, next_vertex + num_sources))
    next_vertex += num_sources
    arcs = []
    innermost = [-1] * n
    for i in order:  # ascending size: first hit is the innermost set
        for e in bits(sets[i][0]):
            if innermost[e] == -1:
                innermost[e] = i
    for i, (mask, _) in enumerate(sets):
        feeders = gates[parent[i]] if parent[i] != -1 else sources
        for f in feeders:
            for g in gates[i]:
                arcs.append((f, g))
    for e in range(n):
        if innermost[e] == -1:
            for s in sources:
                arcs.append((s, e))
        else:
            for g in gates[innermost[e]]:
                arcs.append((g, e))
    digraph = Digraph(next_vertex, tuple(arcs))
    return digraph, sources, list(range(n))
