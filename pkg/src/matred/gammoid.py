"""End-to-end gammoid reduction.

A gammoid is presented as the restriction (to a marked subset of A) of the
dual of a transversal matroid on a bipartite graph (A, B; E). The pipeline
minimizes the presentation, finds a forest in which every B-vertex has
degree exactly two, and then runs a potential-function local search on the
forest's components until none of them carries too many marked vertices.
The component classes of the final forest form a rank-preserving weak map
with max class size at most 2k-2, where k is the coloring number.
"""

import random
from dataclasses import dataclass

from matred import zoo
from matred.bitset import bits, mask_of
from matred.core import Matroid, Partition, coloring_number, matroid_intersection_max, matroid_union_max
from matred.errors import (
    IterationCapExceeded,
    NoB2Forest,
    NoLargeComponent,
    NoReachableSmall,
    PresentationMismatch,
    TightSetMeetsS,
)
from matred.reducers import ReductionResult

INF = float("inf")


@dataclass(frozen=True)
class BipartitePresentation:
    """Bipartite graph (A, B; E) with a marked subset of A.

    The presented matroid is the restriction to the marked vertices of the
    dual of the transversal matroid defined on A; equivalently, a marked
    set X is independent iff the graph minus X still has a matching
    covering B. A- and B-vertex ids live in separate namespaces.
    """

    a_vertices: tuple
    b_vertices: tuple
    edges: frozenset  # (a, b) pairs
    marked: frozenset

    def __post_init__(self):
        a_set, b_set = set(self.a_vertices), set(self.b_vertices)
        assert all(a in a_set and b in b_set for a, b in self.edges)
        assert self.marked <= a_set

    @staticmethod
    def build(a_vertices, b_vertices, edges, marked):
        return BipartitePresentation(
            tuple(sorted(a_vertices)),
            tuple(sorted(b_vertices)),
            frozenset(edges),
            frozenset(marked),
        )

    def adj_of_b(self):
        adj = {b: [] for b in self.b_vertices}
        for a, b in sorted(self.edges):
            adj[b].append(a)
        return adj

    def adj_of_a(self):
        adj = {a: [] for a in self.a_vertices}
        for a, b in sorted(self.edges):
            adj[a].append(b)
        return adj

    def presented_matroid(self):
        return PresentedMatroid(self)

    def matching_covering_b(self, excluded_a=frozenset()):
        """Matching covering every B-vertex while avoiding ``excluded_a``,
        or None. Returned as a dict b -> a."""
        adj = self.adj_of_b()
        match_a = {}
        match_b = {}

        def augment(b, seen):
            for a in adj[b]:
                if a in excluded_a or a in seen:
                    continue
                seen.add(a)
                if a not in match_a or augment(match_a[a], seen):
                    match_a[a] = b
                    match_b[b] = a
                    return True
            return False

        for b in self.b_vertices:
            if not augment(b, set()):
                return None
        return match_b

    def delete_block(self, tight):
        """Split off a tight set: drop it and its whole neighborhood."""
        tight = frozenset(tight)
        gone_a = {a for a, b in self.edges if b in tight}
        if gone_a & self.marked:
            raise TightSetMeetsS(sorted(gone_a & self.marked))
        return BipartitePresentation.build(
            (a for a in self.a_vertices if a not in gone_a),
            (b for b in self.b_vertices if b not in tight),
            ((a, b) for a, b in self.edges if a not in gone_a and b not in tight),
            self.marked,
        )

    def delete_pair(self, a, b):
        return BipartitePresentation.build(
            (x for x in self.a_vertices if x != a),
            (y for y in self.b_vertices if y != b),
            ((x, y) for x, y in self.edges if x != a and y != b),
            self.marked,
        )

    def delete_a_vertex(self, a):
        return BipartitePresentation.build(
            (x for x in self.a_vertices if x != a),
            self.b_vertices,
            ((x, y) for x, y in self.edges if x != a),
            self.marked,
        )


class PresentedMatroid(Matroid):
    """Oracle of the matroid a presentation presents, over sorted marked ids."""

    def __init__(self, presentation: BipartitePresentation):
        self.presentation = presentation
        self.elements = tuple(sorted(presentation.marked))
        super().__init__(len(self.elements))

    def _indep(self, mask):
        excluded = frozenset(self.elements[i] for i in bits(mask))
        return self.presentation.matching_covering_b(excluded) is not None


# ---------------------------------------------------------------------------
# presentation construction and minimization


def dualize_gammoid(digraph: zoo.Digraph, sources, sinks):
    """Present a gammoid as marked restriction of a dual transversal matroid.

    A-side: all digraph vertices; B-side: one vertex per non-source, whose
    neighbors are itself and its in-neighbors. The construction is gated by
    an oracle-equivalence audit against the flow-based gammoid oracle
    (exhaustive up to 12 sinks, 500 random subsets beyond), so a wrong
    convention can never be returned silently.
    """
    M = zoo.gammoid(digraph, sources, sinks)
    src = set(M.sources)
    in_neighbors = {v: {v} for v in range(digraph.num_vertices)}
    for u, v in digraph.arcs:
        in_neighbors[v].add(u)
    b_side = [v for v in range(digraph.num_vertices) if v not in src]
    edges = [(a, b) for b in b_side for a in sorted(in_neighbors[b])]
    pres = BipartitePresentation.build(
        range(digraph.num_vertices), b_side, edges, M.sinks
    )
    presented = pres.presented_matroid()
    n = M.n
    if n <= 12:
        masks = range(1 << n)
    else:
        rng = random.Random(2024)
        masks = [rng.randrange(1 << n) for _ in range(500)]
    for mask in masks:
        if presented.indep(mask) != M.indep(mask):
            raise PresentationMismatch(f"oracles differ on mask {mask:#x}")
    return pres


def maximal_tight_set(pres: BipartitePresentation):
    """Union of all B-sets whose neighborhood has equal size.

    Computed as the B-vertices not reachable by alternating paths from
    A-vertices exposed by a matching covering B; empty iff the strong Hall
    condition holds.
    """
    if not pres.b_vertices:
        return frozenset()
    match_b = pres.matching_covering_b()
    assert match_b is not None, "presentation lost the Hall condition"
    partner = {a: b for b, a in match_b.items()}
    adj_a = pres.adj_of_a()
    queue = [a for a in pres.a_vertices if a not in partner]
    seen_a = set(queue)
    reached_b = set()
    while queue:
        nxt = []
        for a in queue:
            for b in adj_a[a]:
                if b in reached_b:
                    continue
                reached_b.add(b)
                back = match_b[b]
                if back not in seen_a:
                    seen_a.add(back)
                    nxt.append(back)
        queue = nxt
    return frozenset(set(pres.b_vertices) - reached_b)


def find_b2_forest(pres: BipartitePresentation):
    """Forest with every B-vertex of degree exactly two.

    Existence is decided as a maximum common independent set of the
    graphic matroid of the underlying graph and the matroid bounding each
    B-vertex's edges by two; it has the required size iff the strong Hall
    condition holds. When possible the forest is upgraded to one with all
    leaves marked, which the local search needs.
    """
    edge_list = sorted(pres.edges)
    if not pres.b_vertices:
        return B2Forest(pres, frozenset())
    a_index = {a: i for i, a in enumerate(pres.a_vertices)}
    b_index = {b: len(pres.a_vertices) + i for i, b in enumerate(pres.b_vertices)}
    graph = zoo.Graph(
        len(pres.a_vertices) + len(pres.b_vertices),
        tuple((a_index[a], b_index[b]) for a, b in edge_list),
    )
    graphic = zoo.graphic_matroid(graph)
    groups = {}
    for i, (a, b) in enumerate(edge_list):
        groups.setdefault(b, []).append(i)
    degree_cap = zoo.LaminarSpec.from_sets(
        len(edge_list), [(g, 2) for g in groups.values()]
    )
    capped = zoo.laminar_matroid(degree_cap)
    common, size = matroid_intersection_max(graphic, capped)
    if size != 2 * len(pres.b_vertices):
        raise NoB2Forest(f"common independent set of size {size}")
    clean = find_clean_forest(pres)
    if clean is not None:
        return clean
    return B2Forest(pres, frozenset(edge_list[i] for i in bits(common)))


def find_clean_forest(
    pres: BipartitePresentation, prefer=None, marked_cap=None, node_budget=10**6
):
    """A B2-forest in which every unmarked A-vertex with at least one edge
    has forest degree two or more (so all leaves and all non-isolated
    singleton components are marked), or None if no such forest exists.

    Backtracking over the per-B-vertex neighbor pairs with acyclicity and
    degree-deficiency pruning; ``prefer`` biases the branch order toward a
    previous forest's pairs so repairs stay local. With ``marked_cap`` the
    search additionally requires every component to contain at most that
    many marked vertices.
    """
    adj_b = pres.adj_of_b()
    b_list = sorted(pres.b_vertices, key=lambda b: (len(adj_b[b]), b))
    if any(len(adj_b[b]) < 2 for b in b_list):
        return None
    adj_a = pres.adj_of_a()
    unmarked = [a for a in pres.a_vertices if a not in pres.marked and adj_a[a]]
    preferred_pairs = {}
    if prefer is not None:
        by_b = {}
        for a, b in prefer:
            by_b.setdefault(b, []).append(a)
        preferred_pairs = {b: tuple(sorted(pair)) for b, pair in by_b.items()}
    options = {}
    for b in b_list:
        nbrs = sorted(adj_b[b])
        pairs = [
            (x, y) for i, x in enumerate(nbrs) for y in nbrs[i + 1 :]
        ]
        pairs.sort(
            key=lambda p: (
                p != preferred_pairs.get(b),
                -sum(1 for v in p if v not in pres.marked),
                p,
            )
        )
        options[b] = pairs
    # how many later B-vertices can still raise each vertex's degree
    potential = {a: 0 for a in pres.a_vertices}
    for b in b_list:
        for a in adj_b[b]:
            potential[a] += 1
    degree = {a: 0 for a in pres.a_vertices}
    parent = {a: a for a in pres.a_vertices}
    marked_in = {a: int(a in pres.marked) for a in pres.a_vertices}

    def find(x):
        # no path compression: unions must be reversible on backtrack
        while parent[x] != x:
            x = parent[x]
        return x

    chosen = {}
    budget = [node_budget]

    def feasible():
        return all(
            degree[a] + potential[a] >= 2 for a in unmarked
        )

    def dfs(i):
        if budget[0] <= 0:
            raise IterationCapExceeded("clean-forest search budget exhausted")
        budget[0] -= 1
        if i == len(b_list):
            return True
        b = b_list[i]
        for a in adj_b[b]:
            potential[a] -= 1
        for x, y in options[b]:
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            merged = marked_in[rx] + marked_in[ry]
            if marked_cap is not None and merged > marked_cap:
                continue
            saved = (parent[rx], degree[x], degree[y], marked_in[ry])
            parent[rx] = ry
            marked_in[ry] = merged
            degree[x] += 1
            degree[y] += 1
            if feasible():
                chosen[b] = (x, y)
                if dfs(i + 1):
                    return True
                del chosen[b]
            parent[rx] = saved[0]
            degree[x] = saved[1]
            degree[y] = saved[2]
            marked_in[ry] = saved[3]
        for a in adj_b[b]:
            potential[a] += 1
        return False

    if not feasible():
        return None
    if not dfs(0):
        return None
    edges = frozenset(
        e for b, (x, y) in chosen.items() for e in ((x, b), (y, b))
    )
    return B2Forest(pres, edges)


# ---------------------------------------------------------------------------
# forests, components, potential


@dataclass(frozen=True)
class ForestComponent:
    cid: int  # smallest contained A-vertex
    a_vertices: frozenset
    b_vertices: frozenset
    marked: frozenset

    def marked_count(self):
        return len(self.marked)


@dataclass(frozen=True)
class PotentialVector:
    """Lexicographic stand-in for the weighted potential.

    Ordered by total violation first, then per distance by more components
    (smaller) and fewer marked vertices (smaller). This realizes the
    incommensurable-coefficient ordering exactly, since every term is
    bounded by the vertex count.
    """

    total_violation: int
    distance_profile: tuple  # ((count_at_1, marked_at_1), ...)

    def key(self):
        flat = [self.total_violation]
        for count, marked in self.distance_profile:
            flat.append(-count)
            flat.append(marked)
        return tuple(flat)

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()


class B2Forest:
    """A forest with all B-degrees two, with its component decomposition
    and the distance labels of the component reachability relation."""

    def __init__(self, presentation: BipartitePresentation, forest_edges):
        self.presentation = presentation
        self.forest_edges = frozenset(forest_edges)
        for b in presentation.b_vertices:
            deg = sum(1 for _, y in self.forest_edges if y == b)
            assert deg == 2, f"B-vertex {b} has forest degree {deg}"
        self.components = self._split_components()
        self._comp_of_a = {}
        self._comp_of_b = {}
        for comp in self.components:
            for a in comp.a_vertices:
                self._comp_of_a[a] = comp
            for b in comp.b_vertices:
                self._comp_of_b[b] = comp

    def _split_components(self):
        pres = self.presentation
        parent = {("a", a): ("a", a) for a in pres.a_vertices}
        parent.update({("b", b): ("b", b) for b in pres.b_vertices})

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in sorted(self.forest_edges):
            parent[find(("a", a))] = find(("b", b))
        groups = {}
        for a in pres.a_vertices:
            groups.setdefault(find(("a", a)), []).append(("a", a))
        for b in pres.b_vertices:
            groups.setdefault(find(("b", b)), []).append(("b", b))
        comps = []
        for members in groups.values():
            a_vs = frozenset(v for tag, v in members if tag == "a")
            b_vs = frozenset(v for tag, v in members if tag == "b")
            assert a_vs, "a forest component must contain an A-vertex"
            comps.append(
                ForestComponent(min(a_vs), a_vs, b_vs, a_vs & pres.marked)
            )
        return sorted(comps, key=lambda c: c.cid)

    def large_components(self, k):
        return [c for c in self.components if c.marked_count() >= 2 * k - 1]

    def distances(self, k):
        """BFS distances from the large components over the reachability
        relation (step from C to C' via a graph edge (a, b) with b in B(C)
        and a in A(C')); also records parent components and entry edges."""
        dist = {c.cid: INF for c in self.components}
        parent = {}
        entry_edge = {}
        frontier = [c for c in self.large_components(k)]
        for c in frontier:
            dist[c.cid] = 0
        out_edges = {}
        for a, b in sorted(self.presentation.edges):
            cb = self._comp_of_b[b]
            ca = self._comp_of_a[a]
            if cb.cid != ca.cid:
                out_edges.setdefault(cb.cid, []).append((ca.cid, a, b))
        d = 0
        while frontier:
            nxt = []
            for comp in sorted(frontier, key=lambda c: c.cid):
                for target_cid, a, b in sorted(out_edges.get(comp.cid, ())):
                    if dist[target_cid] == INF:
                        dist[target_cid] = d + 1
                        parent[target_cid] = comp.cid
                        entry_edge[target_cid] = (a, b)
                        nxt.append(self._comp_of_a[a])
            frontier = nxt
            d += 1
        return dist, parent, entry_edge

    def dirty_leaf(self):
        """A deletable defect: an unmarked degree-1 A-vertex with its
        forest neighbor, or an unmarked isolated A-vertex (paired with its
        smallest graph neighbor, or None if fully isolated)."""
        pres = self.presentation
        degree = {a: 0 for a in pres.a_vertices}
        nbr = {}
        for a, b in sorted(self.forest_edges):
            degree[a] += 1
            nbr.setdefault(a, b)
        adj_a = pres.adj_of_a()
        for a in pres.a_vertices:
            if a in pres.marked:
                continue
            if degree[a] == 1:
                return a, nbr[a]
            if degree[a] == 0:
                return a, (adj_a[a][0] if adj_a[a] else None)
        return None

    def component_partition(self):
        """Marked classes per component, in component-id order."""
        return [sorted(c.marked) for c in self.components]


def compute_potential(forest: B2Forest, k):
    """Potential of a forest: total violation over 2k-2, then per distance
    the component count and the marked-vertex count."""
    violation = sum(
        max(c.marked_count() - (2 * k - 2), 0) for c in forest.components
    )
    dist, _, _ = forest.distances(k)
    q = len(forest.components)
    profile = []
    for i in range(1, q):
        at_i = [c for c in forest.components if dist[c.cid] == i]
        profile.append((len(at_i), sum(c.marked_count() for c in at_i)))
    return PotentialVector(violation, tuple(profile))


def improve_step(forest: B2Forest, k, trace=None):
    """One local-search step: reroute the connecting edge of the closest
    small component so that the potential strictly decreases.

    Splits the predecessor component C1 at the joint B-vertex and merges
    the side prescribed by the marked-count comparison into the small
    component; the other side becomes a component of its own.
    """
    comps = forest.components
    larges = forest.large_components(k)
    if not larges:
        raise NoLargeComponent()
    dist, parent, entry_edge = forest.distances(k)
    smalls = [
        c for c in comps if c.marked_count() <= k - 1 and dist[c.cid] != INF
    ]
    if not smalls:
        raise NoReachableSmall(
            "a large component exists but no small component is reachable"
        )
    c0 = min(smalls, key=lambda c: (dist[c.cid], c.cid))
    a, b = entry_edge[c0.cid]
    c1 = forest._comp_of_b[b]
    x, y = sorted(v for v, w in forest.forest_edges if w == b)
    # side of x after removing b from c1
    side_x = _forest_side(forest, c1, b, x)
    s0, s1 = c0.marked_count(), c1.marked_count()
    sx = len(side_x & forest.presentation.marked)
    sy = s1 - sx
    if dist[c1.cid] == 0:
        # c1 is large: keep whichever side makes the merge strictly shrink;
        # among valid sides prefer not demoting the dropped vertex to an
        # unmarked leaf, then the smaller merge
        m_x, m_y = s0 + sx, s0 + sy
        marked = forest.presentation.marked
        deg = {}
        for u, _ in forest.forest_edges:
            deg[u] = deg.get(u, 0) + 1
        options = []
        if m_x < s1:
            options.append((y not in marked and deg[y] == 2, m_x, x, y))
        if m_y < s1:
            options.append((x not in marked and deg[x] == 2, m_y, y, x))
        assert options, "one side always satisfies the strict inequality"
        _, _, keep, drop = min(options)
        case = "large"
    else:
        # c1 is normal; x is the side holding the path-predecessor endpoint
        a_prev, _ = entry_edge[c1.cid]
        if a_prev not in side_x:
            x, y = y, x
            sx, sy = sy, sx
        if sx >= s1 - s0:
            keep, drop, case = y, x, "case1"
        else:
            keep, drop, case = x, y, "case2"
    new_edges = (forest.forest_edges - {_edge(drop, b)}) | {(a, b)}
    new_forest = B2Forest(forest.presentation, new_edges)
    if trace is not None:
        trace(
            {
                "case": case,
                "small": c0.cid,
                "split": c1.cid,
                "edge": [a, b],
                "removed": [drop, b],
                "potential": list(compute_potential(new_forest, k).key()),
            }
        )
    return new_forest


def _edge(a, b):
    return (a, b)


def _forest_side(forest: B2Forest, comp: ForestComponent, b, start):
    """Vertices of comp on ``start``'s side after deleting B-vertex b."""
    adj = {}
    for u, v in forest.forest_edges:
        adj.setdefault(("a", u), []).append(("b", v))
        adj.setdefault(("b", v), []).append(("a", u))
    seen = {("b", b), ("a", start)}
    queue = [("a", start)]
    side = {start}
    while queue:
        node = queue.pop()
        for nxt in adj.get(node, ()):
            if nxt in seen:
                continue
            seen.add(nxt)
            queue.append(nxt)
            if nxt[0] == "a":
                side.add(nxt[1])
    return side


def _oracles_agree(pres_a: BipartitePresentation, pres_b: BipartitePresentation):
    """Do two presentations over the same marked set present the same
    matroid? Exhaustive up to 12 marked elements, 500 random masks beyond."""
    assert pres_a.marked == pres_b.marked
    ma, mb = pres_a.presented_matroid(), pres_b.presented_matroid()
    n = ma.n
    if n <= 12:
        masks = range(1 << n)
    else:
        rng = random.Random(977)
        masks = [rng.randrange(1 << n) for _ in range(500)]
    return all(ma.indep(m) == mb.indep(m) for m in masks)


def _dirty_capable_pairs(pres: BipartitePresentation):
    """Pairs (a, b) with a unmarked such that some forest could end with a
    as a leaf through b; equivalently the strong Hall condition survives
    the deletion of both vertices."""
    adj_a = pres.adj_of_a()
    out = []
    for a in pres.a_vertices:
        if a in pres.marked:
            continue
        for b in adj_a[a]:
            smaller = pres.delete_pair(a, b)
            if smaller.matching_covering_b() is None:
                continue
            if not maximal_tight_set(smaller):
                out.append((a, b))
    return out


def minimize_presentation(pres: BipartitePresentation, on_step=None):
    """Shrink a presentation toward one where every forest has all leaves
    marked, preserving the presented matroid at every step.

    Rules, applied to a fixpoint: drop an unmarked A-vertex with no edges;
    split off the maximal tight subset of B with its neighborhood; delete
    an unmarked vertex together with an incident B-vertex when some forest
    could leave it as an unmarked leaf. Pair deletion is only sound on
    rank-minimal presentations, not in general, so each candidate is
    validated against the current presented matroid and skipped when the
    matroid would change. The output satisfies the strong Hall condition
    and admits a forest with every leaf marked.
    """

    def step(new, label):
        if on_step is not None:
            on_step(pres, new, label)
        return new

    while True:
        adj_a = pres.adj_of_a()
        isolated = next(
            (
                a
                for a in pres.a_vertices
                if a not in pres.marked and not adj_a[a]
            ),
            None,
        )
        if isolated is not None:
            pres = step(pres.delete_a_vertex(isolated), "drop-isolated")
            continue
        tight = maximal_tight_set(pres)
        if tight:
            pres = step(pres.delete_block(tight), "split-tight")
            continue
        deleted = False
        for a, b in _dirty_capable_pairs(pres):
            smaller = pres.delete_pair(a, b)
            if smaller.matching_covering_b() is None:
                continue
            if _oracles_agree(pres, smaller):
                pres = step(smaller, "delete-pair")
                deleted = True
                break
        if deleted:
            continue
        if pres.b_vertices and find_clean_forest(pres) is None:
            raise NoB2Forest(
                "no leaf-clean forest exists and no deletion preserves the matroid"
            )
        return pres


# ---------------------------------------------------------------------------
# the full reduction and the matching diagnostic


def reduce_gammoid(digraph: zoo.Digraph, sources, sinks, cap=None, trace=None):
    """Reduce a gammoid to a partition matroid with classes of size at
    most 2k-2 (k = coloring number, k >= 2), rank preserving.

    Pipeline: dualize, minimize, find a B2-forest, then improve while a
    component holds 2k-1 or more marked vertices. Forest surgery can expose
    an unmarked leaf; the presentation is then re-minimized and the search
    restarted. The step cap defaults to 10 |A|^2.
    """
    M = zoo.gammoid(digraph, sources, sinks)
    k, _ = coloring_number(M)
    n = M.n
    if k <= 1:
        partition = Partition(n, tuple(1 << e for e in range(n)))
        return ReductionResult(partition, max(k, 1) if n else 0, True, "gammoid-b2-forest", k)
    if cap is None:
        cap = 10 * digraph.num_vertices * digraph.num_vertices
    pres = minimize_presentation(dualize_gammoid(digraph, sources, sinks))
    forest = find_b2_forest(pres)
    assert forest.dirty_leaf() is None, "minimization guarantees a clean forest"
    steps = 0
    seen = {forest.forest_edges}
    while forest.large_components(k):
        if steps >= cap:
            raise IterationCapExceeded(f"local search exceeded {cap} steps")
        forest = improve_step(forest, k, trace)
        steps += 1
        if forest.dirty_leaf() is not None:
            # surgery demoted an unmarked vertex to a leaf; repair by
            # re-solving for a clean forest near the current one
            forest = find_clean_forest(pres, prefer=forest.forest_edges)
            assert forest is not None, "minimized presentations keep a clean forest"
            if forest.forest_edges in seen:
                # the repair cycled; search outright for a forest whose
                # components all stay within the target bound
                forest = find_clean_forest(pres, marked_cap=2 * k - 2)
                if forest is None:
                    raise IterationCapExceeded(
                        "local search cycled and no bounded clean forest exists"
                    )
                break
        seen.add(forest.forest_edges)
    index = {v: i for i, v in enumerate(M.sinks)}
    classes = [
        mask_of(index[v] for v in comp) for comp in forest.component_partition()
    ]
    assert all(classes), "every component carries a marked vertex"
    assert len(classes) == M.rank(), "component count must equal the rank"
    partition = Partition(n, tuple(classes))
    return ReductionResult(partition, 2 * k - 2, True, "gammoid-b2-forest", k)


def check_k_matchings(pres: BipartitePresentation, k):
    """Diagnostic: does the presentation carry k matchings covering B with
    every marked vertex used at most k-1 times?

    Decided on the parallel-copy blow-up of the transversal matroid
    (k copies of unmarked A-vertices, k-1 of marked ones) by asking for k
    disjoint bases of size |B|.
    """
    adj_a = pres.adj_of_a()
    b_index = {b: i for i, b in enumerate(pres.b_vertices)}
    edges = []
    left = 0
    for a in pres.a_vertices:
        copies = k - 1 if a in pres.marked else k
        if not adj_a[a]:
            continue  # an isolated vertex can never serve a matching
        for _ in range(copies):
            edges.extend((left, b_index[b]) for b in adj_a[a])
            left += 1
    nb = len(pres.b_vertices)
    if nb == 0:
        return True
    if left == 0:
        return False
    blowup = zoo.transversal_matroid(
        zoo.BipartiteGraph(left, nb, tuple(edges))
    )
    if blowup.rank() != nb:
        return False
    parts = matroid_union_max([blowup] * k)
    return sum(p.bit_count() for p in parts) == k * nb
