"""Seeded random instance generators shared across the test modules."""

import random

from matred import zoo
from matred.errors import LoopPresent


def random_partition_matroid(rng, max_n=10):
    n = rng.randint(1, max_n)
    ids = list(range(n))
    rng.shuffle(ids)
    classes = []
    while ids:
        size = rng.randint(1, min(3, len(ids)))
        classes.append([ids.pop() for _ in range(size)])
    return zoo.partition_matroid(classes, n)


def random_graphic_matroid(rng, max_n=9):
    nv = rng.randint(2, 5)
    edges = []
    for _ in range(rng.randint(1, max_n)):
        u = rng.randrange(nv)
        v = rng.randrange(nv)
        if u != v:
            edges.append((u, v))
    if not edges:
        edges = [(0, 1)]
    return zoo.graphic_matroid(zoo.Graph(nv, tuple(edges)))


def random_transversal_matroid(rng, max_n=6):
    na = rng.randint(1, min(max_n, 6))
    nb = rng.randint(1, 4)
    edges = {(a, rng.randrange(nb)) for a in range(na)}  # no isolated left vertex
    for _ in range(rng.randint(0, 2 * na)):
        edges.add((rng.randrange(na), rng.randrange(nb)))
    return zoo.transversal_matroid(zoo.BipartiteGraph(na, nb, tuple(sorted(edges))))


def random_hyperplane_family(rng, max_n=10):
    r = rng.randint(2, 4)
    n = rng.randint(max(r, 4), max_n)
    hyperplanes = []
    for _ in range(rng.randint(0, 6)):
        size = rng.randint(r, max(r, n - 1))
        cand = 0
        for e in rng.sample(range(n), min(size, n - 1)):
            cand |= 1 << e
        if cand.bit_count() < r or cand == (1 << n) - 1:
            continue
        if all((cand & h).bit_count() <= r - 2 for h in hyperplanes):
            hyperplanes.append(cand)
    return zoo.HyperplaneFamily(r, n, tuple(hyperplanes))


def random_paving_matroid(rng, max_n=10):
    return zoo.paving_matroid(random_hyperplane_family(rng, max_n))


def random_laminar_matroid(rng, max_n=10):
    n = rng.randint(2, max_n)
    sets = [(list(range(n)), rng.randint(1, 3))]

    def split(block, depth):
        if depth == 0 or len(block) < 2 or rng.random() < 0.4:
            return
        cut = rng.randint(1, len(block) - 1)
        for part in (block[:cut], block[cut:]):
            if rng.random() < 0.8:
                sets.append((part, rng.randint(1, 2)))
                split(part, depth - 1)

    split(list(range(n)), 2)
    return zoo.laminar_matroid(zoo.LaminarSpec.from_sets(n, sets))


def random_gammoid_data(rng, max_vertices=8, density=0.3):
    """(digraph, sources, sinks) triples whose gammoid oracle is loopless."""
    while True:
        nv = rng.randint(3, max_vertices)
        arcs = tuple(
            (u, v)
            for u in range(nv)
            for v in range(nv)
            if u != v and rng.random() < density
        )
        sources = rng.sample(range(nv), rng.randint(1, max(1, nv - 1)))
        sinks = sorted(rng.sample(range(nv), rng.randint(1, nv)))
        digraph = zoo.Digraph(nv, arcs)
        try:
            zoo.gammoid(digraph, sources, sinks)
        except LoopPresent:
            continue
        return digraph, sources, sinks


def random_gammoid(rng, max_vertices=8, density=0.3):
    return zoo.gammoid(*random_gammoid_data(rng, max_vertices, density))


_MAKERS = [
    random_partition_matroid,
    random_graphic_matroid,
    random_transversal_matroid,
    random_paving_matroid,
    random_laminar_matroid,
    lambda rng, max_n=10: random_gammoid(rng, max_vertices=min(max_n, 7)),
    lambda rng, max_n=10: zoo.uniform(
        rng.randint(1, 4), rng.randint(rng.randint(1, 4), max_n)
    ),
]


def random_matroid(rng, max_n=10):
    """A random loopless matroid drawn from all implemented classes."""
    while True:
        maker = rng.choice(_MAKERS)
        try:
            M = maker(rng, max_n=max_n)
        except (ValueError, LoopPresent):
            continue
        if 0 < M.n <= max_n:
            return M


def mixed_matroids(seed, count, max_n=10):
    rng = random.Random(seed)
    return [random_matroid(rng, max_n) for _ in range(count)]
