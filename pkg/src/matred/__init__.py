"""matred: reductions of matroids to partition matroids with bounded
coloring number, exact coloring-number computation, and an exhaustive
verification toolkit for the tight instances of each matroid class.
"""

from matred.core import (
    Matroid,
    Partition,
    add_parallel,
    audit_axioms,
    bases,
    circuits,
    coloring_number,
    coloring_number_bruteforce,
    direct_sum,
    dual,
    has_k_disjoint_bases,
    matroid_intersection_max,
    rank,
    restrict,
    truncate,
)

__all__ = [
    "Matroid",
    "Partition",
    "add_parallel",
    "audit_axioms",
    "bases",
    "circuits",
    "coloring_number",
    "coloring_number_bruteforce",
    "direct_sum",
    "dual",
    "has_k_disjoint_bases",
    "matroid_intersection_max",
    "rank",
    "restrict",
    "truncate",
]

__version__ = "0.1.0"
