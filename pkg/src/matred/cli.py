"""Command-line front door: load matroid documents, run reducers, verify
reductions, generate named fixtures, and compute coloring numbers.

Documents are UTF-8 JSON with a top-level ``kind``, a kind-specific
payload, and optionally unique element ``names`` mapping positionally onto
ids 0..n-1. Exit codes: 0 success, 1 input error, 2 verification failure,
3 resource cap exceeded.
"""

import argparse
import json
import sys

from matred import core, gammoid, reducers, verifier, zoo
from matred.bitset import bit_list
from matred.core import Partition
from matred.errors import (
    KindMismatch,
    MatredError,
    ResourceCapExceeded,
    UnsupportedParameter,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_RESOURCE = 3


# ---------------------------------------------------------------------------
# documents


def load_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatredError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatredError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise MatredError(f"{path}: document must be an object with a 'kind'")
    return doc


def _validate_names(doc, n):
    names = doc.get("names")
    if names is None:
        return None
    if len(names) != n or len(set(names)) != n:
        raise MatredError("names must be unique and map onto ids 0..n-1")
    return list(names)


def build_matroid(doc):
    """Instantiate the oracle a document describes.

    Returns (matroid, names). The structured payload stays available on
    the oracle (graph, family, ...) for algorithm dispatch.
    """
    kind = doc["kind"]
    if kind == "partition":
        classes = doc["classes"]
        n = doc.get("n", sum(len(c) for c in classes))
        M = zoo.partition_matroid(classes, n)
    elif kind == "uniform":
        M = zoo.uniform(doc["rank"], doc["n"])
    elif kind == "graphic":
        M = zoo.graphic_matroid(
            zoo.Graph(doc["vertices"], tuple(tuple(e) for e in doc["edges"]))
        )
    elif kind == "transversal":
        M = zoo.transversal_matroid(
            zoo.BipartiteGraph(
                doc["left"], doc["right"], tuple(tuple(e) for e in doc["edges"])
            )
        )
    elif kind == "gammoid":
        M = zoo.gammoid(
            zoo.Digraph(doc["vertices"], tuple(tuple(a) for a in doc["arcs"])),
            doc["sources"],
            doc["sinks"],
        )
    elif kind == "paving":
        M = zoo.paving_matroid(
            zoo.HyperplaneFamily.from_sets(doc["rank"], doc["n"], doc["hyperplanes"])
        )
    elif kind == "laminar":
        M = zoo.laminar_matroid(
            zoo.LaminarSpec.from_sets(
                doc["n"], [(s["elements"], s["cap"]) for s in doc["sets"]]
            )
        )
    elif kind == "projective_plane":
        _, family = zoo.projective_plane(doc["order"])
        M = zoo.paving_matroid(family)
    else:
        raise KindMismatch(f"unknown matroid kind {kind!r}")
    return M, _validate_names(doc, M.n)


def partition_document(partition: Partition, names=None):
    doc = {"kind": "partition", "n": partition.n, "classes": partition.as_sets()}
    if names:
        doc["names"] = names
    return doc


def load_partition(doc):
    if doc["kind"] != "partition":
        raise KindMismatch("expected a partition document")
    n = doc.get("n", sum(len(c) for c in doc["classes"]))
    return Partition.from_sets(n, doc["classes"])


def report_document(report):
    doc = {
        "weak_map": report.weak_map,
        "certified": report.certified,
        "rank_preserving": report.rank_preserving,
        "chi_source": report.chi_source,
        "chi_reduction": report.chi_reduction,
        "bound_satisfied": report.bound_satisfied,
        "method": report.method,
    }
    if report.method == "sampled":
        doc["trials"] = report.trials
    if report.witness:
        doc["witness"] = list(report.witness)
    return doc


def _emit(obj, output):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def _identity_reduction(M, partition):
    chi = partition.max_class_size()
    return reducers.ReductionResult(partition, chi, True, "identity", chi)


def cmd_reduce(args):
    doc = load_document(args.input)
    kind = doc["kind"]
    algorithm = args.algorithm
    if algorithm == "auto":
        algorithm = {
            "partition": "identity",
            "uniform": "paving",
            "graphic": "graphic",
            "transversal": "transversal",
            "gammoid": "gammoid",
            "laminar": "gammoid",
            "paving": "paving",
            "projective_plane": "paving",
        }.get(kind)
        if algorithm is None:
            raise KindMismatch(f"no automatic algorithm for kind {kind!r}")
        if kind == "uniform" and doc["rank"] == 1:
            algorithm = "identity"
    M, names = build_matroid(doc)

    trace = None
    if args.trace:
        trace = lambda record: print(json.dumps(record), file=sys.stderr)

    if algorithm == "identity":
        if kind == "partition":
            partition = load_partition(doc)
        else:  # U(1, n): the matroid is a one-class partition matroid
            partition = Partition.from_sets(M.n, [list(range(M.n))])
        result = _identity_reduction(M, partition)
    elif algorithm == "transversal":
        if kind != "transversal":
            raise KindMismatch("transversal reduction needs a transversal document")
        result = reducers.reduce_transversal(M.graph)
    elif algorithm == "graphic":
        if kind != "graphic":
            raise KindMismatch("graphic reduction needs a graphic document")
        result = reducers.reduce_graphic(M.graph)
    elif algorithm == "paving":
        family = _paving_family(doc, M)
        result = reducers.reduce_paving(family)
    elif algorithm == "paving2":
        result = reducers.reduce_paving_rank2(M)
    elif algorithm == "paving3":
        family = _paving_family(doc, M)
        result = reducers.reduce_paving_rank3(family)
    elif algorithm == "gammoid":
        if kind == "gammoid":
            digraph = M.digraph
            sources, sinks = M.sources, M.sinks
        elif kind == "laminar":
            digraph, sources, sinks = zoo.laminar_to_digraph(M.spec)
        else:
            raise KindMismatch("gammoid reduction needs a gammoid or laminar document")
        result = gammoid.reduce_gammoid(
            digraph, sources, sinks, cap=args.cap, trace=trace
        )
    elif algorithm == "cocircuit":
        result = reducers.reduce_by_cocircuits(M, args.cut_bound)
    else:
        raise KindMismatch(f"unknown algorithm {algorithm!r}")

    report = verifier.verify_reduction(M=M, result=result, trials=args.sampled, jobs=args.jobs)
    _emit(
        {
            "algorithm": algorithm,
            "provenance": result.provenance,
            "claimed_chi_bound": result.claimed_chi_bound,
            "rank_preserving_claimed": result.rank_preserving_claimed,
            "partition": partition_document(result.partition, names),
            "report": report_document(report),
        },
        args.output,
    )
    ok = report.weak_map and report.bound_satisfied
    certified = report.certified or (args.sampled is not None and report.weak_map)
    return EXIT_OK if ok and certified else EXIT_VERIFY


def _paving_family(doc, M):
    if doc["kind"] == "paving":
        return M.family
    if doc["kind"] == "projective_plane":
        return M.family
    if doc["kind"] == "uniform":
        if doc["rank"] < 2:
            raise KindMismatch("paving reduction needs rank at least 2")
        return zoo.HyperplaneFamily(doc["rank"], doc["n"], ())
    raise KindMismatch("paving reduction needs a hyperplane family document")


def cmd_verify(args):
    mdoc = load_document(args.matroid)
    pdoc = load_document(args.partition)
    M, _ = build_matroid(mdoc)
    partition = load_partition(pdoc)
    report = verifier.is_weak_map(partition, M, trials=args.sampled, jobs=args.jobs)
    _emit(report_document(report), args.output)
    if report.certified:
        return EXIT_OK
    if args.sampled is not None and report.weak_map:
        return EXIT_OK
    return EXIT_VERIFY


def cmd_generate(args):
    family = args.family
    param = args.param
    if family == "fano":
        _, fam = zoo.projective_plane(2)
        doc = {
            "kind": "paving",
            "rank": 3,
            "n": fam.n,
            "hyperplanes": [bit_list(h) for h in fam.hyperplanes],
        }
    elif family == "pg":
        if param is None:
            raise UnsupportedParameter("pg needs an order parameter")
        _, fam = zoo.projective_plane(param)
        doc = {
            "kind": "paving",
            "rank": 3,
            "n": fam.n,
            "hyperplanes": [bit_list(h) for h in fam.hyperplanes],
        }
    elif family == "k":
        if param is None or param < 1:
            raise UnsupportedParameter("k needs a vertex count")
        graph = zoo.complete_graph(param)
        doc = {
            "kind": "graphic",
            "vertices": graph.num_vertices,
            "edges": [list(e) for e in graph.edges],
        }
    elif family == "kiraly":
        matroids, lists = zoo.kiraly_triple()
        doc = {
            "kind": "collection",
            "matroids": [
                {
                    "kind": "partition",
                    "n": 6,
                    "classes": [bit_list(c) for c in M.partition.classes],
                }
                for M in matroids
            ],
            "lists": {str(e): colors for e, colors in lists.items()},
            "names": ["a", "b", "c", "d", "e", "f"],
        }
    elif family == "laminar-thm7":
        if param is None or param < 1:
            raise UnsupportedParameter("laminar-thm7 needs a positive parameter")
        spec = zoo.tight_rank2_laminar(param)
        doc = {
            "kind": "laminar",
            "n": spec.n,
            "sets": [
                {"elements": bit_list(mask), "cap": cap} for mask, cap in spec.sets
            ],
        }
    elif family == "gammoid-thm9":
        if param is None or param < 2:
            raise UnsupportedParameter("gammoid-thm9 needs a parameter of at least 2")
        digraph, sources, sinks = zoo.laminar_to_digraph(
            zoo.tight_gammoid_laminar(param)
        )
        doc = {
            "kind": "gammoid",
            "vertices": digraph.num_vertices,
            "arcs": [list(a) for a in digraph.arcs],
            "sources": list(sources),
            "sinks": list(sinks),
        }
    else:
        raise UnsupportedParameter(f"unknown family {family!r}")
    _emit(doc, args.output)
    return EXIT_OK


def cmd_chi(args):
    doc = load_document(args.input)
    M, names = build_matroid(doc)
    k, partition = core.coloring_number(M)
    _emit(
        {"chi": k, "certificate": partition_document(partition, names)},
        args.output,
    )
    return EXIT_OK


def cmd_listcolor(args):
    docs = [load_document(path) for path in args.inputs]
    matroids = []
    lists = None
    for doc in docs:
        if doc["kind"] == "collection":
            for sub in doc["matroids"]:
                matroids.append(build_matroid(sub)[0])
            if "lists" in doc:
                lists = {int(e): colors for e, colors in doc["lists"].items()}
        else:
            matroids.append(build_matroid(doc)[0])
    if args.lists:
        with open(args.lists, encoding="utf-8") as fh:
            raw = json.load(fh)
        lists = {int(e): colors for e, colors in raw["lists"].items()}
    if not matroids:
        raise MatredError("no matroids given")
    if lists is None:
        raise MatredError("no color lists given")
    feasible, coloring = verifier.list_colorable(matroids, lists)
    out = {"feasible": feasible}
    if coloring is not None:
        out["coloring"] = {str(e): c for e, c in sorted(coloring.items())}
    _emit(out, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def make_parser():
    parser = argparse.ArgumentParser(
        prog="matred",
        description="Reduce matroids to partition matroids, verify the "
        "reductions, and compute coloring numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a matroid document")
    p.add_argument("input")
    p.add_argument(
        "--algorithm",
        default="auto",
        choices=[
            "auto",
            "transversal",
            "graphic",
            "paving",
            "paving2",
            "paving3",
            "gammoid",
            "cocircuit",
        ],
    )
    p.add_argument("--cut-bound", type=int, default=None,
                   help="asserted cocircuit size bound for --algorithm cocircuit")
    p.add_argument("--cap", type=int, default=None,
                   help="iteration cap for the gammoid local search")
    p.add_argument("--trace", action="store_true",
                   help="stream local-search steps as JSON lines on stderr")
    p.add_argument("--sampled", type=int, default=None,
                   help="verify by sampling this many transversals")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="verify a partition against a matroid")
    p.add_argument("matroid")
    p.add_argument("partition")
    p.add_argument("--sampled", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="generate a named fixture document")
    p.add_argument(
        "family",
        choices=["fano", "pg", "k", "kiraly", "laminar-thm7", "gammoid-thm9"],
    )
    p.add_argument("param", type=int, nargs="?", default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("chi", help="coloring number with certificate")
    p.add_argument("input")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("listcolor", help="search for a proper list coloring")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lists", default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_listcolor)

    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (MatredError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
