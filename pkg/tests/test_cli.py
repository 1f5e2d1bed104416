import itertools
import json

import pytest

from matred import cli, zoo
from matred.bitset import mask_of


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestGenerateRoundTrip:
    @pytest.mark.parametrize(
        "argv,check",
        [
            (["generate", "fano"], lambda d: d["n"] == 7 and len(d["hyperplanes"]) == 7),
            (["generate", "pg", "3"], lambda d: d["n"] == 13),
            (["generate", "k", "6"], lambda d: len(d["edges"]) == 15),
            (["generate", "laminar-thm7", "3"], lambda d: d["n"] == 6),
            (["generate", "gammoid-thm9", "3"], lambda d: len(d["sinks"]) == 6),
        ],
    )
    def test_families(self, capsys, argv, check):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert check(json.loads(out))

    def test_every_generated_document_parses_to_equal_oracle(self, capsys, tmp_path):
        for argv, builder in [
            (["generate", "fano"], lambda: zoo.paving_matroid(zoo.fano_family())),
            (
                ["generate", "k", "4"],
                lambda: zoo.graphic_matroid(zoo.complete_graph(4)),
            ),
            (
                ["generate", "laminar-thm7", "3"],
                lambda: zoo.laminar_matroid(zoo.tight_rank2_laminar(3)),
            ),
            (
                ["generate", "gammoid-thm9", "3"],
                lambda: zoo.laminar_matroid(zoo.tight_gammoid_laminar(3)),
            ),
        ]:
            code, out, _ = run(capsys, *argv)
            assert code == 0
            M, _ = cli.build_matroid(json.loads(out))
            R = builder()
            assert M.n == R.n
            assert all(M.indep(m) == R.indep(m) for m in range(1 << M.n))

    def test_kiraly_collection(self, capsys):
        code, out, _ = run(capsys, "generate", "kiraly")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "collection"
        assert len(doc["matroids"]) == 3
        assert doc["lists"]["0"] == [1, 2]

    def test_unsupported_parameter(self, capsys):
        code, _, err = run(capsys, "generate", "pg", "6")
        assert code == 1 and "error" in err


class TestReduce:
    def test_graphic_k4(self, capsys, tmp_path):
        k4 = write_doc(
            tmp_path,
            "k4.json",
            {
                "kind": "graphic",
                "vertices": 4,
                "edges": [list(e) for e in zoo.complete_graph(4).edges],
            },
        )
        code, out, _ = run(capsys, "reduce", "--algorithm", "graphic", k4)
        assert code == 0
        doc = json.loads(out)
        assert doc["report"]["certified"]
        assert doc["report"]["chi_reduction"] == 3
        assert len(doc["partition"]["classes"]) == 3

    def test_gammoid_tight_with_trace(self, capsys, tmp_path):
        digraph, sources, sinks = zoo.laminar_to_digraph(zoo.tight_gammoid_laminar(3))
        doc = write_doc(
            tmp_path,
            "tight.json",
            {
                "kind": "gammoid",
                "vertices": digraph.num_vertices,
                "arcs": [list(a) for a in digraph.arcs],
                "sources": sources,
                "sinks": sinks,
            },
        )
        code, out, err = run(capsys, "reduce", "--algorithm", "gammoid", "--trace", doc)
        assert code == 0
        payload = json.loads(out)
        assert payload["report"]["chi_reduction"] <= 4
        for line in err.splitlines():
            json.loads(line)  # trace records are JSON lines

    def test_paving_fano(self, capsys, tmp_path):
        fam = zoo.fano_family()
        fano = write_doc(
            tmp_path,
            "fano.json",
            {
                "kind": "paving",
                "rank": 3,
                "n": 7,
                "hyperplanes": [[i for i in range(7) if h >> i & 1] for h in fam.hyperplanes],
            },
        )
        code, out, _ = run(capsys, "reduce", "--algorithm", "paving", fano)
        assert code == 0
        doc = json.loads(out)
        assert sorted(len(c) for c in doc["partition"]["classes"]) == [3, 4]

    def test_auto_dispatch_by_kind(self, capsys, tmp_path):
        lam = write_doc(
            tmp_path,
            "lam.json",
            {
                "kind": "laminar",
                "n": 6,
                "sets": [{"elements": list(range(6)), "cap": 2}]
                + [{"elements": [2 * i, 2 * i + 1], "cap": 1} for i in range(3)],
            },
        )
        code, out, _ = run(capsys, "reduce", lam)
        assert code == 0
        assert json.loads(out)["algorithm"] == "gammoid"

    def test_partition_identity(self, capsys, tmp_path):
        doc = write_doc(
            tmp_path,
            "part.json",
            {"kind": "partition", "n": 4, "classes": [[0, 1], [2, 3]]},
        )
        code, out, _ = run(capsys, "reduce", doc)
        assert code == 0
        assert json.loads(out)["algorithm"] == "identity"

    def test_kind_mismatch(self, capsys, tmp_path):
        doc = write_doc(
            tmp_path,
            "part.json",
            {"kind": "partition", "n": 2, "classes": [[0], [1]]},
        )
        code, _, err = run(capsys, "reduce", "--algorithm", "graphic", doc)
        assert code == 1 and "error" in err

    def test_resource_cap_exit_code(self, capsys, tmp_path):
        doc = write_doc(
            tmp_path,
            "big.json",
            {"kind": "uniform", "rank": 3, "n": 16},
        )
        code, _, err = run(capsys, "reduce", "--algorithm", "cocircuit", doc)
        assert code == 3


class TestVerify:
    def test_certified(self, capsys, tmp_path):
        k4 = write_doc(
            tmp_path,
            "k4.json",
            {
                "kind": "graphic",
                "vertices": 4,
                "edges": [list(e) for e in zoo.complete_graph(4).edges],
            },
        )
        good = write_doc(
            tmp_path,
            "good.json",
            {"kind": "partition", "n": 6, "classes": [[0], [1, 3], [2, 4, 5]]},
        )
        code, out, _ = run(capsys, "verify", k4, good)
        assert code == 0
        assert json.loads(out)["certified"]

    def test_violation_exits_two(self, capsys, tmp_path):
        tri = write_doc(
            tmp_path,
            "tri.json",
            {"kind": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]},
        )
        bad = write_doc(
            tmp_path,
            "bad.json",
            {"kind": "partition", "n": 3, "classes": [[0], [1], [2]]},
        )
        code, out, _ = run(capsys, "verify", tri, bad)
        assert code == 2
        doc = json.loads(out)
        assert not doc["weak_map"] and doc["witness"] == [0, 1, 2]

    def test_sampled_mode(self, capsys, tmp_path):
        k4 = write_doc(
            tmp_path,
            "k4.json",
            {
                "kind": "graphic",
                "vertices": 4,
                "edges": [list(e) for e in zoo.complete_graph(4).edges],
            },
        )
        good = write_doc(
            tmp_path,
            "good.json",
            {"kind": "partition", "n": 6, "classes": [[0], [1, 3], [2, 4, 5]]},
        )
        code, out, _ = run(capsys, "verify", "--sampled", "200", k4, good)
        assert code == 0
        doc = json.loads(out)
        assert doc["method"] == "sampled" and doc["trials"] == 200

    def test_ground_set_mismatch(self, capsys, tmp_path):
        tri = write_doc(
            tmp_path,
            "tri.json",
            {"kind": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]},
        )
        part = write_doc(
            tmp_path,
            "p.json",
            {"kind": "partition", "n": 2, "classes": [[0], [1]]},
        )
        code, _, err = run(capsys, "verify", tri, part)
        assert code == 1


class TestChiAndListcolor:
    def test_chi_fano(self, capsys, tmp_path):
        fam = zoo.fano_family()
        fano = write_doc(
            tmp_path,
            "fano.json",
            {
                "kind": "paving",
                "rank": 3,
                "n": 7,
                "hyperplanes": [[i for i in range(7) if h >> i & 1] for h in fam.hyperplanes],
            },
        )
        code, out, _ = run(capsys, "chi", fano)
        assert code == 0
        doc = json.loads(out)
        assert doc["chi"] == 3
        assert len(doc["certificate"]["classes"]) == 3

    def test_chi_k6(self, capsys, tmp_path):
        k6 = write_doc(
            tmp_path,
            "k6.json",
            {
                "kind": "graphic",
                "vertices": 6,
                "edges": [list(e) for e in zoo.complete_graph(6).edges],
            },
        )
        code, out, _ = run(capsys, "chi", k6)
        assert code == 0 and json.loads(out)["chi"] == 3

    def test_listcolor_kiraly(self, capsys, tmp_path):
        code, out, _ = run(capsys, "generate", "kiraly")
        doc = write_doc(tmp_path, "kiraly.json", json.loads(out))
        code, out, _ = run(capsys, "listcolor", doc)
        assert code == 0
        assert json.loads(out)["feasible"] is False

    def test_listcolor_with_lists_file(self, capsys, tmp_path):
        part = write_doc(
            tmp_path,
            "m.json",
            {"kind": "partition", "n": 4, "classes": [[0, 1], [2, 3]]},
        )
        lists = write_doc(
            tmp_path,
            "lists.json",
            {"lists": {str(e): [0, 1] for e in range(4)}},
        )
        code, out, _ = run(capsys, "listcolor", part, "--lists", lists)
        assert code == 0
        doc = json.loads(out)
        assert doc["feasible"] is True

    def test_bad_json_exits_one(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, _, err = run(capsys, "chi", str(path))
        assert code == 1 and "error" in err


class TestRoundTripThroughFiles:
    def test_reduce_then_verify(self, capsys, tmp_path):
        code, out, _ = run(capsys, "generate", "gammoid-thm9", "3")
        gdoc = write_doc(tmp_path, "g.json", json.loads(out))
        out_path = tmp_path / "red.json"
        code, _, _ = run(capsys, "reduce", gdoc, "--output", str(out_path))
        assert code == 0
        red = json.loads(out_path.read_text())
        part = write_doc(tmp_path, "part.json", red["partition"])
        code, out, _ = run(capsys, "verify", gdoc, part)
        assert code == 0
        assert json.loads(out)["certified"]
