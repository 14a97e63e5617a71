import io
import subprocess
import sys

import pytest
from hypothesis import given

from width2lab import catalog
from width2lab.cli import DocumentError, main, parse, structure_from_name, to_text
from width2lab.families import double_fork, path_graph
from width2lab.structures import (Bichain, Graph, LabelledStructure, Poset, StructureError,
                                  inc)
from conftest import bichains, graphs, posets


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(out):
    tail = out.split("---\n", 1)[1]
    return dict(line.split("=", 1) for line in tail.splitlines())


# ------------------------------------------------------------ documents

@given(graphs())
def test_graph_round_trip(G):
    H = parse(to_text(G))
    assert H == G and to_text(H) == to_text(G)


@given(posets())
def test_poset_round_trip(P):
    Q = parse(to_text(P))
    assert Q == P and to_text(Q) == to_text(P)


@given(bichains())
def test_bichain_round_trip(B):
    assert parse(to_text(B)) == B


def test_poset_closure_and_comments():
    P = parse("poset 3  # a chain\n0 < 1\n\n1 < 2\n")
    assert P == Poset.chain(3)
    assert to_text(P) == "poset 3\n0 < 1\n1 < 2\n"


def test_reversed_bichain_is_antichain():
    assert parse("bichain 3\n2 1 0\n").n == 3
    from width2lab.structures import o
    assert o(parse("bichain 3\n2 1 0")) == Poset.antichain(3)


def test_order_insensitive_body():
    assert parse("graph 3\n1 2\n0 1\n") == parse("graph 3\n0 1\n1 2\n")


@pytest.mark.parametrize("text", [
    "", "tree 3\n", "graph\n", "graph -1\n", "graph 2\n0 5\n", "graph 2\n0 0\n",
    "graph 2\n0 x\n", "graph 3\n0 1 2\n", "poset 2\n0 1\n", "poset 2\n0 < 1\n1 < 0\n",
    "poset 1\n0 < 0\n", "bichain 3\n0 1\n", "bichain 3\n0 1 1\n",
    "labelled graph 2\n0 1\nlabel 0 0\n", "labelled graph 1\nlabel 0 0\norder 0 <= 1\norder 1 <= 0\n",
])
def test_malformed_documents(text):
    with pytest.raises(DocumentError):
        parse(text)


def test_cycle_message_names_invariant():
    with pytest.raises(DocumentError, match="invariant"):
        parse("poset 3\n0 < 1\n1 < 2\n2 < 0\n")


def test_labelled_document():
    text = "labelled graph 3\n0 1\n1 2\nlabel 0 1\nlabel 1 0\nlabel 2 2\norder 0 <= 2\n"
    X = parse(text)
    assert isinstance(X, LabelledStructure)
    assert list(X.labels) == [1, 0, 2]
    assert parse(to_text(X)) == X


def test_structure_names(tmp_path):
    assert structure_from_name("DF3") == double_fork(3)
    assert structure_from_name("P4") == path_graph(4)
    assert len(structure_from_name("K4").edges()) == 6
    assert structure_from_name("C5").n == 5
    assert structure_from_name("P2:6").kind == "poset"
    f = tmp_path / "g.txt"
    f.write_text("graph 2\n0 1\n")
    assert structure_from_name(str(f)) == path_graph(2)
    with pytest.raises(StructureError):
        structure_from_name("Q9")


# ------------------------------------------------------------- commands

def test_convert_inc_and_back(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["convert", "--to", "inc"], "poset 3\n0 < 1\n")
    assert code == 0 and parse(out) == Graph.from_edges(3, [(0, 2), (1, 2)])
    code, out, _ = run(capsys, monkeypatch, ["convert", "--to", "poset"], to_text(double_fork(4)))
    assert code == 0 and catalog.is_isomorphic(inc(parse(out)), double_fork(4))
    code, out, _ = run(capsys, monkeypatch, ["convert", "--to", "bichain"], "poset 3\n0 < 1\n")
    B = parse(out)
    assert isinstance(B, Bichain)
    code, out, _ = run(capsys, monkeypatch, ["convert", "--to", "comp"], "bichain 3\n0 1 2\n")
    assert len(parse(out).edges()) == 3


def test_convert_rejects_non_bp_graph(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["convert", "--to", "poset"],
                       "graph 3\n0 1\n1 2\n0 2\n")
    assert code == 1 and "error" in err


def test_metric(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["metric"], to_text(path_graph(5)))
    m = machine(out)
    assert code == 0 and m["diameter"] == "4" and m["connected"] == "true"
    code, out, _ = run(capsys, monkeypatch, ["metric", "--oscillation"],
                       "poset 4\n0 < 1\n2 < 3\n")
    assert code == 0 and machine(out)["inequalities_ok"] == "true"
    code, _, _ = run(capsys, monkeypatch, ["metric", "--oscillation"], "graph 2\n0 1\n")
    assert code == 1


def test_decompose(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["decompose", "prime"], to_text(path_graph(4)))
    assert code == 0 and machine(out)["prime"] == "true"
    code, out, _ = run(capsys, monkeypatch, ["decompose", "modules"], "graph 3\n0 1\n")
    assert code == 0 and int(machine(out)["components"]) == 2
    code, out, _ = run(capsys, monkeypatch, ["decompose", "realizers"], "poset 2\n")
    assert code == 0 and machine(out)["realizers"] == "1"
    code, out, _ = run(capsys, monkeypatch, ["decompose", "unique"], "poset 3\n0 < 1\n")
    assert code == 0 and machine(out)["unique"] == machine(out)["oracle"]
    code, out, _ = run(capsys, monkeypatch, ["decompose", "quotient"], "poset 3\n0 < 1\n1 < 2\n")
    assert code == 0 and "---" in out
    code, _, _ = run(capsys, monkeypatch, ["decompose", "unique"], "graph 1\n")
    assert code == 1


def test_recognize(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["recognize"], to_text(double_fork(3)))
    assert code == 0 and machine(out)["bipartite_permutation"] == "true"
    code, out, _ = run(capsys, monkeypatch, ["recognize"], "graph 3\n0 1\n1 2\n0 2\n")
    assert code == 0 and machine(out)["bipartite_permutation"] == "false"
    code, out, _ = run(capsys, monkeypatch, ["recognize"], "poset 3\n")
    assert machine(out)["width"] == "3"


def test_embed(capsys, monkeypatch, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.write_text(to_text(path_graph(3)))
    b.write_text(to_text(path_graph(5)))
    code, out, _ = run(capsys, monkeypatch, ["embed", str(a), str(b)])
    assert code == 0 and machine(out)["embeds"] == "true"
    code, out, _ = run(capsys, monkeypatch, ["embed", str(b), str(a)])
    assert machine(out)["embeds"] == "false"
    code, _, err = run(capsys, monkeypatch, ["embed", str(a), str(tmp_path / "missing")])
    assert code == 1 and err


def test_family(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["family", "DF", "4"])
    assert code == 0 and parse(out) == double_fork(4)
    code, _, _ = run(capsys, monkeypatch, ["family", "NOPE"])
    assert code == 1


def test_class(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["class", "wqo", "--avoid", "P6", "--universe", "bp"])
    assert code == 0 and out.startswith("WQO maxfork=3")
    code, out, _ = run(capsys, monkeypatch, ["class", "wqo", "--avoid", "none"])
    assert machine(out)["verdict"] == "NOT_WQO"
    code, out, _ = run(capsys, monkeypatch, ["class", "member", "--age", "DF5"], to_text(double_fork(6)))
    assert machine(out)["member"] == "false"
    code, out, _ = run(capsys, monkeypatch, ["class", "bounds", "--age", "P9", "--cap", "5"])
    assert machine(out)["count"] == "4"
    code, out, _ = run(capsys, monkeypatch, ["class", "enumerate", "--avoid", "P3",
                                             "--universe", "all", "--cap", "3"])
    assert machine(out)["count"] == "6"
    code, out, _ = run(capsys, monkeypatch, ["class", "audit", "--age", "DF4", "--cap", "7"])
    assert code == 0 and machine(out)["ok"] == "true"
    code, _, _ = run(capsys, monkeypatch, ["class", "wqo", "--age", "DF4", "--avoid", "P6"])
    assert code == 1
    code, _, _ = run(capsys, monkeypatch, ["class", "wqo", "--avoid", "P6", "--universe", "all"])
    assert code == 1


def test_verify(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["verify", "--suite", "forks", "--max-size", "8"])
    assert code == 0 and out.startswith("PASS [ 1] forks")
    assert machine(out)["failed"] == "0"
    code, _, _ = run(capsys, monkeypatch, ["verify", "--suite", "nope"])
    assert code == 1


def test_usage_errors(capsys, monkeypatch):
    assert run(capsys, monkeypatch, [])[0] == 1
    assert run(capsys, monkeypatch, ["convert"])[0] == 1
    assert run(capsys, monkeypatch, ["--help"])[0] == 0
    assert run(capsys, monkeypatch, ["metric"], "graph 2\n0 9\n")[0] == 1


def test_console_script_pipeline():
    fam = subprocess.run([sys.executable, "-m", "width2lab.cli", "family", "DF", "4"],
                         capture_output=True, text=True, check=True)
    conv = subprocess.run([sys.executable, "-m", "width2lab.cli", "convert", "--to", "poset"],
                          input=fam.stdout, capture_output=True, text=True)
    assert conv.returncode == 0
    assert parse(conv.stdout).kind == "poset"
