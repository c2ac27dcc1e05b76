import subprocess
import sys

import pytest

from twcanon.cli import main
from twcanon.formats import (
    FormatError,
    format_graph,
    format_tree_decomposition,
    parse_graph,
    parse_tree_decomposition,
)
from twcanon.decomposition import TreeDecomposition
from twcanon.graph import Graph

from conftest import complete_graph, cycle_graph, path_graph


# --- formats -----------------------------------------------------------------

def test_graph_roundtrip():
    g = Graph(4, [(0, 1), (2, 3), (1, 2)])
    assert parse_graph(format_graph(g)) == g


def test_parse_graph_with_comments():
    text = "# a path\np 3 2\ne 1 2\n# middle\ne 2 3\n"
    assert parse_graph(text) == path_graph(3)


def test_parse_graph_errors():
    cases = [
        "e 1 2\n",                 # edge before header
        "p 2 1\ne 1 3\n",          # out of range
        "p 2 1\ne 1 1\n",          # self loop
        "p 2 2\ne 1 2\n",          # count mismatch
        "p 2 0\np 2 0\n",          # duplicate header
        "x 1\n",                   # unknown kind
        "",
    ]
    for text in cases:
        with pytest.raises(FormatError):
            parse_graph(text)


def test_parse_graph_error_positions():
    try:
        parse_graph("p 2 1\ne 1 3\n", source="g.gr")
    except FormatError as exc:
        assert exc.line == 2
        assert "g.gr:2" in str(exc)


def test_td_roundtrip():
    td = TreeDecomposition(
        (None, 0, 0), (frozenset({0, 1}), frozenset({1, 2}), frozenset({1, 3}))
    )
    back = parse_tree_decomposition(format_tree_decomposition(td))
    assert back == td


def test_td_parse_errors():
    with pytest.raises(FormatError):
        parse_tree_decomposition("b 1 1\n")
    with pytest.raises(FormatError):
        parse_tree_decomposition("s td 2 2\nb 1 1\nb 2 2\n")  # missing tree edge
    with pytest.raises(FormatError):
        parse_tree_decomposition("s td 1 1\nb 2 1\n")  # wrong ids


# --- CLI ---------------------------------------------------------------------

def write_graph(tmp_path, name, g):
    path = tmp_path / name
    path.write_text(format_graph(g))
    return str(path)


def test_canon_k1_graph(tmp_path, capsys):
    path = write_graph(tmp_path, "k1.gr", Graph(1))
    code = main(["canon", "-k", "2", path])
    assert code == 0
    assert capsys.readouterr().out == "(f 1 (i 1 (leaf)))\n"


def test_canon_too_wide(tmp_path, capsys):
    path = write_graph(tmp_path, "k3.gr", complete_graph(3))
    code = main(["canon", "-k", "2", path])
    assert code == 2
    assert capsys.readouterr().out == "TOOWIDE\n"


def test_canon_deterministic_across_relabelling(tmp_path, capsys):
    g = cycle_graph(4)
    p1 = write_graph(tmp_path, "a.gr", g)
    p2 = write_graph(tmp_path, "b.gr", g.permuted([3, 1, 0, 2]))
    assert main(["canon", "-k", "3", p1]) == 0
    out1 = capsys.readouterr().out
    assert main(["canon", "-k", "3", p2]) == 0
    out2 = capsys.readouterr().out
    assert out1 == out2


def test_iso_isomorphic(tmp_path, capsys):
    g = cycle_graph(4)
    p1 = write_graph(tmp_path, "a.gr", g)
    p2 = write_graph(tmp_path, "b.gr", g.permuted([2, 0, 3, 1]))
    code = main(["iso", "-k", "3", p1, p2])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "ISOMORPHIC"
    assert len(out) == 5  # one mapping line per vertex


def test_iso_nonisomorphic(tmp_path, capsys):
    p1 = write_graph(tmp_path, "a.gr", cycle_graph(4))
    p2 = write_graph(tmp_path, "b.gr", path_graph(4))
    code = main(["iso", "-k", "3", p1, p2])
    assert code == 3
    assert capsys.readouterr().out == "NONISOMORPHIC\n"


def test_improve_subcommand(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.gr", cycle_graph(4))
    code = main(["improve", "-k", "2", path])
    assert code == 0
    assert parse_graph(capsys.readouterr().out) == complete_graph(4)


def test_atoms_subcommand(tmp_path, capsys):
    diamond = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    path = write_graph(tmp_path, "d.gr", diamond)
    code = main(["atoms", path])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["1 2 3", "1 2 4"]


def test_bags_subcommand(tmp_path, capsys):
    path = write_graph(tmp_path, "p4.gr", path_graph(4))
    code = main(["bags", "-k", "2", "--stage", "atoms", path])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["1 2", "2 3", "3 4"]


def test_bags_raw_requires_atom(tmp_path, capsys):
    path = write_graph(tmp_path, "p4.gr", path_graph(4))
    code = main(["bags", "-k", "2", "--stage", "raw", path])
    assert code == 1
    path2 = write_graph(tmp_path, "c4.gr", cycle_graph(4))
    assert main(["bags", "-k", "3", "--stage", "raw", path2]) == 0
    assert capsys.readouterr()  # drain


def test_td_validate(tmp_path, capsys):
    gpath = write_graph(tmp_path, "p3.gr", path_graph(3))
    td = TreeDecomposition((None, 0), (frozenset({0, 1}), frozenset({1, 2})))
    tdpath = tmp_path / "p3.td"
    tdpath.write_text(format_tree_decomposition(td))
    code = main(["td-validate", gpath, str(tdpath)])
    assert code == 0
    assert capsys.readouterr().out == "ok width 1 adhesion-width 1\n"
    bad = TreeDecomposition((None, 0), (frozenset({0}), frozenset({2})))
    tdpath.write_text(format_tree_decomposition(bad))
    assert main(["td-validate", gpath, str(tdpath)]) == 1


def test_term_eval(tmp_path, capsys):
    tpath = tmp_path / "term.txt"
    tpath.write_text("(e 1 2 (i 2 (i 1 (leaf))))\n")
    code = main(["term-eval", str(tpath)])
    assert code == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "p 2 1"
    assert out[1] == "e 1 2"
    assert out[2:] == ["l 1 1", "l 2 2"]


def test_term_eval_parse_error(tmp_path, capsys):
    tpath = tmp_path / "bad.txt"
    tpath.write_text("(j (leaf))\n")
    assert main(["term-eval", str(tpath)]) == 1
    assert "offset" in capsys.readouterr().err


def test_gen_subcommand(capsys):
    code = main(["gen", "-k", "2", "-n", "3", "--keep-prob", "1.0", "--seed", "7"])
    assert code == 0
    assert parse_graph(capsys.readouterr().out) == complete_graph(3)


def test_gen_deterministic(capsys):
    main(["gen", "-k", "2", "-n", "12", "--keep-prob", "0.6", "--seed", "5"])
    a = capsys.readouterr().out
    main(["gen", "-k", "2", "-n", "12", "--keep-prob", "0.6", "--seed", "5"])
    assert capsys.readouterr().out == a


def test_usage_errors(tmp_path, capsys):
    assert main(["canon", "-k", "2", str(tmp_path / "missing.gr")]) == 1
    assert main(["nonsense"]) == 1
    assert main(["canon"]) == 1
    bad = tmp_path / "bad.gr"
    bad.write_text("p 1\n")
    assert main(["canon", "-k", "2", str(bad)]) == 1
    capsys.readouterr()


def test_param_override_warns(tmp_path, capsys):
    path = write_graph(tmp_path, "p3.gr", path_graph(3))
    code = main(["canon", "-k", "2", "--param", "zeta=500", path])
    captured = capsys.readouterr()
    assert code == 0
    assert "NOT a canonical form" in captured.err
    code = main(["canon", "-k", "2", "--param", "bogus=1", path])
    assert code == 1


def test_pair_budget_flag_no_warning(tmp_path, capsys):
    path = write_graph(tmp_path, "p3.gr", path_graph(3))
    assert main(["canon", "-k", "2", "--pair-budget", "5", path]) == 0
    assert "canonical" not in capsys.readouterr().err


def test_budget_exit_code(tmp_path, capsys, monkeypatch):
    from twcanon import cli
    from twcanon.errors import BudgetExceededError

    def explode(*args, **kwargs):
        raise BudgetExceededError(10**9, 1)

    monkeypatch.setattr(cli, "canonize", explode)
    path = write_graph(tmp_path, "p3.gr", path_graph(3))
    code = main(["canon", "-k", "2", path])
    assert code == 4
    assert capsys.readouterr().out == "BUDGETEXCEEDED\n"


def test_module_entry_point(tmp_path):
    path = write_graph(tmp_path, "k1.gr", Graph(1))
    proc = subprocess.run(
        [sys.executable, "-m", "twcanon", "canon", "-k", "1", path],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "(f 1 (i 1 (leaf)))\n"


def test_byte_determinism_across_processes(tmp_path):
    import os

    g = gen_like_graph()
    path = write_graph(tmp_path, "g.gr", g)
    outs = []
    for seed in ("1", "271828"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [sys.executable, "-m", "twcanon", "canon", "-k", "3", path],
            capture_output=True,
            env=env,
        )
        assert proc.returncode == 0
        outs.append(proc.stdout)
    assert outs[0] == outs[1]


def gen_like_graph():
    from twcanon.oracle import gen_partial_ktree

    return gen_partial_ktree(12, 2, 0.7, seed=4)
