from holozeta.cli import main
from holozeta.laurent import parse_laurent
from holozeta.presentation import format_presentation
from holozeta.quandle import (
    constant_pair,
    dihedral_quandle,
    f_twisted_weights,
    format_pair_file,
    format_quandle,
    format_weights_file,
)
from holozeta.wgraph import Edge, WeightedDigraph, format_graph, parse_matrix_literal
from holozeta import fixtures


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _graph_file(tmp_path):
    g = WeightedDigraph(
        "matrix",
        (("u", 1), ("v", 1)),
        (
            Edge("e1", "u", "v", parse_matrix_literal("[[t]]")),
            Edge("e2", "v", "u", parse_matrix_literal("[[1]]")),
            Edge("e3", "u", "u", parse_matrix_literal("[[2]]")),
        ),
    )
    return _write(tmp_path, "g.wg", format_graph(g))


def test_zeta_with_euler_check(tmp_path, capsys):
    path = _graph_file(tmp_path)
    assert main(["zeta", "--graph", path, "--check-euler"]) == 0
    out = capsys.readouterr().out
    assert "zeta-reciprocal: -1 - t" in out
    assert "euler-agrees: true" in out


def test_zeta_missing_file(tmp_path, capsys):
    assert main(["zeta", "--graph", str(tmp_path / "nope.wg")]) == 2


def test_alexander_both_routes(tmp_path, capsys):
    pd = _write(tmp_path, "tre.pd", fixtures.TREFOIL_PD)
    assert main(["alexander", "--pd", pd, "--route", "both"]) == 0
    out = capsys.readouterr().out
    assert "numerator: 1 - t + t^2" in out
    assert "routes-agree: true" in out


def test_alexander_with_rep_file(tmp_path, capsys):
    pd = _write(tmp_path, "f8.pd", fixtures.FIGURE_EIGHT_PD)
    rep = _write(tmp_path, "triv.rep", "all: [[1]] exp=1\n")
    assert main(["alexander", "--pd", pd, "--rep", rep, "--route", "direct"]) == 0
    out = capsys.readouterr().out
    assert "numerator: 1 - 3*t + t^2" in out


def test_alexander_gauss_input(tmp_path, capsys):
    gc = _write(tmp_path, "braid.gauss", fixtures.BRAID_SLIDE_GAUSS_BEFORE)
    assert main(["alexander", "--gauss", gc, "--route", "both"]) == 0
    out = capsys.readouterr().out
    assert "routes-agree: true" in out


def test_tietze_verify(tmp_path, capsys):
    before = _write(
        tmp_path, "p.txt", format_presentation(fixtures.slide_presentation_before())
    )
    after = _write(
        tmp_path, "q.txt", format_presentation(fixtures.slide_presentation_after())
    )
    script = _write(
        tmp_path,
        "s.tz",
        "\n".join(
            [
                "conjugate 1 xj",
                "multiply 0 1",
                "conjugate 1 xj^-1",
                "remove_generator xi1",
                "multiply 0 1",
                "conjugate 1 xk xj1 xi2 xk^-1 xj^-1",
                "multiply_inv 0 1",
                "conjugate 1 xj xk xi2^-1 xj1^-1 xk^-1",
                "add_generator xi1 xj1 xi2 xj1^-1",
                "conjugate 2 xk",
                "multiply_inv 0 2",
                "conjugate 2 xk^-1",
            ]
        ),
    )
    assert main(["tietze-verify", "--pres", before, "--script", script,
                 "--expect", after]) == 0
    assert "verified: true" in capsys.readouterr().out
    # wrong target fails with exit 1
    assert main(["tietze-verify", "--pres", before, "--script", script,
                 "--expect", before]) == 1
    out = capsys.readouterr().out
    assert "verified: false" in out and "witness" in out


def test_graph_verify(tmp_path, capsys):
    path = _graph_file(tmp_path)
    script = _write(tmp_path, "s.gs", "null_add z1 u v\nnull_remove z1\n")
    assert main(["graph-verify", "--graph", path, "--script", script,
                 "--expect", path]) == 0
    assert "verified: true" in capsys.readouterr().out
    bad = _write(tmp_path, "bad.gs", "null_remove e1\n")
    assert main(["graph-verify", "--graph", path, "--script", bad,
                 "--expect", path]) == 1


def test_quandle_and_pair_checks(tmp_path, capsys):
    q = dihedral_quandle(3)
    qf = _write(tmp_path, "q3.txt", format_quandle(q))
    assert main(["quandle-check", "--quandle", qf]) == 0
    badq = _write(tmp_path, "bad.txt", "2\n1 0\n0 1\n")
    assert main(["quandle-check", "--quandle", badq]) == 1

    f = constant_pair(q, parse_laurent("t"), parse_laurent("1 - t"))
    pf = _write(tmp_path, "pair.txt", format_pair_file(f))
    assert main(["pair-check", "--quandle", qf, "--pair", pf]) == 0
    lines = format_pair_file(f).splitlines()
    lines[4] = ", ".join(["7"] * 3)  # break an f2 row
    badp = _write(tmp_path, "badpair.txt", "\n".join(lines))
    assert main(["pair-check", "--quandle", qf, "--pair", badp]) == 1
    out = capsys.readouterr().out
    assert "(cond=" in out


def test_holonomy_check(tmp_path, capsys):
    q = dihedral_quandle(3)
    qf = _write(tmp_path, "q3.txt", format_quandle(q))
    f = constant_pair(q, parse_laurent("t"), parse_laurent("1 - t"))
    wf = _write(tmp_path, "w.txt", format_weights_file(f_twisted_weights(f, q)))
    assert main(["holonomy-check", "--quandle", qf, "--weights", wf,
                 "--perturb", "3"]) == 0
    out = capsys.readouterr().out
    assert "holonomy-preserved: true" in out
    assert "perturbations-rejected: 3/3" in out


def test_colorings(tmp_path, capsys):
    q = dihedral_quandle(3)
    qf = _write(tmp_path, "q3.txt", format_quandle(q))
    pd = _write(tmp_path, "tre.pd", fixtures.TREFOIL_PD)
    assert main(["colorings", "--quandle", qf, "--pd", pd]) == 0
    out = capsys.readouterr().out
    assert "count: 9" in out


def test_export_dot(tmp_path, capsys):
    path = _graph_file(tmp_path)
    assert main(["export-dot", "--graph", path]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_deterministic_output(tmp_path, capsys):
    pd = _write(tmp_path, "tre.pd", fixtures.TREFOIL_PD)
    main(["alexander", "--pd", pd, "--route", "both"])
    first = capsys.readouterr().out
    main(["alexander", "--pd", pd, "--route", "both"])
    second = capsys.readouterr().out
    assert first == second


def test_bad_arguments_exit_2(capsys):
    assert main(["alexander"]) == 2
    assert main(["no-such-command"]) == 2
