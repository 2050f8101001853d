"""Command-line interface: exit codes, stream separation, determinism.

Exit code 0 is a positive answer, 1 a negative or exhausted-budget one,
and 2 a usage or format problem, so shell scripts can branch on results
without scraping text.  Results go to stdout, diagnostics to stderr.
"""

import pytest

from satmat.cli import main
from satmat.corpus import _data_root
from satmat.pattern import parse_pattern, serialize_pattern

DATA = str(_data_root())


def pat(name: str) -> str:
    return f"{DATA}/{name}.pat"


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse usage failures
            code = exc.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


# ======================================================================
# contain
# ======================================================================


def test_contain_hit(run):
    code, out, err = run("contain", "--host", pat("w2"), "--pattern", pat("q1"))
    assert code == 0
    assert out.startswith("copy at rows")
    assert err == ""


def test_contain_miss_is_exit_one(run):
    code, out, _ = run("contain", "--host", pat("q2_wv"), "--pattern", pat("q2"))
    assert code == 1
    assert out.strip() == "no copy"


def test_contain_with_pinned_cell(run):
    code, out, _ = run(
        "contain", "--host", pat("w2"), "--pattern", pat("q1"), "--cell", "2", "1"
    )
    assert code == 0
    assert out.startswith("copy at rows")
    # pinning a one that no copy runs through flips the answer
    code, out, _ = run(
        "contain", "--host", pat("w2"), "--pattern", pat("q1"), "--cell", "1", "3"
    )
    assert code == 1
    assert out.strip() == "no copy"


def test_contain_usage_error_on_missing_file(run):
    code, _, err = run("contain", "--host", "/nonexistent.pat", "--pattern", pat("q2"))
    assert code == 2
    assert err


def test_missing_required_flag_is_exit_two(run):
    code, _, _ = run("contain", "--host", pat("q2"))
    assert code == 2


# ======================================================================
# check-witness / check-saturating
# ======================================================================


def test_check_witness_accepts(run):
    code, out, _ = run(
        "check-witness",
        "--witness", pat("q2_wv"), "--pattern", pat("q2"), "--kind", "vertical",
    )
    assert code == 0
    assert "vertical witness" in out
    assert "expandable" in out


def test_check_witness_rejects_wrong_kind(run):
    code, out, _ = run(
        "check-witness",
        "--witness", pat("q2_wv"), "--pattern", pat("q2"), "--kind", "horizontal",
    )
    assert code == 1
    assert "not a horizontal witness" in out


def test_check_witness_explain_adds_evidence(run):
    _, out_plain, _ = run(
        "check-witness",
        "--witness", pat("q2_wh"), "--pattern", pat("q2"), "--kind", "horizontal",
    )
    _, out_verbose, err = run(
        "check-witness",
        "--witness", pat("q2_wh"), "--pattern", pat("q2"), "--kind", "horizontal",
        "--explain",
    )
    assert len(out_verbose) + len(err) > len(out_plain)


def test_check_saturating_and_semi(run):
    code, _, _ = run(
        "check-saturating", "--matrix", pat("q2_wv"), "--pattern", pat("q2")
    )
    assert code == 1  # a witness is avoiding but not saturating
    code, _, _ = run(
        "check-saturating", "--matrix", pat("q2_wv"), "--pattern", pat("q2"), "--semi"
    )
    assert code in (0, 1)


# ======================================================================
# classify
# ======================================================================


def test_classify_bounded_with_reason(run):
    code, out, _ = run("classify", "--pattern", pat("q2"))
    assert code == 0
    assert out.strip() == "bounded (q2-like)"


def test_classify_linear(run):
    code, out, _ = run("classify", "--pattern", pat("tri"))
    assert code == 0
    assert out.strip() == "linear (ssat-linear)"


def test_classify_explain_adds_semisaturation_detail(run):
    code, out, _ = run("classify", "--pattern", pat("q2"), "--explain")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "bounded (q2-like)"
    assert "semisaturation: bounded" in lines
    assert "fixed-row semisaturation: bounded" in lines


# ======================================================================
# sat-exact / emit-ilp
# ======================================================================


def test_sat_exact_prints_the_value(run):
    code, out, _ = run(
        "sat-exact", "--pattern", pat("tri"), "--rows", "3", "--cols", "3"
    )
    assert code == 0
    assert out.strip() == "8"


def test_sat_exact_explain_prints_an_optimum(run):
    code, out, err = run(
        "sat-exact", "--pattern", pat("tri"), "--rows", "3", "--cols", "3",
        "--explain",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "8"
    grid = parse_pattern("\n".join(lines[1:]))
    assert grid.weight == 8
    assert "nodes" in err


def test_sat_exact_budget_exhaustion(run):
    code, out, err = run(
        "sat-exact", "--pattern", pat("tri"), "--rows", "4", "--cols", "4",
        "--budget", "2",
    )
    assert code == 1
    assert out == ""
    assert "budget exhausted" in err


def test_sat_exact_threads_do_not_change_output(run):
    _, out1, _ = run(
        "sat-exact", "--pattern", pat("tri"), "--rows", "3", "--cols", "4"
    )
    _, out2, _ = run(
        "sat-exact", "--pattern", pat("tri"), "--rows", "3", "--cols", "4",
        "--threads", "2",
    )
    assert out1 == out2 == "10\n"


def test_emit_ilp_writes_lp_text(run):
    code, out, _ = run(
        "emit-ilp", "--pattern", pat("tri"), "--rows", "3", "--cols", "3"
    )
    assert code == 0
    assert out.startswith("Minimize")
    assert "x_3_3" in out


# ======================================================================
# decide-fixed-rows
# ======================================================================


def test_fixed_rows_exhausted(run):
    code, out, _ = run("decide-fixed-rows", "--pattern", pat("s"), "--rows", "2")
    assert code == 1
    assert out.strip() == "exhausted"


def test_fixed_rows_found_prints_the_witness(run):
    code, out, _ = run("decide-fixed-rows", "--pattern", pat("p2"), "--rows", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "found"
    w = parse_pattern("\n".join(lines[1:]))
    assert w.rows == 3


def test_fixed_rows_inconclusive_budget(run):
    code, out, err = run(
        "decide-fixed-rows", "--pattern", pat("s"), "--rows", "2", "--budget", "2"
    )
    assert code == 1
    assert out.strip() == "inconclusive"
    assert "budget" in err


# ======================================================================
# construct
# ======================================================================


def test_construct_reproduces_the_stored_witness(run):
    code, out, _ = run("construct", "wv-q2like", "--pattern", pat("q2"))
    assert code == 0
    stored = open(pat("q2_wv")).read()
    assert parse_pattern(out) == parse_pattern(stored)


def test_construct_missing_flag_is_usage_error(run):
    code, _, err = run("construct", "wk")
    assert code == 2
    assert "--k" in err


def test_construct_family(run):
    code, out, _ = run("construct", "family-qk", "--k", "3")
    assert code == 0
    assert parse_pattern(out).rows == 3


def test_construct_append_row_times(run):
    code, out, _ = run(
        "construct", "append-row",
        "--witness", pat("q2_wh"), "--pattern", pat("q2"), "--times", "2",
    )
    assert code == 0
    assert parse_pattern(out).rows == 8


# ======================================================================
# graph
# ======================================================================


def test_graph_dump(run):
    code, out, _ = run(
        "graph", "--witness", pat("w2"), "--pattern", pat("p2"),
        "--kind", "horizontal",
    )
    assert code == 0
    assert "vertices: 1 2 3 4" in out
    assert "checks:" in out


def test_graph_enumerate(run):
    code, out, _ = run(
        "graph", "--witness", pat("w5"), "--pattern", pat("p2"),
        "--kind", "horizontal", "--enumerate",
    )
    assert code == 0
    assert "graph 1 of 4:" in out
    assert "graph 4 of 4:" in out


def test_graph_cap_exceeded(run):
    code, _, err = run(
        "graph", "--witness", pat("w5"), "--pattern", pat("p2"),
        "--kind", "horizontal", "--enumerate", "--cap", "2",
    )
    assert code != 0
    assert "cap" in err


# ======================================================================
# ddim
# ======================================================================


def test_ddim_builtin_witness(run):
    code, out, _ = run("ddim", "builtin", "--name", "wa", "--n", "9")
    assert code == 0
    assert out.startswith("dims 6 6 9")


def test_ddim_exponent(run):
    code, out, _ = run("ddim", "exponent", "--pattern", f"{DATA}/a.dpat", "--ell", "0")
    assert code == 0
    assert out.strip() == "1"


def test_ddim_contain(run):
    code, out, _ = run(
        "ddim", "contain", "--host", f"{DATA}/wa9.dpat", "--pattern", f"{DATA}/a.dpat"
    )
    assert code == 1
    assert "no copy" in out


def test_ddim_usage_error_for_missing_operand(run):
    code, _, _ = run("ddim", "exponent")
    assert code == 2


# ======================================================================
# corpus-verify and top-level behavior
# ======================================================================


def test_corpus_verify_is_green(run):
    code, out, _ = run("corpus-verify")
    assert code == 0
    assert "PASS" in out


def test_no_command_is_usage_error(run):
    code, _, _ = run()
    assert code == 2


def test_help_exits_zero():
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
