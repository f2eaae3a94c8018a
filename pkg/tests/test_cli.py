import csv
import io
import subprocess
import sys

import pytest
from _reference import P_PRINTED, T2_ERRORS

from hyperasym.cli import CSV_HEADER, EXIT_FLAGGED, EXIT_OK, EXIT_USAGE, RunSpec, build_parser, main, resolve_spec, run


def run_csv(argv, capsys):
    status = main(argv)
    out = capsys.readouterr().out
    return status, list(csv.reader(io.StringIO(out)))


def test_eval_default(capsys):
    status, rows = run_csv(["eval"], capsys)
    assert status == EXIT_OK
    assert tuple(rows[0]) == CSV_HEADER
    rec = dict(zip(rows[0], rows[1]))
    assert float(rec["x"]) == 0.6 and float(rec["lambda"]) == 100.0
    assert float(rec["rel_err"]) < 1e-8


def test_csv_round_trips_values(capsys):
    status, rows = run_csv(["eval", "--x", "0.45,0.55", "--lambda", "20"], capsys)
    from hyperasym import ProblemParams, evaluate

    for row in rows[1:]:
        rec = dict(zip(rows[0], row))
        expect = evaluate(ProblemParams(1.0, 1.5, 1.0, 2.0, float(rec["x"])), 20.0).value
        assert float(rec["value"]) == expect


def test_output_is_deterministic(capsys):
    argv = ["sweep", "--lambda", "10,50"]
    first = run_csv(argv, capsys)
    second = run_csv(argv, capsys)
    assert first == second
    assert len(first[1]) == 1 + 7 * 2


def test_table2_cell(capsys):
    status, rows = run_csv(["table2"], capsys)
    assert status == EXIT_OK
    first = dict(zip(rows[0], rows[1]))
    assert float(first["p_k"]) == pytest.approx(P_PRINTED[0.6][0], abs=1e-10)
    assert len(rows) == 1 + 16


def test_table4_matches_printed_cell(capsys):
    status, rows = run_csv(["table4", "--x", "0.6", "--lambda", "100"], capsys)
    assert status == EXIT_OK
    rec = dict(zip(rows[0], rows[1]))
    assert rec["method"] == "t2" and rec["k_order"] == "3"
    assert float(rec["rel_err"]) == pytest.approx(T2_ERRORS[1][3], rel=0.02)


def test_table4_tail_truncation_override(capsys):
    _, rows = run_csv(["table4", "--x", "0.3", "--lambda", "100", "--truncation", "tail"], capsys)
    rec = dict(zip(rows[0], rows[1]))
    assert float(rec["rel_err"]) < 1e-9 < T2_ERRORS[6][3]


def test_coeffs_command(capsys):
    status, rows = run_csv(["coeffs", "--x", "0.5"], capsys)
    names = {r[1] for r in rows[1:]}
    assert status == EXIT_OK and names == {"p", "A", "B", "C", "D"}


def test_polynomial_m0(capsys):
    status, rows = run_csv(["eval", "--m", "0"], capsys)
    rec = dict(zip(rows[0], rows[1]))
    assert status == EXIT_OK and float(rec["value"]) == 1.0 and rec["branch"] == "polynomial_exact"


def test_pretty_format(capsys):
    assert main(["table3", "--x", "0.5", "--lambda", "10", "--format", "pretty"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == list(CSV_HEADER)
    assert "theorem1" in lines[1]


@pytest.mark.parametrize(
    "argv",
    [["nope"], ["eval", "--x", "1.2"], ["eval", "--eps", "0.5"], ["eval", "--lambda", "-3"],
     ["eval", "--method", "fast"], ["eval", "--method", "t1", "--k-order", "2"], ["eval", "--x", ""]],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    capsys.readouterr()


def test_flagged_cells(capsys):
    # the oracle refuses x = 0.98; the cell is reported and flagged
    status, rows = run_csv(["eval", "--x", "0.98", "--lambda", "10"], capsys)
    assert status == EXIT_FLAGGED
    assert "oracle_failed:DomainError" in rows[1][-1]


def test_config_precedence(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# base family\nx = 0.45, 0.55\nlambda=50\nk-order = 2\n")
    ns = build_parser().parse_args(["eval", "--lambda", "20"])
    spec = resolve_spec(ns, {"HYPERASYM_CONFIG": str(conf)})
    assert spec.x_list == (0.45, 0.55)
    assert spec.lambda_list == (20.0,)
    assert spec.k_order == 2
    conf.write_text("colour = blue\n")
    assert main(["eval"]) == EXIT_OK  # environment untouched
    capsys.readouterr()
    with pytest.raises(ValueError):
        resolve_spec(ns, {"HYPERASYM_CONFIG": str(conf)})


def test_output_file(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["eval", "--output", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[0] == ",".join(CSV_HEADER)


def test_run_spec_validation():
    with pytest.raises(ValueError):
        RunSpec(truncation="none")
    buf = io.StringIO()
    assert run(RunSpec(x_list=(0.5,), lambda_list=(10.0,)), buf) == EXIT_OK
    assert buf.getvalue().count("\n") == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hyperasym", "eval", "--m", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "polynomial_exact" in proc.stdout
