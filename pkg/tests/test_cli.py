import json

from click.testing import CliRunner

from qcylab.cli import main, verify
from qcylab.verification import FIELDS


def _rows(output):
    return [json.loads(line) for line in output.splitlines() if line.strip()]


def test_constants_rows_and_exit_code():
    res = CliRunner().invoke(verify, ["constants", "--n", "3"])
    assert res.exit_code == 0, res.output
    rows = _rows(res.output)
    row = next(r for r in rows if r["check_id"] == "c_closed_vs_series")
    assert row["status"] == "pass" and row["error"] == "exact"
    assert all(tuple(r) == FIELDS for r in rows)


def test_report_is_deterministic_modulo_runtime():
    runner = CliRunner()
    outs = []
    for _ in range(2):
        res = runner.invoke(verify, ["sphere", "--n", "1", "--seed", "7", "--samples", "20000"])
        outs.append([{k: v for k, v in r.items() if k != "runtime_ms"} for r in _rows(res.output)])
    assert outs[0] == outs[1]


def test_csv_format_has_header():
    res = CliRunner().invoke(verify, ["wedge", "--format", "csv"])
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == ",".join(FIELDS)


def test_bad_flag_is_usage_error():
    res = CliRunner().invoke(verify, ["constants", "--n", "0"])
    assert res.exit_code == 2
    res = CliRunner().invoke(verify, ["nonsense"])
    assert res.exit_code == 2


def test_seed_env_fallback():
    res = CliRunner().invoke(verify, ["wedge"], env={"QCYLAB_SEED": "11"})
    assert all(r["seed"] == 11 for r in _rows(res.output))
    res = CliRunner().invoke(verify, ["wedge"], env={"QCYLAB_SEED": "x"})
    assert res.exit_code == 2


def test_failing_row_gives_exit_one():
    res = CliRunner().invoke(verify, ["sphere", "--samples", "20000", "--tol", "0"])
    assert res.exit_code == 1


def test_group_entry_point():
    res = CliRunner().invoke(main, ["verify", "conformal"])
    assert res.exit_code == 0
