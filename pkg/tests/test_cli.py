import csv
import json
import math
import subprocess
import sys

import pytest

import wreathlis
from wreathlis.cli import main, parse_grid, parse_int_list, parse_u_grid
from wreathlis.exact import lis_moments


def run_cli(*argv):
    return main(list(argv))


def test_parse_grid():
    assert parse_grid("16,64") == [(16, 16), (64, 64)]
    assert parse_grid("8x32, 16x16") == [(8, 32), (16, 16)]
    for bad in ("", "4,,8", "0", "3x0", "x4"):
        with pytest.raises(ValueError):
            parse_grid(bad)


def test_parse_int_list_and_u_grid():
    assert parse_int_list("1, 2,30") == [1, 2, 30]
    with pytest.raises(ValueError):
        parse_int_list("1,0")
    assert parse_u_grid("0, 1.5") == (0.0, 1.5)
    with pytest.raises(ValueError):
        parse_u_grid("-1")


FIXTURE_EXPECTED = """\
# {{"version":"{v}","seed":null,"config":{{"command":"sample","n":3,"k":2,"fixture":true}}}}
element n=3 k=2
inner[1]: 2 1
inner[2]: 1 2
inner[3]: 2 1
outer: 2 3 1
word: 6 5 2 1 3 4
L: 3
witness_positions: 3 5 6
block_word: 3 1 2
N: 2
chosen_blocks: 1 2
per_block_lis: 1 2 1
W: 3
""".format(v=wreathlis.__version__)


def test_sample_fixture_golden(capsys):
    assert run_cli("sample", "--fixture") == 0
    assert capsys.readouterr().out == FIXTURE_EXPECTED


def test_sample_degenerate_sizes(capsys):
    assert run_cli("sample", "--n", "1", "--k", "1", "--seed", "3") == 0
    out = capsys.readouterr().out
    assert "word: 1\n" in out
    assert "L: 1\n" in out


def test_sample_is_deterministic(capsys):
    assert run_cli("sample", "--n", "4", "--k", "3", "--seed", "99") == 0
    first = capsys.readouterr().out
    assert run_cli("sample", "--n", "4", "--k", "3", "--seed", "99") == 0
    assert capsys.readouterr().out == first


def test_sample_usage_errors():
    with pytest.raises(SystemExit) as err:
        run_cli("sample", "--n", "2", "--k", "2")
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run_cli("sample", "--fixture", "--n", "2")
    assert err.value.code == 2


def test_exact_wreath_csv_golden(capsys):
    assert run_cli("exact", "--wreath", "2", "2", "--format", "csv") == 0
    expected = (
        '# {{"version":"{v}","seed":null,"config":{{"command":"exact",'
        '"mode":"wreath","n":2,"k":2,"statistic":"L","cap":1000000}}}}\n'
        "value,count\n1,1\n2,4\n3,2\n4,1\n"
    ).format(v=wreathlis.__version__)
    assert capsys.readouterr().out == expected


def test_exact_signed_json(capsys):
    assert run_cli("exact", "--signed", "2") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["support"] == [1, 2, 3, 4]
    assert doc["counts"] == [1, 5, 1, 1]
    assert doc["meta"]["version"] == wreathlis.__version__
    assert doc["meta"]["seed"] is None


def test_exact_sym_json(capsys):
    assert run_cli("exact", "--sym", "3") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mean"] == {"num": 2, "den": 1}
    assert doc["var"] == {"num": 1, "den": 3}


def test_exact_cap_exit_code(capsys):
    assert run_cli("exact", "--wreath", "4", "4") == 3
    err = capsys.readouterr().err
    assert "--cap" in err
    assert run_cli("exact", "--wreath", "4", "4", "--cap", "8000000") == 0


def test_exact_statistic_flag(capsys):
    assert run_cli("exact", "--wreath", "2", "2", "--statistic", "W", "--format", "csv") == 0
    body = capsys.readouterr().out.splitlines()
    assert body[1] == "value,count"
    rows = dict(line.split(",") for line in body[2:])
    assert rows == {"1": "2", "2": "3", "3": "2", "4": "1"}


def test_scan_csv_shape_and_thread_invariance(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    rec1 = tmp_path / "a.jsonl"
    rec2 = tmp_path / "b.jsonl"
    args = ["scan", "--grid", "2x6,4", "--trials", "40", "--seed", "11"]
    assert run_cli(*args, "--threads", "1", "--out", str(out1), "--records", str(rec1)) == 0
    assert run_cli(*args, "--threads", "3", "--out", str(out2), "--records", str(rec2)) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert rec1.read_bytes() == rec2.read_bytes()

    lines = out1.read_text().splitlines()
    assert lines[0].startswith("# {")
    assert lines[1] == "n,k,trials,mean_L,se_L,var_L,median_L,mean_ratio,mean_W"
    rows = list(csv.DictReader(lines[1:]))
    assert [(r["n"], r["k"]) for r in rows] == [("2", "6"), ("4", "4")]

    rec_lines = rec1.read_text().splitlines()
    meta = json.loads(rec_lines[0])["meta"]
    assert meta["seed"] == 11
    assert meta["config"]["grid"] == [[2, 6], [4, 4]]
    records = [json.loads(line) for line in rec_lines[1:]]
    assert len(records) == 80
    assert list(records[0]) == ["trial", "n", "k", "L", "W", "N"]
    assert all(r["W"] <= r["L"] for r in records)


def test_tail_json_and_csv_bound_recomputed(tmp_path):
    json_path = tmp_path / "tail.json"
    csv_path = tmp_path / "tail.csv"
    args = ["tail", "--k", "5", "--trials", "2000", "--seed", "21", "--u-grid", "0,1,2.5"]
    assert run_cli(*args, "--out", str(json_path)) == 0
    assert run_cli(*args, "--format", "csv", "--out", str(csv_path)) == 0

    doc = json.loads(json_path.read_text())
    assert doc["estimates_exact"] is True
    h = lis_moments(5).median_bound
    assert doc["threshold"] == pytest.approx(h)

    lines = csv_path.read_text().splitlines()
    assert lines[1] == "u,empirical_tail,bound,mc_error"
    for row in csv.DictReader(lines[1:]):
        u = float(row["u"])
        expected = 2.0 * math.exp(-(u * u) / (4.0 * (h + u)))
        assert float(row["bound"]) == expected
        assert 0.0 <= float(row["empirical_tail"]) <= 1.0


def test_conjecture_csv(tmp_path):
    out = tmp_path / "conj.csv"
    assert run_cli("conjecture", "--grid", "1,25", "--trials", "60", "--seed", "31",
                   "--out", str(out)) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "n,k,trials,mean_L_scaled,se_L_scaled,mean_W_scaled,se_W_scaled"
    rows = list(csv.DictReader(lines[1:]))
    assert [r["n"] for r in rows] == ["1", "25"]
    assert all(r["k"] == "2" for r in rows)


def test_partitions_csv_and_records(tmp_path):
    out = tmp_path / "parts.csv"
    rec = tmp_path / "parts.jsonl"
    assert run_cli("partitions", "--n", "4", "--steps", "3000", "--burn-in", "500",
                   "--seed", "41", "--out", str(out), "--records", str(rec)) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "partition,count,frequency"
    rows = list(csv.reader(lines[1:]))[1:]
    assert [r[0] for r in rows] == ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]
    assert sum(int(r[1]) for r in rows) == 2500

    rec_lines = rec.read_text().splitlines()
    assert "meta" in json.loads(rec_lines[0])
    assert len(rec_lines) == 1 + 2500
    for line in rec_lines[1:]:
        parts = json.loads(line)
        assert sum(parts) == 4
        assert parts == sorted(parts, reverse=True)


def test_partitions_reruns_are_byte_identical(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["partitions", "--n", "3", "--steps", "2000", "--burn-in", "100", "--seed", "5"]
    assert run_cli(*args, "--out", str(a)) == 0
    assert run_cli(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_partitions_usage_error_steps_vs_burn_in(capsys):
    assert run_cli("partitions", "--n", "3", "--steps", "10", "--burn-in", "10",
                   "--seed", "1") == 2
    assert "error" in capsys.readouterr().err


def test_malformed_grid_exits_2(capsys):
    assert run_cli("scan", "--grid", "4,,8", "--trials", "5", "--seed", "1") == 2
    assert run_cli("scan", "--grid", "0", "--trials", "5", "--seed", "1") == 2
    capsys.readouterr()


def test_seed_required_for_asymptotic_commands():
    for args in (
        ["scan", "--grid", "4", "--trials", "5"],
        ["tail", "--k", "5", "--trials", "10"],
        ["conjecture", "--grid", "4", "--trials", "5"],
        ["partitions", "--n", "3", "--steps", "10"],
    ):
        with pytest.raises(SystemExit) as err:
            run_cli(*args)
        assert err.value.code == 2


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "wreathlis.cli", "--version"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert res.stdout.strip() == f"wreathlis {wreathlis.__version__}"
    res = subprocess.run(
        [sys.executable, "-m", "wreathlis.cli", "exact", "--wreath", "4", "4"],
        capture_output=True, text=True,
    )
    assert res.returncode == 3
    res = subprocess.run(
        [sys.executable, "-m", "wreathlis.cli", "tail", "--k", "5", "--trials", "10"],
        capture_output=True, text=True,
    )
    assert res.returncode == 2
