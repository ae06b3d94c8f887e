import json
import math

import pytest

from entcost import cli
from entcost.bounds import mac_lower
from entcost.states import MacParams, binary_entropy

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def read_csv(path):
    lines = path.read_bytes().decode().split("\r\n")
    assert lines[-1] == ""
    assert lines[0].startswith("#seed=")
    header = lines[1].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[2:-1]]
    return lines[0], header, rows


def test_sweep_csv_endpoints(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = cli.main(
        ["sweep", "--steps", "2", "--rounds", "1", "--out", str(out)]
    )
    assert rc == 0
    comment, header, rows = read_csv(out)
    assert comment == "#seed=42"
    assert header == list(cli.SWEEP_COLUMNS)
    assert len(rows) == 2
    bell, product = rows
    # Bell end: every bound is one ebit
    for col in ("ent_states", "avg_ent", "lower_absolute", "lower_single",
                "upper_single", "upper_multiround", "teleport_upper"):
        assert float(bell[col]) == pytest.approx(1.0, abs=1e-9)
    # product end: everything but the teleport fallback vanishes
    for col in ("ent_states", "avg_ent", "lower_absolute", "lower_single",
                "upper_single", "upper_multiround"):
        assert float(product[col]) == pytest.approx(0.0, abs=1e-9)
    assert float(product["teleport_upper"]) == 1.0


def test_sweep_deterministic_bytes(tmp_path):
    args = ["sweep", "--steps", "7", "--rounds", "2"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(out1)]) == 0
    assert cli.main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert b"\r\n" in out1.read_bytes()


def test_sweep_json_matches_csv(tmp_path):
    base = ["sweep", "--steps", "5", "--rounds", "1"]
    csv_path = tmp_path / "s.csv"
    json_path = tmp_path / "s.json"
    assert cli.main(base + ["--out", str(csv_path)]) == 0
    assert cli.main(base + ["--out", str(json_path), "--format", "json"]) == 0
    _, header, rows = read_csv(csv_path)
    payload = json.loads(json_path.read_text())
    assert payload["seed"] == 42
    assert len(payload["rows"]) == len(rows)
    for jrow, crow in zip(payload["rows"], rows):
        for col in header:
            assert jrow[col] == float(crow[col])


def test_sweep_custom_seed_echoed(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(
        ["sweep", "--steps", "2", "--rounds", "1", "--seed", "7", "--out", str(out)]
    ) == 0
    assert out.read_bytes().startswith(b"#seed=7\r\n")


def test_sweep_unwritable_path_fails(tmp_path):
    rc = cli.main(
        ["sweep", "--steps", "2", "--rounds", "1",
         "--out", str(tmp_path / "missing" / "f.csv")]
    )
    assert rc == 1


def test_sweep_rejects_bad_range():
    with pytest.raises(ValueError):
        cli.SweepConfig(0.5, 1.0, 10, 1, "-", "csv")
    with pytest.raises(ValueError):
        cli.SweepConfig(INV_SQRT2, 1.0, 1, 1, "-", "csv")
    with pytest.raises(ValueError):
        cli.SweepConfig(INV_SQRT2, 1.0, 10, 1, "-", "xml")


def test_mac_sweep_values(tmp_path):
    out = tmp_path / "mac.csv"
    assert cli.main(["mac-sweep", "--steps", "3", "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header == list(cli.MAC_COLUMNS)
    assert len(rows) == 9
    def row_at(a, c):
        return next(
            r for r in rows
            if abs(float(r["a"]) - a) < 1e-9 and abs(float(r["c"]) - c) < 1e-9
        )

    bell_row = row_at(INV_SQRT2, 1.0)
    assert float(bell_row["avg_ent"]) == pytest.approx(0.5, abs=1e-9)
    assert float(bell_row["mac_lower"]) == pytest.approx(0.5, abs=1e-6)
    assert float(row_at(1.0, 1.0)["mac_lower"]) == pytest.approx(0.0, abs=1e-9)
    # spot-check an interior cell against the library call
    a = c = float(rows[4]["a"])
    p = MacParams.from_ac(a, c)
    assert float(rows[4]["mac_lower"]) == pytest.approx(mac_lower(p), abs=1e-9)
    assert float(rows[4]["avg_ent"]) == pytest.approx(
        binary_entropy(a * a), abs=1e-9
    )


def test_verify_command(capsys):
    rc = cli.main(
        ["verify", "--a", str(math.sqrt(0.8)), "--x", str(math.sqrt(0.9)),
         "--trials", "2000", "--seed", "5"]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert "induced POVM matches" in out
    assert "teleport frequency" in out


def test_povm_command(capsys):
    rc = cli.main(["povm", "--d", "2", "--seed", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "cost-equality residual" in out


def test_asymptotics_command(capsys):
    rc = cli.main(["asymptotics", "--b", "1e-3"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("b ")]
    assert len(lines) == 1
    _, r_up, r_lo, r_abs = lines[0].split()
    assert 0.5 < float(r_up) < 2.0
    assert 0.5 < float(r_lo) < 2.0
    assert 0.5 < float(r_abs) < 2.0


def test_demo_command(capsys):
    rc = cli.main(["demo"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "average_cost=0.5"
