import json

import pytest

from pplab import __version__
from pplab.cli import main, parse_digits
from pplab.ff import make_field


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_fails_conditions(capsys):
    code, out, _ = run(capsys, "verify", "--p", "7", "--h", "1", "--family", "f1", "--A", "0", "--B", "0")
    d = json.loads(out)
    assert code == 0
    assert d["conditions"]["pass"] is False
    assert "B in {0,1}" in d["conditions"]["reasons"]
    assert d["bruteforce"] == "skipped"
    assert d["version"] == __version__ and d["seed"] and d["config_hash"]


def test_verify_passing_pair_is_pp(capsys):
    # first passing f2 pair at q = 13 from the census (f1 has none there)
    from pplab.census import run_census
    rep = run_census("f2", 13)
    row = next(r for r in rep.rows if r.passes)
    code, out, _ = run(capsys, "verify", "--p", "13", "--family", "f2", "--A", str(row.A.raw),
                       "--B", str(row.B.raw), "--bruteforce")
    d = json.loads(out)
    assert code == 0 and d["conditions"]["pass"] and d["bruteforce"] == "PP"


def test_verify_anomaly_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--p", "7", "--family", "f3", "--A", "1", "--B", "2", "--bruteforce")
    assert code == 1 and json.loads(out)["anomaly"] is True


def test_congruence_error(capsys):
    code, _, err = run(capsys, "verify", "--p", "5", "--family", "f3", "--A", "1", "--B", "1")
    assert code == 2 and "q = 1 (mod 3)" in err


@pytest.mark.parametrize("bad", ["x", "7", "1;2;3", ""])
def test_malformed_digits(capsys, bad):
    code, _, err = run(capsys, "verify", "--p", "7", "--family", "f1", "--A", bad, "--B", "0")
    assert code == 2 and "error" in err


def test_parse_digits():
    ctx = make_field(5, 2)
    assert parse_digits("3;1", ctx) == ctx.elem([3, 1])
    assert parse_digits("3", ctx) == ctx.elem([3, 0])


def test_census_csv_is_deterministic(tmp_path, capsys):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["census", "--p", "5", "--h", "2", "--family", "f4", "--bruteforce", "--out", str(p1)]) == 0
    assert main(["census", "--p", "5", "--h", "2", "--family", "f4", "--bruteforce", "--out", str(p2),
                 "--workers", "2"]) == 0
    a, b = p1.read_bytes(), p2.read_bytes()
    assert a == b
    lines = a.decode().splitlines()
    assert lines[0].startswith("# p=5 h=2 base_modulus=") and "config_hash=" in lines[0]
    assert lines[1] == "family,p,h,q,A,B,passes,bruteforce_pp"
    first = lines[2].split(",")
    assert first[:4] == ["f4", "5", "2", "25"] and ";" in first[4]
    assert first[6] in ("true", "false") and first[7] in ("true", "false")


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--p", "13", "--family", "f2", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["pairs_on_curve"] >= d["pairs_passing"] > 0
    assert d["bound_satisfied"] is True and d["pairs_bruteforce_pp"] is None


def test_census_f3_anomalies_exit_nonzero(capsys):
    code, out, _ = run(capsys, "census", "--p", "7", "--family", "f3", "--bruteforce", "--format", "json")
    assert code == 1 and len(json.loads(out)["anomalies"]) == 4


def test_seed_changes_hash(capsys):
    _, a, _ = run(capsys, "field-info", "--p", "7")
    _, b, _ = run(capsys, "field-info", "--p", "7", "--seed", "5")
    assert json.loads(a)["config_hash"] != json.loads(b)["config_hash"]
    assert json.loads(b)["seed"] == 5


def test_identities_all(capsys):
    code, out, _ = run(capsys, "identities", "--all")
    d = json.loads(out)
    assert code == 0
    assert [e["holds"] for e in d["identities"]] == [True, True, True]


def test_pipeline_writes_golden_candidate(tmp_path, capsys, golden_dir):
    code, out, _ = run(capsys, "pipeline", "--family", "f3", "--branch", "a_zero", "--out", str(tmp_path))
    d = json.loads(out)
    assert code == 0 and d["structure_ok"]
    assert d["details"]["h1_factor_divides"] == [True, True, True]
    assert (tmp_path / "f3_a_zero.zpoly").read_text() == (golden_dir / "f3_a_zero.zpoly").read_text()


def test_curves(capsys):
    code, out, _ = run(capsys, "curves", "--p", "61")
    d = json.loads(out)
    assert code == 0 and [c["prop"] for c in d["counts"]] == ["P1", "P2", "P3"]
    assert all(c["within_window"] for c in d["counts"])
    p2 = d["counts"][1]
    assert "genus" in p2["genus_note"]


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--p", "5", "--h", "2")
    d = json.loads(out)
    assert d["q"] == 25 and d["families"] == ["f1", "f2", "f3", "f4"]


def test_usage_errors(capsys):
    assert run(capsys, "census", "--p", "7")[0] == 2
    assert run(capsys, "census", "--p", "7", "--family", "f1", "--budget", "0")[0] == 2
    assert run(capsys, "pipeline", "--family", "f1", "--branch", "sideways")[0] == 2
