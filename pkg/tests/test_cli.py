import csv
import io
import json
import subprocess
import sys

import pytest

from acmgenera import cli


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_genera_json(capsys):
    code, out, _ = run_cli(["genera", "7", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["d"] == 7
    assert payload["genera"] == [0, 1, 2, 3, 4, 5, 6, 7, 10, 15]
    assert payload["gaps"] == [8, 9, 11, 12, 13, 14]
    assert payload["witnesses"] == {"5": "1,2,3,1"}
    # stable ordering: re-serialization reproduces the emitted bytes
    assert json.dumps(payload, sort_keys=True) == out.strip()


def test_genera_csv(capsys):
    code, out, _ = run_cli(["genera", "7", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "status", "provenance", "witness"]
    assert len(rows) == 17  # header + 16 values
    table = {int(r[0]): r[1:] for r in rows[1:]}
    assert table[5] == ["genus", "searched", "1,2,3,1"]
    assert table[0] == ["genus", "step1", ""]
    assert table[8] == ["gap", "step2", ""]
    assert sum(1 for r in table.values() if r[0] == "gap") == 6


def test_genera_text_and_oracle(capsys):
    code, out, _ = run_cli(["genera", "12", "--oracle"], capsys)
    assert code == 0
    assert "oracle: ok" in out
    assert "d=12" in out


def test_genera_oracle_budget(capsys):
    code, _, err = run_cli(["genera", "45", "--oracle"], capsys)
    assert code == 3
    assert "budget" in err


def test_genera_parallel_byte_identical(capsys):
    _, out1, _ = run_cli(["genera", "25", "--format", "json", "--parallel", "1"], capsys)
    _, out4, _ = run_cli(["genera", "25", "--format", "json", "--parallel", "4"], capsys)
    assert out1 == out4
    _, csv1, _ = run_cli(["genera", "25", "--format", "csv", "--parallel", "1"], capsys)
    _, csv3, _ = run_cli(["genera", "25", "--format", "csv", "--parallel", "3"], capsys)
    assert csv1 == csv3


def test_gaps(capsys):
    code, out, _ = run_cli(["gaps", "12", "--format", "json"], capsys)
    assert code == 0
    certs = json.loads(out)
    expected = {26} | set(range(32, 36)) | set(range(38, 45)) | set(range(46, 55))
    assert {c["value"] for c in certs} == expected
    by_value = {c["value"]: c for c in certs}
    assert by_value[26]["reason"] == "hole-always-gap"
    assert by_value[32]["reason"] == "between-ranges"
    code, out, _ = run_cli(["gaps", "7"], capsys)
    assert out.splitlines()[0] == "8 between-ranges s=5"


def test_search(capsys):
    code, out, _ = run_cli(["search", "15", "25", "--length", "6"], capsys)
    assert code == 0 and out.strip() == "1,3,3,4,2,2"
    code, out, _ = run_cli(["search", "15", "25", "--length", "5"], capsys)
    assert code == 0 and out.strip() == "none"
    code, out, _ = run_cli(["search", "7", "5"], capsys)
    assert code == 0 and out.strip() == "1,2,3,1"
    code, _, err = run_cli(["search", "4", "1", "--length", "9"], capsys)
    assert code == 2 and "no O-sequence" in err


def test_ranges(capsys):
    code, out, _ = run_cli(["ranges", "7"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "s=4 min=3 max=6 minWitness=1,4,1,1 maxWitness=1,2,2,2 separated=false"
    assert lines[3].endswith("separated=true")
    code, out, _ = run_cli(["ranges", "10", "--format", "json"], capsys)
    rows = json.loads(out)
    assert {"s": 4, "min": 3, "max": 11, "minWitness": "1,7,1,1", "maxWitness": "1,2,3,4", "separated": False} in rows


def test_mseq(capsys):
    code, out, _ = run_cli(["mseq", "15"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "d=15 m=32"
    code, out, _ = run_cli(["mseq", "45", "--format", "json"], capsys)
    values = json.loads(out)
    assert values[6] == 4 and values[24] == 118 and values[44] == 490


def test_min_reg(capsys):
    code, out, _ = run_cli(["min-reg", "15", "32"], capsys)
    assert code == 0
    fields = dict(kv.split("=") for kv in out.split())
    assert fields["m_acm"] == "8" and fields["rho"] == "6"
    code, _, err = run_cli(["min-reg", "12", "26"], capsys)
    assert code == 2 and err.startswith("gap")
    code, _, err = run_cli(["min-reg", "5", "99"], capsys)
    assert code == 2 and err.startswith("out-of-range")


def test_enumerate(capsys):
    code, out, _ = run_cli(["enumerate", "7"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 12 and lines[0] == "1,6"
    code, out, _ = run_cli(["enumerate", "7", "--length", "4", "--export", "json"], capsys)
    adj = json.loads(out)
    assert adj["root"] == "1,4,1,1" and len(adj["edges"]) == 3
    code, out, _ = run_cli(["enumerate", "7", "--length", "3", "--export", "dot"], capsys)
    assert out.startswith("digraph") and '"1,4,2" -> "1,3,3";' in out


def test_hilbert(capsys):
    code, out, _ = run_cli(["hilbert", "1,1", "--tmax", "2"], capsys)
    assert code == 0
    assert "H_C: 1,3,5" in out
    assert "polynomial: 2t+1" in out
    code, out, _ = run_cli(["hilbert", "1,2^3,1", "--format", "json"], capsys)
    payload = json.loads(out)
    assert payload["h"] == "1,2,2,2,1"
    assert payload["rho"] == 3
    code, _, err = run_cli(["hilbert", "1,2,4"], capsys)
    assert code == 2 and "not an admissible" in err
    code, _, err = run_cli(["hilbert", "3,1"], capsys)
    assert code == 2


def test_bench(capsys):
    code, out, _ = run_cli(["bench", "10", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    run = payload["runs"][0]
    assert set(run) >= {"backend", "step1_ms", "step2_ms", "step3_ms", "total_ms"}
    assert payload["full_visit"]["sequences"] == 40
    code, out, _ = run_cli(["bench", "10"], capsys)
    assert "step3 searches" in out and "full visit:" in out


def test_cache_flow(tmp_path, capsys):
    path = str(tmp_path / "c.cache")
    code, out, _ = run_cli(["cache-write", "20", path], capsys)
    assert code == 0
    _, cached, _ = run_cli(["genera", "20", "--cache", path, "--format", "json"], capsys)
    _, fresh, _ = run_cli(["genera", "20", "--format", "json"], capsys)
    assert cached == fresh


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["not-a-command"])
    assert exc.value.code == 1
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        cli.main(["genera"])
    assert exc.value.code == 1
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        cli.main(["genera", "7", "--format", "yaml"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_entry_point_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "acmgenera.cli", "mseq", "7", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout) == [0, 0, 1, 1, 3, 4, 4]


def test_backend_env_flag_subprocess():
    cmd = [sys.executable, "-m", "acmgenera.cli", "genera", "15", "--format", "json"]
    default = subprocess.run(cmd, capture_output=True, text=True)
    import os

    env = dict(os.environ, ACMGENERA_BACKEND="python")
    fallback = subprocess.run(cmd, capture_output=True, text=True, env=env)
    assert default.returncode == fallback.returncode == 0
    assert default.stdout == fallback.stdout
