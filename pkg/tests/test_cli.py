import csv
import io
import json
import math
import subprocess
import sys

import pytest

from rscover.cli import COMMANDS, dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# config ")
    cfg = json.loads(lines[0][len("# config "):])
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    return cfg, rows


def test_random_hamming_example(capsys):
    code, out, _ = run(capsys, "bound", "random-hamming", "--q", "7", "--n", "6", "--M", "16807")
    assert code == 0
    cfg, rows = parse_csv(out)
    assert len(rows) == 1
    assert abs(float(rows[0]["value"]) - 0.871936580) < 1e-6
    assert cfg["q"] == 7 and cfg["M"] == 16807 and cfg["command"] == "bound random-hamming"


def test_crs_min_snr_example(capsys):
    code, out, _ = run(capsys, "bound", "crs-min-snr", "--p", "7", "--mode", "rate-to-1")
    assert code == 0
    _, rows = parse_csv(out)
    assert abs(float(rows[0]["value"]) - (6 + 2 * math.pi**2)) < 1e-12
    assert rows[0]["value"].startswith("25.7392")


def test_table1_example(capsys):
    code, out, _ = run(capsys, "repro", "table1", "--q", "7", "--n", "6", "--trials", "40",
                       "--seed", "1")
    assert code == 0
    _, rows = parse_csv(out)
    assert list(rows[0]) == ["k", "bw_punctures", "gs_punctures"]
    assert [r["k"] for r in rows] == ["1", "2", "3", "4", "5"]
    assert float(rows[0]["gs_punctures"]) == 0 and float(rows[4]["gs_punctures"]) == 0


def test_fig1_columns(capsys):
    _, out, _ = run(capsys, "repro", "fig1", "--trials", "5")
    _, rows = parse_csv(out)
    assert list(rows[0]) == ["k", "upper_bound", "random_thm1", "alg1_bw", "alg1_gs"]
    _, out, _ = run(capsys, "repro", "fig1", "--trials", "5", "--map")
    _, rows = parse_csv(out)
    assert list(rows[0])[-1] == "alg1_map"
    for r in rows:
        assert float(r["alg1_map"]) <= float(r["alg1_bw"])


def test_json_output_roundtrips(capsys):
    code, out, _ = run(capsys, "bound", "random-chordal", "--n", "6", "--M", "343",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"command", "params", "results", "meta"}
    assert set(doc["meta"]) == {"seed", "version", "timestamp"}
    assert doc["params"]["n"] == 6
    assert doc["results"][0]["value"] == pytest.approx(0.530568745885669, abs=1e-12)
    assert float(repr(doc["results"][0]["value"])) == doc["results"][0]["value"]


def test_csv_is_byte_identical_on_rerun(capsys):
    argv = ["sim", "grs-cover", "--q", "7", "--n", "6", "--k", "3", "--mode", "list",
            "--trials", "30", "--seed", "4"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv, "--workers", "2")
    assert a == b == c


def test_config_reruns_reproduce(capsys):
    _, out, _ = run(capsys, "bound", "coverage", "--q", "5", "--n", "4", "--k", "2", "--exact")
    cfg, _ = parse_csv(out)
    argv = cfg.pop("command").split()
    for k, v in cfg.items():
        if k == "seed" and v == 0:
            continue
        flag = "--" + k.replace("_", "-")
        argv += [flag] if v is True else [flag, str(v)]
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_out_path(tmp_path, capsys):
    p = tmp_path / "r.csv"
    code, out, _ = run(capsys, "code", "crs-size", "--q", "4", "--n", "3", "--k", "2",
                       "--out", str(p))
    assert code == 0 and out == ""
    _, rows = parse_csv(p.read_text())
    assert rows[0]["size"] == "8"


def test_unwritable_path_is_internal_error(tmp_path, capsys):
    code, _, err = run(capsys, "bound", "tau-max", "--q", "17", "--n", "14", "--k", "2",
                       "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 1 and "cannot write" in err


@pytest.mark.parametrize("argv,needle", [
    (["bound", "random-hamming", "--q", "7"], "--n"),
    (["bound", "random-hamming", "--q", "6", "--n", "3", "--M", "4"], "6"),
    (["bound", "punctures-unique", "--q", "7", "--n", "9", "--k", "2"], "n <= q - 1"),
    (["bound", "crs-upper", "--p", "8", "--n", "6", "--k", "2", "--mu", "1", "--sigma", "1"], "prime"),
    (["sim", "grs-cover", "--q", "7", "--n", "6", "--k", "3", "--mode", "fast"], "--mode"),
    (["sim", "grs-cover", "--q", "7", "--n", "6", "--k", "3", "--trials", "0"], "--trials"),
    (["bound", "random-hamming", "--bogus"], "unrecognized"),
    (["bound", "nope"], "invalid choice"),
    (["repro", "fig1", "--workers", "0"], "--workers"),
    (["bound", "crs-min-snr", "--p", "7", "--n", "6", "--R", "0.2"], "R > 1/(c+1)"),
])
def test_validation_errors_exit_2(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert needle in err


def test_every_command_is_reachable(capsys):
    for group, names in COMMANDS.items():
        for name in names:
            code, _, err = run(capsys, group, name, "--help")
            assert code == 0, (group, name, err)


def test_weights_and_tau_max(capsys):
    _, out, _ = run(capsys, "code", "weights", "--q", "5", "--n", "4", "--k", "2")
    _, rows = parse_csv(out)
    assert sum(int(r["count"]) for r in rows) == 25
    _, out, _ = run(capsys, "bound", "tau-max", "--q", "17", "--n", "14", "--k", "2")
    _, rows = parse_csv(out)
    assert rows[0]["tau_max"] == "10" == rows[0]["tau_gs"]


def test_exact_mode(capsys):
    _, out, _ = run(capsys, "bound", "punctures-unique", "--q", "5", "--n", "4", "--k", "2",
                    "--exact")
    _, rows = parse_csv(out)
    assert rows[0]["exact"] == "28/25"


def test_sim_log(capsys):
    _, out, _ = run(capsys, "sim", "exhaustive", "--q", "5", "--n", "4", "--k", "2",
                    "--trials", "4", "--log")
    _, rows = parse_csv(out)
    assert [r["trial"] for r in rows] == ["0", "1", "2", "3"]
    assert all(r["distance"] == r["oracle_distance"] for r in rows)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "rscover", "bound", "crs-min-snr", "--p", "7",
                        "--mode", "rate-to-1"], capture_output=True, text=True)
    assert r.returncode == 0 and "25.7392" in r.stdout
    r = subprocess.run([sys.executable, "-m", "rscover", "bound"], capture_output=True, text=True)
    assert r.returncode == 2
