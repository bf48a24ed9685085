import json

import pytest

from compact_ldpc.catalog import get_entry
from compact_ldpc.cli import main
from compact_ldpc.metrics import LatencyReport
from compact_ldpc.simulate import SimResult


@pytest.fixture
def files(tmp_path):
    out = {}
    for key in ("qc-g10-m3-n5", "qc-g10-m3-n4", "sc-g10-c3-a4"):
        p = tmp_path / f"{key}.txt"
        p.write_text(get_entry(key).matrix.to_text())
        out[key] = p
    bad = tmp_path / "bad.txt"
    bad.write_text("3 4 3\n0 0 0 0\n0 1 2 0\n0 2 1 1\n")
    out["bad"] = bad
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_verify_pass(capsys, files):
    code, cap = run(capsys, "verify", "--file", str(files["qc-g10-m3-n5"]), "--girth", "10")
    assert code == 0 and "PASS" in cap.out


def test_verify_fail_has_witness(capsys, files):
    code, cap = run(capsys, "--json", "verify", "--file", str(files["qc-g10-m3-n5"]), "--girth", "12")
    env = json.loads(cap.out)
    assert code == 1 and env["ok"] is False and env["result"]["witness"]["length"] == 10


def test_verify_lifting_below_length(capsys, files):
    code, cap = run(capsys, "verify", "--file", str(files["bad"]))
    assert code == 2 and "n <= N" in cap.err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--nope"])
    assert exc.value.code == 2


def test_design_emits_file(capsys, tmp_path):
    target = tmp_path / "d.txt"
    code, cap = run(capsys, "design", "--rows", "3", "--cols", "4", "--girth", "6", "--emit", str(target))
    assert code == 0 and "N=5" in cap.out and target.exists()
    code, _ = run(capsys, "verify", "--file", str(target), "--girth", "6")
    assert code == 0


def test_design_budget(capsys):
    code, cap = run(capsys, "--json", "design", "--rows", "3", "--cols", "4", "--girth", "12", "--budget", "20")
    assert code == 1 and json.loads(cap.out)["result"]["status"] == "budget"


def test_unwrap_reduce(capsys, files, tmp_path):
    out = tmp_path / "u.txt"
    code, cap = run(capsys, "--json", "unwrap", "--file", str(files["qc-g10-m3-n4"]), "--reduce-memory",
                    "--emit", str(out))
    res = json.loads(cap.out)["result"]
    assert code == 0 and res["memory_before"] == 27 and res["memory"] <= 27 and res["girth"] >= 10
    assert out.read_text().splitlines()[1] == "3 4 inf"


def test_simulate_csv_plot_and_json(capsys, files, tmp_path):
    csv = tmp_path / "r.csv"
    argv = ["simulate", "--file", str(files["qc-g10-m3-n4"]), "--snr", "1:2:1", "--iters", "10",
            "--max-blocks", "64", "--stop-errors", "1000", "--out", str(csv), "--plot"]
    code, cap = run(capsys, "--json", *argv)
    assert code == 0
    res = SimResult.from_dict(json.loads(cap.out)["result"])
    assert res.to_csv() == csv.read_text()
    assert csv.with_suffix(".png").stat().st_size > 0


def test_simulate_sc(capsys, files):
    code, cap = run(capsys, "simulate", "--file", str(files["sc-g10-c3-a4"]), "--snr", "3", "--alpha", "1",
                    "--iters", "5", "--chain-len", "30", "--max-blocks", "40")
    assert code == 0 and "mode=sc-window" in cap.out


def test_simulate_plot_needs_out(capsys, files):
    code, _ = run(capsys, "simulate", "--file", str(files["qc-g10-m3-n4"]), "--snr", "1", "--plot")
    assert code == 2


def test_metrics_compare(capsys, files):
    code, cap = run(capsys, "--json", "metrics", "--file", str(files["qc-g10-m3-n4"]), "--iavg", "10",
                    "--compare", str(files["qc-g10-m3-n5"]))
    res = json.loads(cap.out)["result"]
    reps = [LatencyReport.from_dict(d) for d in res["reports"]]
    assert reps[0].latency_bits == 148 and reps[1].scheme == "SW"
    assert res["compare"]["theta_N"] == pytest.approx(37 / 61)


def test_catalog_commands(capsys, tmp_path):
    code, cap = run(capsys, "catalog", "list")
    assert code == 0 and len(cap.out.splitlines()) == 56
    code, cap = run(capsys, "catalog", "show", "qc-g10-m3-n4")
    assert code == 0 and "0 27 7 19" in cap.out
    code, _ = run(capsys, "catalog", "show", "missing")
    assert code == 2
    code, cap = run(capsys, "catalog", "export", str(tmp_path / "x"))
    assert code == 0 and len(list((tmp_path / "x").glob("*.txt"))) == 56


def test_catalog_verify_all(capsys):
    code, cap = run(capsys, "catalog", "verify")
    assert code == 0 and "56/56 entries pass" in cap.out
