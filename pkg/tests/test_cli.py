import csv
import io
import json
import math

import pytest

from gweyl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def energies(row):
    return sorted(float(row[k]) for k in ("E1", "E2", "E3", "E4"))


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "100")
    assert code == 0
    table = rows(out)
    assert table and all(r["status"] == "pass" for r in table)


def test_verify_json_and_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "50", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["n_failed"] == 0
    code, out, _ = run(capsys, "verify", "--samples", "50", "--tolerance", "1e-300")
    assert code == 1


def test_dispersion_examples(capsys):
    code, out, _ = run(capsys, "dispersion", "--p", "1", "--m1", "1", "--m2", "0")
    assert code == 0
    assert energies(rows(out)[0]) == pytest.approx([-1, -1, 1, 1], abs=1e-12)
    _, out, _ = run(capsys, "dispersion", "--p", "0", "--m1", "2", "--m2", "2")
    assert energies(rows(out)[0]) == pytest.approx([-2, -2, 2, 2], abs=1e-10)
    _, out, _ = run(capsys, "dispersion", "--p", "1", "--m1", "1", "--m2", "2")
    r5 = math.sqrt(5)
    assert energies(rows(out)[0]) == pytest.approx([-r5, -r5, r5, r5], abs=1e-10)


def test_dispersion_massless_rest_frame_is_defective(capsys):
    _, out, _ = run(capsys, "dispersion", "--p", "0", "--m1", "1", "--m2", "0")
    assert rows(out)[0]["diagonalizable"] == "false"


def test_equivalence_scan(capsys):
    code, out, _ = run(capsys, "equivalence", "--m2", "1", "0.1", "0.01")
    assert code == 0
    table = rows(out)
    assert [float(r["r_max"]) for r in table] == pytest.approx([1, 10, 100], rel=1e-12)
    assert all(float(r["residual"]) < 1e-10 for r in table)


def test_equivalence_massless_limit(capsys):
    code, _, err = run(capsys, "equivalence", "--m2", "1", "0")
    assert code == 2 and "MasslessLimit" in err


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--m1", "1", "--m2", "3", "--momentum", "0", "0", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["operator_residual"] < 1e-12
    assert data["first_order_residual"] < 1e-12


def test_usage_errors(capsys):
    assert run(capsys, "oscillate", "--samples", "4")[0] == 2
    assert run(capsys, "derive", "--m1", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["dispersion", "--representation", "bogus"])
    assert exc.value.code == 2


def test_oscillate_writes_sidecar(tmp_path, capsys):
    out = tmp_path / "trace.csv"
    code, _, _ = run(capsys, "oscillate", "--samples", "512", "--output", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,prob_up,prob_down,norm" and len(lines) == 513
    meta = json.loads(out.with_suffix(".json").read_text())
    assert meta["samples"] == 512
    assert abs(meta["probability_frequency"] - 2.0) < meta["frequency_bin_width"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--samples", "200", "--seed", "3"],
        ["verify", "--samples", "200", "--seed", "3", "--format", "json"],
        ["dispersion", "--p", "0.1", "1", "10", "--m2", "0.5"],
        ["oscillate", "--samples", "256", "--V", "0.2"],
        ["equivalence", "--seed", "4"],
        ["derive", "--format", "json"],
    ],
)
def test_byte_identical_runs(tmp_path, capsys, argv):
    a, b = tmp_path / "a.out", tmp_path / "b.out"
    main(argv + ["--output", str(a)])
    main(argv + ["--output", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_json_is_strict(capsys):
    _, out, _ = run(capsys, "dispersion", "--p", "1", "2", "--format", "json")
    data = json.loads(out, parse_constant=lambda c: pytest.fail(f"non-finite constant {c}"))
    assert json.loads(json.dumps(data)) == data


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# masses\nm1 = 2\nm2 = 2\np = 0\n")
    _, out, _ = run(capsys, "dispersion", "--config", str(cfg))
    assert energies(rows(out)[0]) == pytest.approx([-2, -2, 2, 2], abs=1e-10)
    _, out, _ = run(capsys, "dispersion", "--config", str(cfg), "--m1", "3", "--m2", "3")
    assert energies(rows(out)[0]) == pytest.approx([-3, -3, 3, 3], abs=1e-10)


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense = 1\n")
    assert run(capsys, "dispersion", "--config", str(cfg))[0] == 2
