import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hurwitz_divisor import checks, cli
from hurwitz_divisor.picard import DivisorClass, d2_class_theorem


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_class_k2_zero(capsys):
    code, out, _ = run(capsys, "class", "--k", "2", "--divisor", "d2", "--method", "theorem")
    assert code == 0
    cls = DivisorClass.from_json(json.loads(out))
    assert cls.is_zero() and cls.genus == 4


def test_class_k3_pipeline(capsys):
    code, out, _ = run(capsys, "class", "--k", "3", "--divisor", "d2", "--method", "pipeline")
    assert code == 0
    assert json.loads(out) == {"genus": 6, "lambda": "612", "delta": ["-76", "-300", "-444", "-459"]}


def test_class_d3_needs_k2(capsys):
    code, _, err = run(capsys, "class", "--k", "1", "--divisor", "d3")
    assert code == 2 and "error" in err


def test_class_d3_pipeline_is_usage_error(capsys):
    code, _, _ = run(capsys, "class", "--k", "3", "--divisor", "d3", "--method", "pipeline")
    assert code == 2


def test_class_formats(capsys):
    _, csv_out, _ = run(capsys, "class", "--k", "2", "--divisor", "d3", "--format", "csv")
    assert csv_out.splitlines() == [
        "basis,coefficient", "lambda,264", "delta_0,-30", "delta_1,-96", "delta_2,-128",
    ]
    _, tex, _ = run(capsys, "class", "--k", "3", "--format", "latex")
    assert tex.strip().startswith("612\\,\\lambda - 76\\,\\delta_{0}")
    assert cli._latex(Fraction(-5, 2)) == "-\\frac{5}{2}"


def test_class_json_round_trip_and_byte_stable(capsys):
    outs = {run(capsys, "class", "--k", str(k), "--method", "pipeline")[1] for k in (7,) * 3}
    assert len(outs) == 1
    assert DivisorClass.from_json(json.loads(outs.pop())) == d2_class_theorem(7)


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["class", "--k", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "--k-max", "20", "--suite", "identities")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
    assert out.splitlines()[-1].startswith("OK")


def test_verify_classes(capsys):
    code, _, _ = run(capsys, "verify", "--k-max", "10", "--suite", "classes")
    assert code == 0


def test_verify_orbits(capsys):
    code, out, _ = run(capsys, "verify", "--k-max", "2", "--suite", "orbits", "--workers", "2")
    assert code == 0, out


def test_verify_failure_exit_1(capsys, monkeypatch):
    bad = checks.CheckResult("forced", False, "expected 1, got 0")
    monkeypatch.setitem(checks.SUITES, "identities", lambda k_max, workers=1: [bad])
    code, out, _ = run(capsys, "verify", "--k-max", "3", "--suite", "identities")
    assert code == 1
    assert "FAIL forced: expected 1, got 0" in out


def test_verify_k_max_too_small(capsys):
    assert run(capsys, "verify", "--k-max", "1")[0] == 2


def test_orbit_examples(capsys):
    code, out, _ = run(capsys, "orbit", "--d", "3", "--b", "2", "--phi", "(1 2 3)", "--group", "pure")
    data = json.loads(out)
    assert code == 0 and data["orbit_count"] == 1 and data["total_tuples"] == 3
    assert data["sigma0_in_orbit"] is True
    code, out, _ = run(capsys, "orbit", "--d", "3", "--b", "4", "--phi", "(1 2 3)", "--group", "braid")
    assert code == 0 and json.loads(out)["transitive"] is True


def test_orbit_quotient_and_formats(capsys):
    _, out, _ = run(capsys, "orbit", "--d", "4", "--b", "4", "--phi", "(1 2)(3 4)", "--quotient")
    # the centralizer of order 8 acts freely on the 96 generating tuples
    assert json.loads(out)["total_tuples"] == 96 // 8
    _, out, _ = run(capsys, "orbit", "--d", "3", "--b", "2", "--phi", "(1 2 3)", "--format", "latex")
    assert "\\begin{tabular}" in out
    _, out, _ = run(capsys, "orbit", "--d", "3", "--b", "2", "--phi", "(1 2 3)", "--format", "csv")
    assert len(out.splitlines()) == 2


def test_orbit_malformed_phi(capsys):
    code, _, err = run(capsys, "orbit", "--d", "3", "--b", "2", "--phi", "(1 2")
    assert code == 2 and "phi" in err


def test_orbit_workers_byte_identical(capsys):
    args = ["orbit", "--d", "4", "--b", "6", "--phi", "(1 2 3)", "--group", "pure"]
    _, one, _ = run(capsys, *args)
    _, many, _ = run(capsys, *args, "--workers", "4")
    assert one == many


def test_orbit_resource_guard(capsys, monkeypatch):
    monkeypatch.setenv("HDL_STATE_CAP", "5")
    assert run(capsys, "orbit", "--d", "3", "--b", "4", "--phi", "(1 2 3)")[0] == 3


def test_hurwitz_examples(capsys):
    code, out, _ = run(capsys, "hurwitz", "--d", "3", "--simple", "2", "--extra", "3")
    assert code == 0 and json.loads(out)["count"] == 1
    _, out, _ = run(capsys, "hurwitz", "--d", "2", "--simple", "2", "--format", "latex")
    assert out.strip() == "1"
    _, out, _ = run(capsys, "hurwitz", "--d", "3", "--simple", "4")
    assert json.loads(out) == {"count": 4, "d": 3, "extra": "1,1,1", "simple": 4}


def test_hurwitz_errors(capsys, monkeypatch):
    assert run(capsys, "hurwitz", "--d", "3", "--simple", "2", "--extra", "4")[0] == 2
    assert run(capsys, "hurwitz", "--d", "3", "--simple", "2", "--extra", "x")[0] == 2
    monkeypatch.setenv("HDL_NODE_CEILING", "100")
    code, _, err = run(capsys, "hurwitz", "--d", "4", "--simple", "6")
    assert code == 3 and "resource" in err


def test_degrees_k3(capsys):
    code, out, _ = run(capsys, "degrees", "--k", "3")
    data = json.loads(out)
    assert code == 0 and data["N"] == 5
    rows = {r["divisor"]: r for r in data["rows"]}
    assert rows["E0"]["degree"] == "5/2"
    assert rows["E1,0"]["degree"] == "5"
    assert rows["E2,0"]["degree"] == "3" and rows["E2,1"]["degree"] == "2"
    assert all(r["j_sum"] == "5" for r in data["rows"] if r["j"] > 0)


def test_degrees_raw_and_formats(capsys):
    _, out, _ = run(capsys, "degrees", "--k", "1", "--raw")
    rows = json.loads(out)["rows"]
    assert rows[0]["degree"] == "360" and rows[1]["degree"] == "720"
    _, out, _ = run(capsys, "degrees", "--k", "3", "--format", "latex")
    assert "\\frac{5}{2}" in out


def test_degrees_k0(capsys):
    assert run(capsys, "degrees", "--k", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hurwitz_divisor", "class", "--k", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["lambda"] == "-120"
