import json
import subprocess
import sys

import pytest

from thetajac.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "quark(1,2)", "--prec", "48")
    assert code == 0
    assert out.splitlines()[0].startswith("# lattice A(1)  t=7  2k=2  D=8")
    assert "8 -3 -1" in out


def test_expand_json_byte_stable(capsys):
    _, a, _ = run(capsys, "expand", "sigmaA2", "--prec", "48", "--json")
    _, b, _ = run(capsys, "expand", "sigmaA2", "--prec", "48", "--json")
    assert a == b
    data = json.loads(a)
    assert data["prec"] == 48 and data["shape"]["D"] == 8


def test_ord_and_classify(capsys):
    assert run(capsys, "ord", "thetaA(4)", "--prec", "120")[1].startswith("1/20")
    assert run(capsys, "classify", "thetaD(8)", "--prec", "48")[1].startswith("singular")


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "expand", "quark(1,")
    assert code == 2
    assert "offset 8" in err and "INT" in err


def test_precision_error_exit_code(capsys, monkeypatch):
    from thetajac import cli
    from thetajac.arith import PrecisionError

    def boom(*a, **k):
        raise PrecisionError("coefficient beyond truncation")

    monkeypatch.setattr(cli, "lift_table", boom)
    code, _, err = run(capsys, "lift", "phi2in", "--bound", "3")
    assert code == 3 and "precision" in err


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", "theta*eta^9", "--bound", "3")
    assert code == 0
    assert "1 3 [-1] 9" in out
    code, out, _ = run(capsys, "lift", "phi2in", "--bound", "9", "--json")
    data = json.loads(out)
    assert data["Q"] == 2 and data["den"] == 2


def test_weil(capsys):
    code, out, _ = run(capsys, "weil", "D(8)")
    assert code == 0 and "dim 2" in out and "labels: mu0 mu1 mu2 mu3" in out
    code, out, _ = run(capsys, "weil", "E(6)", "--json")
    data = json.loads(out)
    assert data["UT"] == ["0/24", "16/24", "16/24"]
    assert data["eigenspaces"][0]["basis"] == [["0", "-1", "1"]]


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "thetaD(4)", "--prec", "48")
    assert code == 0
    assert "mu1: (1) q^(0/24)" in out and "mu3: (-1) q^(0/24)" in out


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "2,13")
    assert code == 0 and out.count("PASS") == 2
    code, _, _ = run(capsys, "verify", "--suite", "99")
    assert code == 2


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["expand"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thetajac", "classify", "sigmaA2", "--prec", "24"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("singular")
