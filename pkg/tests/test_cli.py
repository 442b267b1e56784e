import hashlib
import json
import subprocess
import sys

import pytest

from asch.cli import main
from asch.textio import parse_weighing


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def gold_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("gold3")
    assert main(["gold", "-m", "3", "-o", str(out)]) == 0
    return out


def test_gold_outputs(gold_dir):
    scheme = (gold_dir / "scheme.asch").read_text().splitlines()
    assert scheme[:2] == ["ASCH v1", "n=128 d=4"]
    assert len((gold_dir / "codewords.txt").read_text().splitlines()) == 128
    assert (gold_dir / "cosets.part").read_text().startswith("PART v1\nn=128 f=8\n")
    manifest = json.loads((gold_dir / "manifest-gold.json").read_text())
    for art in manifest["artifacts"]:
        digest = hashlib.sha256((gold_dir / art["path"]).read_bytes()).hexdigest()
        assert digest == art["sha256"]


def test_even_degree_is_usage_error(tmp_path, capsys):
    code, _, err = run(["gold", "-m", "4", "-o", str(tmp_path)], capsys)
    assert code == 2 and "m must be odd" in err


def test_verify_and_spectra(gold_dir, capsys):
    code, out, _ = run(["verify", str(gold_dir / "scheme.asch")], capsys)
    assert code == 0 and "valencies: 1 28 70 28 1" in out
    code, out, _ = run(["spectra", str(gold_dir / "scheme.asch")], capsys)
    assert code == 0 and "multiplicities: 1 8 28 56 35" in out and "DUALITY OK" in out


def test_verify_reports_witness(tmp_path, gold_dir, capsys):
    lines = (gold_dir / "scheme.asch").read_text().splitlines()
    row = lines[2].split()
    row[1] = "3" if row[1] != "3" else "1"
    lines[2] = " ".join(row)
    bad = tmp_path / "bad.asch"
    bad.write_text("\n".join(lines) + "\n")
    code, _, err = run(["verify", str(bad)], capsys)
    assert code == 1 and "NotSymmetric" in err and "rel(0,1)" in err


def test_format_error_is_usage(tmp_path, capsys):
    bad = tmp_path / "bad.asch"
    bad.write_text("ASCH v1\nn=2 d=1\n0 1\n1 q\n")
    code, _, err = run(["verify", str(bad)], capsys)
    assert code == 2 and "line 4, column 2" in err
    code, _, _ = run(["verify", str(tmp_path / "missing.asch")], capsys)
    assert code == 2


def test_dissection_commands(gold_dir, capsys):
    scheme = str(gold_dir / "scheme.asch")
    code, out, _ = run(["imprimitive", scheme], capsys)
    assert code == 0 and "CLOSED 0,4 blocks=64 size=2" in out
    code, out, _ = run(["quotient", scheme, "--block", "0,4"], capsys)
    assert code == 0 and out.startswith("ASCH v1\nn=64 d=2\n")
    code, _, _ = run(["quotient", scheme, "--block", "0,1"], capsys)
    assert code == 1
    code, _, _ = run(["quotient", scheme, "--block", "x"], capsys)
    assert code == 2
    code, out, _ = run(["cover-params", scheme], capsys)
    assert code == 0 and "m3=8 m4=56 alpha3=1/2 alpha4=-1/14" in out
    code, out, _ = run(["clique-bound", scheme, "--partition", str(gold_dir / "cosets.part")], capsys)
    assert code == 0 and "theta=-10 bound=16" in out and "SPREAD f=8 OK" in out


def test_fission_and_muwm(gold_dir, capsys):
    scheme = str(gold_dir / "scheme.asch")
    part = str(gold_dir / "cosets.part")
    code, out, _ = run(["fission", scheme, "--partition", part, "--report"], capsys)
    assert code == 0 and "valencies: 1 28 14 28 1 56" in out
    report = (gold_dir / "reconciliation.txt").read_text()
    assert "CELL row=0 col=2 computed=14 paper=63" in report
    assert "CELL row=0 col=5 computed=56 paper=7" in report
    code, out, _ = run(["muwm", str(gold_dir / "fission.asch"), "--partition", part], capsys)
    assert code == 0 and "UNBIASED: 56/56 ordered pairs OK" in out
    files = sorted((gold_dir / "weighing" / "E3").glob("W_*.txt"))
    assert len(files) == 8
    for path in files:
        a, b, w, W = parse_weighing(path.read_text())
        assert W.shape == (8, 8) and w == (1 if a == b else 4)


def test_bad_partition_fails_check(tmp_path, gold_dir, capsys):
    labels = (gold_dir / "cosets.part").read_text().splitlines()
    labels[2], labels[18] = labels[18], labels[2]
    bad = tmp_path / "mixed.part"
    bad.write_text("\n".join(labels) + "\n")
    code, _, err = run(["fission", str(gold_dir / "scheme.asch"), "--partition", str(bad)], capsys)
    assert code == 1 and "BlockNotClique" in err


def test_outputs_are_byte_identical(tmp_path):
    def snapshot(out):
        subprocess.run([sys.executable, "-m", "asch.cli", "gold", "-m", "3", "-o", str(out)], check=True)
        s, p = str(out / "scheme.asch"), str(out / "cosets.part")
        subprocess.run([sys.executable, "-m", "asch.cli", "fission", s, "--partition", p, "--report"],
                       check=True, capture_output=True)
        subprocess.run([sys.executable, "-m", "asch.cli", "muwm", str(out / "fission.asch"), "--partition", p],
                       check=True, capture_output=True, env={"ASCH_THREADS": "1", "PATH": ""})
        return {f.relative_to(out): f.read_bytes() for f in out.rglob("*") if f.is_file() and "manifest" not in f.name}

    first = snapshot(tmp_path / "a")
    second = snapshot(tmp_path / "b")
    assert first == second and len(first) >= 13
