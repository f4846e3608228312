import io
import json
import subprocess
import sys

import pytest

from skeinduality.cli import run
from skeinduality.homology import dump_chain_complex, registry


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_dims_examples():
    assert call("dims", "sln-t3", "--n", "3") == (0, "29\n", "")
    assert call("dims", "sl2-sigma", "--g", "2") == (0, "35\n", "")


def test_totals_carry_provenance_in_machine_formats():
    code, out, _ = call("dims", "sl2-sigma", "--g", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["total"] == 9 and data["provenance"]
    code, out, _ = call("dims", "sln-t3", "--n", "2", "--format", "tsv")
    assert out.startswith("total\t9\t") and out.strip().split("\t")[2]


def test_graded_tables():
    code, out, _ = call("dims", "sl2-sigma", "--g", "1", "--graded", "--format", "tsv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 2**3 + 1
    assert all(len(line.split("\t")) == 4 and line.split("\t")[3] for line in lines)
    code, out, _ = call("dims", "sln-t3", "--n", "4", "--graded", "--reading", "partition-gcd", "--format", "json")
    data = json.loads(out)
    assert sum(e["dim"] for e in data["entries"]) == data["total"]["dim"] == 75
    code, out, _ = call("dims", "sln-t3", "--n", "3", "--cograded")
    assert code == 0 and "residual" in out


def test_check_duality_exit_codes():
    code, out, _ = call("check", "duality", "--pair", "sl2-pgl2", "--manifold", "sigma", "--g", "1")
    assert code == 0 and "[PASS] total" in out and "FAIL" not in out
    code, out, _ = call("check", "duality", "--pair", "sl4-pgl4", "--manifold", "t3", "--format", "json")
    assert code == 1
    checks = {c["name"]: c["verdict"] for c in json.loads(out)["checks"]}
    assert checks["graded_sum"] == "FAIL" and checks["total"] == "AMBIGUOUS"
    code, _, _ = call("check", "duality", "--pair", "slN-pglN", "--manifold", "t3", "--n", "4",
                      "--reading", "partition-gcd")
    assert code == 0


def test_bracket_files(tmp_path):
    hopf = tmp_path / "hopf.pd"
    hopf.write_text("X 1 3 2 4\nX 3 1 4 2\n")
    code, out, _ = call("bracket", "--file", str(hopf))
    assert code == 0 and out == "A^6 + A^2 + A^-2 + A^-6\n"
    unknot = tmp_path / "unknot.pd"
    unknot.write_text("L 1\n")
    assert call("bracket", "--file", str(unknot))[1] == "-A^2 - A^-2\n"
    bad = tmp_path / "bad.pd"
    bad.write_text("X 1 2 3\n")
    code, _, err = call("bracket", "--file", str(bad))
    assert code == 2 and err.startswith("error: ") and "bad.pd" in err
    code, _, err = call("bracket", "--file", str(tmp_path / "missing.pd"))
    assert code == 2 and "cannot read" in err


def test_bracket_with_defect(tmp_path):
    hopf = tmp_path / "hopf.pd"
    hopf.write_text("X 1 3 2 4\nX 3 1 4 2\n")
    defect = tmp_path / "d.txt"
    defect.write_text("I 1 +\nI 1 -\n")
    plain = call("bracket", "--file", str(hopf))[1]
    code, out, _ = call("bracket", "--file", str(hopf), "--defect", str(defect), "--chi", "-1")
    assert code == 0 and out == plain
    odd = tmp_path / "odd.txt"
    odd.write_text("I 1 +\n")
    assert call("bracket", "--file", str(hopf), "--defect", str(odd))[0] == 2


def test_webs_and_tl():
    code, out, _ = call("webs", "constants", "--format", "tsv")
    rows = {line.split("\t")[0]: line.split("\t")[1] for line in out.splitlines()}
    assert code == 0
    assert rows["a"] == "A^4" and rows["b (q=A^2)"] == "q + q^-1" and rows["end_space_rank"] == "3"
    assert rows["q=1 (a,b,c)"] == rows["classical flip (a,b,c)"] == "1,2,0"
    code, out, _ = call("tl", "jw", "--n", "2")
    assert code == 0 and out.splitlines()[-1] == "closure\tA^4 + 1 + A^-4"


def test_homology_commands(tmp_path):
    code, out, _ = call("homology", "--manifold", "torus3", "--coeff", "2", "--picard", "--format", "json")
    rows = {r["group"]: r for r in json.loads(out)}
    assert code == 0 and rows["H_1"]["order"] == "8" and rows["dual_check"]["value"] == "PASS"
    path = tmp_path / "c.json"
    path.write_text(dump_chain_complex(registry("sphere2_x_s1").complex))
    code, out, _ = call("homology", "--file", str(path), "--coeff", "0", "--format", "tsv")
    assert code == 0 and out.splitlines()[1] == "H_1\tZ\tZ\t-"
    path.write_text(json.dumps({"name": "x", "cells": [1, 1, 1, 1], "d1": [[1]], "d2": [[1]], "d3": [[0]]}))
    code, _, err = call("homology", "--file", str(path), "--coeff", "2")
    assert code == 2 and "d1·d2" in err
    assert call("homology", "--manifold", "torus3", "--coeff", "1")[0] == 2


def test_cocenter_command(tmp_path):
    code, out, _ = call("cocenter", "--form", "[[0,1],[-1,0]]", "--r", "2", "--max-R", "6")
    assert code == 0 and out.startswith("# ORACLE")
    assert "stabilized yes; final 1" in out
    form = tmp_path / "form.json"
    form.write_text('{"S": [[0,1],[-1,0]]}')
    group = tmp_path / "w.json"
    group.write_text('{"generators": [[[-1,0],[0,-1]]]}')
    code, out, _ = call("cocenter", "--form", str(form), "--group", str(group), "--r", "1", "--format", "json")
    assert code == 0 and json.loads(out)["label"] == "ORACLE"
    code, _, err = call("cocenter", "--form", "[[0,1],[1,0]]", "--r", "1")
    assert code == 2 and "skew" in err
    code, _, err = call("cocenter", "--form", "[[0,1],[-1,0]]", "--r", "2", "--cap", "10")
    assert code == 2 and "cap" in err


def test_usage_errors_name_the_flag(capsys):
    code, _, _ = call("dims", "sln-t3", "--n", "3", "--bogus")
    assert code == 2
    assert "--bogus" in capsys.readouterr().err
    assert call("dims", "sl2-sigma")[0] == 2
    assert call("check", "duality", "--pair", "sl2-pgl3", "--manifold", "t3")[0] == 2
    assert call("dims", "sln-t3", "--n", "4", "--cograded")[0] == 2


@pytest.mark.parametrize("argv", [
    ("dims", "sln-t3", "--n", "5", "--graded", "--format", "json"),
    ("check", "duality", "--pair", "sl3-pgl3", "--manifold", "t3", "--format", "tsv"),
    ("webs", "constants"),
    ("homology", "--manifold", "sigma_g_x_s1", "--g", "2", "--coeff", "3", "--picard"),
])
def test_repeat_runs_byte_identical(argv):
    assert call(*argv) == call(*argv)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skeinduality.cli", "dims", "sln-t3", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "9\n"
