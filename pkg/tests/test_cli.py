from __future__ import annotations

import json

import pytest

from fernhex.cli import main
from fernhex.params import parse_spec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_unit_hexagon(capsys):
    code, out, _ = run(capsys, "count", "Hex x=1 y=1 z=1", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema_version"] and doc["command"] == "count"
    assert doc["results"]["formula"] == "2"


def test_count_oracle_and_audit(capsys):
    code, out, _ = run(capsys, "count", "Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]",
                       "--oracle", "--audit", "--json")
    res = json.loads(out)["results"]
    assert code == 0
    assert res["agreement"] is True and res["oracle"] == res["formula"]
    assert isinstance(res["formula"], str)
    assert res["factors"] and res["sqrt_pi_exponent"] == "0"


def test_echoed_spec_round_trips(capsys):
    text = "Ql x=2 y=1 z=1 a=[1] c=[1,1] b=[1]"
    _, out, _ = run(capsys, "count", text, "--json")
    assert parse_spec(json.loads(out)["inputs"]["spec"]) == parse_spec(text)


def test_invalid_spec_exit_2(capsys):
    code, _, err = run(capsys, "count", "Rc x=1 y=0 z=2 a=[] c=[] b=[]")
    assert code == 2 and "parity" in err


def test_unparseable_spec_exit_2(capsys):
    code, out, _ = run(capsys, "count", "Rc x=?", "--json")
    assert code == 2 and json.loads(out)["results"]["error"] == "user_error"


def test_area_ceiling_exit_3(capsys):
    code, _, _ = run(capsys, "count", "Hex x=4 y=4 z=4", "--oracle", "--max-area", "10")
    assert code == 3


def test_argparse_error_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_verify_kuo_figure_instance(capsys):
    code, out, _ = run(capsys, "verify", "kuo", "--id", "Rc-lt",
                       "--spec", "Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]", "--json")
    assert code == 0 and json.loads(out)["results"]["passed"] is True


def test_verify_kuo_symbol_alias(capsys):
    code, _, _ = run(capsys, "verify", "kuo", "--id", "R⊙:a<b",
                     "--spec", "Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]")
    assert code == 0


def test_verify_kuo_wrong_side_condition(capsys):
    code, _, _ = run(capsys, "verify", "kuo", "--id", "Rc-lt", "--spec", "Rc x=1 y=1 z=1 a=[2] b=[1]")
    assert code == 2


def test_verify_grid_small(capsys):
    code, out, _ = run(capsys, "verify", "grid", "--max-x", "1", "--max-z", "1", "--max-y", "1",
                       "--max-area", "40", "--alphabet", "[],[1]", "--json")
    res = json.loads(out)["results"]
    assert code == 0 and res["passed"]
    assert int(res["reports"]["grid"]["instances_checked"]) > 0


def test_verify_dual(capsys):
    code, out, _ = run(capsys, "verify", "dual", "--a", "[1,1]", "--b", "[1,1]", "--c", "[2]",
                       "--x", "1", "--z", "1", "--N", "4,8,16,24", "--json")
    res = json.loads(out)["results"]
    assert code == 0 and res["passed"]
    assert float(res["rows"][-1]["relative_error"]) <= 0.05


def test_verify_dual_mismatch(capsys):
    code, _, _ = run(capsys, "verify", "dual", "--a", "[1]", "--b", "[2]")
    assert code == 2


def test_verify_failure_exit_1(capsys):
    code, _, _ = run(capsys, "verify", "dual", "--a", "[2]", "--b", "[2]", "--c", "[1,1]",
                     "--x", "2", "--z", "1", "--N", "4,8")
    assert code == 1


def test_render_ascii(capsys):
    code, out, _ = run(capsys, "render", "Hex x=1 y=1 z=1")
    assert code == 0 and out == "^v^\nv^v\n"


def test_render_svg_tiling(capsys, tmp_path):
    p = tmp_path / "h.svg"
    code, _, _ = run(capsys, "render", "Hex x=1 y=1 z=1", "--format", "svg",
                     "--tiling", "first", "-o", str(p))
    assert code == 0 and p.read_text().startswith("<svg")


def test_render_invalid(capsys):
    code, _, _ = run(capsys, "render", "Rl x=1 y=0 z=1")
    assert code == 2


def test_report_dual(capsys, tmp_path):
    code, _, _ = run(capsys, "report", "dual", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "dual_convergence.png").stat().st_size > 0
    assert (tmp_path / "dual_convergence.csv").read_text().startswith("N,ratio")


def test_report_grid_with_region(capsys, tmp_path):
    code, _, _ = run(capsys, "report", "grid", "--max-x", "1", "--max-z", "1", "--max-y", "0",
                     "--max-area", "30", "--alphabet", "[],[1]", "--out", str(tmp_path),
                     "--spec", "Rc x=1 y=1 z=1 a=[1] c=[1] b=[1]")
    assert code == 0
    for name in ("summary.tsv", "failures.tsv", "summary.png", "region.png"):
        assert (tmp_path / name).exists()
