import json

import pytest
from hypothesis import given, settings, strategies as st

from gctor.cli import main, run
from gctor.config import Bounds
from gctor.generate import FAMILIES, generate
from gctor.instance import COMMANDS, InstanceError, build, format_instance, parse_instance

SAMPLE = """# two modules over the dual numbers
ring p=32003 vars=x ideal=x^2
C = R
module M = k
module N = k(1);
bounds w=3 D=10
check verify-am M N
check tate M N
check duality M N
"""


def test_roundtrip_sample():
    spec = parse_instance(SAMPLE)
    assert spec.modules["N"] == ("k", 1)
    assert spec.bounds.w == 3 and spec.bounds.D == 10 and spec.bounds.B is None
    assert parse_instance(format_instance(spec)) == spec


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(FAMILIES)), st.integers(0, 10_000), st.sampled_from(COMMANDS))
def test_roundtrip_generated(fam, seed, cmd):
    for spec in generate(fam, 2, seed, cmd):
        assert parse_instance(format_instance(spec)) == spec


def test_expression_forms_build():
    text = """ring vars=x,y
C = R
module A = R/(x)
module B = coker{-1}[x, y]
module S = sum(A, B)
module T = twist(S, 2)
module Z = syzygy(B, 1)
module D = dual(Z)
module F = free{0,1,1}
"""
    inst = build(parse_instance(text))
    assert inst.modules["F"].gens == (0, 1, 1)
    assert inst.modules["S"].ngens == 2
    assert inst.modules["T"].gens == tuple(d - 2 for d in inst.modules["S"].gens)


def test_extension_is_certified():
    ok = "ring vars=x\nC = R\nmodule A = R/(x)\nmodule B = coker{-1}[x]\nmodule E = extension(A, B)[1]\n"
    E = build(parse_instance(ok)).modules["E"]
    assert [E.hilbert(d) for d in range(-1, 2)] == [1, 1, 0]
    bad = "ring vars=x,y ideal=x*y\nC = R\nmodule N = R/(x)\nmodule E = extension(N, N)[y]\n"
    with pytest.raises(InstanceError):
        build(parse_instance(bad))


@pytest.mark.parametrize("text,line,col", [
    ("ring vars=x,y ideal=x*y+\nC = R\n", 1, None),
    ("ring vars=x\nC = R\nmodule M = R/(z)\n", 3, None),
    ("ring vars=x\nC = R\nmodule M = k\ncheck frobnicate M M\n", 4, None),
    ("ring vars=x\nC = R\ncheck tor M M\n", 3, None),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(InstanceError) as e:
        build(parse_instance(text))
    assert e.value.line == line
    assert e.value.col is not None and e.value.col >= 1
    assert f"line {line}" in str(e.value)


def test_run_reports_json():
    ok, report, lines = run(parse_instance(SAMPLE))
    assert ok and report["pass"]
    json.dumps(report)
    assert [c["command"] for c in report["checks"]] == ["verify-am", "tate", "duality"]
    assert lines[0].startswith("verify-am M N: PASS")


def test_cli_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.gct"
    good.write_text(SAMPLE)
    out = tmp_path / "out.json"
    assert main(["all", str(good), "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and rep["bounds"]["w"] == 3
    assert main(["tate", str(good), "--window", "2"]) == 0
    assert "window [-2, 2]" in capsys.readouterr().out
    bad = tmp_path / "bad.gct"
    bad.write_text("ring vars=x,y ideal=x*y+\nC = R\n")
    assert main(["all", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err
    assert main(["all", str(tmp_path / "missing.gct")]) == 2
    # verify-am outside the Auslander class fails as a check (exit 1), not a parse error
    fat = tmp_path / "fat.gct"
    fat.write_text("ring vars=x,y ideal=x^2,x*y,y^2\nC = canonical\nmodule M = k\ncheck verify-am M M\n")
    assert main(["verify-am", str(fat)]) == 1


def test_gorenstein_canonical_note(tmp_path, capsys):
    f = tmp_path / "gor.gct"
    f.write_text("ring vars=x,y ideal=x^2,y^2\nC = canonical\nmodule M = k\ncheck gcdim M\n")
    assert main(["gcdim", str(f)]) == 0
    assert "note: C is free of rank one (R(2))" in capsys.readouterr().out


def test_bounds_override():
    spec = parse_instance(SAMPLE)
    ok, report, _ = run(spec, "tate", Bounds(w=2, D=8))
    assert ok and report["checks"][0]["report"]["window"] == [-2, 2]
