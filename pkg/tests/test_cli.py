import json
from pathlib import Path

import pytest

from symplext import cli
from symplext.errors import ModelInconsistency

MODELS = Path(__file__).resolve().parent.parent / "demos" / "models"

T2_OVER_S2 = """dga T2
gen t11 1
gen t12 1
symplectic w = t11*t12
torus 1
base S2
classify t11@1 -> {a}
classify t12@1 -> {b}
"""

T4CP2 = """dga T4xCP2
gen t11 1; gen t12 1; gen t21 1; gen t22 1
gen b 2; gen y 5
d y = b^3
torus 2
"""

KT = (MODELS / "kt.rht").read_text()


def invoke(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_extendable_torus_over_s2_witness(capsys, monkeypatch):
    code, out, _ = invoke(capsys, ["extendable"], T2_OVER_S2.format(a=1, b=0), monkeypatch)
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["extendable"] is False
    assert rep["result"]["witness"] == {"class": "s11", "image": {"u": "1"}}


def test_extendable_trivial_class(capsys, monkeypatch):
    code, out, _ = invoke(capsys, ["extendable"], T2_OVER_S2.format(a=0, b=0), monkeypatch)
    assert code == 0 and json.loads(out)["result"] == {"extendable": True, "witness": None}


def test_moduli_dim_t4_cp2(capsys, monkeypatch):
    code, out, _ = invoke(capsys, ["moduli-dim"], T4CP2, monkeypatch)
    assert code == 0
    assert json.loads(out)["result"]["moduli_dim"] == 7


def test_cohomology_kt_degree_two(capsys, monkeypatch):
    code, out, _ = invoke(capsys, ["cohomology", "--deg", "2"], KT, monkeypatch)
    assert code == 0
    groups = json.loads(out)["result"]["groups"]
    assert [(g["degree"], g["dimension"]) for g in groups] == [(2, 4)]


def test_cohomology_range():
    args = cli.build_parser().parse_args(["cohomology", "--from", "0", "--to", "4"])
    rep = cli.run("cohomology", KT, args)
    assert [g["dimension"] for g in rep["result"]["groups"]] == [1, 3, 4, 3, 1]


def test_report_envelope_and_order():
    rep = cli.run("kappa", (MODELS / "t2xcp1.rht").read_text())
    assert list(rep) == ["schema", "command", "model", "result", "provenance"]
    assert rep["schema"] == 1 and rep["command"] == "kappa" and rep["model"] == "T2xCP1"
    assert rep["result"]["rank"] == 2
    assert rep["result"]["image"] == ["t11@1", "t12@1"]


def _walk(value):
    if isinstance(value, dict):
        for v in value.values():
            yield from _walk(v)
    elif isinstance(value, list):
        for v in value:
            yield from _walk(v)
    else:
        yield value


@pytest.mark.parametrize("command,text", [
    ("check", (MODELS / "t2xcp1.rht").read_text()),
    ("fsmodel", (MODELS / "t2xcp1.rht").read_text()),
    ("kappa", (MODELS / "t2xcp1.rht").read_text()),
    ("extendable", (MODELS / "t2xcp1.rht").read_text()),
    ("moduli-dim", T4CP2),
    ("nil-extendable", KT),
    ("fsmodel", KT),
    ("check", KT),
])
def test_no_floats_and_deterministic(capsys, monkeypatch, command, text):
    code1, out1, _ = invoke(capsys, [command], text, monkeypatch)
    code2, out2, _ = invoke(capsys, [command], text, monkeypatch)
    assert code1 == code2 == 0
    assert out1 == out2
    assert not any(isinstance(v, float) for v in _walk(json.loads(out1)))
    code3, out3, _ = invoke(capsys, [command, "--text"], text, monkeypatch)
    assert code3 == 0 and out3.startswith(command)


def test_rationals_rendered_as_strings():
    text = T2_OVER_S2.format(a="-3/2", b=0)
    rep = cli.run("extendable", text)
    assert rep["result"]["witness"]["image"] == {"u": "-3/2"}


def test_nil_extendable_fixture():
    rep = cli.run("nil-extendable", KT)
    assert rep["result"]["count"] == 2
    assert rep["result"]["extendable"] is False
    assert rep["result"]["witness"]["class"] == "x3@1"


def test_input_file_flag(capsys):
    code, out, _ = invoke(capsys, ["kappa", "--input", str(MODELS / "t2xcp1.rht")])
    assert code == 0 and json.loads(out)["result"]["rank"] == 2


def test_exit_code_two_on_input_errors(capsys, monkeypatch):
    code, _, err = invoke(capsys, ["check"], "gen a 1\nd a = b\n", monkeypatch)
    assert code == 2 and "line 2" in err
    code, _, err = invoke(capsys, ["kappa"], "gen a 1\n", monkeypatch)
    assert code == 2 and "torus" in err
    code, _, _ = invoke(capsys, ["extendable"], T2_OVER_S2.replace("t11@1 ->", "zz@1 ->").format(a=1, b=0),
                        monkeypatch)
    assert code == 2
    code, _, _ = invoke(capsys, ["check", "--input", "/nonexistent/model.rht"])
    assert code == 2


def test_exit_code_one_on_inconsistency(capsys, monkeypatch):
    def broken(doc, args):
        raise ModelInconsistency("forced")
    monkeypatch.setitem(cli.HANDLERS, "check", broken)
    code, _, err = invoke(capsys, ["check"], "gen a 1\n", monkeypatch)
    assert code == 1 and "forced" in err


def test_check_with_seed():
    args = cli.build_parser().parse_args(["check", "--seed", "3"])
    rep = cli.run("check", (MODELS / "t2xcp1.rht").read_text(), args)
    assert rep["result"]["laws"]["failures"] == []


def test_check_flags_bad_differential():
    rep = cli.run("check", "gen a 1\ngen b 2\ngen c 3\nd a = b\nd b = c\n")
    assert rep["result"]["d_squared"] == [{"generator": "a", "value": "c"}]


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "symplext", "moduli-dim"], input=T4CP2,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["moduli_dim"] == 7
