import json
import subprocess
import sys
from pathlib import Path

import pytest

from hsmult import ParseError, QQ, RationalSeries
from hsmult.exprparse import parse_generator, parse_polynomial, parse_rational
from hsmult.instance import instance_to_json, parse_instance
from tests.conftest import FIXTURES


def run_cli(*argv, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "hsmult.cli", *argv],
        capture_output=True,
        text=True,
        cwd=cwd or Path(__file__).parent.parent,
    )


# --- expression grammar ----------------------------------------------------


def test_parse_polynomial_basics():
    p = parse_polynomial("x^3 + 2*x*y - y^2", QQ, ("x", "y"))
    assert p.to_str(("x", "y")) == "x^3 + 2*x*y - y^2"
    q = parse_polynomial("(x + y)^2", QQ, ("x", "y"))
    assert q.to_str(("x", "y")) == "x^2 + 2*x*y + y^2"
    r = parse_polynomial("3/4*x - 1/2", QQ, ("x", "y"))
    assert r.to_str(("x", "y")) == "(3/4)*x - 1/2"
    assert parse_polynomial("  x ^ 2\n+ y", QQ, ("x", "y")) == parse_polynomial(
        "x^2+y", QQ, ("x", "y")
    )


def test_parse_generator_series():
    g = parse_generator("1/(1 - x)", QQ, ("x",))
    assert isinstance(g, RationalSeries)
    t = g.truncate(3)
    assert [t.coeffs[(k,)] for k in range(4)] == [1, 1, 1, 1]
    h = parse_generator("x/(1 + y)", QQ, ("x", "y"))
    assert h.truncate(2).to_str(("x", "y")) == "-x*y + x"


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + $", QQ, ("x",))
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError):
        parse_polynomial("x +", QQ, ("x",))
    with pytest.raises(ParseError):
        parse_polynomial("x * w", QQ, ("x", "y"))
    with pytest.raises(ParseError):
        parse_polynomial("x ^ y", QQ, ("x", "y"))
    with pytest.raises(ParseError):
        parse_polynomial("(x", QQ, ("x",))
    with pytest.raises(ParseError):
        parse_polynomial("x / 0", QQ, ("x",))
    with pytest.raises(ParseError):
        parse_polynomial("1/(1-x)", QQ, ("x",))  # not a polynomial


def test_unary_signs_and_rationals():
    p = parse_polynomial("-x + - - y", QQ, ("x", "y"))
    assert p.to_str(("x", "y")) == "-x + y"
    num, den = parse_rational("(1+x)/(1-x)/(1+y)", QQ, ("x", "y"))
    assert num.to_str(("x", "y")) == "x + 1"


# --- instance files ---------------------------------------------------------


def test_parse_instance_example1_json(example1):
    assert example1.nvars == 2
    assert example1.d == 2
    assert len(example1.j_gens) == 3
    assert example1.base.char == 0


def test_parse_instance_text_front_end():
    inst_json, _ = parse_instance((FIXTURES / "example1.json").read_text())
    inst_text, options = parse_instance((FIXTURES / "example1.txt").read_text())
    assert inst_text == inst_json
    assert options["search_bound"] == 5


def test_instance_round_trip_all_fixtures():
    for name in sorted(FIXTURES.glob("*.json")):
        inst, options = parse_instance(name.read_text())
        text = instance_to_json(inst, options)
        inst2, options2 = parse_instance(text)
        assert inst2 == inst, name
        assert options2 == options


def test_instance_validation_errors():
    base = {
        "characteristic": 0,
        "variables": ["x", "y"],
        "order": "glex",
        "ideal": ["x", "y"],
        "dim": 2,
    }

    def bad(**kw):
        payload = dict(base, **kw)
        with pytest.raises(ParseError):
            parse_instance(json.dumps(payload))

    bad(dim=3)
    bad(dim=-1)
    bad(variables=["x", "x"])
    bad(variables=["x", "t_1_2"])
    bad(characteristic=6)
    bad(ideal=[])
    bad(ideal=["x + w"])
    bad(order="weird")
    bad(order={"kind": "glex", "precedence": ["x"]})
    bad(options={"nonsense": 1})
    bad(options={"modp": "never"})
    bad(ideal=["x"], dim=2)


def test_parse_instance_invalid_json_reports_position():
    with pytest.raises(ParseError):
        parse_instance('{"characteristic": 0,,}')


# --- CLI --------------------------------------------------------------------


def test_cli_mult_example1():
    out = run_cli("mult", "tests/fixtures/example1.json", "--json", "--no-timing")
    assert out.returncode == 0, out.stderr
    report = json.loads(out.stdout)
    assert report["result"]["e"] == 5
    assert report["result"]["polylist"] == ["t_1_3"]
    assert report["schema"] == "hsmult-report/1"


def test_cli_member_example3():
    out = run_cli("member", "tests/fixtures/example3.json", "x*z")
    assert out.returncode == 0
    assert "is in the integral closure" in out.stdout
    out2 = run_cli("member", "tests/fixtures/example3.json", "x", "--json", "--no-timing")
    assert out2.returncode == 0
    assert json.loads(out2.stdout)["result"]["member"] is False


def test_cli_reduce_and_length_and_dual():
    out = run_cli("reduce", "tests/fixtures/example1.json", "--json", "--no-timing")
    assert out.returncode == 0
    red = json.loads(out.stdout)["result"]["reduction"]
    assert red["a"] == [["1"], ["1"]]
    assert red["mode"] == "symbolic"
    out2 = run_cli("length", "tests/fixtures/example1.json", "--json", "--no-timing")
    assert json.loads(out2.stdout)["result"]["length"] == 4
    out3 = run_cli("dual", "tests/fixtures/example1.json", "--json", "--no-timing")
    basis = json.loads(out3.stdout)["result"]["basis"]
    assert len(basis) == 4
    assert basis[0] == [[[0, 0], "1"]]


def test_cli_report_determinism():
    a = run_cli("mult", "tests/fixtures/example2.json", "--json", "--no-timing")
    b = run_cli("mult", "tests/fixtures/example2.json", "--json", "--no-timing")
    assert a.stdout == b.stdout
    assert a.returncode == b.returncode == 0


def test_cli_exit_codes():
    bad = run_cli("mult", "tests/fixtures/nonexistent.json")
    assert bad.returncode == 2
    import tempfile, os

    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write('{"characteristic": 0, "variables": ["x","y"], "order": "glex", "ideal": ["x"], "dim": 3}')
        name = fh.name
    try:
        out = run_cli("mult", name)
        assert out.returncode == 2
    finally:
        os.unlink(name)
    # caps: a non-m-primary ideal
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write('{"characteristic": 0, "variables": ["x","y"], "order": "glex", "ideal": ["x", "x*y"], "dim": 2}')
        name = fh.name
    try:
        out = run_cli("mult", name)
        assert out.returncode == 3
    finally:
        os.unlink(name)
    # search exhausted over GF(2)
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(
            json.dumps(
                {
                    "characteristic": 2,
                    "variables": ["x", "y"],
                    "order": "glex",
                    "ideal": ["x^3 + x^2 + y^2", "x^2 + y^2", "x^2*y"],
                    "dim": 2,
                }
            )
        )
        name = fh.name
    try:
        out = run_cli("reduce", name)
        assert out.returncode == 4
    finally:
        os.unlink(name)


def test_cli_flag_overrides():
    out = run_cli(
        "mult",
        "tests/fixtures/example1.json",
        "--order",
        "grevlex",
        "--modp",
        "off",
        "--json",
        "--no-timing",
    )
    assert out.returncode == 0
    report = json.loads(out.stdout)
    assert report["result"]["e"] == 5
    assert report["input"]["order"]["kind"] == "grevlex"
    assert report["input"]["options"]["modp"] == "off"


def test_cli_selftest():
    out = run_cli("selftest")
    assert out.returncode == 0, out.stdout + out.stderr
    assert "all suites passed" in out.stdout


def test_grammar_supports_parameters():
    from hsmult import FunctionField

    ff = FunctionField(QQ, ("t_1_3", "t_2_3"))

    def lookup(name):
        return ff.param(name) if name in ff.params else None

    p = parse_polynomial("x^3 + t_1_3*x*y", ff, ("x", "y"), lookup)
    assert p.coeffs[(1, 1)] == ff.param("t_1_3")
    with pytest.raises(ParseError):
        parse_polynomial("t_9_9 * x", ff, ("x", "y"), lookup)


def test_cli_trunc_degree_flag_accepted():
    out = run_cli(
        "length",
        "tests/fixtures/series_geometric.json",
        "--trunc-degree",
        "12",
        "--json",
        "--no-timing",
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["length"] == 2
