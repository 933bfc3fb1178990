import json

import pytest
from hypothesis import given

from rittlab.bessel import bessel_split
from rittlab.cli import main
from rittlab.errors import DivisionByZero, ExponentNotAffine, ParseError, UnknownSymbol
from rittlab.parser import parse_element, parse_expression

from strategies import exppolys


def test_parse_examples(kq, ki):
    E, one, x = kq.E, kq.one, kq.x
    assert parse_expression("exp(2*x) - 1", kq.K) == E(2) - one
    assert parse_expression("x*exp(x) - 2", kq.K) == x * E(1) - 2 * one
    assert parse_expression("(exp(x)-1)^2/3", kq.K) == (E(1) - one) ** 2 / 3
    assert parse_expression("exp(-1/2*x)", kq.K) == kq.E(kq.K(-1) / 2)
    i = ki.K.gen()
    assert parse_expression("t*exp(t*x) + 1", ki.K) == ki.E(i, i) + ki.one
    assert parse_element("1/2*t - 3", ki.K) == i / 2 - 3


@pytest.mark.parametrize("src, err", [
    ("exp(x^2)", ExponentNotAffine),
    ("exp(x + 1)", ExponentNotAffine),
    ("1.5*x", ParseError),
    ("exp(x) / x", ParseError),
    ("x / 0", DivisionByZero),
    ("y + 1", UnknownSymbol),
    ("(x + 1", ParseError),
    ("x^-1", ParseError),
])
def test_parse_errors(kq, src, err):
    with pytest.raises(err):
        parse_expression(src, kq.K)


def test_parse_error_position(kq):
    with pytest.raises(ParseError) as exc:
        parse_expression("x + @", kq.K)
    assert exc.value.pos == 4


@given(exppolys(max_terms=3, max_x=2))
def test_str_roundtrip(f):
    assert parse_expression(str(f), f.K) == f


def test_bessel_roundtrip(ki):
    for n in range(-5, 6):
        T = bessel_split(n).T
        assert parse_expression(str(T), ki.K) == T


def run(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out.strip().splitlines()
    return code, json.loads(out[-1])


GI = "field Q(t) where t^2 + 1 = 0 near 0+1i"


def test_cli_exit_codes(capsys):
    code, doc = run(capsys, "gcd", "exp(2*x)-1", "exp(3*x)-1")
    assert code == 0 and doc["result"]["gcd"] == "exp(1/2*x) - exp(-1/2*x)"
    code, doc = run(capsys, "divides", "exp(x)+1", "exp(x)-1")
    assert code == 1 and doc["exit"] == 1
    code, doc = run(capsys, "divides", "exp(x)-1", "exp(2*x)-1")
    assert code == 0 and doc["result"]["quotient"] == "exp(x) + 1"
    code, doc = run(capsys, "bessel-certify", "--n", "0")
    assert code == 2 and doc["error"] == "CertificationFailed"
    code, doc = run(capsys, "gcd", "exp(3/2*x)", "x^1.5")
    assert code == 2 and doc["error"] == "ParseError"
    code, doc = run(capsys, "bessel-certify", "--n", "3")
    assert code == 0 and doc["result"]["kind"] == "EisensteinSimpleRoot"


def test_cli_numbers_are_strings(capsys):
    code, doc = run(capsys, "normalize", "2*x")
    assert doc["result"]["unit"]["lambda"] == "1/2"
    code, doc = run(capsys, "mroot", "--operator", "[[0],[4],[0],[1]]", "--initial", "[1,0,-2]",
                    "--m", "2", "--L", "6")
    assert doc["result"]["b"] == ["1", "0", "-1", "0", "1", "0", "-1"]
    code, doc = run(capsys, "guess-op", "--operator", "[[1],[0],[1]]", "--initial", "[1,0]")
    assert doc["result"]["operator"] == [["1"], [], ["1"]]
    code, doc = run(capsys, "denoms", "--coeffs", '[1,"1/5",0,0]', "--m", "2", "--L", "3")
    assert code == 1 and doc["result"]["first_failure"] == 1


def test_cli_field_and_zeros(capsys):
    code, doc = run(capsys, "--field", GI, "valuation", "(x-t)^2*exp(x)", "--at", "t")
    assert code == 0 and doc["result"]["valuation"] == 2
    code, doc = run(capsys, "zeros", "exp(x)-1", "--rect", "-1", "1", "-1", "1")
    zs = doc["result"]["zeros"]
    assert len(zs) == 1 and zs[0]["multiplicity"] == 1
    code, doc = run(capsys, "evidence", "th10", "exp(2*x)-1", "exp(3*x)-1",
                    "--rect", "-1", "1", "-7", "7")
    assert code == 0 and doc["result"]["status"] == "PASS"


def test_cli_plain_text(capsys):
    assert main(["gcd", "exp(2*x)-1", "exp(3*x)-1"]) == 0
    assert "exp(1/2*x)" in capsys.readouterr().out


def test_cli_script(tmp_path, capsys):
    script = tmp_path / "demo.rl"
    script.write_text(f"{GI}\n# a comment\nfactor 'exp(2*t*x) - 1'\n"
                      "divides 'exp(x)+1' 'exp(x)-1'\nbessel --n 2\n")
    code = main(["--json", "run", str(script)])
    lines = [json.loads(s) for s in capsys.readouterr().out.strip().splitlines()]
    assert code == 1
    assert [d["verb"] for d in lines] == ["factor", "divides", "bessel"]
    assert [d["exit"] for d in lines] == [0, 1, 0]


def test_cli_precision_option(capsys, monkeypatch):
    code, doc = run(capsys, "--precision", "10", "normalize", "x")
    assert code == 2
    monkeypatch.setenv("RITTLAB_PRECISION", "120")
    code, doc = run(capsys, "normalize", "x")
    assert code == 0
