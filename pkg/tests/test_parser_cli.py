import csv
import io
import json
import random

import pytest
from hypothesis import assume, given, strategies as st

from podles import qalgebra as qa
from podles.qalgebra import Element, CircleElement
from podles.parser import (parse, parse_ast, parse_scalar, render,
                           ParseError, UnknownSymbol)
from podles.scalars import QScalar, q_pow, mu
from podles.cli import main


@st.composite
def elements(draw):
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    out = Element()
    for _ in range(draw(st.integers(0, 4))):
        cf = QScalar.from_rational(draw(st.fractions(-4, 4,
                                                     max_denominator=3)))
        cf = cf * q_pow(draw(st.integers(-3, 3))) / \
            (1 + q_pow(draw(st.integers(0, 2))))
        out = out + Element.monomial(qa.random_monomial(rng, 3), cf)
    return out


@given(elements())
def test_render_parse_round_trip(x):
    assert parse(render(x)) == x


@given(st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=4))
def test_circle_round_trip(terms):
    # a constant renders as a bare scalar and reads back as an algebra element
    assume(any(k and v for k, v in terms.items()))
    h = CircleElement({k: QScalar.from_rational(v) for k, v in terms.items()})
    assert parse(render(h)) == h


@pytest.mark.parametrize("text,want", [
    ("a*c", lambda: qa.a() * qa.c()),
    ("a* * c", lambda: qa.d() * qa.c()),
    ("a* c", lambda: qa.a() * qa.c()),
    ("a * ", None),
    ("b+c", lambda: qa.b() + qa.c()),
    ("b+ * c", lambda: qa.b_plus() * qa.c()),
    ("x-1", lambda: qa.x_gen(-1)),
    ("q^(1/2) * a", lambda: qa.a().scale(q_pow(0.5))),
    ("(a + c)^2", lambda: (qa.a() + qa.c()) * (qa.a() + qa.c())),
    ("a / (q + q^-1)", lambda: qa.a().scale(mu().inverse())),
])
def test_parse_examples(text, want):
    if want is None:
        with pytest.raises(ParseError):
            parse(text)
    else:
        assert parse(text) == want()


def test_parse_circle():
    assert parse("t * t*") == parse("1 + 0 * t")
    assert parse("t^-2") == CircleElement({-2: QScalar.from_rational(1)})


@pytest.mark.parametrize("text,exc", [
    ("a +", ParseError),
    ("foo", UnknownSymbol),
    ("a * t", ParseError),
    ("a / c", ParseError),
    ("a^(1/2)", ParseError),
    ("a^-1", ParseError),
    ("(a", ParseError),
    ("a )", ParseError),
    ("1 / 0", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_ast("a + ) ")
    assert info.value.pos == 4


def test_parse_scalar():
    assert parse_scalar("q + q^-1") == mu()
    with pytest.raises(ParseError):
        parse_scalar("a")


def test_cli_eval(capsys):
    assert main(["eval", "a*c - q*c*a"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["eval", "b0", "--star", "--degree"]) == 0
    out = capsys.readouterr().out
    assert "star:" in out and "degrees: [0]" in out


def test_cli_eval_parse_error(capsys):
    assert main(["eval", "a +"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_verify_json(capsys):
    code = main(["verify", "calculus", "--format", "json", "--no-timing"])
    data = json.loads(capsys.readouterr().out)
    ids = {c["id"]: c for c in data["checks"]}
    failed = {i for i, c in ids.items() if c["status"] == "fail"}
    assert code == (1 if failed else 0)
    assert all(ids[i].get("erratum") for i in failed)
    assert ids["fibre.codim"]["status"] == "pass"


def test_cli_verify_csv(tmp_path):
    out = tmp_path / "r.csv"
    code = main(["verify", "symmetries", "--deg", "2", "--format", "csv",
                 "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert rows and all(r["status"] == "pass" for r in rows)


@pytest.mark.parametrize("argv", [
    ["spectrum", "--q", "1.5"],
    ["spectrum", "--q", "abc"],
    ["spectrum", "--jmax", "3"],
    ["decay", "--q", "0.3", "--q", "0.5"],
])
def test_cli_config_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_cli_spectrum(capsys):
    assert main(["spectrum", "--q", "0.5", "--jmax", "5.5"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["j", "mu_j_closed_form", "mu_j_numeric",
                       "multiplicity"]
    assert len(rows) == 1 + 6


def test_cli_decay(capsys):
    assert main(["decay", "--op", "approx", "--i", "1", "--jmax",
                 "7.5"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows and float(rows[0]["fitted_slope"]) < 0
