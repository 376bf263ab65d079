from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from symplext.dsl import DslError, parse, to_text

MODELS = Path(__file__).resolve().parent.parent / "demos" / "models"


def test_fixture_parses():
    doc = parse((MODELS / "t2xcp1.rht").read_text())
    assert doc.name == "T2xCP1"
    assert doc.generators == [("t11", 1), ("t12", 1), ("b", 2), ("y", 3)]
    assert str(doc.differentials["y"]) == "b^2"
    assert doc.torus == 1 and doc.base_is_s2
    assert doc.classify == {"y@t11*t12": {"u": Fraction(1)}}
    assert str(doc.omega) == "t11*t12 + b"


def test_semicolons_and_comments():
    doc = parse("gen a 1; gen b 1  # two\ngen c 1; d c = a*b")
    assert [n for n, _ in doc.generators] == ["a", "b", "c"]
    assert str(doc.differentials["c"]) == "a*b"


@pytest.mark.parametrize("name", ["t2xcp1.rht", "kt.rht"])
def test_round_trip_fixpoint(name):
    text = (MODELS / name).read_text()
    doc = parse(text)
    canon = to_text(doc)
    assert parse(canon) == doc
    assert to_text(parse(canon)) == canon


def test_expression_forms():
    doc = parse("gen a 1\ngen b 1\ngen c 2\ngen e 3\nd e = -(c)^2 + 3/2*c*c - 2*(a*b)*c")
    assert str(doc.differentials["e"]) == "-2*a*b*c + 1/2*c^2"


def test_zero_differential_dropped():
    doc = parse("gen a 1\ngen c 2\nd c = a*a")
    assert doc.differentials == {}


def test_undeclared_generator_location():
    with pytest.raises(DslError) as exc:
        parse("gen y 3\nd y = b^2\n")
    assert exc.value.line == 2 and exc.value.col == 7
    assert "b" in exc.value.message


def test_undeclared_left_side():
    with pytest.raises(DslError) as exc:
        parse("gen b 2\nd y = b^2\n")
    assert (exc.value.line, exc.value.col) == (2, 3)


def test_degree_mismatch_location():
    with pytest.raises(DslError) as exc:
        parse("gen b 2\ngen y 3\nd y = b")
    assert exc.value.line == 3 and "degree 4" in exc.value.message


def test_duplicates():
    with pytest.raises(DslError) as exc:
        parse("gen a 1\ngen a 2")
    assert (exc.value.line, exc.value.col) == (2, 5)
    with pytest.raises(DslError):
        parse("gen a 1\ngen c 2\nd c = 0\nd c = 0")
    with pytest.raises(DslError):
        parse("torus 1; torus 2")
    with pytest.raises(DslError):
        parse("base S2\nclassify x -> 1\nclassify x -> 2")


def test_expected_token_sets():
    with pytest.raises(DslError) as exc:
        parse("gen a")
    assert exc.value.expected
    with pytest.raises(DslError) as exc:
        parse("frobnicate 3")
    assert "'gen'" in exc.value.expected
    with pytest.raises(DslError) as exc:
        parse("gen a 1\nd a = (a")
    assert exc.value.line == 2


def test_bad_character():
    with pytest.raises(DslError) as exc:
        parse("gen a 1\ngen b $")
    assert (exc.value.line, exc.value.col) == (2, 7)


def test_classify_rules():
    with pytest.raises(DslError):
        parse("classify x -> 1")  # no base
    with pytest.raises(DslError):
        parse("base basis p q\nclassify x -> p*q")
    doc = parse("base basis p q\nclassify x -> 2*p - 1/3*q")
    assert doc.classify == {"x": {"p": 2, "q": Fraction(-1, 3)}}
    assert "classify x -> 2*p - 1/3*q" in to_text(doc)
    with pytest.raises(DslError):
        parse("base basis p\nclassify x -> p/3")  # division only between integer literals


def test_symplectic_must_be_degree_two():
    with pytest.raises(DslError):
        parse("gen a 1\nsymplectic w = a")


def test_generator_degree_positive():
    with pytest.raises(DslError):
        parse("gen a 0")


# -- round trip on generated documents --------------------------------------

NAMES = st.sampled_from(["a", "b", "c", "x1", "x2", "t11", "t12"])


@st.composite
def documents(draw):
    names = draw(st.lists(NAMES, min_size=1, max_size=5, unique=True))
    degs = [draw(st.integers(1, 3)) for _ in names]
    lines = [f"gen {n} {d}" for n, d in zip(names, degs)]
    for tgt, dt in zip(names, degs):
        srcs = [(n, d) for n, d in zip(names, degs) if d < dt + 1]
        pairs = [(a, b) for a, da in srcs for b, db in srcs if da + db == dt + 1]
        if pairs and draw(st.booleans()):
            terms = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=3))
            coefs = draw(st.lists(st.fractions(-4, 4, max_denominator=3), min_size=len(terms),
                                  max_size=len(terms)))
            lines.append(f"d {tgt} = " + " + ".join(f"({c})*{a}*{b}" for c, (a, b) in zip(coefs, terms)))
    if draw(st.booleans()):
        lines.append(f"torus {draw(st.integers(0, 3))}")
    if draw(st.booleans()):
        lines.append("base S2")
        lines.append(f"classify {names[0]}@1 -> {draw(st.integers(-5, 5))}")
    return "\n".join(lines)


@settings(max_examples=80, deadline=None)
@given(documents())
def test_round_trip_property(text):
    doc = parse(text)
    canon = to_text(doc)
    assert parse(canon) == doc
    assert to_text(parse(canon)) == canon
