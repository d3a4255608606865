import pytest
from fsing.fp_errors import PolyParseError
from fsing.fp_parse import parse, parse_list, tokenize
from fsing.fp_poly import PolyRing


R = PolyRing(7, ("x", "y"))


@pytest.mark.parametrize("src, expected", [
    ("x^2+y^3", {(2, 0): 1, (0, 3): 1}),
    ("  x ^ 2  +  y ^ 3 ", {(2, 0): 1, (0, 3): 1}),
    ("-x", {(1, 0): 6}),
    ("3*x*y - 10", {(1, 1): 3, (0, 0): 4}),
    ("(x+y)^7", {(7, 0): 1, (0, 7): 1}),
    ("2*(x - y)*(x + y)", {(2, 0): 2, (0, 2): 5}),
    ("x^0", {(0, 0): 1}),
    ("14*x", {}),
    ("--x", {(1, 0): 1}),
])
def test_parse_values(src, expected):
    assert parse(src, R).terms == expected


@pytest.mark.parametrize("src, position", [
    ("x^2+z", 4),
    ("x^", 2),
    ("x^-1", 2),
    ("x+*y", 2),
    ("(x+y", 4),
    ("x y", 2),
    ("x $ y", 2),
    ("", 0),
])
def test_parse_errors_carry_position(src, position):
    with pytest.raises(PolyParseError) as info:
        parse(src, R)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_oversized_exponent():
    with pytest.raises(PolyParseError):
        parse("x^18446744073709551616", R)


def test_render_reparses():
    f = parse("3*x^2*y + 6*y^3 - x + 2", R)
    assert parse(f.render(), R) == f


def test_parse_list():
    gens = parse_list("x, y^2 + 1", R)
    assert gens == [R.var("x"), R.var("y").pow(2) + 1]


def test_parse_list_error_offset():
    with pytest.raises(PolyParseError) as info:
        parse_list("x, y+w", R)
    assert info.value.position == 5
    with pytest.raises(PolyParseError):
        parse_list("x,,y", R)


def test_tokenize_positions_and_trailing_space():
    assert tokenize(" x ^ 2  ") == [("name", "x", 1), ("op", "^", 3), ("num", "2", 5), ("end", "", 8)]
    assert tokenize("   ") == [("end", "", 3)]


def test_long_input():
    # 20000 copies of x, and 20000 = 1 mod 7
    src = " + ".join(["x"] * 20000)
    assert parse(src, R) == R.var("x")
