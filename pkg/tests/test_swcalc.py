from fractions import Fraction
from pathlib import Path

import pytest

from lantern.swcalc import (
    NO_SYMPLECTIC,
    ClassLattice,
    MalformedConfiguration,
    SWFunction,
    blowdown_exceptional,
    blowup,
    certifies_exotic,
    descend_blowdown,
    format_sw,
    knot_surgery,
    minimality_check,
    minimality_squares,
    parse_vector,
    run_sw_script,
)
from lantern.words import ParseError

DATA = Path(__file__).resolve().parents[1] / "src" / "lantern" / "data"


def two_blowups():
    return blowup(blowup(SWFunction.unit(), "E1"), "E2")


def with_spheres(sw):
    for j in range(1, 7):
        sw = sw.declare(f"S{j}", -4, {"E1": 1, "E2": 1})
    return sw


def test_blowup_support():
    sw = two_blowups()
    assert sw.as_dict() == {(1, 1): 1, (1, -1): 1, (-1, 1): 1, (-1, -1): 1}


def test_blowup_then_blowdown_recovers():
    base = SWFunction.unit().declare("T", 0)
    base = knot_surgery(base, "T", [1, -1, 1])
    again = blowdown_exceptional(blowup(base, "E"), "E")
    assert again.as_dict() == base.as_dict()


def test_descent_keeps_one_pair():
    sw = with_spheres(two_blowups())
    sizes = []
    for j in range(1, 7):
        before = sw
        sw = descend_blowdown(sw, [sw.lattice.vector(f"S{j}")], 2)
        sizes.append(len(sw.support))
        for v in sw.support:
            assert sw.value(v) == before.value(v)
    assert sizes == [2] * 6
    assert format_sw(sw) == "sw = +1 e(E1+E2) +1 e(-E1-E2)"
    assert sw.lattice.square(sw.lattice.vector("E1+E2")) == 4


def test_descent_rejects_wrong_square():
    sw = two_blowups().declare("S", -3, {"E1": 1})
    with pytest.raises(MalformedConfiguration):
        descend_blowdown(sw, [sw.lattice.vector("S")], 2)
    with pytest.raises(MalformedConfiguration):
        descend_blowdown(sw, [], 2)


def test_minimality_after_descent():
    sw = with_spheres(two_blowups())
    for j in range(1, 7):
        sw = descend_blowdown(sw, [sw.lattice.vector(f"S{j}")], 2)
    assert minimality_squares(sw) == [Fraction(16)]
    assert minimality_check(sw)
    assert certifies_exotic(sw)


def test_blown_up_model_is_not_minimal():
    sw = blowup(SWFunction.unit(), "E")
    assert minimality_squares(sw) == [Fraction(-4)]
    assert not minimality_check(sw)


def test_knot_surgery_identity_and_composition():
    sw = two_blowups().declare("T", 0)
    assert knot_surgery(sw, "T", [1]).as_dict() == sw.as_dict()
    a, b = [1, -1, 1], [1, -3, 1]
    product = [1, -4, 5, -4, 1]  # (t - 1 + 1/t)(t - 3 + 1/t)
    assert knot_surgery(knot_surgery(sw, "T", a), "T", b).as_dict() == knot_surgery(sw, "T", product).as_dict()


def test_non_monic_polynomial_is_flagged():
    sw = SWFunction.unit().declare("T", 0)
    assert NO_SYMPLECTIC in knot_surgery(sw, "T", [2, -3, 2]).notes
    assert NO_SYMPLECTIC not in knot_surgery(sw, "T", [1, -1, 1]).notes
    with pytest.raises(ValueError):
        knot_surgery(sw, "T", [1, 2])


def test_distinct_monic_polynomials_give_distinct_supports():
    sw = SWFunction.unit().declare("T", 0)
    s1 = knot_surgery(sw, "T", [1, -1, 1]).support
    s2 = knot_surgery(sw, "T", [1, -1, 1, -1, 1]).support
    assert s1 != s2


def test_zero_function_is_not_exotic():
    assert not certifies_exotic(SWFunction.zero())


def test_vector_parsing():
    lat = ClassLattice((), ()).extend("E1", -1).extend("E2", -1)
    assert parse_vector("E1-2E2", lat) == (1, -2)
    assert parse_vector("-E1", lat) == (-1, 0)


def test_shipped_script_log():
    log = run_sw_script((DATA / "k3_sw.sws").read_text()).log
    assert "blowup E2: sw = +1 e(E1+E2) +1 e(E1-E2) +1 e(-E1+E2) +1 e(-E1-E2)" in log
    assert "square E1+E2 = 4" in log
    assert "minimal? true (pair squares: 16)" in log
    assert "exotic? true" in log
    assert any(line.endswith(f"({NO_SYMPLECTIC})") for line in log)


def test_script_errors_report_line():
    with pytest.raises(ParseError) as info:
        run_sw_script("start 1\nblowup E1\nfrobnicate\n")
    assert info.value.line == 3
