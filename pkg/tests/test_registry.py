from dataclasses import replace

import pytest

from lantern.registry import (
    LanternMismatch,
    Registry,
    default_registry_text,
    load_registry,
    parse_registry,
)
from lantern.words import ParseError, parse_curve


def lantern_curves(reg):
    return sorted({n for c in reg.lanterns.values() for n in c.boundary + c.interior})


def test_default_loads_and_verifies(registry):
    assert set(registry.lanterns) == {"L1", "L2", "L3"}
    registry.verify_lanterns()


def test_dump_round_trip(registry, tmp_path):
    text = registry.dump()
    again = parse_registry(text)
    assert again.dump() == text
    assert again == registry
    p = tmp_path / "reg.txt"
    p.write_text(text)
    assert load_registry(p).digest() == registry.digest()


def test_separating_curves_have_zero_class(registry):
    for name in ("delta", "h", "hbar"):
        assert registry.is_separating(name)
        assert registry.h1(name) == (0, 0, 0, 0)
    assert not registry.is_separating("x")


def test_base_intersections(registry):
    assert registry.base_intersection("c1", "c2") == 1
    assert registry.base_intersection("c1", "c3") == 0
    assert registry.base_intersection("c3", "delta") == 2
    assert registry.base_intersection("c2", "c2") == 0


def test_special_pair_outside_any_lantern_is_unknown(registry):
    assert registry.base_intersection("x", "k") is None
    assert registry.intersection(parse_curve("x"), parse_curve("k")) is None


def test_intersection_through_conjugation(registry):
    # c4 fixes c2, so conj(c4; c2) is c2 again
    assert registry.intersection(parse_curve("conj(c4; c2)"), parse_curve("c1")) == 1
    assert registry.curves_equal(parse_curve("conj(c4; c2)"), parse_curve("c2"))
    # braid collapse: conj(c3 c4; c3) = c4
    assert registry.curves_equal(parse_curve("conj(c3 c4; c3)"), parse_curve("c4"))
    assert not registry.curves_equal(parse_curve("conj(c3; c2)"), parse_curve("c2"))


def test_every_single_class_mutation_breaks_a_lantern(registry):
    # intersection table left out so only the lantern check can object
    for name in lantern_curves(registry):
        for k in range(4):
            for d in (1, -1):
                c = registry.curves[name]
                v = list(c.h1)
                v[k] += d
                curves = dict(registry.curves)
                curves[name] = replace(c, h1=tuple(v), separating=not any(v), pi1=None)
                with pytest.raises(LanternMismatch):
                    Registry(curves, {}, registry.lanterns)


def test_unmutated_control_passes_without_table(registry):
    curves = {n: replace(c, pi1=None) for n, c in registry.curves.items()}
    Registry(curves, {}, registry.lanterns)


def test_mutated_text_fails_to_load():
    text = default_registry_text().replace("x nonsep (h1: 0 1 0 -1)", "x nonsep (h1: 0 1 0 -2)")
    with pytest.raises(ValueError):
        parse_registry(text)


def test_separating_flag_must_match_class():
    text = default_registry_text().replace("delta sep", "delta nonsep")
    with pytest.raises(ValueError, match="separating"):
        parse_registry(text)


def test_parse_errors_carry_line_numbers():
    text = default_registry_text().replace("c1 c2 1", "c1 c2 one", 1)
    with pytest.raises(ParseError) as info:
        parse_registry(text)
    assert info.value.line > 0


def test_digest_changes_with_data(registry):
    text = default_registry_text().replace("c1 c2 1", "c1 c2 3")
    other = parse_registry(text, verify=False)
    assert other.digest() != registry.digest()
