from dataclasses import replace

import pytest

from lantern.invariants import (
    HEADER,
    NonIntegralInvariant,
    NonIntegralSignature,
    blowdown_ledger,
    compute,
    homeo_type,
    trajectory,
)


def test_initial_relator_values():
    inv = compute(30, 0)
    assert inv.characteristic() == (26, -18, -2, 2, 3, 21)


def test_final_word_values():
    inv = compute(18, 6)
    assert inv.characteristic() == (20, -12, 4, 2, 3, 15)
    assert homeo_type(inv) == "3CP²#15CP̄²"


def test_line_format():
    assert HEADER.split()[0] == "n"
    assert compute(18, 6).line() == "24 18 6 20 -12 4 2 3 15"


def test_noether_and_betti_relations():
    for n0 in range(0, 61, 5):
        for n1 in range(0, 11):
            try:
                inv = compute(n0, n1)
            except NonIntegralInvariant:
                continue
            assert inv.b2plus + inv.b2minus == inv.e - 2
            assert inv.b2plus - inv.b2minus == inv.sigma
            assert 12 * inv.chi_h == inv.c1sq + inv.e


def test_signature_must_be_integral():
    with pytest.raises(NonIntegralSignature):
        compute(1, 0)


def test_ledger_matches_census_route():
    inv = compute(30, 0)
    for m in range(1, 7):
        inv = blowdown_ledger(inv, 2)
        assert inv.characteristic() == trajectory(m).characteristic()
        assert inv.n is None


def test_ledger_rejects_small_p():
    with pytest.raises(ValueError):
        blowdown_ledger(compute(30, 0), 1)


def test_homeo_type_needs_positive_b2plus():
    inv = compute(30, 0)
    with pytest.raises(ValueError):
        homeo_type(replace(inv, b2plus=0))
    assert homeo_type(inv) == "3CP²#21CP̄²"


def test_missing_counts_print_as_dash():
    assert blowdown_ledger(compute(30, 0), 2).line().startswith("- - - 25")
