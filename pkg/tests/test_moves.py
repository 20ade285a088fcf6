import json

import pytest

from lantern import reps
from lantern.moves import (
    Braid,
    Commute,
    ConfigMismatch,
    Cyclic,
    GlobalConj,
    HurwitzLeft,
    HurwitzRight,
    IndexOutOfRange,
    Lantern,
    NonDisjoint,
    NonUnitIntersection,
    NotEquivalent,
    NotRelatorContext,
    PatternMismatch,
    Relabel,
    UnknownConfig,
    VerificationMismatch,
    apply_move,
    check_certificate,
    derive,
    format_script,
    is_relator,
    parse_move,
    parse_script,
)
from lantern.words import ParseError, parse_token


def test_commute_disjoint(registry, word):
    w, ev = apply_move(word("c1 c3"), Commute(0), registry)
    assert str(w) == "c3 c1"
    assert ev == ("i(c1, c3) = 0",)


def test_commute_rejects_intersecting(registry, word):
    with pytest.raises(NonDisjoint):
        apply_move(word("c1 c2"), Commute(0), registry)


def test_commute_rejects_unknown_intersection(registry, word):
    with pytest.raises(NonDisjoint, match="UNKNOWN"):
        apply_move(word("x k"), Commute(0), registry)


def test_braid(registry, word):
    w, _ = apply_move(word("c1 c2 c1"), Braid(0), registry)
    assert str(w) == "c2 c1 c2"
    w, _ = apply_move(word("c2 c1 c2"), Braid(0, "rev"), registry)
    assert str(w) == "c1 c2 c1"


def test_braid_rejects_disjoint_pair(registry, word):
    with pytest.raises(NonUnitIntersection):
        apply_move(word("c1 c3 c1"), Braid(0), registry)


def test_braid_rejects_bad_shape(registry, word):
    with pytest.raises(PatternMismatch):
        apply_move(word("c1 c2 c3"), Braid(0), registry)


def test_hurwitz_moves_are_inverse(registry, word):
    w = word("c1 c2")
    left, _ = apply_move(w, HurwitzLeft(0), registry)
    assert str(left) == "conj(c1; c2) c1"
    back, _ = apply_move(left, HurwitzRight(0), registry)
    assert back == w


def test_hurwitz_preserves_matrix(registry, word):
    w = word("c3 conj(c5; kbar) c2^-1")
    for mv in (HurwitzLeft(0), HurwitzRight(1)):
        after, _ = apply_move(w, mv, registry)
        assert reps.word_matrix(after, registry) == reps.word_matrix(w, registry)


def test_relator_only_moves(registry, word):
    w = word("c1 c2")
    for mv in (Cyclic(1), GlobalConj((("c3", 1),))):
        with pytest.raises(NotRelatorContext):
            apply_move(w, mv, registry)
    w, _ = apply_move(w, Cyclic(1), registry, relator=True)
    assert str(w) == "c2 c1"
    w, _ = apply_move(w, GlobalConj((("c3", 1),)), registry, relator=True)
    assert str(w) == "conj(c3; c2) conj(c3; c1)"


def test_lantern_contract_and_expand(registry, word):
    cfg = registry.lantern("L1")
    boundary = word(" ".join(cfg.boundary))
    w, ev = apply_move(boundary, Lantern(0, "L1"), registry)
    assert [t.curve.base for t in w] == list(cfg.interior)
    assert reps.word_matrix(w, registry) == reps.word_matrix(boundary, registry)
    back, _ = apply_move(w, Lantern(0, "L1", "expand"), registry)
    assert back == boundary


def test_lantern_contract_under_common_conjugator(registry, word):
    w = word("conj(c2; c5) conj(c2; c1) conj(c2; c1) conj(c2; c5)")
    out, _ = apply_move(w, Lantern(0, "L1"), registry)
    assert all(t.curve.conj == (("c2", 1),) for t in out)


def test_lantern_errors(registry, word):
    with pytest.raises(UnknownConfig):
        apply_move(word("c1 c1 c5 c5"), Lantern(0, "L7"), registry)
    with pytest.raises(ConfigMismatch):
        apply_move(word("c1 c1 c3 c5"), Lantern(0, "L1"), registry)
    with pytest.raises(ConfigMismatch):
        apply_move(word("c5 conj(c2; c1) c1 c5"), Lantern(0, "L1"), registry)
    with pytest.raises(IndexOutOfRange):
        apply_move(word("c5 c1 c1"), Lantern(0, "L1"), registry)


def test_relabel(registry, word):
    w, ev = apply_move(word("conj(c4; c2)"), Relabel(0, parse_token("c2")), registry)
    assert str(w) == "c2"
    with pytest.raises(NotEquivalent):
        apply_move(word("conj(c3; c2)"), Relabel(0, parse_token("c2")), registry)


def test_index_out_of_range(registry, word):
    with pytest.raises(IndexOutOfRange):
        apply_move(word("c1 c3"), Commute(1), registry)
    with pytest.raises(IndexOutOfRange):
        apply_move(word("c1 c3"), Commute(-1), registry)


def test_script_round_trip(registry):
    text = "commute 3\nbraid 2 rev\nhurwitzL 0\nhurwitzR 4\ncyclic 7\ngconj c3 c4^-1\nlantern 5 L2 contract\nlantern 1 L3 expand\nrelabel 2 conj(c1^-1; c2)\n"
    moves = parse_script(text, registry.names)
    assert format_script(moves) == text


def test_script_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_script("commute 1\n\nbraid x\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_move("twist 1")


def test_derive_names_failing_step(registry, word):
    with pytest.raises(NonUnitIntersection, match="step 2"):
        derive(word("c2 c4 c1 c3 c1"), [Commute(0), Braid(2)], registry)


def test_relator_detection(registry, word):
    assert is_relator(word("(c5 c4 c3 c2 c1)^6"), registry)
    assert is_relator(word("(c1 c2 c3 c4 c5 c5 c4 c3 c2 c1)^2"), registry)
    assert not is_relator(word("(c5 c4 c3 c2 c1)^3"), registry)


def test_certificate_round_trip_and_tamper(registry, word):
    cert = derive(word("c1 c3 c2"), [Commute(0), HurwitzLeft(1)], registry)
    text = cert.to_json(registry)
    assert check_certificate(text, registry).final == cert.final
    doc = json.loads(text)
    doc["steps"][0]["after"] = doc["steps"][0]["after"].replace("c3", "c5", 1)
    with pytest.raises(VerificationMismatch):
        check_certificate(json.dumps(doc, sort_keys=True, indent=1), registry)


def test_empty_certificate(registry, word):
    cert = derive(word("(c5 c4 c3 c2 c1)^6"), [], registry)
    assert cert.steps == []
    assert check_certificate(cert.to_json(registry), registry).final == cert.initial


def test_matrix_digest_recorded(registry, word):
    cert = derive(word("(c5 c4 c3 c2 c1)^6"), [Cyclic(1)], registry)
    doc = json.loads(cert.to_json(registry))
    assert doc["steps"][0]["matrix"] == reps.SpMatrix.identity().digest()
