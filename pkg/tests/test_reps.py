import sympy

from lantern import reps
from lantern.words import parse_word

# independent oracle: the transvection and pairing built from sympy matrices
J = sympy.Matrix(reps.J)


def sym_transvection(c):
    v = sympy.Matrix(c)
    # x -> x + <x, c> c with <x, y> = x^T J y
    return sympy.eye(4) + v * (J * v).T


def sym_word(word, registry):
    m = sympy.eye(4)
    for t in word:
        c = registry.homology_class(t.curve)
        m = m * (sym_transvection(c) if t.exp == 1 else sym_transvection(c).inv())
    return m


def test_pairing_on_basis():
    A1, B1, A2, B2 = [tuple(int(i == k) for i in range(4)) for k in range(4)]
    assert reps.pairing(A1, B1) == 1
    assert reps.pairing(B1, A1) == -1
    assert reps.pairing(A2, B2) == 1
    assert reps.pairing(A1, A2) == 0


def test_transvection_matches_oracle():
    for c in [(0, 1, 0, 0), (1, 0, 0, 0), (0, 1, 0, 1), (0, 2, 0, 1), (3, -1, 2, 5)]:
        assert reps.transvection(c).rows == tuple(map(tuple, sym_transvection(c).tolist()))


def test_transvection_inverse_power():
    c = (1, 2, -1, 0)
    assert reps.transvection(c) @ reps.transvection(c, -1) == reps.SpMatrix.identity()


def test_word_matrix_matches_oracle(registry):
    w = parse_word("c1 conj(c2 c4^-1; kbar) c3^-1 conj(c5 c5 c5; c4) x k", registry.names)
    assert reps.word_matrix(w, registry).rows == tuple(map(tuple, sym_word(w, registry).tolist()))


def test_chain_classes(registry):
    assert registry.h1("c1") == (0, 1, 0, 0)
    assert registry.h1("c2") == (1, 0, 0, 0)
    assert registry.h1("c3") == (0, 1, 0, 1)
    assert registry.h1("c4") == (0, 0, 1, 0)
    assert registry.h1("c5") == (0, 0, 0, 1)


def test_hyperelliptic_word_is_minus_identity(registry):
    w = parse_word("c1 c2 c3 c4 c5 c5 c4 c3 c2 c1", registry.names)
    assert reps.word_matrix(w, registry) == -reps.SpMatrix.identity()


def test_chain_cube_frozen_value(registry):
    # frozen from the sympy oracle above; this is not -I
    w = parse_word("(c1 c2 c3 c4 c5)^3", registry.names)
    m = reps.word_matrix(w, registry)
    assert m.rows == tuple(map(tuple, sym_word(w, registry).tolist()))
    assert m.rows == ((0, 0, 0, -1), (0, 0, 1, 0), (0, 1, 0, 0), (-1, 0, 0, 0))


def test_inverse_and_symplectic():
    m = reps.transvection((1, 1, 0, 2)) @ reps.transvection((0, 1, 1, 0), -1)
    assert m.is_symplectic()
    assert m @ m.inverse() == reps.SpMatrix.identity()


def test_digest_round_trip():
    m = reps.transvection((1, -1, 2, 0))
    assert reps.SpMatrix.from_flat(m.digest()) == m
    assert len(m.sha()) == 16


def test_free_group_helpers():
    assert reps.fg_reduce((1, -1, 2, 3, -3)) == (2,)
    assert reps.cyclic_reduce((2, 1, 3, -2)) == (1, 3)
    assert reps.same_conjugacy_class((1, 2, 3), (3, 1, 2))
    assert not reps.same_conjugacy_class((1, 2, 3), (1, 3, 2))
    assert reps.parse_fg_word("a1 b1 a1^-1 b1^-1") == (1, 2, -1, -2)
    assert reps.abelianize(reps.SURFACE_RELATOR) == (0, 0, 0, 0)


def test_pi1_twists_abelianize_to_transvections(registry):
    for name in registry.names:
        for e in (1, -1):
            tok = parse_word(f"{name}^{e}", registry.names)[0]
            aut = reps.twist_pi1(tok, registry)
            assert aut.abelianization() == reps.token_matrix(tok, registry), (name, e)
            assert aut.fixes_relator_up_to_conjugacy()


def test_pi1_twist_inverse_pairs(registry):
    for name in registry.names:
        w = parse_word(f"{name} {name}^-1", registry.names)
        aut = reps.word_pi1(w, registry)
        for g in range(1, 5):
            assert aut((g,)) == (g,)


def test_twist_fixes_its_own_curve(registry):
    for name in registry.names:
        word = registry.curves[name].pi1
        aut = reps.twist_pi1(parse_word(name, registry.names)[0], registry)
        assert reps.same_conjugacy_class(aut(word), word), name
