"""Exact representations: the symplectic action on H1 and the action on pi1.

Homology basis is (A1, B1, A2, B2) with <A_i, B_i> = 1.  Products follow
mapping-class composition: the rightmost token acts first, so the matrix of
t_0 t_1 ... t_{n-1} is M(t_0) M(t_1) ... M(t_{n-1}).

Free-group words are tuples of nonzero ints over the generators
a1=1, b1=2, a2=3, b2=4; a negative entry is an inverse letter.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from lantern.words import Letter, TwistToken, TwistWord, free_reduce, invert_letters

DIM = 4
J = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """Algebraic intersection <x, y> = x^T J y."""
    return x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]


@dataclass(frozen=True)
class SpMatrix:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls) -> "SpMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(DIM)) for i in range(DIM)))

    @classmethod
    def from_flat(cls, flat: Sequence[int]) -> "SpMatrix":
        flat = list(flat)
        return cls(tuple(tuple(flat[DIM * i: DIM * i + DIM]) for i in range(DIM)))

    def __matmul__(self, other: "SpMatrix") -> "SpMatrix":
        cols = list(zip(*other.rows))
        return SpMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def __neg__(self) -> "SpMatrix":
        return SpMatrix(tuple(tuple(-a for a in r) for r in self.rows))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def transpose(self) -> "SpMatrix":
        return SpMatrix(tuple(zip(*self.rows)))

    def inverse(self) -> "SpMatrix":
        # M^T J M = J  =>  M^-1 = -J M^T J
        j = SpMatrix(J)
        return -(j @ self.transpose() @ j)

    def is_symplectic(self) -> bool:
        j = SpMatrix(J)
        return self.transpose() @ j @ self == j

    def flat(self) -> tuple[int, ...]:
        return tuple(a for r in self.rows for a in r)

    def digest(self) -> list[int]:
        return list(self.flat())

    def sha(self) -> str:
        return hashlib.sha256(",".join(map(str, self.flat())).encode()).hexdigest()[:16]

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(f"{a}" for a in r) for r in self.rows) + "]"


def transvection(c: Sequence[int], power: int = 1) -> SpMatrix:
    """Matrix of T_c^power, T_c(x) = x + <x, c> c."""
    cols = []
    for i in range(DIM):
        e = tuple(int(i == j) for j in range(DIM))
        k = power * pairing(e, c)
        cols.append(tuple(e[j] + k * c[j] for j in range(DIM)))
    return SpMatrix(tuple(zip(*cols)))


def letters_matrix(letters: Iterable[Letter], registry) -> SpMatrix:
    m = SpMatrix.identity()
    for name, e in letters:
        m = m @ transvection(registry.h1(name), e)
    return m


def curve_class(curve, registry) -> tuple[int, ...]:
    """Homology class of a curve reference (defined up to sign)."""
    return letters_matrix(curve.conj, registry).apply(registry.h1(curve.base))


@lru_cache(maxsize=65536)
def token_matrix(tok: TwistToken, registry) -> SpMatrix:
    return transvection(curve_class(tok.curve, registry), tok.exp)


def word_matrix(word: TwistWord | Iterable[TwistToken], registry) -> SpMatrix:
    m = SpMatrix.identity()
    for t in word:
        m = m @ token_matrix(t, registry)
    return m


def lantern_sides(cfg, registry) -> tuple[SpMatrix, SpMatrix]:
    lhs = letters_matrix(((n, 1) for n in cfg.boundary), registry)
    rhs = letters_matrix(((n, 1) for n in cfg.interior), registry)
    return lhs, rhs


# ---- pi1 ------------------------------------------------------------------

GENERATORS = ("a1", "b1", "a2", "b2")
SURFACE_RELATOR = (1, 2, -1, -2, 3, 4, -3, -4)


def fg_reduce(w: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def fg_inverse(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(w))


def cyclic_reduce(w: Sequence[int]) -> tuple[int, ...]:
    w = fg_reduce(w)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def same_conjugacy_class(u: Sequence[int], v: Sequence[int]) -> bool:
    u, v = cyclic_reduce(u), cyclic_reduce(v)
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = u + u
    return any(doubled[i:i + len(v)] == v for i in range(len(u)))


def parse_fg_word(text: str) -> tuple[int, ...]:
    out = []
    for item in text.split():
        name, _, p = item.partition("^")
        if name not in GENERATORS:
            raise ValueError(f"unknown generator {name!r}")
        k = int(p) if p else 1
        g = GENERATORS.index(name) + 1
        out.extend([g if k > 0 else -g] * abs(k))
    return fg_reduce(out)


def format_fg_word(w: Sequence[int]) -> str:
    return " ".join(GENERATORS[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w)


def abelianize(w: Sequence[int]) -> tuple[int, ...]:
    v = [0] * DIM
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


@dataclass(frozen=True)
class Pi1Automorphism:
    """Endomorphism of F(a1, b1, a2, b2) given by generator images."""

    images: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls) -> "Pi1Automorphism":
        return cls(tuple((g,) for g in range(1, DIM + 1)))

    def __call__(self, w: Sequence[int]) -> tuple[int, ...]:
        out: list[int] = []
        for x in w:
            img = self.images[abs(x) - 1]
            out.extend(img if x > 0 else fg_inverse(img))
        return fg_reduce(out)

    def __matmul__(self, other: "Pi1Automorphism") -> "Pi1Automorphism":
        """self after other."""
        return Pi1Automorphism(tuple(self(img) for img in other.images))

    def abelianization(self) -> SpMatrix:
        cols = [abelianize(img) for img in self.images]
        return SpMatrix(tuple(zip(*cols)))

    def fixes_relator_up_to_conjugacy(self) -> bool:
        return same_conjugacy_class(self(SURFACE_RELATOR), SURFACE_RELATOR)


@lru_cache(maxsize=None)
def _base_twist(registry, name: str, exp: int) -> Pi1Automorphism:
    model = registry.models.get(name)
    if name in registry.pi1_twists:
        fwd, back = registry.pi1_twists[name]
        return fwd if exp == 1 else back
    if model is None:
        raise KeyError(f"no pi1 twist model for curve {name!r}")
    if model.kind == "chain":
        p, q = model.chain
        step = _letters_aut(registry, ((p, exp), (q, exp)) if exp == 1 else ((q, exp), (p, exp)))
        out = Pi1Automorphism.identity()
        for _ in range(6):
            out = out @ step
        return out
    u = model.conj
    return _letters_aut(registry, u) @ _base_twist(registry, model.base, exp) @ _letters_aut(registry, invert_letters(u))


def _letters_aut(registry, letters: Sequence[Letter]) -> Pi1Automorphism:
    out = Pi1Automorphism.identity()
    for name, e in letters:
        out = out @ _base_twist(registry, name, e)
    return out


def letters_pi1(letters: Sequence[Letter], registry) -> Pi1Automorphism:
    return _letters_aut(registry, free_reduce(letters))


def twist_pi1(tok: TwistToken, registry) -> Pi1Automorphism:
    return letters_pi1(tok.letters(), registry)


def word_pi1(word: TwistWord | Iterable[TwistToken], registry) -> Pi1Automorphism:
    out = Pi1Automorphism.identity()
    for t in word:
        out = out @ twist_pi1(t, registry)
    return out


def curve_pi1_word(curve, registry) -> tuple[int, ...]:
    """A word representing the free homotopy class of the curve."""
    w = registry.curves[curve.base].pi1
    if w is None:
        raise KeyError(f"curve {curve.base!r} has no pi1 word")
    return cyclic_reduce(letters_pi1(curve.conj, registry)(w))
