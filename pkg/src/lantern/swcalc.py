"""Formal Seiberg-Witten bookkeeping on a finite class lattice.

An SW function is a finite formal sum  sum_L  n_L e(L)  over lattice
vectors.  Vectors are integer coefficient tuples in the lattice basis; the
pairing is a symmetric Fraction matrix, so that descending through a
rational blowdown can project the pairing orthogonally to the removed
spheres without leaving exact arithmetic.

Nothing here touches gauge theory.  Two cited rules are recorded as plain
functions: the blow-up and descent formulas, and connected-sum vanishing
(the standard manifold has zero SW function, so a nonzero result certifies
an exotic smooth structure).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from lantern.words import ParseError

NO_SYMPLECTIC = "admits no symplectic structure"

Vector = tuple[int, ...]


class MalformedConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class ClassLattice:
    names: tuple[str, ...] = ()
    gram: tuple[tuple[Fraction, ...], ...] = ()

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no class {name!r} in the lattice") from None

    def basis(self, name: str) -> Vector:
        i = self.index(name)
        return tuple(int(j == i) for j in range(len(self.names)))

    def dot(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        return sum((Fraction(a) * g * b for a, row in zip(u, self.gram) for g, b in zip(row, v)), Fraction(0))

    def square(self, u: Sequence[int]) -> Fraction:
        return self.dot(u, u)

    def extend(self, name: str, square: int, pairings: dict[str, int] | None = None) -> "ClassLattice":
        if name in self.names:
            raise ValueError(f"class {name!r} already present")
        pairings = pairings or {}
        for other in pairings:
            self.index(other)
        col = [Fraction(pairings.get(n, 0)) for n in self.names]
        gram = [list(row) + [c] for row, c in zip(self.gram, col)]
        gram.append(col + [Fraction(square)])
        return ClassLattice(self.names + (name,), tuple(tuple(r) for r in gram))

    def project_out(self, s: Sequence[int]) -> "ClassLattice":
        """Pairing restricted to the orthogonal complement of s: <x,y> - <x,s><y,s>/s^2."""
        s2 = self.square(s)
        if s2 == 0:
            raise MalformedConfiguration("cannot project out an isotropic class")
        n = len(self.names)
        gs = [self.dot(self.basis(nm), s) for nm in self.names]
        gram = tuple(tuple(self.gram[i][j] - gs[i] * gs[j] / s2 for j in range(n)) for i in range(n))
        return ClassLattice(self.names, gram)

    def vector(self, text: str) -> Vector:
        return parse_vector(text, self)


@dataclass(frozen=True)
class SWFunction:
    lattice: ClassLattice
    terms: tuple[tuple[Vector, int], ...] = ()
    notes: tuple[str, ...] = ()

    @classmethod
    def build(cls, lattice: ClassLattice, values: dict[Vector, int], notes: Iterable[str] = ()) -> "SWFunction":
        terms = tuple(sorted(((v, n) for v, n in values.items() if n), reverse=True))
        return cls(lattice, terms, tuple(notes))

    @classmethod
    def unit(cls, lattice: ClassLattice | None = None) -> "SWFunction":
        lattice = lattice or ClassLattice()
        return cls.build(lattice, {tuple([0] * len(lattice.names)): 1})

    @classmethod
    def zero(cls, lattice: ClassLattice | None = None) -> "SWFunction":
        return cls(lattice or ClassLattice())

    def as_dict(self) -> dict[Vector, int]:
        return dict(self.terms)

    @property
    def support(self) -> set[Vector]:
        return {v for v, _ in self.terms}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def value(self, v: Sequence[int]) -> int:
        return self.as_dict().get(tuple(v), 0)

    def with_lattice(self, lattice: ClassLattice) -> "SWFunction":
        pad = len(lattice.names) - len(self.lattice.names)
        return SWFunction.build(lattice, {v + (0,) * pad: n for v, n in self.terms}, self.notes)

    def declare(self, name: str, square: int, pairings: dict[str, int] | None = None) -> "SWFunction":
        return self.with_lattice(self.lattice.extend(name, square, pairings))

    def __str__(self) -> str:
        return format_sw(self)


def format_vector(v: Sequence[int], lattice: ClassLattice) -> str:
    out = ""
    for c, name in zip(v, lattice.names):
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        out += f"{sign}{mag}{name}"
    return out or "0"


_TERM_RE = re.compile(r"([+-]?)(\d*)([A-Za-z_][A-Za-z0-9_]*)")


def parse_vector(text: str, lattice: ClassLattice) -> Vector:
    text = text.replace(" ", "")
    v = [0] * len(lattice.names)
    if text == "0":
        return tuple(v)
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise ValueError(f"cannot parse class {text!r}")
        c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        v[lattice.index(m.group(3))] += c
        pos = m.end()
    return tuple(v)


def format_sw(sw: SWFunction) -> str:
    if not sw.terms:
        return "sw = 0"
    return "sw = " + " ".join(f"{n:+d} e({format_vector(v, sw.lattice)})" for v, n in sw.terms)


# ---- operations ---------------------------------------------------------------


def blowup(sw: SWFunction, name: str) -> SWFunction:
    """Multiply by e(E) + e(-E) for a fresh exceptional class E (E^2 = -1)."""
    if name in sw.lattice.names:
        raise ValueError(f"class {name!r} already in the lattice")
    lat = sw.lattice.extend(name, -1)
    out: dict[Vector, int] = {}
    for v, n in sw.terms:
        for s in (1, -1):
            w = v + (s,)
            out[w] = out.get(w, 0) + n
    return SWFunction.build(lat, out, sw.notes)


def blowdown_exceptional(sw: SWFunction, name: str) -> SWFunction:
    """Inverse of blowup: read off SW_X(L) from the class L + E, then drop E."""
    i = sw.lattice.index(name)
    keep = [j for j in range(len(sw.lattice.names)) if j != i]
    names = tuple(sw.lattice.names[j] for j in keep)
    gram = tuple(tuple(sw.lattice.gram[a][b] for b in keep) for a in keep)
    out = {tuple(v[j] for j in keep): n for v, n in sw.terms if v[i] == 1}
    return SWFunction.build(ClassLattice(names, gram), out, sw.notes)


def descend_blowdown(sw: SWFunction, spheres: Sequence[Sequence[int]], p: int) -> SWFunction:
    """Rational blowdown along the chain u_1 .. u_{p-1}.

    Classes with L.u_i = 0 (i <= p-2) and L.u_{p-1} = +-p descend with their
    values; all others are dropped.  The pairing is then projected onto the
    orthogonal complement of the spheres.
    """
    if p < 2 or len(spheres) != p - 1:
        raise MalformedConfiguration(f"C_{p} needs exactly {p - 1} sphere classes, got {len(spheres)}")
    lat = sw.lattice
    for k, u in enumerate(spheres):
        want = -(p + 2) if k == p - 2 else -2
        if lat.square(u) != want:
            raise MalformedConfiguration(f"sphere {k + 1} has square {lat.square(u)}, expected {want}")
    for a, b in zip(spheres, spheres[1:]):
        if lat.dot(a, b) != 1:
            raise MalformedConfiguration("consecutive spheres must meet once")

    def survives(v):
        dots = [lat.dot(v, u) for u in spheres]
        return all(d == 0 for d in dots[:-1]) and abs(dots[-1]) == p

    out = {v: n for v, n in sw.terms if survives(v)}
    for u in _orthogonal_basis(spheres, lat):
        lat = lat.project_out(u)
    return SWFunction.build(lat, out, sw.notes)


def _orthogonal_basis(vectors, lat: ClassLattice):
    # Gram-Schmidt over Q, kept as Fraction coordinates
    basis = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for b in basis:
            c = lat.dot(w, b) / lat.square(b)
            w = [x - c * y for x, y in zip(w, b)]
        basis.append(w)
    return basis


def alexander_is_symmetric(coeffs: Sequence[int]) -> bool:
    return len(coeffs) % 2 == 1 and list(coeffs) == list(reversed(coeffs))


def knot_surgery(sw: SWFunction, torus: str, alexander: Sequence[int]) -> SWFunction:
    """Multiply by Delta(t^2) with t = e(T): coefficient a_j moves L to L + 2jT."""
    if not alexander_is_symmetric(alexander):
        raise ValueError(f"Alexander polynomial {list(alexander)} is not symmetrized")
    t = sw.lattice.basis(torus)
    if sw.lattice.square(t) != 0:
        raise ValueError(f"{torus} must have square 0 for knot surgery")
    half = len(alexander) // 2
    out: dict[Vector, int] = {}
    for v, n in sw.terms:
        for k, a in enumerate(alexander):
            if not a:
                continue
            j = k - half
            w = tuple(x + 2 * j * y for x, y in zip(v, t))
            out[w] = out.get(w, 0) + n * a
    notes = list(sw.notes)
    lead = next((a for a in alexander if a), 0)
    if abs(lead) != 1 and NO_SYMPLECTIC not in notes:
        notes.append(NO_SYMPLECTIC)
    return SWFunction.build(sw.lattice, out, notes)


def minimality_squares(sw: SWFunction) -> list[Fraction]:
    """(K - K')^2 over unordered pairs of distinct basic classes."""
    lat = sw.lattice
    return [lat.square(tuple(a - b for a, b in zip(k, kp))) for k, kp in combinations(sorted(sw.support), 2)]


def minimality_check(sw: SWFunction) -> bool:
    return all(s != -4 for s in minimality_squares(sw))


def certifies_exotic(sw: SWFunction) -> bool:
    """Connected-sum vanishing: the standard manifold has SW = 0, so any nonzero function is exotic."""
    return bool(sw)


# ---- scripts ------------------------------------------------------------------


@dataclass
class SWSession:
    sw: SWFunction = field(default_factory=SWFunction.unit)
    log: list[str] = field(default_factory=list)

    def run_line(self, line: str):
        cmd, *args = line.split()
        if cmd == "start":
            if args not in (["1"], ["0"]):
                raise ValueError("start takes 1 or 0")
            self.sw = SWFunction.unit() if args == ["1"] else SWFunction.zero()
            self.log.append(str(self.sw))
        elif cmd == "class":
            name, square, *pairs = args
            pairings = {}
            for item in pairs:
                other, _, val = item.partition(":")
                pairings[other] = int(val)
            self.sw = self.sw.declare(name, int(square), pairings)
            self.log.append(f"class {name}^2 = {square}")
        elif cmd == "blowup":
            (name,) = args
            self.sw = blowup(self.sw, name)
            self.log.append(f"blowup {name}: {self.sw}")
        elif cmd == "descend":
            p, *names = args
            spheres = [self.sw.lattice.vector(n) for n in names]
            self.sw = descend_blowdown(self.sw, spheres, int(p))
            self.log.append(f"descend C_{p} along {' '.join(names)}: {self.sw}")
        elif cmd == "knot":
            torus, rest = args[0], " ".join(args[1:])
            coeffs = [int(x) for x in rest.strip("[] ").replace(",", " ").split()]
            self.sw = knot_surgery(self.sw, torus, coeffs)
            note = f" ({NO_SYMPLECTIC})" if NO_SYMPLECTIC in self.sw.notes else ""
            self.log.append(f"knot {torus} {coeffs}: {self.sw}{note}")
        elif cmd == "minimal?":
            squares = minimality_squares(self.sw)
            shown = ", ".join(str(s) for s in squares) or "none"
            self.log.append(f"minimal? {str(minimality_check(self.sw)).lower()} (pair squares: {shown})")
        elif cmd == "exotic?":
            self.log.append(f"exotic? {str(certifies_exotic(self.sw)).lower()}")
        elif cmd == "square":
            (text,) = args
            self.log.append(f"square {text} = {self.sw.lattice.square(self.sw.lattice.vector(text))}")
        elif cmd == "show":
            self.log.append(str(self.sw))
        else:
            raise ValueError(f"unknown command {cmd!r}")


def run_sw_script(text: str) -> SWSession:
    session = SWSession()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            session.run_line(line)
        except (ValueError, KeyError) as exc:
            raise ParseError(str(exc).strip("'\""), lineno, 1) from None
    return session
