"""Curve registry: base curves, their homology, intersection numbers and lantern configurations.

File format (``#`` starts a comment)::

    [curves]
    c1 nonsep (h1: 0 1 0 0) [pi1: b1]
    [intersections]
    c1 c2 1
    [lanterns]
    L1 c5 c5 c1 c1 -> c3 delta x
    [models]
    x = conj(c4^-1 c5^-2 c4^-1; c3)
    delta = chain(c1 c2)
    [pi1-twists]
    c1 a1 -> a1 b1 | a1 -> a1 b1^-1

``[models]`` expresses a curve as the image of another under a mapping
class, or as the boundary of a regular neighbourhood of two curves meeting
once.  ``[pi1-twists]`` gives the action of a twist (and of its inverse) on
the free group; only generators that move are listed.
"""

from __future__ import annotations

import hashlib
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from lantern import reps
from lantern.words import CurveRef, Letter, ParseError, format_letters, free_reduce, invert_letters, parse_word

SEARCH_LIMIT = 20000


class LanternMismatch(ValueError):
    """A lantern configuration fails the exact H1 check."""


@dataclass(frozen=True)
class BaseCurve:
    name: str
    separating: bool
    h1: tuple[int, ...]
    pi1: tuple[int, ...] | None = None


@dataclass(frozen=True)
class LanternConfig:
    label: str
    boundary: tuple[str, ...]
    interior: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.label} {' '.join(self.boundary)} -> {' '.join(self.interior)}"


@dataclass(frozen=True)
class CurveModel:
    name: str
    kind: str  # "conj" or "chain"
    base: str = ""
    conj: tuple[Letter, ...] = ()
    chain: tuple[str, str] = ("", "")

    def __str__(self) -> str:
        if self.kind == "chain":
            return f"{self.name} = chain({self.chain[0]} {self.chain[1]})"
        return f"{self.name} = {CurveRef(self.base, self.conj)}"


class Registry:
    def __init__(self, curves, intersections, lanterns, models=None, pi1_twists=None, verify=True):
        self.curves: dict[str, BaseCurve] = dict(curves)
        self.intersections: dict[frozenset, int] = dict(intersections)
        self.lanterns: dict[str, LanternConfig] = dict(lanterns)
        self.models: dict[str, CurveModel] = dict(models or {})
        self.pi1_twists: dict[str, tuple[reps.Pi1Automorphism, reps.Pi1Automorphism]] = dict(pi1_twists or {})
        self._check_consistency()
        if verify:
            self.verify_lanterns()
        self._digest = hashlib.sha256(self.dump().encode()).hexdigest()

    # -- queries -------------------------------------------------------------

    @property
    def names(self) -> set[str]:
        return set(self.curves)

    def h1(self, name: str) -> tuple[int, ...]:
        return self.curves[name].h1

    def is_separating(self, name: str) -> bool:
        return self.curves[name].separating

    def base_intersection(self, p: str, q: str) -> int | None:
        if p == q:
            return 0
        return self.intersections.get(frozenset((p, q)))

    def homology_class(self, curve: CurveRef) -> tuple[int, ...]:
        return reps.curve_class(curve, self)

    def lantern(self, label: str) -> LanternConfig:
        try:
            return self.lanterns[label]
        except KeyError:
            raise KeyError(f"no lantern configuration {label!r}") from None

    def intersection(self, a: CurveRef, b: CurveRef) -> int | None:
        """Geometric intersection number, or None when it cannot be resolved from the table."""
        if a == b:
            return 0
        u = free_reduce(invert_letters(a.conj) + b.conj)
        for alpha, beta in self._terminals(a.base, u, b.base):
            n = self.base_intersection(alpha, beta)
            if n is not None:
                return n
        return None

    def curves_equal(self, a: CurveRef, b: CurveRef) -> bool:
        """Whether the two references provably name the same isotopy class."""
        if a == b:
            return True
        u = free_reduce(invert_letters(a.conj) + b.conj)
        return any(alpha == beta for alpha, beta in self._terminals(a.base, u, b.base))

    def _fixes(self, letter: str, curve: str) -> bool:
        return self.base_intersection(letter, curve) == 0

    def _terminals(self, alpha: str, u: tuple[Letter, ...], beta: str):
        """Search for rewrites of the pair (alpha, u(beta)) with empty conjugator.

        Moves: a letter whose twist fixes the inner curve (or the outer one)
        is dropped from that end; adjacent letters on disjoint curves swap;
        t_p t_q (p) = q when p and q meet once, at either end.
        """
        start = (alpha, u, beta)
        seen = {start}
        queue = deque([start])
        found = []
        while queue and len(seen) < SEARCH_LIMIT:
            a, w, b = queue.popleft()
            if not w:
                found.append((a, b))
                if a == b:
                    return found
                continue
            nxt = []
            if self._fixes(w[-1][0], b):
                nxt.append((a, w[:-1], b))
            if self._fixes(w[0][0], a):
                nxt.append((a, w[1:], b))
            if len(w) >= 2:
                (p, e), (q, f) = w[-2], w[-1]
                if e == f and p == b and self.base_intersection(p, q) == 1:
                    nxt.append((a, w[:-2], q))
                (q, f), (p, e) = w[0], w[1]
                if e == f and p == a and self.base_intersection(p, q) == 1:
                    nxt.append((q, w[2:], b))
            for i in range(len(w) - 1):
                (p, e), (q, f) = w[i], w[i + 1]
                if p != q and self._fixes(p, q):
                    nxt.append((a, free_reduce(w[:i] + (w[i + 1], w[i]) + w[i + 2:]), b))
            for s in nxt:
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return found

    # -- validation ----------------------------------------------------------

    def _check_consistency(self):
        for c in self.curves.values():
            zero = not any(c.h1)
            if c.separating != zero:
                raise ValueError(f"curve {c.name}: separating flag disagrees with homology class {c.h1}")
            if c.pi1 is not None and reps.abelianize(c.pi1) != c.h1:
                raise ValueError(f"curve {c.name}: pi1 word abelianizes to {reps.abelianize(c.pi1)}, not {c.h1}")
        for key, n in self.intersections.items():
            names = tuple(key)
            for nm in names:
                if nm not in self.curves:
                    raise ValueError(f"intersection entry names unknown curve {nm!r}")
            if len(names) == 2:
                x, y = (self.h1(nm) for nm in names)
                alg = reps.pairing(x, y)
                if n < abs(alg) or (n - alg) % 2:
                    raise ValueError(f"intersection {names}: {n} incompatible with algebraic intersection {alg}")
        for cfg in self.lanterns.values():
            for nm in cfg.boundary + cfg.interior:
                if nm not in self.curves:
                    raise ValueError(f"lantern {cfg.label} names unknown curve {nm!r}")
            if len(cfg.boundary) != 4 or len(cfg.interior) != 3:
                raise ValueError(f"lantern {cfg.label} needs 4 boundary and 3 interior curves")
        for m in self.models.values():
            for nm in (m.name, m.base) if m.kind == "conj" else (m.name,) + m.chain:
                if nm not in self.curves:
                    raise ValueError(f"model {m.name} names unknown curve {nm!r}")

    def verify_lanterns(self):
        for cfg in self.lanterns.values():
            lhs, rhs = reps.lantern_sides(cfg, self)
            if lhs != rhs:
                raise LanternMismatch(f"lantern {cfg.label}: boundary product {lhs} != interior product {rhs}")

    # -- serialization -------------------------------------------------------

    def dump(self) -> str:
        out = ["[curves]"]
        for c in self.curves.values():
            line = f"{c.name} {'sep' if c.separating else 'nonsep'} (h1: {' '.join(map(str, c.h1))})"
            if c.pi1 is not None:
                line += f" [pi1: {reps.format_fg_word(c.pi1)}]"
            out.append(line)
        out.append("")
        out.append("[intersections]")
        order = list(self.curves)
        entries = sorted(self.intersections.items(), key=lambda kv: sorted(order.index(n) for n in kv[0]))
        for key, n in entries:
            a, b = sorted(key, key=order.index)
            out.append(f"{a} {b} {n}")
        out.append("")
        out.append("[lanterns]")
        out.extend(str(cfg) for cfg in self.lanterns.values())
        if self.models:
            out.append("")
            out.append("[models]")
            out.extend(str(m) for m in self.models.values())
        if self.pi1_twists:
            out.append("")
            out.append("[pi1-twists]")
            for name, (fwd, back) in self.pi1_twists.items():
                out.append(f"{name} {_format_aut(fwd)} | {_format_aut(back)}")
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        return self._digest

    def __eq__(self, other):
        return isinstance(other, Registry) and self._digest == other._digest

    def __hash__(self):
        return hash(self._digest)


def _format_aut(aut: reps.Pi1Automorphism) -> str:
    parts = []
    for g, img in enumerate(aut.images, start=1):
        if img != (g,):
            parts.append(f"{reps.GENERATORS[g - 1]} -> {reps.format_fg_word(img)}")
    return ", ".join(parts)


def _parse_aut(text: str) -> reps.Pi1Automorphism:
    images = [(g,) for g in range(1, reps.DIM + 1)]
    for part in filter(None, (p.strip() for p in text.split(","))):
        gen, arrow, img = part.partition("->")
        if not arrow or gen.strip() not in reps.GENERATORS:
            raise ValueError(f"bad generator image {part!r}")
        images[reps.GENERATORS.index(gen.strip())] = reps.parse_fg_word(img)
    return reps.Pi1Automorphism(tuple(images))


_CURVE_RE = re.compile(r"^(\S+)\s+(sep|nonsep)\s+\(h1:\s*(-?\d+)\s+(-?\d+)\s+(-?\d+)\s+(-?\d+)\s*\)\s*(?:\[pi1:\s*([^\]]*)\])?$")
_CHAIN_RE = re.compile(r"^chain\(\s*(\S+)\s+(\S+)\s*\)$")


def parse_registry(text: str, verify: bool = True) -> Registry:
    curves, inters, lanterns, models, twists = {}, {}, {}, {}, {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]") and " " not in line:
            section = line[1:-1]
            if section not in ("curves", "intersections", "lanterns", "models", "pi1-twists"):
                raise ParseError(f"unknown section {section!r}", lineno, 1)
            continue
        try:
            if section == "curves":
                m = _CURVE_RE.match(line)
                if not m:
                    raise ValueError("expected 'name sep|nonsep (h1: w x y z) [pi1: word]'")
                name = m.group(1)
                if name in curves:
                    raise ValueError(f"duplicate curve {name!r}")
                pi1 = reps.parse_fg_word(m.group(7)) if m.group(7) is not None else None
                curves[name] = BaseCurve(name, m.group(2) == "sep", tuple(int(m.group(i)) for i in range(3, 7)), pi1)
            elif section == "intersections":
                a, b, n = line.split()
                if a == b:
                    raise ValueError("self-intersection entries are implicit")
                key = frozenset((a, b))
                if key in inters and inters[key] != int(n):
                    raise ValueError(f"conflicting intersection for {a} {b}")
                inters[key] = int(n)
            elif section == "lanterns":
                lhs, arrow, rhs = line.partition("->")
                if not arrow:
                    raise ValueError("expected 'label b1 b2 b3 b4 -> i1 i2 i3'")
                label, *boundary = lhs.split()
                lanterns[label] = LanternConfig(label, tuple(boundary), tuple(rhs.split()))
            elif section == "models":
                name, eq, body = (s.strip() for s in line.partition("="))
                if not eq:
                    raise ValueError("expected 'name = conj(...; base)' or 'name = chain(p q)'")
                cm = _CHAIN_RE.match(body)
                if cm:
                    models[name] = CurveModel(name, "chain", chain=(cm.group(1), cm.group(2)))
                else:
                    w = parse_word(body)
                    if len(w) != 1 or w[0].exp != 1:
                        raise ValueError("model must be a single curve reference")
                    models[name] = CurveModel(name, "conj", base=w[0].curve.base, conj=w[0].curve.conj)
            elif section == "pi1-twists":
                name, rest = line.split(None, 1)
                fwd, bar, back = rest.partition("|")
                if not bar:
                    raise ValueError("expected 'name images | inverse images'")
                f, g = _parse_aut(fwd), _parse_aut(back)
                if f @ g != reps.Pi1Automorphism.identity():
                    raise ValueError(f"pi1 twist for {name} and its stated inverse do not compose to the identity")
                twists[name] = (f, g)
            else:
                raise ValueError("content before any section header")
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1) from None
    return Registry(curves, inters, lanterns, models, twists, verify=verify)


def load_registry(path: str | Path, verify: bool = True) -> Registry:
    return parse_registry(Path(path).read_text(), verify=verify)


def default_registry_text() -> str:
    return resources.files("lantern.data").joinpath("registry.txt").read_text()


@lru_cache(maxsize=1)
def default_registry() -> Registry:
    return parse_registry(default_registry_text())
