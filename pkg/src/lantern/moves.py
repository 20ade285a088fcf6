"""Elementary moves on twist words, scripts of moves, and replayable certificates.

Every move returns a new word; the input is never touched.  Each applied
step is checked to preserve the H1 action exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from lantern import invariants, reps
from lantern.words import (
    CurveRef,
    ParseError,
    TwistToken,
    TwistWord,
    census,
    format_letters,
    free_reduce,
    invert_letters,
    parse_letters,
    parse_token,
    parse_word,
)

CERT_FORMAT = "lantern-cert/1"


class IllegalMove(ValueError):
    """A move whose precondition fails; the word is left untouched."""


class IndexOutOfRange(IllegalMove):
    pass


class NonDisjoint(IllegalMove):
    pass


class PatternMismatch(IllegalMove):
    pass


class NonUnitIntersection(IllegalMove):
    pass


class ConfigMismatch(IllegalMove):
    pass


class UnknownConfig(IllegalMove):
    pass


class NotRelatorContext(IllegalMove):
    pass


class NotEquivalent(IllegalMove):
    pass


class VerificationMismatch(RuntimeError):
    pass


# ---- move types ------------------------------------------------------------


@dataclass(frozen=True)
class Commute:
    i: int

    def text(self) -> str:
        return f"commute {self.i}"


@dataclass(frozen=True)
class Braid:
    i: int
    direction: str = "fwd"

    def text(self) -> str:
        return f"braid {self.i} {self.direction}"


@dataclass(frozen=True)
class HurwitzLeft:
    i: int

    def text(self) -> str:
        return f"hurwitzL {self.i}"


@dataclass(frozen=True)
class HurwitzRight:
    i: int

    def text(self) -> str:
        return f"hurwitzR {self.i}"


@dataclass(frozen=True)
class Cyclic:
    k: int

    def text(self) -> str:
        return f"cyclic {self.k}"


@dataclass(frozen=True)
class GlobalConj:
    g: tuple  # letters

    def text(self) -> str:
        return f"gconj {format_letters(self.g)}"


@dataclass(frozen=True)
class Lantern:
    i: int
    label: str
    direction: str = "contract"

    def text(self) -> str:
        return f"lantern {self.i} {self.label} {self.direction}"


@dataclass(frozen=True)
class Relabel:
    i: int
    token: TwistToken

    def text(self) -> str:
        return f"relabel {self.i} {self.token}"


Move = Commute | Braid | HurwitzLeft | HurwitzRight | Cyclic | GlobalConj | Lantern | Relabel


@dataclass(frozen=True)
class MoveStep:
    before: TwistWord
    move: Move
    after: TwistWord
    matrix: reps.SpMatrix
    evidence: tuple[str, ...] = ()


# ---- application -----------------------------------------------------------


def _need(word: TwistWord, i: int, count: int):
    if i < 0 or i + count > len(word):
        raise IndexOutOfRange(f"positions {i}..{i + count - 1} out of range for a word of length {len(word)}")


def _intersection(a: CurveRef, b: CurveRef, registry) -> int | None:
    for c in (a, b):
        if c.base not in registry.curves:
            raise KeyError(f"unknown curve {c.base!r}")
    return registry.intersection(a, b)


def _show(n: int | None) -> str:
    return "UNKNOWN" if n is None else str(n)


def apply_move(word: TwistWord, move: Move, registry, relator: bool = False) -> tuple[TwistWord, tuple[str, ...]]:
    """Apply one move; returns the new word and the evidence used."""
    if isinstance(move, Commute):
        _need(word, move.i, 2)
        a, b = word[move.i], word[move.i + 1]
        n = _intersection(a.curve, b.curve, registry)
        if n != 0:
            raise NonDisjoint(f"commute {move.i}: i({a.curve}, {b.curve}) = {_show(n)}")
        return word.replace(move.i, move.i + 2, (b, a)), (f"i({a.curve}, {b.curve}) = 0",)

    if isinstance(move, Braid):
        if move.direction not in ("fwd", "rev"):
            raise PatternMismatch(f"braid direction must be fwd or rev, got {move.direction!r}")
        _need(word, move.i, 3)
        a, b, c = word[move.i: move.i + 3]
        if a != c:
            raise PatternMismatch(f"braid {move.i}: outer tokens {a} and {c} differ")
        if a.exp != b.exp:
            raise PatternMismatch(f"braid {move.i}: exponents differ")
        n = _intersection(a.curve, b.curve, registry)
        if n != 1:
            raise NonUnitIntersection(f"braid {move.i}: i({a.curve}, {b.curve}) = {_show(n)}")
        return word.replace(move.i, move.i + 3, (b, a, b)), (f"i({a.curve}, {b.curve}) = 1",)

    if isinstance(move, HurwitzLeft):
        _need(word, move.i, 2)
        a, b = word[move.i], word[move.i + 1]
        moved = TwistToken(b.curve.conjugated(a.letters()), b.exp)
        return word.replace(move.i, move.i + 2, (moved, a)), ()

    if isinstance(move, HurwitzRight):
        _need(word, move.i, 2)
        a, b = word[move.i], word[move.i + 1]
        moved = TwistToken(a.curve.conjugated(b.inverse().letters()), a.exp)
        return word.replace(move.i, move.i + 2, (b, moved)), ()

    if isinstance(move, Cyclic):
        if not relator:
            raise NotRelatorContext("cyclic rotation is only allowed on a relator")
        if not len(word):
            return word, ()
        k = move.k % len(word)
        return TwistWord(word.tokens[k:] + word.tokens[:k]), ()

    if isinstance(move, GlobalConj):
        if not relator:
            raise NotRelatorContext("global conjugation is only allowed on a relator")
        g = free_reduce(move.g)
        return TwistWord(tuple(TwistToken(t.curve.conjugated(g), t.exp) for t in word)), ()

    if isinstance(move, Lantern):
        if move.label not in registry.lanterns:
            raise UnknownConfig(f"no lantern configuration {move.label!r}")
        cfg = registry.lanterns[move.label]
        if move.direction == "contract":
            pattern, replacement, ordered = cfg.boundary, cfg.interior, False
        elif move.direction == "expand":
            pattern, replacement, ordered = cfg.interior, cfg.boundary, True
        else:
            raise ConfigMismatch(f"lantern direction must be contract or expand, got {move.direction!r}")
        _need(word, move.i, len(pattern))
        window = word.tokens[move.i: move.i + len(pattern)]
        if any(t.exp != 1 for t in window):
            raise ConfigMismatch(f"lantern {move.i}: all tokens must be positive")
        u = window[0].curve.conj
        if any(t.curve.conj != u for t in window):
            raise ConfigMismatch(f"lantern {move.i}: tokens do not share a common conjugator")
        bases = [t.curve.base for t in window]
        if (bases != list(pattern)) if ordered else (sorted(bases) != sorted(pattern)):
            raise ConfigMismatch(f"lantern {move.i}: {' '.join(bases)} does not match {cfg.label} {move.direction}")
        new = tuple(TwistToken(CurveRef(n, u)) for n in replacement)
        return word.replace(move.i, move.i + len(pattern), new), (f"{cfg} u=({format_letters(u)})",)

    if isinstance(move, Relabel):
        _need(word, move.i, 1)
        old = word[move.i]
        if move.token.exp != old.exp:
            raise NotEquivalent(f"relabel {move.i}: exponent changes")
        if not registry.curves_equal(old.curve, move.token.curve):
            raise NotEquivalent(f"relabel {move.i}: cannot show {old.curve} = {move.token.curve}")
        return word.replace(move.i, move.i + 1, (move.token,)), (f"{old.curve} = {move.token.curve}",)

    raise TypeError(f"not a move: {move!r}")


def step(word: TwistWord, move: Move, registry, relator: bool = False, before_matrix: reps.SpMatrix | None = None) -> MoveStep:
    after, evidence = apply_move(word, move, registry, relator)
    if before_matrix is None:
        before_matrix = reps.word_matrix(word, registry)
    m = reps.word_matrix(after, registry)
    if m != before_matrix:
        raise VerificationMismatch(f"{move.text()} changed the H1 action: {before_matrix} -> {m}")
    return MoveStep(word, move, after, m, evidence)


# ---- scripts ---------------------------------------------------------------


def parse_move(line: str, names: set[str] | None = None) -> Move:
    parts = line.split(None, 1)
    if not parts:
        raise ParseError("empty move")
    kind, rest = parts[0], (parts[1] if len(parts) > 1 else "")
    args = rest.split()
    try:
        if kind == "commute" and len(args) == 1:
            return Commute(int(args[0]))
        if kind == "braid" and len(args) in (1, 2):
            d = args[1] if len(args) == 2 else "fwd"
            if d not in ("fwd", "rev"):
                raise ParseError(f"braid direction must be fwd or rev, got {d!r}")
            return Braid(int(args[0]), d)
        if kind == "hurwitzL" and len(args) == 1:
            return HurwitzLeft(int(args[0]))
        if kind == "hurwitzR" and len(args) == 1:
            return HurwitzRight(int(args[0]))
        if kind == "cyclic" and len(args) == 1:
            return Cyclic(int(args[0]))
        if kind == "gconj" and args:
            return GlobalConj(parse_letters(rest, names))
        if kind == "lantern" and len(args) in (2, 3):
            d = args[2] if len(args) == 3 else "contract"
            if d not in ("contract", "expand"):
                raise ParseError(f"lantern direction must be contract or expand, got {d!r}")
            return Lantern(int(args[0]), args[1], d)
        if kind == "relabel" and len(args) >= 2:
            i, tok = rest.split(None, 1)
            return Relabel(int(i), parse_token(tok, names))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad arguments for {kind}: {rest!r}") from None
    raise ParseError(f"unrecognised move {line.strip()!r}")


def parse_script(text: str, names: set[str] | None = None) -> list[Move]:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            moves.append(parse_move(line, names))
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1] if exc.line else str(exc), lineno, 1) from None
    return moves


def format_script(moves: Sequence[Move]) -> str:
    return "".join(m.text() + "\n" for m in moves)


# ---- derivations -----------------------------------------------------------


@dataclass
class DerivationCertificate:
    registry_digest: str
    initial: TwistWord
    relator: bool
    steps: list[MoveStep] = field(default_factory=list)

    @property
    def final(self) -> TwistWord:
        return self.steps[-1].after if self.steps else self.initial

    def lantern_count(self) -> dict[str, int]:
        out = {"contract": 0, "expand": 0}
        for s in self.steps:
            if isinstance(s.move, Lantern):
                out[s.move.direction] += 1
        return out

    def invariant_lines(self, registry) -> list[str]:
        """Invariant block: the initial word, then every step that changes the length."""
        if not self.relator:
            return []
        words = [self.initial] + [s.after for s, prev in zip(self.steps, [self.initial] + [x.after for x in self.steps]) if len(s.after) != len(prev)]
        lines = [invariants.HEADER]
        for w in words:
            n0, n1 = census(w, registry)
            try:
                lines.append(invariants.compute(n0, n1).line())
            except invariants.NonIntegralSignature as exc:
                lines.append(f"{n0 + n1} {n0} {n1} ({exc})")
        return lines

    def summary(self, registry) -> dict:
        n0, n1 = census(self.final, registry)
        return {
            "length": len(self.final),
            "census": [n0, n1],
            "lanterns": self.lantern_count(),
            "invariants": self.invariant_lines(registry),
        }

    def to_json(self, registry) -> str:
        doc = {
            "format": CERT_FORMAT,
            "registry_digest": self.registry_digest,
            "relator": self.relator,
            "initial": str(self.initial),
            "steps": [
                {
                    "index": k,
                    "move": s.move.text(),
                    "before": str(s.before),
                    "after": str(s.after),
                    "matrix": s.matrix.digest(),
                    "evidence": list(s.evidence),
                }
                for k, s in enumerate(self.steps, start=1)
            ],
            "final": str(self.final),
            "summary": self.summary(registry),
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def is_relator(word: TwistWord, registry) -> bool:
    return all(t.exp == 1 for t in word) and reps.word_matrix(word, registry) == reps.SpMatrix.identity()


def derive(initial: TwistWord, moves: Sequence[Move], registry, relator: bool | None = None) -> DerivationCertificate:
    """Run a script; raises IllegalMove (annotated with the step number) on the first bad move."""
    if relator is None:
        relator = is_relator(initial, registry)
    cert = DerivationCertificate(registry.digest(), initial, relator)
    word, m = initial, reps.word_matrix(initial, registry)
    for k, mv in enumerate(moves, start=1):
        try:
            s = step(word, mv, registry, relator, m)
        except IllegalMove as exc:
            raise type(exc)(f"step {k} ({mv.text()}): {exc}") from None
        cert.steps.append(s)
        word, m = s.after, s.matrix
    return cert


def check_certificate(text: str, registry) -> DerivationCertificate:
    """Replay a certificate from scratch; raises VerificationMismatch on any disagreement."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not JSON: {exc}") from None
    if doc.get("format") != CERT_FORMAT:
        raise VerificationMismatch(f"unknown certificate format {doc.get('format')!r}")
    if doc["registry_digest"] != registry.digest():
        raise VerificationMismatch("registry digest differs from the registry in use")
    names = registry.names
    initial = parse_word(doc["initial"], names)
    moves = [parse_move(s["move"], names) for s in doc["steps"]]
    try:
        cert = derive(initial, moves, registry, relator=bool(doc["relator"]))
    except IllegalMove as exc:
        raise VerificationMismatch(f"replay failed: {exc}") from None
    for rec, s in zip(doc["steps"], cert.steps):
        k = rec["index"]
        if rec["before"] != str(s.before) or rec["after"] != str(s.after):
            raise VerificationMismatch(f"step {k}: recorded word differs from replay")
        if rec["matrix"] != s.matrix.digest():
            raise VerificationMismatch(f"step {k}: recorded matrix digest differs from replay")
        if rec["evidence"] != list(s.evidence):
            raise VerificationMismatch(f"step {k}: recorded evidence differs from replay")
    if doc["final"] != str(cert.final):
        raise VerificationMismatch("final word differs from replay")
    if doc["summary"] != cert.summary(registry):
        raise VerificationMismatch("summary differs from replay")
    if cert.to_json(registry) != text:
        raise VerificationMismatch("certificate is not in canonical form")
    return cert
