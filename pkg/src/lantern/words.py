"""Curve references, twist tokens and twist words, with a small text format.

A curve reference is a base curve name together with a conjugating word in
the twist generators: ``conj(c2 c4^-1; kbar)`` stands for the image of
``kbar`` under ``t_c2 t_c4^-1``.  Conjugators are stored flattened, as a
freely reduced tuple of ``(name, +-1)`` letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Letter = tuple[str, int]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + message)


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, e in letters:
        if out and out[-1][0] == name and out[-1][1] == -e:
            out.pop()
        else:
            out.append((name, e))
    return tuple(out)


def invert_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple((n, -e) for n, e in reversed(letters))


def format_letters(letters: Sequence[Letter]) -> str:
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in letters)


@dataclass(frozen=True, order=True)
class CurveRef:
    base: str
    conj: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "conj", free_reduce(tuple((str(n), int(e)) for n, e in self.conj)))

    def conjugated(self, prefix: Sequence[Letter]) -> "CurveRef":
        """Image of this curve under the mapping class spelled by `prefix`."""
        return CurveRef(self.base, tuple(prefix) + self.conj)

    def __str__(self) -> str:
        if not self.conj:
            return self.base
        return f"conj({format_letters(self.conj)}; {self.base})"


@dataclass(frozen=True)
class TwistToken:
    curve: CurveRef
    exp: int = 1

    def __post_init__(self):
        if self.exp not in (1, -1):
            raise ValueError(f"token exponent must be +-1, got {self.exp}")

    @classmethod
    def of(cls, base: str, conj: Sequence[Letter] = (), exp: int = 1) -> "TwistToken":
        return cls(CurveRef(base, tuple(conj)), exp)

    def inverse(self) -> "TwistToken":
        return TwistToken(self.curve, -self.exp)

    def letters(self) -> tuple[Letter, ...]:
        """t_{u(b)}^e = u t_b^e u^-1, as letters."""
        u = self.curve.conj
        return u + ((self.curve.base, self.exp),) + invert_letters(u)

    def __str__(self) -> str:
        s = str(self.curve)
        return s if self.exp == 1 else s + "^-1"


@dataclass(frozen=True)
class TwistWord:
    tokens: tuple[TwistToken, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[TwistToken]:
        return iter(self.tokens)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return TwistWord(self.tokens[i])
        return self.tokens[i]

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.tokens + tuple(other.tokens))

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens)

    def replace(self, start: int, stop: int, new: Sequence[TwistToken]) -> "TwistWord":
        return TwistWord(self.tokens[:start] + tuple(new) + self.tokens[stop:])

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple(t.inverse() for t in reversed(self.tokens)))

    def power(self, k: int) -> "TwistWord":
        base = self if k >= 0 else self.inverse()
        return TwistWord(base.tokens * abs(k))

    def normalize(self) -> "TwistWord":
        """Cancel adjacent token/inverse pairs on identical curves."""
        out: list[TwistToken] = []
        for t in self.tokens:
            if out and out[-1].curve == t.curve and out[-1].exp == -t.exp:
                out.pop()
            else:
                out.append(t)
        return TwistWord(tuple(out))

    def letters(self) -> tuple[Letter, ...]:
        return free_reduce(x for t in self.tokens for x in t.letters())

    def base_names(self) -> set[str]:
        names = set()
        for t in self.tokens:
            names.add(t.curve.base)
            names.update(n for n, _ in t.curve.conj)
        return names


class Relator(TwistWord):
    """A positive twist word claimed to be trivial in the mapping class group."""

    def __post_init__(self):
        super().__post_init__()
        bad = [i for i, t in enumerate(self.tokens) if t.exp != 1]
        if bad:
            raise ValueError(f"relator tokens must have exponent +1 (positions {bad})")

    @classmethod
    def from_word(cls, w: TwistWord) -> "Relator":
        return cls(w.tokens)


def census(word: TwistWord, registry) -> tuple[int, int]:
    """(nonseparating, separating) token counts."""
    n1 = sum(1 for t in word if registry.is_separating(t.curve.base))
    return len(word) - n1, n1


# ---- text form -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(#[^\n]*)|(conj\b)|([A-Za-z_][A-Za-z0-9_']*)|(\^\s*-?\d+)|([();]))")


@dataclass
class _Lexeme:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str, line_offset: int = 0) -> list[_Lexeme]:
    out = []
    for lineno, line in enumerate(text.split("\n"), start=1 + line_offset):
        pos = 0
        while pos < len(line):
            if line[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(line, pos)
            if not m or m.end() == pos:
                col = pos + 1 + (len(line[pos:]) - len(line[pos:].lstrip()))
                raise ParseError(f"unexpected character {line[col - 1]!r}", lineno, col)
            col = m.start(m.lastindex) + 1
            if m.group(1) is not None:
                break
            if m.group(2):
                out.append(_Lexeme("conj", "conj", lineno, col))
            elif m.group(3):
                out.append(_Lexeme("name", m.group(3), lineno, col))
            elif m.group(4):
                out.append(_Lexeme("pow", m.group(4)[1:].strip(), lineno, col))
            else:
                out.append(_Lexeme(m.group(5), m.group(5), lineno, col))
            pos = m.end()
    return out


class _Parser:
    def __init__(self, lexemes: list[_Lexeme], names: set[str] | None):
        self.lx = lexemes
        self.i = 0
        self.names = names

    def peek(self) -> _Lexeme | None:
        return self.lx[self.i] if self.i < len(self.lx) else None

    def take(self, kind: str) -> _Lexeme:
        lx = self.peek()
        if lx is None:
            last = self.lx[-1] if self.lx else _Lexeme("", "", 1, 1)
            raise ParseError(f"expected {kind!r}, got end of input", last.line, last.col + len(last.text))
        if lx.kind != kind:
            raise ParseError(f"expected {kind!r}, got {lx.text!r}", lx.line, lx.col)
        self.i += 1
        return lx

    def name(self) -> str:
        lx = self.take("name")
        if self.names is not None and lx.text not in self.names:
            raise ParseError(f"unknown curve {lx.text!r}", lx.line, lx.col)
        return lx.text

    def power(self) -> int:
        lx = self.peek()
        if lx is not None and lx.kind == "pow":
            self.i += 1
            return int(lx.text)
        return 1

    def word(self, stop: set[str]) -> list[TwistToken]:
        out: list[TwistToken] = []
        while True:
            lx = self.peek()
            if lx is None or lx.kind in stop:
                return out
            out.extend(self.item())

    def item(self) -> list[TwistToken]:
        lx = self.peek()
        if lx.kind == "name":
            toks = [TwistToken(CurveRef(self.name()))]
        elif lx.kind == "conj":
            self.i += 1
            self.take("(")
            inner = self.word({";", ")"})
            self.take(";")
            base = self.name()
            self.take(")")
            letters = TwistWord(tuple(inner)).letters()
            toks = [TwistToken(CurveRef(base, letters))]
        elif lx.kind == "(":
            self.i += 1
            toks = self.word({")"})
            self.take(")")
        else:
            raise ParseError(f"unexpected {lx.text!r}", lx.line, lx.col)
        k = self.power()
        return list(TwistWord(tuple(toks)).power(k).tokens)


def parse_word(text: str, names: set[str] | None = None, line_offset: int = 0) -> TwistWord:
    """Parse whitespace separated tokens; `( ... )^n` groups and `name^k` powers expand."""
    p = _Parser(_lex(text, line_offset), names)
    toks = p.word(set())
    return TwistWord(tuple(toks))


def parse_token(text: str, names: set[str] | None = None) -> TwistToken:
    w = parse_word(text, names)
    if len(w) != 1:
        raise ParseError(f"expected a single token, got {len(w)}", 1, 1)
    return w[0]


def parse_curve(text: str, names: set[str] | None = None) -> CurveRef:
    t = parse_token(text, names)
    if t.exp != 1:
        raise ParseError("a curve reference takes no exponent", 1, 1)
    return t.curve


def parse_letters(text: str, names: set[str] | None = None) -> tuple[Letter, ...]:
    return parse_word(text, names).letters()


def parse_relator(text: str, names: set[str] | None = None) -> Relator:
    w = parse_word(text, names)
    try:
        return Relator.from_word(w)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None
