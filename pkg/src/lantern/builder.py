"""Helper for authoring move scripts: applies each move as it is recorded."""

from __future__ import annotations

from lantern import moves as mv
from lantern.words import TwistWord, parse_token


class ScriptBuilder:
    def __init__(self, initial: TwistWord, registry, relator: bool | None = None):
        self.registry = registry
        self.relator = mv.is_relator(initial, registry) if relator is None else relator
        self.word = initial
        self.lines: list[str] = []

    def __str__(self) -> str:
        return str(self.word)

    def comment(self, text: str):
        self.lines.append(f"# {text}")

    def apply(self, move):
        self.word, _ = mv.apply_move(self.word, move, self.registry, self.relator)
        self.lines.append(move.text())
        return self

    def find(self, text: str, start: int = 0) -> int:
        tok = parse_token(text, self.registry.names)
        for i in range(start, len(self.word)):
            if self.word[i] == tok:
                return i
        raise ValueError(f"token {text!r} not found at or after {start} in {self.word}")

    # single moves
    def commute(self, i):
        return self.apply(mv.Commute(i))

    def braid(self, i, direction="fwd"):
        return self.apply(mv.Braid(i, direction))

    def hl(self, i):
        return self.apply(mv.HurwitzLeft(i))

    def hr(self, i):
        return self.apply(mv.HurwitzRight(i))

    def cyclic(self, k):
        return self.apply(mv.Cyclic(k))

    def lantern(self, i, label, direction="contract"):
        return self.apply(mv.Lantern(i, label, direction))

    def relabel(self, i, text):
        return self.apply(mv.Relabel(i, parse_token(text, self.registry.names)))

    # compound moves
    def shift(self, i, j):
        """Move the token at i to position j by commutations."""
        while i < j:
            self.commute(i)
            i += 1
        while i > j:
            self.commute(i - 1)
            i -= 1
        return self

    def slide_right(self, i, j):
        """Carry the token at i to j with Hurwitz moves, conjugating what it passes."""
        for k in range(i, j):
            self.hl(k)
        return self

    def slide_left(self, i, j):
        """Carry the token at i to j with Hurwitz moves, conjugating what it passes."""
        for k in range(i - 1, j - 1, -1):
            self.hr(k)
        return self

    def script(self) -> str:
        return "\n".join(self.lines) + "\n"
