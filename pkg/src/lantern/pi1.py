"""Simple-connectivity checks for the total space of a fibration.

The fundamental group is the surface group on a1 b1 a2 b2 modulo one
relator per vanishing cycle.  Two routes: the abelianization, via Smith
normal form of the cycle classes, and Todd-Coxeter enumeration over the
trivial subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from lantern import reps
from lantern.words import TwistWord


@dataclass(frozen=True)
class FPGroup:
    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(reps.fg_reduce(r) for r in self.relators))

    def word_text(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in w)

    def dump(self) -> str:
        lines = [f"gens: {' '.join(self.generators)}"]
        lines.extend(self.word_text(r) for r in self.relators)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "FPGroup":
        gens: list[str] | None = None
        rels = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("gens:"):
                gens = line[5:].split()
                continue
            if gens is None:
                raise ValueError("presentation must start with 'gens:'")
            w = []
            for item in line.split():
                if item == "1":
                    continue
                name, _, p = item.partition("^")
                if name not in gens:
                    raise ValueError(f"unknown generator {name!r}")
                k = int(p) if p else 1
                g = gens.index(name) + 1
                w.extend([g if k > 0 else -g] * abs(k))
            rels.append(tuple(w))
        if gens is None:
            raise ValueError("presentation must start with 'gens:'")
        return cls(tuple(gens), tuple(rels))


@dataclass(frozen=True)
class TotalSpacePresentation:
    group: FPGroup
    abelianized: tuple[int, ...] = ()  # token positions with no pi1 word

    @property
    def h1_only(self) -> bool:
        return bool(self.abelianized)


def total_space_presentation(word: TwistWord, registry, h1_only: bool = False) -> TotalSpacePresentation:
    rels = [reps.SURFACE_RELATOR]
    missing = []
    for i, t in enumerate(word):
        if h1_only or registry.curves[t.curve.base].pi1 is None:
            missing.append(i)
            continue
        rels.append(reps.curve_pi1_word(t.curve, registry))
    return TotalSpacePresentation(FPGroup(reps.GENERATORS, tuple(rels)), tuple(missing))


# ---- abelianization ---------------------------------------------------------


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form, d1 | d2 | ..., length min(rows, cols)."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                return diag + [0] * (min(rows, cols) - t)
            _, i, j = min(nz)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                clean &= a[i][t] == 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                diag.append(abs(p))
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    divisors: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return all(d == 1 for d in self.divisors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d == 0)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.divisors if d > 1]
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def class_matrix(word: TwistWord, registry) -> list[list[int]]:
    """4 x N matrix whose columns are the vanishing-cycle classes."""
    cols = [registry.homology_class(t.curve) for t in word]
    return [[c[i] for c in cols] for i in range(reps.DIM)]


def h1_quotient(word: TwistWord, registry) -> AbelianInvariants:
    m = class_matrix(word, registry)
    d = smith_normal_form(m) if len(word) else []
    return AbelianInvariants(tuple(d + [0] * (reps.DIM - len(d))))


# ---- coset enumeration --------------------------------------------------------


@dataclass(frozen=True)
class CosetResult:
    order: int | None  # None when the limit was hit
    defined: int

    @property
    def hit_limit(self) -> bool:
        return self.order is None

    def __str__(self) -> str:
        if self.order is None:
            return f"LIMIT (after defining {self.defined} cosets)"
        return f"order {self.order} ({self.defined} cosets defined)"


class _LimitReached(Exception):
    pass


@dataclass
class _CosetTable:
    ngens: int
    limit: int
    table: list = field(default_factory=list)
    parent: list = field(default_factory=list)

    def __post_init__(self):
        self.new()

    @staticmethod
    def col(x: int) -> int:
        return 2 * (abs(x) - 1) + (x < 0)

    def new(self) -> int:
        if len(self.table) >= self.limit:
            raise _LimitReached
        self.table.append([None] * (2 * self.ngens))
        self.parent.append(len(self.parent))
        return len(self.table) - 1

    def define(self, c: int, x: int):
        d = self.new()
        self.table[c][self.col(x)] = d
        self.table[d][self.col(-x)] = c

    def rep(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def _merge(self, k: int, l: int, queue: list):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(2 * self.ngens):
                f = self.table[e][x]
                if f is None:
                    continue
                self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, w: Sequence[int]):
        t = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][self.col(w[i])] is not None:
                f = t[f][self.col(w[i])]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][self.col(-w[j])] is not None:
                b = t[b][self.col(-w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][self.col(w[i])] = b
                t[b][self.col(-w[i])] = f
                return
            self.define(f, w[i])

    def live(self) -> int:
        return sum(1 for k, p in enumerate(self.parent) if p == k)


def coset_enumerate(group: FPGroup, limit: int = 100_000) -> CosetResult:
    """HLT enumeration of the cosets of the trivial subgroup, in definition order."""
    if limit <= 0:
        raise ValueError("limit must be positive")
    ct = _CosetTable(len(group.generators), limit)
    rels = [r for r in group.relators if r]
    c = 0
    try:
        while c < len(ct.table):
            if ct.parent[c] == c:
                for r in rels:
                    ct.scan_and_fill(c, r)
                    if ct.parent[c] != c:
                        break
                if ct.parent[c] == c:
                    for x in range(1, len(group.generators) + 1):
                        for s in (x, -x):
                            if ct.table[c][ct.col(s)] is None:
                                ct.define(c, s)
            c += 1
    except _LimitReached:
        return CosetResult(None, len(ct.table))
    return CosetResult(ct.live(), len(ct.table))
