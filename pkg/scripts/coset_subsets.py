"""Find a small set of vanishing-cycle relators that still kills pi1.

Starts from the full presentation of a word (default: the 24-token word
shipped as final24.twf) and greedily drops cycle relators, keeping a drop
whenever coset enumeration still returns order 1 within the limit.
"""

import argparse
from pathlib import Path

from lantern import pi1
from lantern.registry import default_registry
from lantern.words import parse_word

DATA = Path(__file__).resolve().parents[1] / "src" / "lantern" / "data"


def collapses(group: pi1.FPGroup, keep: list[int], limit: int) -> bool:
    rels = (group.relators[0],) + tuple(group.relators[i + 1] for i in keep)
    return pi1.coset_enumerate(pi1.FPGroup(group.generators, rels), limit).order == 1


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("word", nargs="?", type=Path, default=DATA / "final24.twf")
    ap.add_argument("--limit", type=int, default=20_000)
    args = ap.parse_args(argv)

    registry = default_registry()
    word = parse_word(args.word.read_text(), registry.names)
    group = pi1.total_space_presentation(word, registry).group
    keep = list(range(len(word)))
    if not collapses(group, keep, args.limit):
        print("full presentation does not collapse within the limit")
        return 1
    for i in reversed(range(len(word))):
        trial = [j for j in keep if j != i]
        if collapses(group, trial, args.limit):
            keep = trial
    print(f"{len(keep)} of {len(word)} cycle relators suffice:")
    for j in keep:
        print(f"  {j + 1:2d}  {word[j]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
