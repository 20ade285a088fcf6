"""Regenerate the shipped move scripts from high-level plans.

Every move goes through the engine as it is recorded, so a plan that
reaches an illegal state fails here rather than in the shipped file.

    python scripts/build_scripts.py            # rewrite the scripts and the certificate
    python scripts/build_scripts.py --check    # fail if the shipped files differ
"""

import argparse
import sys
from pathlib import Path

from lantern.builder import ScriptBuilder
from lantern.moves import derive, parse_script
from lantern.registry import default_registry
from lantern.words import parse_word

DATA = Path(__file__).resolve().parents[1] / "src" / "lantern" / "data"

DOUBLE_CHAIN = "c5 c4 c3 c2 c1 c5 c4 c3 c2 c1"
RELATOR = "(c5 c4 c3 c2 c1)^6"


def contract_L1(b: ScriptBuilder, off: int = 0):
    b.comment("c5 c1^2 c5 -> c3 delta x")
    b.hl(off)
    b.shift(off + 1, off + 3)
    b.hr(off + 8)
    b.shift(off + 8, off + 6)
    b.commute(off + 4)
    b.lantern(off + 3, "L1")


def contract_L2(b: ScriptBuilder, off: int = 0):
    b.comment("c1 c3 c1 c3 -> kbar hbar c5")
    b.shift(off + 5, off + 2)
    b.commute(off + 5)
    b.hl(off + 3)
    b.hl(off + 4)
    b.hr(off + 8)
    b.commute(off + 5)
    b.commute(off + 7)
    b.commute(off + 6)
    b.lantern(off + 5, "L2")


def contract_L3(b: ScriptBuilder, off: int = 0):
    b.comment("c3 c5^2 c3 -> c1 k h")
    b.hl(off)
    b.shift(off + 4, off + 7)
    b.hr(off + 5)
    b.hl(off + 2)
    b.commute(off + 1)
    b.commute(off + 2)
    b.commute(off + 4)
    b.commute(off + 3)
    b.lantern(off + 2, "L3")


def six_lanterns(b: ScriptBuilder):
    contract_L1(b, 0)
    contract_L2(b, 9)
    contract_L3(b, 18)

    b.comment("fourth lantern: gather c3 c3 c5 c5")
    i = 3  # the c3 in front of delta
    b.slide_right(i, i + 3)
    i = b.find("conj(c1^-1; c2)")
    b.hr(i + 2)  # c4 c5 -> c5 conj(c5^-1; c4)
    b.braid(len(b.word) - 3)  # c1 c2 c1 -> c2 c1 c2
    b.shift(i, i + 2)
    b.lantern(i - 2, "L3")

    b.comment("fifth lantern: gather c1 c1 c3 c3")
    j = b.find("c1")
    b.shift(j, 3)
    b.cyclic(len(b.word) - 2)
    b.shift(2, 0)
    b.braid(2)  # c2 c3 c2 -> c3 c2 c3
    b.hr(3)
    b.hr(4)
    b.shift(4, 2)
    b.lantern(1, "L2")

    b.comment("carry c5 rightwards to meet the second c5")
    i = b.find("c5")
    for _ in range(3):
        b.commute(i)
        i += 1
    b.hl(i)  # past conj(c3; c4)
    i += 1
    for _ in range(3):
        b.commute(i)
        i += 1
    b.hl(i)  # conj(c5^-1; c4) becomes c4
    b.relabel(i, "c4")
    i += 1
    b.slide_right(i, i + 4)

    b.comment("conjugate the front block by c4^-1, then by c2")
    i = b.find("c4")
    b.slide_left(i, 0)
    b.cyclic(1)
    b.commute(len(b.word) - 2)
    b.cyclic(len(b.word) - 1)
    i = b.find("c5")
    b.slide_right(0, i - 1)

    b.comment("c3'(c4) c4 -> c4 c3")
    n = len(b.word)
    b.hr(n - 2)
    b.relabel(n - 1, "c3")

    b.comment("c2 through conj(c1^-1; c2), then c2 conj(c3; c2) -> c3 c2")
    i = b.find("c2", b.find("c5") - 1)
    b.shift(i, i + 2)
    b.hl(i + 2)
    b.commute(i + 3)
    b.hl(i + 4)
    b.relabel(i + 4, "c3")

    b.comment("sixth lantern: c5 c5 past conj(c2 c1^-1; c2) and conj(c5; c4), c3 leftwards")
    i = b.find("c5")
    b.commute(i + 1)
    b.commute(i)
    b.hl(i + 2)
    b.hl(i + 1)
    j = len(b.word) - 1
    b.hr(j - 1)
    j -= 1
    for _ in range(3):
        b.commute(j - 1)
        j -= 1
    b.hr(j - 1)
    b.lantern(j - 4, "L3")


# the 24-token word as displayed after simplifying the conjugators
FINAL_24 = (
    "conj(c4^-1 c5; c4) conj(c2 c4^-1; kbar) conj(c2 c4^-1; hbar) conj(c2 c4^-1 c1^-1 c3^-1; c2) "
    "conj(c2 c4^-1 c3; delta) conj(c2 c4^-1 c3; x) conj(c2 c4^-1 c3 c5; c4) conj(c2 c4^-1; k) conj(c2 c4^-1; h) "
    "conj(c2 c1^-1; c2) conj(c2 c3 c5; c2) conj(c2 c3 c5; c4) conj(c2 c5; kbar) conj(c2 c5; hbar) "
    "conj(c2 c1^-1; c2) conj(c5 c5 c5; c4) c1 k h conj(c3^-1; c2) c1 k h conj(c3^-1; c4)"
)


def tidy(b: ScriptBuilder):
    b.comment("rename tokens to the simplified display")
    target = parse_word(FINAL_24, b.registry.names)
    for i, (have, want) in enumerate(zip(b.word, target)):
        if have != want:
            b.relabel(i, str(want))


def build_all(registry):
    out = {}
    w10 = parse_word(DOUBLE_CHAIN, registry.names)
    for name, fn in (("lantern_L1", contract_L1), ("lantern_L2", contract_L2), ("lantern_L3", contract_L3)):
        b = ScriptBuilder(w10, registry, relator=False)
        fn(b)
        out[name + ".twf"] = b.script()
    b = ScriptBuilder(parse_word(RELATOR, registry.names), registry)
    six_lanterns(b)
    tidy(b)
    out["lemma63.twf"] = b.script()
    # the shipped certificate is the engine's own replay of the shipped script
    initial = parse_word(RELATOR, registry.names)
    cert = derive(initial, parse_script(out["lemma63.twf"], registry.names), registry)
    out["lemma63.cert"] = cert.to_json(registry)
    return out, b.word


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    scripts, final = build_all(default_registry())
    stale = []
    for name, text in scripts.items():
        path = DATA / name
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(name)
        else:
            path.write_text(text)
    print(f"final word ({len(final)} tokens): {final}")
    if stale:
        print("out of date:", ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
