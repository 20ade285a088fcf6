"""Print the invariants after m lantern substitutions, m = 0..6, by both routes.

The census route counts vanishing cycles; the ledger route applies one
rational blowdown of C_2 per step.  The two columns must agree.
"""

from lantern.invariants import HEADER, blowdown_ledger, compute, homeo_type, trajectory


def main():
    print("m", HEADER, "| ledger agrees | type")
    ledger = compute(30, 0)
    for m in range(7):
        if m:
            ledger = blowdown_ledger(ledger, 2)
        inv = trajectory(m)
        agree = inv.characteristic() == ledger.characteristic()
        print(m, inv.line(), "|", "yes" if agree else "NO", "|", homeo_type(inv))


if __name__ == "__main__":
    main()
