"""Numerical invariants of a genus-2 Lefschetz fibration over the sphere.

With n0 nonseparating and n1 separating vanishing cycles:
e = n - 4, sigma = -(3 n0 + n1) / 5, c1^2 = 3 sigma + 2 e, chi_h = (sigma + e) / 4,
and, for a simply connected total space, b2+- = (e - 2 +- sigma) / 2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

HEADER = "n n0 n1 e sigma c1sq chi_h b2+ b2-"


class NonIntegralInvariant(ValueError):
    pass


class NonIntegralSignature(NonIntegralInvariant):
    pass


@dataclass(frozen=True)
class Invariants:
    n: int | None
    n0: int | None
    n1: int | None
    e: int
    sigma: int
    c1sq: int
    chi_h: int
    b2plus: int
    b2minus: int

    def line(self) -> str:
        vals = (self.n, self.n0, self.n1, self.e, self.sigma, self.c1sq, self.chi_h, self.b2plus, self.b2minus)
        return " ".join("-" if v is None else str(v) for v in vals)

    def characteristic(self) -> tuple[int, int, int, int, int, int]:
        return (self.e, self.sigma, self.c1sq, self.chi_h, self.b2plus, self.b2minus)


def _exact(num: int, den: int, what: str, exc=NonIntegralInvariant) -> int:
    q, r = divmod(num, den)
    if r:
        raise exc(f"{what} = {num}/{den} is not an integer")
    return q


def compute(n0: int, n1: int) -> Invariants:
    if n0 < 0 or n1 < 0:
        raise ValueError("counts must be non-negative")
    n = n0 + n1
    e = n - 4
    sigma = _exact(-(3 * n0 + n1), 5, "signature", NonIntegralSignature)
    return Invariants(
        n=n,
        n0=n0,
        n1=n1,
        e=e,
        sigma=sigma,
        c1sq=3 * sigma + 2 * e,
        chi_h=_exact(sigma + e, 4, "chi_h"),
        b2plus=_exact(e - 2 + sigma, 2, "b2+"),
        b2minus=_exact(e - 2 - sigma, 2, "b2-"),
    )


def blowdown_ledger(inv: Invariants, p: int) -> Invariants:
    """Invariants after a rational blowdown of the configuration C_p (p >= 2).

    Only the characteristic numbers are tracked; the vanishing-cycle counts
    are not determined by the blowdown and come back as None.
    """
    if p < 2:
        raise ValueError(f"rational blowdown needs p >= 2, got {p}")
    d = p - 1
    return replace(
        inv,
        n=None,
        n0=None,
        n1=None,
        e=inv.e - d,
        sigma=inv.sigma + d,
        c1sq=inv.c1sq + d,
        b2minus=inv.b2minus - d,
    )


def homeo_type(inv: Invariants) -> str:
    """Homeomorphism type of a simply connected manifold with odd intersection form."""
    if inv.b2plus <= 0:
        raise ValueError("b2+ = 0: homeomorphism type is not determined by these invariants")
    if inv.b2minus < 0:
        raise ValueError(f"negative b2- ({inv.b2minus})")
    pos = "CP²" if inv.b2plus == 1 else f"{inv.b2plus}CP²"
    if inv.b2minus == 0:
        return pos
    neg = "CP̄²" if inv.b2minus == 1 else f"{inv.b2minus}CP̄²"
    return f"{pos}#{neg}"


def trajectory(m: int) -> Invariants:
    """Invariants after m lantern substitutions on the 30-cycle relator."""
    return compute(30 - 2 * m, m)
