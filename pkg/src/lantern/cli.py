"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 illegal move, 4 verification mismatch,
5 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from lantern import invariants, pi1
from lantern.moves import IllegalMove, VerificationMismatch, check_certificate, derive, parse_script
from lantern.registry import LanternMismatch, default_registry, load_registry
from lantern.swcalc import run_sw_script
from lantern.words import ParseError, census, parse_word

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ILLEGAL = 3
EXIT_MISMATCH = 4
EXIT_LIMIT = 5


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[Path]
    registry: Path | None = None
    output: Path | None = None
    limit: int = 100_000
    h1_only: bool = False

    def check_inputs(self):
        for p in self.inputs + ([self.registry] if self.registry else []):
            if not p.is_file():
                raise FileNotFoundError(f"no such file: {p}")


def _registry(cfg: RunConfig):
    return load_registry(cfg.registry) if cfg.registry else default_registry()


def _located(path: Path, exc: ParseError) -> ParseError:
    # prefix the file name, keeping line:col in the usual compiler layout
    sep = ":" if exc.line else ": "
    return ParseError(f"{path}{sep}{exc}")


def _read_word(path: Path, registry):
    try:
        return parse_word(path.read_text(), registry.names)
    except ParseError as exc:
        raise _located(path, exc) from None


def cmd_derive(cfg: RunConfig, out) -> int:
    registry = _registry(cfg)
    word = _read_word(cfg.inputs[0], registry)
    try:
        moves = parse_script(cfg.inputs[1].read_text(), registry.names)
    except ParseError as exc:
        raise _located(cfg.inputs[1], exc) from None
    cert = derive(word, moves, registry)
    text = cert.to_json(registry)
    if cfg.output:
        cfg.output.write_text(text)
        s = cert.summary(registry)
        print(f"steps: {len(cert.steps)}", file=out)
        print(f"lanterns: {s['lanterns']['contract']} contracted, {s['lanterns']['expand']} expanded", file=out)
        print(f"final ({s['length']} tokens): {cert.final}", file=out)
        print(f"census: n={s['length']} n0={s['census'][0]} n1={s['census'][1]}", file=out)
        for line in s["invariants"]:
            print(line, file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_check(cfg: RunConfig, out) -> int:
    registry = _registry(cfg)
    cert = check_certificate(cfg.inputs[0].read_text(), registry)
    n0, n1 = census(cert.final, registry)
    print(f"ok: {len(cert.steps)} steps replayed, final census n={n0 + n1} n0={n0} n1={n1}", file=out)
    return EXIT_OK


def cmd_invariants(cfg: RunConfig, out) -> int:
    registry = _registry(cfg)
    word = _read_word(cfg.inputs[0], registry)
    n0, n1 = census(word, registry)
    try:
        inv = invariants.compute(n0, n1)
    except invariants.NonIntegralInvariant as exc:
        print(f"n={n0 + n1} n0={n0} n1={n1}: {exc}", file=out)
        return EXIT_MISMATCH
    rows = [
        ("vanishing cycles", f"{inv.n} ({inv.n0} nonseparating, {inv.n1} separating)"),
        ("euler characteristic", inv.e),
        ("signature", inv.sigma),
        ("c1^2", inv.c1sq),
        ("chi_h", inv.chi_h),
        ("b2+ / b2-", f"{inv.b2plus} / {inv.b2minus}"),
    ]
    try:
        rows.append(("homeomorphic to", invariants.homeo_type(inv)))
    except ValueError as exc:
        rows.append(("homeomorphic to", f"undetermined ({exc})"))
    for k, v in rows:
        print(f"{k:<22}{v}", file=out)
    print(invariants.HEADER, file=out)
    print(inv.line(), file=out)
    return EXIT_OK


def cmd_sw(cfg: RunConfig, out) -> int:
    try:
        session = run_sw_script(cfg.inputs[0].read_text())
    except ParseError as exc:
        raise _located(cfg.inputs[0], exc) from None
    for line in session.log:
        print(line, file=out)
    return EXIT_OK


def cmd_pi1(cfg: RunConfig, out) -> int:
    text = cfg.inputs[0].read_text()
    if text.lstrip().startswith("gens:"):
        try:
            group = pi1.FPGroup.parse(text)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        out.write(group.dump())
    else:
        registry = _registry(cfg)
        word = _read_word(cfg.inputs[0], registry)
        pres = pi1.total_space_presentation(word, registry, h1_only=cfg.h1_only)
        group = pres.group
        out.write(group.dump())
        inv = pi1.h1_quotient(word, registry)
        print(f"h1 divisors: {list(inv.divisors)}", file=out)
        print(f"h1: {inv}", file=out)
        if pres.h1_only:
            shown = " ".join(str(i) for i in pres.abelianized)
            print(f"H1-only: abelianized relators for token positions {shown}", file=out)
            return EXIT_OK
    res = pi1.coset_enumerate(group, cfg.limit)
    print(f"cosets: {res}", file=out)
    return EXIT_LIMIT if res.hit_limit else EXIT_OK


COMMANDS = {
    "derive": cmd_derive,
    "check": cmd_check,
    "invariants": cmd_invariants,
    "sw": cmd_sw,
    "pi1": cmd_pi1,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lantern", description="Twist-word derivations for genus-2 fibrations.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("derive", help="run a move script on a word and emit a certificate")
    p.add_argument("relator", type=Path)
    p.add_argument("script", type=Path)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--registry", type=Path)

    p = sub.add_parser("check", help="replay a certificate")
    p.add_argument("cert", type=Path)
    p.add_argument("--registry", type=Path)

    p = sub.add_parser("invariants", help="fibration invariants of a word")
    p.add_argument("relator", type=Path)
    p.add_argument("--registry", type=Path)

    p = sub.add_parser("sw", help="run a Seiberg-Witten bookkeeping script")
    p.add_argument("script", type=Path)

    p = sub.add_parser("pi1", help="H1 and coset enumeration for the total space")
    p.add_argument("relator", type=Path)
    p.add_argument("--limit", type=int, default=100_000)
    p.add_argument("--h1-only", action="store_true")
    p.add_argument("--registry", type=Path)
    return ap


def config_from_args(args) -> RunConfig:
    fields = {"derive": ("relator", "script"), "check": ("cert",), "sw": ("script",)}
    inputs = [getattr(args, f) for f in fields.get(args.subcommand, ("relator",))]
    return RunConfig(
        subcommand=args.subcommand,
        inputs=inputs,
        registry=getattr(args, "registry", None),
        output=getattr(args, "output", None),
        limit=getattr(args, "limit", 100_000),
        h1_only=getattr(args, "h1_only", False),
    )


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        cfg.check_inputs()
        if cfg.limit <= 0:
            raise ParseError("--limit must be positive")
        return COMMANDS[cfg.subcommand](cfg, out)
    except (ParseError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except IllegalMove as exc:
        print(f"illegal move: {exc}", file=err)
        return EXIT_ILLEGAL
    except (VerificationMismatch, LanternMismatch) as exc:
        print(f"verification mismatch: {exc}", file=err)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
